//! Domination predicates, the color-class combinator, and exact oracles for
//! the domination number and the independent domination number.

mod accounting;
mod combinator;
mod exact;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{require_proper, Coloring, ColoringError};
use crate::plane_graph::{pgr, PlaneError, PlaneGraph};
use crate::vertex_set::VertexSet;

pub use accounting::{combinator_accounting, verify_combinator_accounting, AccountingReport, Check, Relation};
pub use combinator::{class_combinator, separation_violations};
pub use exact::{exact_gamma, exact_iota, OracleLimit};

#[derive(Debug, Error)]
pub enum DomError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("class {class} out of range for a {k}-coloring")]
    ClassOutOfRange { class: usize, k: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("{what} {value} exceeds the oracle limit {limit}")]
    LimitExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant breach: {}", .0.message)]
    Breach(Box<Breach>),
}

/// Everything needed to replay a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breach {
    pub message: String,
    /// The graph in PGR text form.
    pub graph: String,
    /// The coloring as `vertex class` lines.
    pub coloring: Option<String>,
    pub sets: BTreeMap<String, VertexSet>,
}

impl Breach {
    pub(crate) fn new(message: impl Into<String>, g: &PlaneGraph, c: Option<&Coloring>) -> Self {
        Self {
            message: message.into(),
            graph: pgr::to_pgr(g),
            coloring: c.map(Coloring::to_text),
            sets: BTreeMap::new(),
        }
    }

    pub(crate) fn with_set(mut self, name: &str, s: &VertexSet) -> Self {
        self.sets.insert(name.to_string(), s.clone());
        self
    }

    pub(crate) fn into_error(self) -> DomError {
        DomError::Breach(Box::new(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Combinator,
    ExactIota,
    ExactGamma,
    Greedy,
}

/// The per-class sets behind a combinator result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartition {
    /// `U_i`: vertices not dominated by class `i`.
    pub undominated: Vec<VertexSet>,
    /// `S_i`: the maximal independent set chosen inside `G[U_i]`.
    pub selected: Vec<VertexSet>,
}

impl ClassPartition {
    /// `S`, the union of all `S_i`.
    pub fn joint(&self) -> VertexSet {
        self.selected.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationResult {
    pub set: VertexSet,
    pub size: usize,
    pub method: Method,
    /// Class `i` whose `C_i ∪ S_i` was chosen.
    pub witness_class: Option<usize>,
    /// `|C_i ∪ S_i|` for every class; for the empty-class shortcut, the
    /// class sizes themselves.
    pub per_class: Vec<usize>,
    pub partition: Option<ClassPartition>,
}

impl DominationResult {
    pub(crate) fn plain(set: VertexSet, method: Method) -> Self {
        Self { size: set.len(), set, method, witness_class: None, per_class: Vec::new(), partition: None }
    }
}

fn in_range(g: &PlaneGraph, s: &VertexSet) -> bool {
    s.max().is_none_or(|m| m < g.vertex_count())
}

/// Every vertex is in `s` or adjacent to it. Out-of-range ids make this false.
pub fn is_dominating(g: &PlaneGraph, s: &VertexSet) -> bool {
    if !in_range(g, s) {
        return false;
    }
    let inside = s.mask(g.vertex_count());
    (0..g.vertex_count()).all(|v| inside[v] || g.rotation(v).iter().any(|&w| inside[w]))
}

/// No edge has both ends in `s`. Out-of-range ids make this false.
pub fn is_independent(g: &PlaneGraph, s: &VertexSet) -> bool {
    if !in_range(g, s) {
        return false;
    }
    let inside = s.mask(g.vertex_count());
    s.iter().all(|v| g.rotation(v).iter().all(|&w| !inside[w]))
}

/// `V \ N[C_i]`.
pub fn undominated_by(g: &PlaneGraph, c: &Coloring, i: usize) -> Result<VertexSet, DomError> {
    require_proper(g, c)?;
    if i >= c.k() {
        return Err(DomError::ClassOutOfRange { class: i, k: c.k() });
    }
    Ok(undominated(g, c, i))
}

pub(crate) fn undominated(g: &PlaneGraph, c: &Coloring, i: usize) -> VertexSet {
    (0..g.vertex_count()).filter(|&v| c.class_of(v) != i && g.rotation(v).iter().all(|&w| c.class_of(w) != i)).collect()
}

/// Plain undirected graph on arbitrary vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjGraph {
    labels: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl AdjGraph {
    /// Edges are given by label; self-loops and duplicates are ignored.
    pub fn from_edges(vertices: &VertexSet, edges: &[(usize, usize)]) -> Result<Self, DomError> {
        let labels = vertices.as_slice().to_vec();
        let index = |v: usize| labels.binary_search(&v).map_err(|_| DomError::UnknownVertex(v));
        let mut adj = vec![Vec::new(); labels.len()];
        for &(u, v) in edges {
            let (i, j) = (index(u)?, index(v)?);
            if i != j && !adj[i].contains(&j) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        Ok(Self { labels, adj })
    }

    /// `G[s]`, keeping the labels of `g`.
    pub fn induced(g: &PlaneGraph, s: &VertexSet) -> Self {
        let labels = s.as_slice().to_vec();
        let adj = labels
            .iter()
            .map(|&v| g.rotation(v).iter().filter_map(|w| labels.binary_search(w).ok()).collect())
            .collect();
        Self { labels, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

/// Greedy maximal independent set: scan `order` (labels; unknown ones are
/// skipped), then any remaining vertices by ascending label, taking every
/// vertex with no neighbor taken so far.
pub fn greedy_maximal_independent(h: &AdjGraph, order: Option<&[usize]>) -> VertexSet {
    let n = h.vertex_count();
    let mut blocked = vec![false; n];
    let mut taken = VertexSet::new();
    let explicit = order.unwrap_or(&[]).iter().filter_map(|v| h.labels.binary_search(v).ok());
    for i in explicit.chain(0..n) {
        if blocked[i] {
            continue;
        }
        blocked[i] = true;
        taken.insert(h.labels[i]);
        for &j in &h.adj[i] {
            blocked[j] = true;
        }
    }
    taken
}
