//! Vertex colorings and their checkers.
//!
//! Class indices are 0-based. Checkers that presuppose a proper coloring
//! return [`ColoringError::Improper`] when handed an improper one.

mod eulerian;
mod four;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{BuildTrace, TraceKind};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

pub use eulerian::rec_eulerian_six_coloring;
pub use four::four_coloring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring covers {found} vertices, graph has {expected}")]
    Partial { expected: usize, found: usize },
    #[error("vertex {vertex} has class {class}, but only {k} classes exist")]
    ClassOutOfRange { vertex: usize, class: usize, k: usize },
    #[error("edge {0}-{1} is monochromatic")]
    Improper(usize, usize),
    #[error("class map is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("coloring search exhausted after {0} nodes")]
    SearchExhausted(u64),
    #[error("trace does not match the graph: {0}")]
    TraceMismatch(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error("coloring parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Assignment of every vertex to one of `k` classes; classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self, ColoringError> {
        if let Some((vertex, &class)) = assignment.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(ColoringError::ClassOutOfRange { vertex, class, k });
        }
        Ok(Self { k, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn class(&self, i: usize) -> VertexSet {
        self.assignment.iter().enumerate().filter(|&(_, &c)| c == i).map(|(v, _)| v).collect()
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        (0..self.k).map(|i| self.class(i)).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// `vertex class` lines, one per vertex.
    pub fn to_text(&self) -> String {
        self.assignment.iter().enumerate().map(|(v, c)| format!("{v} {c}\n")).collect()
    }

    /// Parses `vertex class` lines; `#` starts a comment line. `k` defaults
    /// to one more than the largest class seen.
    pub fn from_text(text: &str, k: Option<usize>) -> Result<Self, ColoringError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| ColoringError::Parse { line: i + 1, msg };
            let mut it = line.split_whitespace();
            let (Some(v), Some(c), None) = (it.next(), it.next(), it.next()) else {
                return Err(err("expected `vertex class`".into()));
            };
            let v: usize = v.parse().map_err(|e| err(format!("bad vertex: {e}")))?;
            let c: usize = c.parse().map_err(|e| err(format!("bad class: {e}")))?;
            pairs.push((v, c));
        }
        let n = pairs.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        let mut assignment = vec![None; n];
        for &(v, c) in &pairs {
            if assignment[v].replace(c).is_some() {
                return Err(ColoringError::Parse { line: 0, msg: format!("vertex {v} colored twice") });
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(ColoringError::Partial { expected: n, found: v }))
            .collect::<Result<Vec<_>, _>>()?;
        let k = k.unwrap_or_else(|| assignment.iter().max().map_or(0, |m| m + 1));
        Coloring::new(k, assignment)
    }
}

/// Classes absent from the closed neighborhood of a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingColors {
    pub vertex: usize,
    pub missing: Vec<usize>,
}

fn check_total(g: &PlaneGraph, c: &Coloring) -> Result<(), ColoringError> {
    if c.len() != g.vertex_count() {
        return Err(ColoringError::Partial { expected: g.vertex_count(), found: c.len() });
    }
    Ok(())
}

fn first_conflict(g: &PlaneGraph, c: &Coloring) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| c.class_of(u) == c.class_of(v))
}

pub(crate) fn require_proper(g: &PlaneGraph, c: &Coloring) -> Result<(), ColoringError> {
    check_total(g, c)?;
    match first_conflict(g, c) {
        Some((u, v)) => Err(ColoringError::Improper(u, v)),
        None => Ok(()),
    }
}

pub fn is_proper(g: &PlaneGraph, c: &Coloring) -> Result<bool, ColoringError> {
    check_total(g, c)?;
    Ok(first_conflict(g, c).is_none())
}

fn seen_classes(g: &PlaneGraph, c: &Coloring, v: usize) -> Vec<bool> {
    let mut seen = vec![false; c.k()];
    for &w in g.rotation(v) {
        seen[c.class_of(w)] = true;
    }
    seen
}

/// Every vertex `v` has neighbors in at least `min(r, deg v)` classes.
pub fn is_r_dynamic(g: &PlaneGraph, c: &Coloring, r: usize) -> Result<bool, ColoringError> {
    require_proper(g, c)?;
    Ok((0..g.vertex_count()).all(|v| {
        let distinct = seen_classes(g, c, v).iter().filter(|&&s| s).count();
        distinct >= r.min(g.rotation(v).len())
    }))
}

/// Every pair of classes induces a forest.
pub fn is_acyclic(g: &PlaneGraph, c: &Coloring) -> Result<bool, ColoringError> {
    require_proper(g, c)?;
    let n = g.vertex_count();
    for i in 0..c.k() {
        for j in i + 1..c.k() {
            let mut parent: Vec<usize> = (0..n).collect();
            fn root(parent: &mut [usize], mut v: usize) -> usize {
                while parent[v] != v {
                    parent[v] = parent[parent[v]];
                    v = parent[v];
                }
                v
            }
            for (u, v) in g.edges() {
                let pair = [c.class_of(u), c.class_of(v)];
                if !(pair.contains(&i) && pair.contains(&j)) {
                    continue;
                }
                let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
                if ru == rv {
                    return Ok(false);
                }
                parent[ru] = rv;
            }
        }
    }
    Ok(true)
}

pub fn missing_colors(g: &PlaneGraph, c: &Coloring, v: usize) -> Result<MissingColors, ColoringError> {
    require_proper(g, c)?;
    if v >= g.vertex_count() {
        return Err(ColoringError::UnknownVertex(v));
    }
    let mut seen = seen_classes(g, c, v);
    seen[c.class_of(v)] = true;
    let missing = (0..c.k()).filter(|&i| !seen[i]).collect();
    Ok(MissingColors { vertex: v, missing })
}

/// Adjacent degree-4 vertices never miss the same set of classes.
pub fn adjacent_degree4_distinct_missing(g: &PlaneGraph, c: &Coloring) -> Result<bool, ColoringError> {
    require_proper(g, c)?;
    for (u, v) in g.edges() {
        if g.rotation(u).len() == 4
            && g.rotation(v).len() == 4
            && missing_colors(g, c, u)?.missing == missing_colors(g, c, v)?.missing
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Relabels classes: vertex in class `i` moves to class `perm[i]`.
pub fn permute_classes(c: &Coloring, perm: &[usize]) -> Result<Coloring, ColoringError> {
    let k = c.k();
    let mut hit = vec![false; k];
    if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut hit[p], true)) {
        return Err(ColoringError::NotBijective(k));
    }
    Coloring::new(k, c.assignment().iter().map(|&i| perm[i]).collect())
}

/// The canonical 4-coloring of a stacked triangulation: the base triangle
/// gets classes 0, 1, 2 and each stacked vertex the one class its face lacks.
pub fn stacked_four_coloring(g: &PlaneGraph, trace: &BuildTrace) -> Result<Coloring, ColoringError> {
    if trace.kind != TraceKind::Stacked {
        return Err(ColoringError::TraceMismatch("expected a stacked trace".into()));
    }
    let n = g.vertex_count();
    if n != 3 + trace.steps.len() {
        return Err(ColoringError::TraceMismatch(format!("{} steps cannot build {n} vertices", trace.steps.len())));
    }
    let mut assignment = vec![usize::MAX; n];
    assignment[..3].copy_from_slice(&[0, 1, 2]);
    for step in &trace.steps {
        let &[w] = step.inserted.as_slice() else {
            return Err(ColoringError::TraceMismatch("stacked step must insert one vertex".into()));
        };
        let used: Vec<usize> = step.face.iter().map(|&u| assignment[u]).collect();
        assignment[w] = (0..4).find(|i| !used.contains(i)).expect("three classes used, one free");
    }
    let c = Coloring::new(4, assignment)?;
    require_proper(g, &c)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{k4, octahedron, planar_three_tree, triangle};

    fn rainbow(n: usize) -> Coloring {
        Coloring::new(n, (0..n).collect()).unwrap()
    }

    /// Octahedron antipodes (0,3), (1,4), (2,5) share a class.
    fn antipodal3() -> Coloring {
        Coloring::new(3, vec![0, 1, 2, 0, 1, 2]).unwrap()
    }

    #[test]
    fn properness() {
        assert!(is_proper(&k4(), &rainbow(4)).unwrap());
        assert!(!is_proper(&triangle(), &Coloring::new(3, vec![0, 1, 0]).unwrap()).unwrap());
        assert!(is_proper(&octahedron(), &antipodal3()).unwrap());
        assert_eq!(is_proper(&k4(), &rainbow(3)).unwrap_err(), ColoringError::Partial { expected: 4, found: 3 });
        assert!(Coloring::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn dynamic_examples() {
        let o = octahedron();
        assert!(is_r_dynamic(&o, &rainbow(6), 5).unwrap());
        assert!(!is_r_dynamic(&o, &antipodal3(), 5).unwrap());
        assert!(is_r_dynamic(&o, &antipodal3(), 2).unwrap());
        let bad = Coloring::new(3, vec![0, 0, 1]).unwrap();
        assert_eq!(is_r_dynamic(&triangle(), &bad, 2).unwrap_err(), ColoringError::Improper(0, 1));
    }

    #[test]
    fn acyclic_examples() {
        assert!(is_acyclic(&k4(), &rainbow(4)).unwrap());
        // Two antipodal pairs induce a 4-cycle.
        assert!(!is_acyclic(&octahedron(), &antipodal3()).unwrap());
    }

    #[test]
    fn missing_color_examples() {
        let o = octahedron();
        let c = rainbow(6);
        for (v, antipode) in [(0, 3), (1, 4), (2, 5), (3, 0)] {
            assert_eq!(missing_colors(&o, &c, v).unwrap().missing, vec![antipode]);
        }
        assert!(missing_colors(&k4(), &rainbow(4), 2).unwrap().missing.is_empty());
        assert!(adjacent_degree4_distinct_missing(&o, &c).unwrap());
    }

    #[test]
    fn permutations() {
        let c = antipodal3();
        assert_eq!(permute_classes(&c, &[0, 1, 2]).unwrap(), c);
        let p = permute_classes(&c, &[2, 0, 1]).unwrap();
        assert_eq!(p.assignment(), &[2, 0, 1, 2, 0, 1]);
        assert_eq!(permute_classes(&c, &[0, 0, 1]).unwrap_err(), ColoringError::NotBijective(3));
        // Swapping two empty classes changes nothing.
        let sparse = Coloring::new(5, vec![0, 1, 2]).unwrap();
        assert_eq!(permute_classes(&sparse, &[0, 1, 2, 4, 3]).unwrap(), sparse);
    }

    #[test]
    fn text_round_trip() {
        let c = antipodal3();
        assert_eq!(Coloring::from_text(&c.to_text(), Some(3)).unwrap(), c);
        assert!(Coloring::from_text("0 1\n0 2\n", None).is_err());
        assert!(Coloring::from_text("0 1\n2 0\n", None).is_err());
    }

    #[test]
    fn stacked_coloring_classes_all_dominate() {
        let (g, trace) = planar_three_tree(20, 3).unwrap();
        let c = stacked_four_coloring(&g, &trace).unwrap();
        for v in 0..g.vertex_count() {
            assert!(missing_colors(&g, &c, v).unwrap().missing.is_empty());
        }
    }
}
