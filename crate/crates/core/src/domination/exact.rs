use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{greedy_maximal_independent, AdjGraph, DomError, DominationResult, Method};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

/// Bitmask width; no oracle accepts more vertices than this.
const WORD: usize = 64;

/// Input and effort limits for the exact oracles. Inputs beyond a limit are
/// refused, never approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimit {
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub time_budget: Option<Duration>,
}

impl OracleLimit {
    pub fn iota() -> Self {
        Self { max_vertices: 35, max_nodes: 200_000_000, time_budget: None }
    }

    pub fn gamma() -> Self {
        Self { max_vertices: 24, max_nodes: 200_000_000, time_budget: None }
    }

    pub fn with_max_vertices(self, max_vertices: usize) -> Self {
        Self { max_vertices, ..self }
    }
}

/// Minimum independent dominating set (minimum maximal independent set).
pub fn exact_iota(g: &PlaneGraph, limit: OracleLimit) -> Result<DominationResult, DomError> {
    Search::run(g, limit, true).map(|set| DominationResult::plain(set, Method::ExactIota))
}

/// Minimum dominating set.
pub fn exact_gamma(g: &PlaneGraph, limit: OracleLimit) -> Result<DominationResult, DomError> {
    Search::run(g, limit, false).map(|set| DominationResult::plain(set, Method::ExactGamma))
}

/// Branch and bound: pick the undominated vertex with the fewest candidate
/// dominators and branch over them; after a branch its candidate is
/// forbidden in the remaining branches. With `independent`, only vertices
/// outside `N[chosen]` are candidates.
struct Search {
    closed: Vec<u64>,
    all: u64,
    independent: bool,
    best: u64,
    nodes: u64,
    limit: OracleLimit,
    start: Instant,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

impl Search {
    fn run(g: &PlaneGraph, limit: OracleLimit, independent: bool) -> Result<VertexSet, DomError> {
        let n = g.vertex_count();
        let cap = limit.max_vertices.min(WORD);
        if n > cap {
            return Err(DomError::LimitExceeded { what: "vertex count", value: n as u64, limit: cap as u64 });
        }
        let closed = (0..n).map(|v| g.rotation(v).iter().fold(1u64 << v, |m, &w| m | 1 << w)).collect();
        let all = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let all_vertices: VertexSet = (0..n).collect();
        let greedy = greedy_maximal_independent(&AdjGraph::induced(g, &all_vertices), None);
        let best = greedy.iter().fold(0u64, |m, v| m | 1 << v);
        let mut search = Search { closed, all, independent, best, nodes: 0, limit, start: Instant::now() };
        search.go(0, 0, 0)?;
        Ok(bits(search.best).collect())
    }

    fn candidates(&self, v: usize, dominated: u64, forbidden: u64) -> u64 {
        let mut m = self.closed[v] & !forbidden;
        if self.independent {
            m &= !dominated;
        }
        m
    }

    fn tick(&mut self) -> Result<(), DomError> {
        self.nodes += 1;
        if self.nodes > self.limit.max_nodes {
            return Err(DomError::LimitExceeded {
                what: "search nodes",
                value: self.nodes,
                limit: self.limit.max_nodes,
            });
        }
        if let Some(budget) = self.limit.time_budget {
            if self.nodes.is_multiple_of(4096) && self.start.elapsed() > budget {
                return Err(DomError::LimitExceeded {
                    what: "milliseconds",
                    value: self.start.elapsed().as_millis() as u64,
                    limit: budget.as_millis() as u64,
                });
            }
        }
        Ok(())
    }

    fn go(&mut self, chosen: u64, dominated: u64, mut forbidden: u64) -> Result<(), DomError> {
        self.tick()?;
        let size = chosen.count_ones();
        if dominated == self.all {
            if size < self.best.count_ones() {
                self.best = chosen;
            }
            return Ok(());
        }
        let best = self.best.count_ones();
        if size + 1 >= best {
            return Ok(());
        }
        let open = self.all & !dominated;
        let usable = self.all & !forbidden & if self.independent { open } else { self.all };
        let cover = bits(usable).map(|w| (self.closed[w] & open).count_ones()).max().unwrap_or(0);
        if cover == 0 || size + open.count_ones().div_ceil(cover) >= best {
            return Ok(());
        }

        let mut pick = None;
        for v in bits(open) {
            let count = self.candidates(v, dominated, forbidden).count_ones();
            if count == 0 {
                return Ok(());
            }
            if pick.is_none_or(|(_, c)| count < c) {
                pick = Some((v, count));
            }
        }
        let (v, _) = pick.expect("some vertex is undominated");
        let mut order: Vec<usize> = bits(self.candidates(v, dominated, forbidden)).collect();
        order.sort_by_key(|&w| (std::cmp::Reverse((self.closed[w] & open).count_ones()), w));
        for w in order {
            self.go(chosen | 1 << w, dominated | self.closed[w], forbidden)?;
            forbidden |= 1 << w;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{is_dominating, is_independent};
    use crate::generators::{diamond_chain, icosahedron, k4, k4_chain, octahedron, triangle};

    #[test]
    fn small_values() {
        assert_eq!(exact_iota(&k4(), OracleLimit::iota()).unwrap().size, 1);
        assert_eq!(exact_gamma(&k4(), OracleLimit::gamma()).unwrap().size, 1);
        assert_eq!(exact_iota(&triangle(), OracleLimit::iota()).unwrap().size, 1);
        let o = exact_iota(&octahedron(), OracleLimit::iota()).unwrap();
        assert_eq!(o.size, 2);
        assert!(is_dominating(&octahedron(), &o.set) && is_independent(&octahedron(), &o.set));
        // Two antipodal vertices of the icosahedron dominate it.
        let ico = exact_iota(&icosahedron(), OracleLimit::iota()).unwrap();
        assert_eq!(ico.size, 2);
        assert_eq!(ico.set, VertexSet::from([0, 11]));
    }

    #[test]
    fn diamond_chain_three() {
        let g = diamond_chain(3).unwrap();
        let r = exact_iota(&g, OracleLimit::iota()).unwrap();
        assert_eq!(r.size, 6);
        assert!(is_dominating(&g, &r.set) && is_independent(&g, &r.set));
    }

    #[test]
    fn k4_chain_three() {
        let g = k4_chain(3).unwrap();
        let r = exact_gamma(&g, OracleLimit::gamma()).unwrap();
        assert_eq!(r.size, 3);
        assert!(is_dominating(&g, &r.set));
        assert!(r.size <= exact_iota(&g, OracleLimit::iota()).unwrap().size);
    }

    #[test]
    fn limits_refuse() {
        let g = diamond_chain(4).unwrap();
        assert!(matches!(
            exact_gamma(&g, OracleLimit::gamma()),
            Err(DomError::LimitExceeded { what: "vertex count", .. })
        ));
        let tiny = OracleLimit { max_nodes: 3, ..OracleLimit::iota() };
        assert!(matches!(exact_iota(&g, tiny), Err(DomError::LimitExceeded { what: "search nodes", .. })));
    }
}
