use super::{Coloring, ColoringError};
use crate::plane_graph::PlaneGraph;

const NODE_LIMIT: u64 = 50_000_000;

/// Proper 4-coloring by saturation-ordered backtracking.
///
/// The next vertex is the uncolored one with the most distinct neighbor
/// classes, ties broken by uncolored degree and then by lowest id; classes
/// are tried in ascending order. Deterministic in `g`.
pub fn four_coloring(g: &PlaneGraph) -> Result<Coloring, ColoringError> {
    let n = g.vertex_count();
    let mut search = Dsatur { g, color: vec![None; n], counts: vec![[0u32; 4]; n], nodes: 0 };
    if search.solve()? {
        let assignment = search.color.into_iter().map(|c| c.expect("all colored")).collect();
        Coloring::new(4, assignment)
    } else {
        Err(ColoringError::SearchExhausted(search.nodes))
    }
}

struct Dsatur<'a> {
    g: &'a PlaneGraph,
    color: Vec<Option<usize>>,
    /// `counts[v][c]`: colored neighbors of `v` in class `c`.
    counts: Vec<[u32; 4]>,
    nodes: u64,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.counts[v].iter().filter(|&&c| c > 0).count()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.color.len()).filter(|&v| self.color[v].is_none()).max_by_key(|&v| {
            let free_degree = self.g.rotation(v).iter().filter(|&&w| self.color[w].is_none()).count();
            (self.saturation(v), free_degree, std::cmp::Reverse(v))
        })
    }

    fn assign(&mut self, v: usize, c: Option<usize>) {
        if let Some(old) = self.color[v] {
            for &w in self.g.rotation(v) {
                self.counts[w][old] -= 1;
            }
        }
        self.color[v] = c;
        if let Some(new) = c {
            for &w in self.g.rotation(v) {
                self.counts[w][new] += 1;
            }
        }
    }

    fn solve(&mut self) -> Result<bool, ColoringError> {
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(ColoringError::SearchExhausted(self.nodes));
        }
        for c in 0..4 {
            if self.counts[v][c] > 0 {
                continue;
            }
            self.assign(v, Some(c));
            if self.solve()? {
                return Ok(true);
            }
            self.assign(v, None);
        }
        Ok(false)
    }
}
