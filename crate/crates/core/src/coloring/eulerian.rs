//! Inductive 5-dynamic 6-coloring of recursive Eulerian triangulations.
//!
//! Invariant after every step: the coloring is proper and 5-dynamic, each
//! degree-4 vertex misses exactly one class, every vertex of degree at least
//! 6 misses none, and adjacent degree-4 vertices miss different classes.
//!
//! Step with face `x, y, z` and new triangle `a, b, c` (`a` opposite `x`,
//! `b` opposite `y`, `c` opposite `z`): relabel classes so that `x, y, z`
//! get 0, 1, 2 and whatever `x, y, z` miss becomes 3, 4, 5 respectively,
//! then color `a = 4`, `b = 5`, `c = 3`.

use super::{adjacent_degree4_distinct_missing, is_r_dynamic, Coloring, ColoringError};
use crate::generators::{BuildTrace, TraceKind};
use crate::plane_graph::PlaneGraph;

const K: usize = 6;

pub fn rec_eulerian_six_coloring(g: &PlaneGraph, trace: &BuildTrace) -> Result<Coloring, ColoringError> {
    if trace.kind != TraceKind::Eulerian {
        return Err(ColoringError::TraceMismatch("expected an Eulerian trace".into()));
    }
    let replayed = trace.replay().map_err(|e| ColoringError::TraceMismatch(e.to_string()))?;
    if replayed.rotations() != g.rotations() {
        return Err(ColoringError::TraceMismatch("replayed trace differs from the graph".into()));
    }

    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let join = |adj: &mut Vec<Vec<usize>>, u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    join(&mut adj, 0, 1);
    join(&mut adj, 1, 2);
    join(&mut adj, 2, 0);
    let mut color = vec![usize::MAX; n];
    color[..3].copy_from_slice(&[0, 1, 2]);

    for (i, step) in trace.steps.iter().enumerate() {
        let [x, y, z] = step.face;
        let [(a, px), (b, py), (c, pz)] =
            step.pairing.ok_or_else(|| ColoringError::TraceMismatch(format!("step {i} has no pairing")))?;
        if (px, py, pz) != (x, y, z) {
            return Err(ColoringError::TraceMismatch(format!("step {i} pairs against a different face")));
        }

        let mut fixed: Vec<(usize, usize)> = vec![(color[x], 0), (color[y], 1), (color[z], 2)];
        // The triangle alone is the base case: its missing sets are not yet constrained.
        if i > 0 {
            for (u, target) in [(x, 3), (y, 4), (z, 5)] {
                let missing = missing_in(&adj, &color, u);
                match missing.as_slice() {
                    [] => {}
                    [m] => fixed.push((*m, target)),
                    more => {
                        return Err(ColoringError::InvariantBreach(format!(
                            "step {i}: vertex {u} misses {} classes {more:?}",
                            more.len()
                        )))
                    }
                }
            }
        }
        let perm = smallest_permutation(&fixed).ok_or_else(|| {
            ColoringError::InvariantBreach(format!(
                "step {i}: no class relabeling satisfies {fixed:?} (face {x},{y},{z})"
            ))
        })?;
        for v in color.iter_mut().filter(|c| **c != usize::MAX) {
            *v = perm[*v];
        }

        color[a] = 4;
        color[b] = 5;
        color[c] = 3;
        for (u, v) in [(a, y), (a, z), (b, x), (b, z), (c, x), (c, y), (a, b), (b, c), (c, a)] {
            join(&mut adj, u, v);
        }
    }

    let coloring = Coloring::new(K, color)?;
    if !is_r_dynamic(g, &coloring, 5)? {
        return Err(ColoringError::InvariantBreach("result is not 5-dynamic".into()));
    }
    if !adjacent_degree4_distinct_missing(g, &coloring)? {
        return Err(ColoringError::InvariantBreach("adjacent degree-4 vertices miss the same class".into()));
    }
    Ok(coloring)
}

fn missing_in(adj: &[Vec<usize>], color: &[usize], u: usize) -> Vec<usize> {
    let mut seen = [false; K];
    seen[color[u]] = true;
    for &w in &adj[u] {
        seen[color[w]] = true;
    }
    (0..K).filter(|&c| !seen[c]).collect()
}

/// Lexicographically smallest permutation `p` of `0..K` with `p[old] = new`
/// for every fixed pair, or `None` if the pairs conflict.
fn smallest_permutation(fixed: &[(usize, usize)]) -> Option<[usize; K]> {
    let mut perm = [usize::MAX; K];
    let mut taken = [false; K];
    for &(old, new) in fixed {
        if perm[old] == new {
            continue;
        }
        if perm[old] != usize::MAX || taken[new] {
            return None;
        }
        perm[old] = new;
        taken[new] = true;
    }
    let mut free = (0..K).filter(|&c| !taken[c]);
    for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *p = free.next().expect("counts match");
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_proper, missing_colors};
    use crate::generators::recursive_eulerian;

    #[test]
    fn triangle_base_case() {
        let (g, trace) = recursive_eulerian(0, 0).unwrap();
        let c = rec_eulerian_six_coloring(&g, &trace).unwrap();
        assert_eq!(c.class_sizes(), vec![1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn octahedron_is_rainbow() {
        let (g, trace) = recursive_eulerian(1, 4).unwrap();
        let c = rec_eulerian_six_coloring(&g, &trace).unwrap();
        assert_eq!(c.class_sizes(), vec![1; 6]);
        for v in 0..6 {
            let antipode = (0..6).find(|&w| w != v && !g.has_edge(v, w)).unwrap();
            assert_eq!(missing_colors(&g, &c, v).unwrap().missing, vec![c.class_of(antipode)]);
        }
    }

    #[test]
    fn three_steps_seed_eleven() {
        let (g, trace) = recursive_eulerian(3, 11).unwrap();
        let c = rec_eulerian_six_coloring(&g, &trace).unwrap();
        assert!(is_proper(&g, &c).unwrap());
        assert!(is_r_dynamic(&g, &c, 5).unwrap());
        assert!(adjacent_degree4_distinct_missing(&g, &c).unwrap());
        for v in 0..g.vertex_count() {
            let missing = missing_colors(&g, &c, v).unwrap().missing.len();
            match g.rotation(v).len() {
                4 => assert_eq!(missing, 1),
                d if d >= 6 => assert_eq!(missing, 0),
                d => panic!("unexpected degree {d}"),
            }
        }
    }

    #[test]
    fn permutation_search() {
        assert_eq!(smallest_permutation(&[(2, 0), (0, 1), (1, 2)]), Some([1, 2, 0, 3, 4, 5]));
        assert_eq!(smallest_permutation(&[(0, 0), (1, 0)]), None);
        assert_eq!(smallest_permutation(&[(0, 3), (0, 4)]), None);
    }

    #[test]
    fn rejects_foreign_trace() {
        let (g, _) = recursive_eulerian(1, 0).unwrap();
        let (_, other) = recursive_eulerian(2, 2).unwrap();
        assert!(matches!(rec_eulerian_six_coloring(&g, &other), Err(ColoringError::TraceMismatch(_))));
    }
}
