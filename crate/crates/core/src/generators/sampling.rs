use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{icosahedron, planar_three_tree, rng_for, GenError, Seed};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

/// splitmix64 step, used to derive independent per-use seeds.
pub(crate) fn derive_seed(seed: Seed, salt: u64) -> Seed {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stacked 3-tree on `n` vertices followed by `flip_walk` random edge-flip
/// attempts; illegal flips are skipped.
pub fn random_triangulation(n: usize, seed: Seed, flip_walk: usize) -> Result<PlaneGraph, GenError> {
    if n < 4 {
        return Err(GenError::Parameter(format!("random triangulation needs n >= 4, got {n}")));
    }
    let (mut g, _) = planar_three_tree(n, seed)?;
    let mut rng = rng_for(derive_seed(seed, 1));
    for _ in 0..flip_walk {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let &(u, v) = edges.choose(&mut rng).expect("triangulation has edges");
        if let Ok(h) = g.flip_edge(u, v) {
            g = h;
        }
    }
    Ok(g)
}

/// Deletes `v` from a planar triangulation; the former link of `v` becomes
/// the outer face.
pub fn near_triangulation_from(g: &PlaneGraph, v: usize) -> Result<PlaneGraph, GenError> {
    if g.vertex_count() < 5 {
        return Err(GenError::Parameter(format!("need at least 5 vertices, got {}", g.vertex_count())));
    }
    if !g.classify().is_planar_triangulation() {
        return Err(GenError::Parameter("input must be a planar triangulation".into()));
    }
    let d = g.delete_vertices(&VertexSet::singleton(v))?;
    let hole = d.face_containing(v).expect("v has surviving neighbors");
    Ok(d.graph.with_outer_face_id(hole)?)
}

/// Searches for a triangulation on `n` vertices with minimum degree 5.
///
/// For `n = 12` the icosahedron is tried first. Otherwise each of `budget`
/// attempts starts from a fresh random 3-tree and runs a flip walk that
/// drives down the total degree deficit `sum_v max(0, 5 - deg v)`. Returns
/// `None` when the budget runs out.
pub fn min_degree5_sample(n: usize, seed: Seed, budget: usize) -> Option<PlaneGraph> {
    if n == 12 {
        return Some(icosahedron());
    }
    let deficit = |d: usize| 5usize.saturating_sub(d) as i64;
    for attempt in 0..budget {
        let Ok(start) = random_triangulation(n.max(4), derive_seed(seed, 100 + attempt as u64), 0) else {
            return None;
        };
        let mut rng = rng_for(derive_seed(seed, 10_000 + attempt as u64));
        let g = descend(start, &mut rng, 60 * n, deficit);
        if g.vertex_count() == n && g.min_degree() == 5 {
            return Some(g);
        }
    }
    None
}

/// Searches for a triangulation on `n` vertices whose degrees are all odd.
/// `n` must be even. Same strategy as [`min_degree5_sample`].
pub fn odd_degree_sample(n: usize, seed: Seed, budget: usize) -> Option<PlaneGraph> {
    if n < 4 || n % 2 == 1 {
        return None;
    }
    let even = |d: usize| d.is_multiple_of(2) as i64;
    for attempt in 0..budget {
        let start = random_triangulation(n, derive_seed(seed, 200 + attempt as u64), 0).ok()?;
        let mut rng = rng_for(derive_seed(seed, 20_000 + attempt as u64));
        let g = descend(start, &mut rng, 60 * n, even);
        if g.classify().all_degrees_odd {
            return Some(g);
        }
    }
    None
}

const UPHILL: f64 = 0.05;

/// Random flip walk on `sum_v cost(deg v)`: moves that do not increase the
/// cost are always taken, others with probability `UPHILL`. Stops at cost 0.
fn descend(mut g: PlaneGraph, rng: &mut ChaCha8Rng, steps: usize, cost: impl Fn(usize) -> i64) -> PlaneGraph {
    let mut degrees = g.degrees();
    let mut total: i64 = degrees.iter().map(|&d| cost(d)).sum();
    for _ in 0..steps {
        if total == 0 {
            break;
        }
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let &(u, v) = edges.choose(rng).expect("triangulation has edges");
        let (Some(x), Some(y)) = (g.rotation_succ(v, u), g.rotation_succ(u, v)) else {
            continue;
        };
        if x == y || g.has_edge(x, y) {
            continue;
        }
        let before = cost(degrees[u]) + cost(degrees[v]) + cost(degrees[x]) + cost(degrees[y]);
        let after = cost(degrees[u] - 1) + cost(degrees[v] - 1) + cost(degrees[x] + 1) + cost(degrees[y] + 1);
        if after > before && !rng.gen_bool(UPHILL) {
            continue;
        }
        if let Ok(h) = g.flip_edge(u, v) {
            g = h;
            degrees = g.degrees();
            total += after - before;
        }
    }
    g
}

/// Connected plane graph: a random triangulation with up to `removals`
/// random edges deleted, skipping deletions that would disconnect it.
pub fn random_connected_plane(n: usize, seed: Seed, removals: usize) -> Result<PlaneGraph, GenError> {
    let mut g = random_triangulation(n, seed, 2 * n)?;
    let mut rng = rng_for(derive_seed(seed, 2));
    for _ in 0..removals {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        if edges.is_empty() {
            break;
        }
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let h = g.delete_edge(u, v)?;
        if h.is_connected() {
            g = h;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{icosahedron, octahedron};
    use crate::plane_graph::GraphKind;

    #[test]
    fn flip_walk_zero_is_the_three_tree() {
        let g = random_triangulation(12, 4, 0).unwrap();
        assert_eq!(g, planar_three_tree(12, 4).unwrap().0);
    }

    #[test]
    fn flip_walk_keeps_triangulation() {
        let g = random_triangulation(12, 1, 100).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert_eq!(g.classify().kind, GraphKind::PlanarTriangulation);
        assert_eq!(g, random_triangulation(12, 1, 100).unwrap());
    }

    #[test]
    fn near_triangulation_examples() {
        let w = near_triangulation_from(&octahedron(), 3).unwrap();
        assert_eq!(w.outer_face().degree, 4);
        assert_eq!(w.classify().kind, GraphKind::NearTriangulation);
        let i = near_triangulation_from(&icosahedron(), 0).unwrap();
        assert_eq!(i.outer_face().degree, 5);
        assert!(near_triangulation_from(&crate::generators::k4(), 0).is_err());
    }

    #[test]
    fn min_degree_five_examples() {
        assert_eq!(min_degree5_sample(12, 0, 1).unwrap(), icosahedron());
        assert!(min_degree5_sample(11, 0, 3).is_none());
        let g = min_degree5_sample(16, 3, 20).expect("n = 16 has minimum-degree-5 triangulations");
        assert_eq!(g.min_degree(), 5);
        assert!(g.classify().is_planar_triangulation());
    }

    #[test]
    fn odd_sampler_finds_all_odd_triangulations() {
        let g = odd_degree_sample(14, 5, 20).expect("sampler succeeds");
        assert!(g.classify().all_degrees_odd);
        assert!(odd_degree_sample(13, 5, 1).is_none());
    }

    #[test]
    fn connected_plane_stays_connected() {
        for seed in 0..5 {
            let g = random_connected_plane(10, seed, 8).unwrap();
            assert!(g.is_connected());
            assert!(g.edge_count() < 24);
        }
    }
}
