use rand::Rng;

use super::{rng_for, BuildTrace, GenError, Seed, TraceKind, TraceStep, TriangleSoup};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

/// Planar 3-tree on `n` vertices: starting from a triangle, repeatedly stack
/// a degree-3 vertex into a uniformly random face.
pub fn planar_three_tree(n: usize, seed: Seed) -> Result<(PlaneGraph, BuildTrace), GenError> {
    if n < 3 {
        return Err(GenError::Parameter(format!("planar 3-tree needs n >= 3, got {n}")));
    }
    let mut rng = rng_for(seed);
    let mut soup = TriangleSoup::base();
    let mut trace = BuildTrace::new(TraceKind::Stacked);
    while soup.n < n {
        let idx = rng.gen_range(0..soup.faces.len());
        let face = soup.faces[idx];
        let w = soup.stack(idx);
        trace.steps.push(TraceStep { face, inserted: vec![w], pairing: None });
    }
    Ok((soup.build()?, trace))
}

/// Recursive Eulerian triangulation after `steps` triangle insertions
/// (`3 + 3 * steps` vertices), each into a uniformly random face.
pub fn recursive_eulerian(steps: usize, seed: Seed) -> Result<(PlaneGraph, BuildTrace), GenError> {
    let mut rng = rng_for(seed);
    let mut soup = TriangleSoup::base();
    let mut trace = BuildTrace::new(TraceKind::Eulerian);
    for _ in 0..steps {
        let idx = rng.gen_range(0..soup.faces.len());
        let face = soup.faces[idx];
        let (abc, pairing) = soup.insert_octahedral(idx);
        trace.steps.push(TraceStep { face, inserted: abc.to_vec(), pairing: Some(pairing) });
    }
    Ok((soup.build()?, trace))
}

/// Vertex ids of gadget `i` in [`diamond_chain`].
struct Gadget {
    apex: usize,
    top: usize,
    bottom: usize,
    next_apex: usize,
    near_apex_top: usize,
    near_apex_bottom: usize,
    near_top_bottom: usize,
    hub: usize,
}

impl Gadget {
    fn new(i: usize, k: usize) -> Self {
        let base = 7 * i;
        Self {
            apex: base,
            top: base + 1,
            bottom: base + 2,
            next_apex: 7 * ((i + 1) % k),
            near_apex_top: base + 3,
            near_apex_bottom: base + 4,
            near_top_bottom: base + 5,
            hub: base + 6,
        }
    }
}

/// Circular chain of `k` seven-vertex diamond gadgets (`7k` vertices).
///
/// Gadget `i` is the diamond `apex, top, bottom, next_apex` (two triangles
/// sharing `top-bottom`), with an inner triangle inserted octahedrally into
/// `apex, top, bottom` and a hub stacked into `top, bottom, next_apex`. The
/// next gadget's apex is this gadget's far tip. The region on the `top` side
/// of the ring is fan-triangulated from apex 0, and the region on the
/// `bottom` side from the bottom vertex of gadget 0.
pub fn diamond_chain(k: usize) -> Result<PlaneGraph, GenError> {
    if k < 2 {
        return Err(GenError::Parameter(format!("diamond chain needs k >= 2, got {k}")));
    }
    let mut faces = Vec::with_capacity(14 * k);
    for i in 0..k {
        let g = Gadget::new(i, k);
        let (a, b, c, d) = (g.apex, g.top, g.bottom, g.next_apex);
        let (r1, r2, r3) = (g.near_apex_top, g.near_apex_bottom, g.near_top_bottom);
        faces.extend([[a, c, r2], [c, b, r3], [b, a, r1], [c, r3, r2], [b, r1, r3], [a, r2, r1], [r3, r1, r2]]);
        faces.extend([[b, c, g.hub], [c, d, g.hub], [d, b, g.hub]]);
    }
    let outer_index = faces.len();
    let top_walk: Vec<usize> = (0..k).flat_map(|i| [7 * i, 7 * i + 1]).collect();
    fan(&top_walk, &mut faces);
    // Bottom side, walked from gadget 0's bottom vertex: c0, a0, c_{k-1}, a_{k-1}, ..., c1, a1.
    let mut bottom_walk = vec![2, 0];
    for i in (1..k).rev() {
        bottom_walk.extend([7 * i + 2, 7 * i]);
    }
    fan(&bottom_walk, &mut faces);
    PlaneGraph::from_triangles(7 * k, &faces, outer_index)
        .map_err(|e| GenError::Parameter(format!("diamond chain with k = {k} is not simple: {e}")))
}

fn fan(walk: &[usize], faces: &mut Vec<[usize; 3]>) {
    for j in 1..walk.len() - 1 {
        faces.push([walk[0], walk[j], walk[j + 1]]);
    }
}

/// Two vertices per gadget of [`diamond_chain`]: the inner-triangle vertex
/// adjacent to top and bottom, and the hub.
pub fn diamond_chain_witness(k: usize) -> VertexSet {
    (0..k)
        .flat_map(|i| {
            let g = Gadget::new(i, k);
            [g.near_top_bottom, g.hub]
        })
        .collect()
}

/// Triangulation of `k` vertex-disjoint copies of K4, each outside all the
/// others (`4k` vertices). Copy `i` is `{4i, 4i+1, 4i+2, 4i+3}`, with
/// `4i + 3` its interior vertex.
pub fn k4_chain(k: usize) -> Result<PlaneGraph, GenError> {
    if k < 2 {
        return Err(GenError::Parameter(format!("K4 chain needs k >= 2, got {k}")));
    }
    let mut soup = TriangleSoup::base();
    soup.stack(0);
    for _ in 1..k {
        // The outer face always lies between copies; its replacement stays outer.
        let outer = soup.outer;
        soup.insert_octahedral(outer);
        let center = soup.faces.len() - 1;
        soup.stack(center);
    }
    Ok(soup.build()?)
}

/// Connected components of the subgraph induced by the degree-4 vertices,
/// each sorted, in order of their smallest vertex.
pub fn degree_four_components(g: &PlaneGraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let degree4: Vec<bool> = (0..n).map(|v| g.rotation(v).len() == 4).collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in (0..n).filter(|&v| degree4[v]) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = VertexSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in g.rotation(v) {
                if degree4[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        components.push(comp);
    }
    components
}

/// Checks that the degree-4 vertices induce vertex-disjoint triangles and
/// returns those triangles.
pub fn degree_four_triangles(g: &PlaneGraph) -> Result<Vec<[usize; 3]>, String> {
    let degree4: Vec<bool> = g.degrees().iter().map(|&d| d == 4).collect();
    let mut seen = vec![false; g.vertex_count()];
    let mut triangles = Vec::new();
    for v in (0..g.vertex_count()).filter(|&v| degree4[v]) {
        let inner: Vec<usize> = g.rotation(v).iter().copied().filter(|&w| degree4[w]).collect();
        if inner.len() != 2 {
            return Err(format!("degree-4 vertex {v} has {} degree-4 neighbors", inner.len()));
        }
        if !g.has_edge(inner[0], inner[1]) {
            return Err(format!("degree-4 neighbors {} and {} of {v} are not adjacent", inner[0], inner[1]));
        }
        if !seen[v] {
            let mut t = [v, inner[0], inner[1]];
            t.sort_unstable();
            for &u in &t {
                seen[u] = true;
            }
            triangles.push(t);
        }
    }
    Ok(triangles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{k4, octahedron};
    use crate::plane_graph::GraphKind;

    #[test]
    fn three_tree_sizes() {
        let (t, _) = planar_three_tree(3, 1).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (3, 3));
        for seed in 0..5 {
            let (g, _) = planar_three_tree(4, seed).unwrap();
            assert_eq!(g.edge_count(), k4().edge_count());
            assert!(g.degrees().iter().all(|&d| d == 3));
        }
        let (g, trace) = planar_three_tree(10, 7).unwrap();
        assert_eq!(g.classify().kind, GraphKind::PlanarTriangulation);
        assert_eq!(g.edge_count(), 24);
        assert_eq!(trace.steps.len(), 7);
        assert_eq!(trace.replay().unwrap(), g);
        assert!(planar_three_tree(2, 0).is_err());
    }

    #[test]
    fn eulerian_examples() {
        let (t0, _) = recursive_eulerian(0, 3).unwrap();
        assert_eq!(t0.vertex_count(), 3);
        for seed in 0..4 {
            let (g, _) = recursive_eulerian(1, seed).unwrap();
            assert_eq!(g.vertex_count(), 6);
            assert!(g.degrees().iter().all(|&d| d == 4));
        }
        let (g, trace) = recursive_eulerian(4, 9).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert!(g.classify().all_degrees_even);
        assert_eq!(trace.replay().unwrap(), g);
        for step in &trace.steps {
            for (a, x) in step.pairing.unwrap() {
                assert!(!g.has_edge(a, x));
            }
        }
    }

    #[test]
    fn degree_four_components_are_small_cliques() {
        for (t, seed) in [(2, 0), (3, 0), (4, 9), (6, 2)] {
            let (g, _) = recursive_eulerian(t, seed).unwrap();
            for comp in degree_four_components(&g) {
                assert!(comp.len() <= 3);
                let v: Vec<usize> = comp.iter().collect();
                assert!(v.iter().all(|&a| v.iter().all(|&b| a == b || g.has_edge(a, b))));
            }
        }
        // After three insertions the degree-4 vertices need not form triangles.
        let (g, _) = recursive_eulerian(3, 0).unwrap();
        assert_eq!(g.degrees().iter().filter(|&&d| d == 4).count(), 7);
        assert!(degree_four_triangles(&g).is_err());
    }

    #[test]
    fn octahedron_degree_four_vertices_are_not_disjoint_triangles() {
        assert!(degree_four_triangles(&octahedron()).is_err());
    }

    #[test]
    fn diamond_chain_shapes() {
        assert!(diamond_chain(1).is_err());
        let g = diamond_chain(2).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edge_count(), 36);
        let g = diamond_chain(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (21, 57));
        assert_eq!(g.classify().kind, GraphKind::PlanarTriangulation);
        assert_eq!(diamond_chain_witness(3).len(), 6);
    }

    #[test]
    fn k4_chain_shapes() {
        assert!(k4_chain(1).is_err());
        let g = k4_chain(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 18));
        assert_eq!(g.classify().kind, GraphKind::PlanarTriangulation);
        // Each interior vertex sees only its own copy.
        for i in 0..2 {
            let hub = 4 * i + 3;
            assert!(g.rotation(hub).iter().all(|&w| w / 4 == i));
        }
    }
}
