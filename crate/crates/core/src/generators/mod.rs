//! Seeded constructors for the triangulation families used in the experiments.
//!
//! Every constructor returns a validated [`PlaneGraph`]. Constructions that
//! grow a triangulation face by face also return a [`BuildTrace`], which
//! replays to the identical graph.

mod families;
mod sampling;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::{PlaneError, PlaneGraph};

pub use families::{
    degree_four_components, degree_four_triangles, diamond_chain, diamond_chain_witness, k4_chain, planar_three_tree,
    recursive_eulerian,
};
pub use sampling::{
    min_degree5_sample, near_triangulation_from, odd_degree_sample, random_connected_plane, random_triangulation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("trace replay failed at step {step}: {msg}")]
    Replay { step: usize, msg: String },
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

pub type Seed = u64;

pub(crate) fn rng_for(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    /// Each step stacks one vertex into a triangular face.
    Stacked,
    /// Each step inserts a triangle forming an octahedron with the face.
    Eulerian,
}

/// One insertion step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// The chosen face as an oriented walk `x -> y -> z`.
    pub face: [usize; 3],
    pub inserted: Vec<usize>,
    /// For Eulerian steps, the non-adjacent pairs `(a, x), (b, y), (c, z)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<[(usize, usize); 3]>,
}

/// Ordered log of insertion steps, starting from the triangle `0, 1, 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildTrace {
    pub kind: TraceKind,
    pub steps: Vec<TraceStep>,
}

impl BuildTrace {
    pub fn new(kind: TraceKind) -> Self {
        Self { kind, steps: Vec::new() }
    }

    /// Rebuilds the traced graph from the base triangle.
    pub fn replay(&self) -> Result<PlaneGraph, GenError> {
        let mut soup = TriangleSoup::base();
        for (i, step) in self.steps.iter().enumerate() {
            let idx = soup
                .find(step.face)
                .ok_or_else(|| GenError::Replay { step: i, msg: format!("face {:?} not present", step.face) })?;
            let expect_first = soup.n;
            let (inserted, pairing) = match self.kind {
                TraceKind::Stacked => (vec![soup.stack(idx)], None),
                TraceKind::Eulerian => {
                    let (abc, pairing) = soup.insert_octahedral(idx);
                    (abc.to_vec(), Some(pairing))
                }
            };
            if inserted != step.inserted || pairing != step.pairing {
                return Err(GenError::Replay {
                    step: i,
                    msg: format!("expected inserted {:?} starting at {expect_first}", step.inserted),
                });
            }
        }
        Ok(soup.build()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// A triangulation under construction, kept as oriented triangular faces.
#[derive(Debug, Clone)]
pub(crate) struct TriangleSoup {
    pub n: usize,
    pub faces: Vec<[usize; 3]>,
    pub outer: usize,
}

impl TriangleSoup {
    /// Triangle `0, 1, 2`: inner walk `0 -> 1 -> 2`, outer walk `0 -> 2 -> 1`.
    pub fn base() -> Self {
        Self { n: 3, faces: vec![[0, 1, 2], [0, 2, 1]], outer: 1 }
    }

    pub fn find(&self, face: [usize; 3]) -> Option<usize> {
        self.faces.iter().position(|f| (0..3).any(|s| (0..3).all(|i| f[(i + s) % 3] == face[i])))
    }

    /// Stacks a new vertex into face `idx`; returns its id.
    pub fn stack(&mut self, idx: usize) -> usize {
        let [a, b, c] = self.faces[idx];
        let w = self.n;
        self.n += 1;
        self.faces[idx] = [a, b, w];
        self.faces.push([b, c, w]);
        self.faces.push([c, a, w]);
        w
    }

    /// Inserts a triangle `a, b, c` into face `x, y, z` so that the seven
    /// new faces and the old face form an octahedron, with `a` opposite `x`,
    /// `b` opposite `y`, `c` opposite `z`.
    pub fn insert_octahedral(&mut self, idx: usize) -> ([usize; 3], [(usize, usize); 3]) {
        let [x, y, z] = self.faces[idx];
        let (a, b, c) = (self.n, self.n + 1, self.n + 2);
        self.n += 3;
        self.faces[idx] = [x, y, c];
        self.faces.extend([[y, z, a], [z, x, b], [y, a, c], [z, b, a], [x, c, b], [a, b, c]]);
        ([a, b, c], [(a, x), (b, y), (c, z)])
    }

    pub fn build(&self) -> Result<PlaneGraph, PlaneError> {
        PlaneGraph::from_triangles(self.n, &self.faces, self.outer)
    }
}

/// The triangle on vertices `0, 1, 2`.
pub fn triangle() -> PlaneGraph {
    TriangleSoup::base().build().expect("base triangle is valid")
}

pub fn k4() -> PlaneGraph {
    let mut soup = TriangleSoup::base();
    soup.stack(0);
    soup.build().expect("K4 is valid")
}

pub fn octahedron() -> PlaneGraph {
    let mut soup = TriangleSoup::base();
    soup.insert_octahedral(0);
    soup.build().expect("octahedron is valid")
}

/// Top vertex 0, upper ring 1..=5, lower ring 6..=10, bottom vertex 11.
pub fn icosahedron() -> PlaneGraph {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut faces = Vec::with_capacity(20);
    for i in 0..5 {
        faces.push([0, up(i), up(i + 1)]);
    }
    for i in 0..5 {
        faces.push([up(i), low(i), low(i + 1)]);
        faces.push([up(i), low(i + 1), up(i + 1)]);
        faces.push([11, low(i + 1), low(i)]);
    }
    PlaneGraph::from_triangles(12, &faces, 0).expect("icosahedron is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::GraphKind;

    #[test]
    fn named_graphs() {
        let t = triangle();
        assert_eq!((t.vertex_count(), t.edge_count()), (3, 3));
        let k = k4();
        assert_eq!((k.vertex_count(), k.edge_count()), (4, 6));
        assert_eq!(k.classify().kind, GraphKind::PlanarTriangulation);
        let o = octahedron();
        assert_eq!((o.vertex_count(), o.edge_count()), (6, 12));
        assert!(o.degrees().iter().all(|&d| d == 4));
        let i = icosahedron();
        assert_eq!((i.vertex_count(), i.edge_count()), (12, 30));
        assert_eq!(i.classify().min_degree, 5);
        assert!(i.degrees().iter().all(|&d| d == 5));
        assert!(i.classify().is_planar_triangulation());
    }

    #[test]
    fn soup_find_matches_rotations_of_the_walk() {
        let soup = TriangleSoup::base();
        assert_eq!(soup.find([1, 2, 0]), Some(0));
        assert_eq!(soup.find([2, 1, 0]), Some(1));
        assert_eq!(soup.find([0, 1, 3]), None);
    }

    #[test]
    fn trace_json_round_trip() {
        let (_, trace) = recursive_eulerian(2, 5).unwrap();
        assert_eq!(BuildTrace::from_json(&trace.to_json()).unwrap(), trace);
    }

    #[test]
    fn replay_rejects_foreign_faces() {
        let trace = BuildTrace {
            kind: TraceKind::Stacked,
            steps: vec![TraceStep { face: [0, 1, 7], inserted: vec![3], pairing: None }],
        };
        assert!(matches!(trace.replay(), Err(GenError::Replay { step: 0, .. })));
    }
}
