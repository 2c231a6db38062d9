//! Combinatorial plane graphs given by a rotation system.
//!
//! Each vertex stores the counter-clockwise cyclic order of its neighbors.
//! Faces are recovered by face walks: the half-edge `u -> v` is followed by
//! `v -> w`, where `w` is the successor of `u` in the rotation of `v`. Every
//! half-edge lies on exactly one face, and the face of `u -> v` occupies the
//! angular sector at `v` between `u` and its rotation successor.
//!
//! A `PlaneGraph` is immutable once built; every constructor validates the
//! rotation system (symmetry, simplicity, genus zero) and resolves which face
//! is the outer one.

mod classify;
mod deletion;
pub mod pgr;
mod structure;

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::VertexSet;

pub use classify::{GraphClass, GraphKind};
pub use deletion::Deletion;
pub use structure::{FacesInequality, NeighborhoodStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("a plane graph needs at least one vertex")]
    Empty,
    #[error("expected {expected} rotation lists, found {found}")]
    RotationCount { expected: usize, found: usize },
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(usize, usize),
    #[error("rotation system is not planar: V - E + F = {euler}, expected {expected}")]
    NotPlanar { euler: i64, expected: i64 },
    #[error("outer face hint {0:?} matches no face walk")]
    OuterNotFound(Vec<usize>),
    #[error("outer face hint is ambiguous: {0} faces qualify")]
    OuterAmbiguous(usize),
    #[error("edge {0}-{1} is not in the graph")]
    NoSuchEdge(usize, usize),
    #[error("cannot flip edge {u}-{v}: {reason}")]
    IllegalFlip { u: usize, v: usize, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error("pgr parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// How the outer face is chosen when building a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OuterHint {
    /// Cyclic vertex sequence of the outer face walk, in walk order.
    Boundary(Vec<usize>),
    /// The face lying on this half-edge.
    Dart(usize, usize),
    /// The unique face of maximum degree.
    MaxDegree,
}

/// A face: the cyclic vertex sequence of one face walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    /// Tails of the half-edges of the walk, in walk order. An isolated vertex
    /// has a single-vertex boundary and degree 0.
    pub boundary: Vec<usize>,
    /// Length of the face walk (vertices counted with multiplicity).
    pub degree: usize,
}

impl Face {
    pub fn contains(&self, v: usize) -> bool {
        self.boundary.contains(&v)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.boundary.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotations: Vec<Vec<usize>>,
    edge_count: usize,
    faces: Vec<Face>,
    /// `dart_face[u][i]` is the face of the half-edge `u -> rotations[u][i]`.
    dart_face: Vec<Vec<usize>>,
    /// Face representing each isolated vertex.
    point_face: Vec<Option<usize>>,
    outer: usize,
    components: usize,
}

impl PlaneGraph {
    /// Builds a plane graph from counter-clockwise rotations and validates it.
    pub fn from_rotations(rotations: Vec<Vec<usize>>, outer: OuterHint) -> Result<Self, PlaneError> {
        let n = rotations.len();
        if n == 0 {
            return Err(PlaneError::Empty);
        }
        for (u, rot) in rotations.iter().enumerate() {
            for (i, &v) in rot.iter().enumerate() {
                if v >= n {
                    return Err(PlaneError::UnknownVertex(v));
                }
                if v == u {
                    return Err(PlaneError::Loop(u));
                }
                if rot[..i].contains(&v) {
                    return Err(PlaneError::ParallelEdge(u.min(v), u.max(v)));
                }
            }
        }
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if !rotations[v].contains(&u) {
                    return Err(PlaneError::Asymmetric(u, v));
                }
            }
        }

        let rotations: Vec<Vec<usize>> = rotations.into_iter().map(canonical_rotation).collect();
        let edge_count = rotations.iter().map(Vec::len).sum::<usize>() / 2;

        let position: HashMap<(usize, usize), usize> = rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().enumerate().map(move |(i, &v)| ((u, v), i)))
            .collect();

        let mut faces = Vec::new();
        let mut dart_face: Vec<Vec<usize>> = rotations.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut point_face = vec![None; n];
        for u in 0..n {
            if rotations[u].is_empty() {
                let id = faces.len();
                faces.push(Face { id, boundary: vec![u], degree: 0 });
                point_face[u] = Some(id);
                continue;
            }
            for i in 0..rotations[u].len() {
                if dart_face[u][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut a, mut ai) = (u, i);
                loop {
                    dart_face[a][ai] = id;
                    boundary.push(a);
                    let b = rotations[a][ai];
                    let pos_in_b = position[&(b, a)];
                    let bi = (pos_in_b + 1) % rotations[b].len();
                    a = b;
                    ai = bi;
                    if dart_face[a][ai] != usize::MAX {
                        break;
                    }
                }
                if (a, ai) != (u, i) {
                    return Err(PlaneError::InvariantBreach(format!(
                        "face walk from {u}->{} did not close",
                        rotations[u][i]
                    )));
                }
                let degree = boundary.len();
                faces.push(Face { id, boundary, degree });
            }
        }

        let components = count_components(&rotations);
        let euler = n as i64 - edge_count as i64 + faces.len() as i64;
        let expected = 2 * components as i64;
        if euler != expected {
            return Err(PlaneError::NotPlanar { euler, expected });
        }

        let mut graph = PlaneGraph { rotations, edge_count, faces, dart_face, point_face, outer: 0, components };
        graph.outer = graph.resolve_outer(&outer)?;
        Ok(graph)
    }

    /// Builds a plane graph from oriented triangular faces.
    ///
    /// Each triple `(a, b, c)` is a face walk `a -> b -> c -> a`; together the
    /// triples must use every half-edge exactly once. `outer` indexes the
    /// triple that becomes the outer face.
    pub fn from_triangles(n: usize, triangles: &[[usize; 3]], outer: usize) -> Result<Self, PlaneError> {
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
        for t in triangles {
            for k in 0..3 {
                let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                if a >= n || b >= n || c >= n {
                    return Err(PlaneError::UnknownVertex(a.max(b).max(c)));
                }
                // Walk a -> b -> c means c follows a in the rotation of b.
                if succ[b].insert(a, c).is_some() {
                    return Err(PlaneError::InvariantBreach(format!("half-edge {a}->{b} used twice")));
                }
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, map) in succ.iter().enumerate() {
            let Some(&start) = map.keys().min() else {
                rotations.push(Vec::new());
                continue;
            };
            let mut rot = vec![start];
            let mut cur = start;
            loop {
                let next = *map
                    .get(&cur)
                    .ok_or_else(|| PlaneError::InvariantBreach(format!("rotation of {v} is not closed at {cur}")))?;
                if next == start {
                    break;
                }
                if rot.len() > map.len() {
                    return Err(PlaneError::InvariantBreach(format!("rotation of {v} does not cycle")));
                }
                rot.push(next);
                cur = next;
            }
            if rot.len() != map.len() {
                return Err(PlaneError::InvariantBreach(format!("vertex {v} is pinched (several corners)")));
            }
            rotations.push(rot);
        }
        let t = triangles.get(outer).ok_or_else(|| PlaneError::OuterNotFound(Vec::new()))?;
        Self::from_rotations(rotations, OuterHint::Dart(t[0], t[1]))
    }

    fn resolve_outer(&self, hint: &OuterHint) -> Result<usize, PlaneError> {
        match hint {
            OuterHint::Dart(u, v) => self.face_of_dart(*u, *v).ok_or(PlaneError::NoSuchEdge(*u, *v)),
            OuterHint::Boundary(seq) => {
                let found: Vec<usize> =
                    self.faces.iter().filter(|f| cyclic_eq(&f.boundary, seq)).map(|f| f.id).collect();
                match found.len() {
                    0 => Err(PlaneError::OuterNotFound(seq.clone())),
                    1 => Ok(found[0]),
                    k => Err(PlaneError::OuterAmbiguous(k)),
                }
            }
            OuterHint::MaxDegree => {
                let max = self.faces.iter().map(|f| f.degree).max().unwrap_or(0);
                let found: Vec<usize> = self.faces.iter().filter(|f| f.degree == max).map(|f| f.id).collect();
                if found.len() == 1 {
                    Ok(found[0])
                } else {
                    Err(PlaneError::OuterAmbiguous(found.len()))
                }
            }
        }
    }

    /// Same embedding with a different outer face.
    pub fn with_outer(&self, hint: OuterHint) -> Result<Self, PlaneError> {
        let mut g = self.clone();
        g.outer = g.resolve_outer(&hint)?;
        Ok(g)
    }

    /// Same embedding with face `id` as the outer face.
    pub fn with_outer_face_id(&self, id: usize) -> Result<Self, PlaneError> {
        if id >= self.faces.len() {
            return Err(PlaneError::Precondition(format!("no face with id {id}")));
        }
        let mut g = self.clone();
        g.outer = id;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// Neighbors of `v` in counter-clockwise order. Panics on unknown `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn neighbors(&self, v: usize) -> Result<&[usize], PlaneError> {
        self.rotations.get(v).map(Vec::as_slice).ok_or(PlaneError::UnknownVertex(v))
    }

    pub fn degree(&self, v: usize) -> Result<usize, PlaneError> {
        self.neighbors(v).map(<[usize]>::len)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rotations.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotations.get(u).is_some_and(|r| r.contains(&v))
    }

    /// Edges `(u, v)` with `u < v`, in ascending order of `u` then rotation order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rotations.iter().enumerate().flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Open neighborhood `N(S)`; may contain members of `S`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, PlaneError> {
        let mut out = Vec::new();
        for v in s {
            out.extend_from_slice(self.neighbors(v)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Closed neighborhood `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet, PlaneError> {
        Ok(self.open_neighborhood(s)?.union(s))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn outer_face_id(&self) -> usize {
        self.outer
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    /// Face lying on the half-edge `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        let i = self.rotations.get(u)?.iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    pub(crate) fn point_face(&self, v: usize) -> Option<usize> {
        self.point_face[v]
    }

    /// Number of faces of each degree.
    pub fn face_degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for f in &self.faces {
            *hist.entry(f.degree).or_insert(0) += 1;
        }
        hist
    }

    /// Successor of `u` in the rotation of `v`.
    pub fn rotation_succ(&self, v: usize, u: usize) -> Option<usize> {
        let rot = self.rotations.get(v)?;
        let i = rot.iter().position(|&w| w == u)?;
        Some(rot[(i + 1) % rot.len()])
    }

    /// Predecessor of `u` in the rotation of `v`.
    pub fn rotation_pred(&self, v: usize, u: usize) -> Option<usize> {
        let rot = self.rotations.get(v)?;
        let i = rot.iter().position(|&w| w == u)?;
        Some(rot[(i + rot.len() - 1) % rot.len()])
    }

    /// Whether every vertex lies on some triangle (3-cycle).
    pub fn every_vertex_in_triangle(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let rot = &self.rotations[v];
            rot.iter().enumerate().any(|(i, &a)| rot[i + 1..].iter().any(|&b| self.has_edge(a, b)))
        })
    }

    /// Outer boundary rotated to start at its lexicographically smallest rotation.
    pub fn canonical_outer_boundary(&self) -> Vec<usize> {
        min_rotation(&self.outer_face().boundary)
    }
}

fn canonical_rotation(mut rot: Vec<usize>) -> Vec<usize> {
    if let Some(i) = rot.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
        rot.rotate_left(i);
    }
    rot
}

fn min_rotation(seq: &[usize]) -> Vec<usize> {
    (0..seq.len())
        .map(|i| {
            let mut r = seq.to_vec();
            r.rotate_left(i);
            r
        })
        .min()
        .unwrap_or_default()
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|shift| (0..a.len()).all(|i| a[(i + shift) % a.len()] == b[i]))
}

fn count_components(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

pub(crate) fn is_connected_without(adj: &[Vec<usize>], removed: &[bool]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Triangle 0,1,2 with outer walk 0,2,1.
    pub fn triangle() -> PlaneGraph {
        PlaneGraph::from_rotations(vec![vec![1, 2], vec![2, 0], vec![0, 1]], OuterHint::Dart(0, 2)).unwrap()
    }

    /// K4: outer triangle 0,2,1 and vertex 3 inside.
    pub fn k4() -> PlaneGraph {
        PlaneGraph::from_triangles(4, &[[0, 2, 1], [0, 1, 3], [1, 2, 3], [2, 0, 3]], 0).unwrap()
    }

    /// Octahedron: outer triangle 0,2,1; inner triangle 3,4,5 with 3~1,2; 4~0,2; 5~0,1.
    pub fn octahedron() -> PlaneGraph {
        PlaneGraph::from_triangles(
            6,
            &[[0, 2, 1], [0, 1, 5], [1, 2, 3], [2, 0, 4], [1, 3, 5], [2, 4, 3], [0, 5, 4], [3, 4, 5]],
            0,
        )
        .unwrap()
    }

    /// 4-cycle 0,1,2,3.
    pub fn square() -> PlaneGraph {
        PlaneGraph::from_rotations(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]], OuterHint::Dart(0, 3)).unwrap()
    }

    /// Hexagon 0..5 fan-triangulated from 0; outer face is the hexagon.
    pub fn hex_fan() -> PlaneGraph {
        let rot = vec![vec![1, 2, 3, 4, 5], vec![2, 0], vec![3, 0, 1], vec![4, 0, 2], vec![5, 0, 3], vec![0, 4]];
        PlaneGraph::from_rotations(rot, OuterHint::MaxDegree).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn k4_has_four_triangles() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.face_count(), 4);
        assert!(g.faces().iter().all(|f| f.degree == 3));
    }

    #[test]
    fn octahedron_faces() {
        let g = octahedron();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.face_count(), 8);
        assert_eq!(g.face_degree_histogram(), BTreeMap::from([(3, 8)]));
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn square_has_two_quadrilaterals() {
        assert_eq!(square().face_degree_histogram(), BTreeMap::from([(4, 2)]));
    }

    #[test]
    fn one_sided_edge_is_rejected() {
        let err = PlaneGraph::from_rotations(vec![vec![1, 2], vec![2], vec![0, 1]], OuterHint::MaxDegree).unwrap_err();
        assert_eq!(err, PlaneError::Asymmetric(0, 1));
    }

    #[test]
    fn loops_and_multi_edges_are_rejected() {
        let loop_err = PlaneGraph::from_rotations(vec![vec![0]], OuterHint::MaxDegree).unwrap_err();
        assert_eq!(loop_err, PlaneError::Loop(0));
        let multi = PlaneGraph::from_rotations(vec![vec![1, 1], vec![0, 0]], OuterHint::MaxDegree).unwrap_err();
        assert_eq!(multi, PlaneError::ParallelEdge(0, 1));
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // K4 with one vertex's rotation reversed has genus 1.
        let rot = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]];
        assert!(matches!(PlaneGraph::from_rotations(rot, OuterHint::MaxDegree), Err(PlaneError::NotPlanar { .. })));
    }

    #[test]
    fn outer_hint_must_match_a_face() {
        let rot = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
        assert!(PlaneGraph::from_rotations(rot.clone(), OuterHint::Boundary(vec![0, 2, 1])).is_ok());
        assert!(PlaneGraph::from_rotations(rot.clone(), OuterHint::Boundary(vec![2, 1, 0])).is_ok());
        assert_eq!(
            PlaneGraph::from_rotations(rot, OuterHint::Boundary(vec![0, 1])).unwrap_err(),
            PlaneError::OuterNotFound(vec![0, 1])
        );
    }

    #[test]
    fn hex_fan_outer_face_is_hexagon() {
        let g = hex_fan();
        assert_eq!(g.outer_face().degree, 6);
        assert_eq!(g.face_count(), 5);
    }

    #[test]
    fn neighborhoods() {
        let g = k4();
        assert_eq!(g.closed_neighborhood(&VertexSet::singleton(0)).unwrap().len(), 4);
        assert!(g.open_neighborhood(&VertexSet::new()).unwrap().is_empty());
        let o = octahedron();
        // 0 and 3 are antipodal.
        assert!(!o.has_edge(0, 3));
        assert_eq!(o.closed_neighborhood(&VertexSet::from([0, 3])).unwrap().len(), 6);
        assert_eq!(g.neighbors(9).unwrap_err(), PlaneError::UnknownVertex(9));
    }

    #[test]
    fn isolated_vertices_get_point_faces() {
        let g = PlaneGraph::from_rotations(vec![vec![1], vec![0], vec![]], OuterHint::Dart(0, 1)).unwrap();
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.face_count(), 2);
        assert_eq!(g.face_degree_histogram(), BTreeMap::from([(0, 1), (2, 1)]));
    }
}
