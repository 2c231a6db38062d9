use super::{OuterHint, PlaneError, PlaneGraph};
use crate::vertex_set::VertexSet;

/// Result of deleting a vertex set from a plane graph.
///
/// Survivors are relabeled in ascending order of their old ids. Face ids of
/// the result are unrelated to those of the original graph.
#[derive(Debug, Clone)]
pub struct Deletion {
    pub graph: PlaneGraph,
    /// Old id -> new id, `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
    /// New id -> old id.
    pub new_to_old: Vec<usize>,
    /// Deleted vertices (old ids).
    pub deleted: VertexSet,
    /// For each deleted vertex (same order as `deleted`), the face of the
    /// result whose region contains it; `None` when none of its neighbors
    /// survive.
    pub containing_face: Vec<Option<usize>>,
}

impl Deletion {
    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn face_containing(&self, old_vertex: usize) -> Option<usize> {
        let idx = self.deleted.as_slice().binary_search(&old_vertex).ok()?;
        self.containing_face[idx]
    }
}

impl PlaneGraph {
    /// Deletes `s`, keeping the induced embedding of the survivors.
    ///
    /// The outer face of the result is the face that contains the old outer
    /// face. Deleting every vertex is rejected.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Deletion, PlaneError> {
        let n = self.vertex_count();
        if let Some(bad) = s.iter().find(|&v| v >= n) {
            return Err(PlaneError::UnknownVertex(bad));
        }
        if s.len() == n {
            return Err(PlaneError::Precondition("cannot delete every vertex".into()));
        }
        let removed = s.mask(n);
        let new_to_old: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
        let mut old_to_new = vec![None; n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let rotations: Vec<Vec<usize>> =
            new_to_old.iter().map(|&old| self.rotation(old).iter().filter_map(|&w| old_to_new[w]).collect()).collect();

        // A corner of the old graph at surviving vertex `w`, starting at
        // rotation position `i`, lies in the new face of the half-edge
        // `a' -> w`, where `a'` is the nearest surviving neighbor at or
        // before position `i`.
        let corner_dart = |w: usize, i: usize| -> Option<(usize, usize)> {
            let rot = self.rotation(w);
            let d = rot.len();
            (0..d).map(|back| rot[(i + d - back) % d]).find_map(|a| old_to_new[a]).map(|a| (a, old_to_new[w].unwrap()))
        };

        let outer_hint = {
            let face = self.outer_face();
            let walk = &face.boundary;
            let start = (0..walk.len()).find(|&j| !removed[walk[j]]);
            match start {
                Some(j) if face.degree > 0 => {
                    let w = walk[j];
                    let u = walk[(j + walk.len() - 1) % walk.len()];
                    let i = self.rotation(w).iter().position(|&x| x == u).expect("walk follows edges");
                    Some(match corner_dart(w, i) {
                        Some((a, b)) => OuterHint::Dart(a, b),
                        None => OuterHint::Boundary(vec![old_to_new[w].unwrap()]),
                    })
                }
                Some(j) => old_to_new[walk[j]].map(|v| OuterHint::Boundary(vec![v])),
                None => None,
            }
        };

        let provisional = PlaneGraph::from_rotations(rotations.clone(), first_face_hint(&rotations))?;
        let graph = match outer_hint {
            Some(hint) => provisional.with_outer(hint)?,
            None => provisional,
        };

        let containing_face = s
            .iter()
            .map(|v| {
                let rot = self.rotation(v);
                rot.iter().find(|&&w| !removed[w]).map(|&w| {
                    let i = self.rotation(w).iter().position(|&x| x == v).expect("symmetric rotation");
                    match corner_dart(w, i) {
                        Some((a, b)) => graph.face_of_dart(a, b).expect("dart exists"),
                        None => graph.point_face(old_to_new[w].unwrap()).expect("isolated survivor has a point face"),
                    }
                })
            })
            .collect();

        Ok(Deletion { graph, old_to_new, new_to_old, deleted: s.clone(), containing_face })
    }
}

fn first_face_hint(rotations: &[Vec<usize>]) -> OuterHint {
    match rotations.iter().enumerate().find(|(_, r)| !r.is_empty()) {
        Some((u, r)) => OuterHint::Dart(u, r[0]),
        None => OuterHint::Boundary(vec![0]),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn octahedron_minus_vertex_is_wheel() {
        let g = octahedron();
        let d = g.delete_vertices(&VertexSet::singleton(3)).unwrap();
        let h = &d.graph;
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 8);
        // 3 was inside; the outer triangle survives.
        assert_eq!(h.outer_face().degree, 3);
        let hole = d.face_containing(3).unwrap();
        assert_eq!(h.face(hole).degree, 4);
        assert_ne!(hole, h.outer_face_id());
    }

    #[test]
    fn deleting_outer_vertex_moves_outer_face() {
        let g = octahedron();
        let d = g.delete_vertices(&VertexSet::singleton(0)).unwrap();
        assert_eq!(d.graph.outer_face().degree, 4);
        assert_eq!(d.face_containing(0), Some(d.graph.outer_face_id()));
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = octahedron();
        let d = g.delete_vertices(&VertexSet::new()).unwrap();
        assert_eq!(d.graph.rotations(), g.rotations());
        assert_eq!(d.graph.outer_face().boundary, g.outer_face().boundary);
    }

    #[test]
    fn antipodal_pair_leaves_square() {
        let g = octahedron();
        let d = g.delete_vertices(&VertexSet::from([0, 3])).unwrap();
        let h = &d.graph;
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.face_degree_histogram(), std::collections::BTreeMap::from([(4, 2)]));
        assert!(h.is_connected());
        assert_ne!(d.face_containing(0), d.face_containing(3));
    }

    #[test]
    fn disconnection_is_reported_not_rejected() {
        // Removing the hub and every other rim vertex isolates the rest.
        let g = hex_fan();
        let d = g.delete_vertices(&VertexSet::from([0, 2, 4])).unwrap();
        assert!(!d.is_connected());
        assert_eq!(d.graph.vertex_count(), 3);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        assert_eq!(k4().delete_vertices(&VertexSet::singleton(7)).unwrap_err(), PlaneError::UnknownVertex(7));
    }
}
