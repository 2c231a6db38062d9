use serde::{Deserialize, Serialize};

use super::{is_connected_without, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphKind {
    /// Every face, outer included, is a triangle.
    PlanarTriangulation,
    /// 2-connected and every inner face is a triangle.
    NearTriangulation,
    ConnectedPlane,
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    pub kind: GraphKind,
    pub min_degree: usize,
    pub is_two_connected: bool,
    pub all_degrees_even: bool,
    pub all_degrees_odd: bool,
}

impl GraphClass {
    pub fn is_planar_triangulation(&self) -> bool {
        self.kind == GraphKind::PlanarTriangulation
    }

    pub fn is_near_triangulation(&self) -> bool {
        matches!(self.kind, GraphKind::PlanarTriangulation | GraphKind::NearTriangulation)
    }
}

impl PlaneGraph {
    pub fn classify(&self) -> GraphClass {
        let degrees = self.degrees();
        let is_two_connected = self.is_two_connected();
        let outer = self.outer_face_id();
        let inner_triangles = self.faces().iter().all(|f| f.id == outer || f.degree == 3);
        let kind = if !self.is_connected() {
            GraphKind::Invalid
        } else if inner_triangles && self.outer_face().degree == 3 {
            GraphKind::PlanarTriangulation
        } else if inner_triangles && is_two_connected {
            GraphKind::NearTriangulation
        } else {
            GraphKind::ConnectedPlane
        };
        GraphClass {
            kind,
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            is_two_connected,
            all_degrees_even: degrees.iter().all(|d| d % 2 == 0),
            all_degrees_odd: degrees.iter().all(|d| d % 2 == 1),
        }
    }

    /// Connected with at least three vertices and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        let n = self.vertex_count();
        if n < 3 || !self.is_connected() {
            return false;
        }
        let mut removed = vec![false; n];
        (0..n).all(|v| {
            removed[v] = true;
            let ok = is_connected_without(self.rotations(), &removed);
            removed[v] = false;
            ok
        })
    }
}
