use serde::{Deserialize, Serialize};

use super::{OuterHint, PlaneError, PlaneGraph};

/// Spanning structure of the graph induced by a vertex's neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborhoodStructure {
    /// Neighbors in the order of a Hamiltonian cycle of `G[N(v)]`.
    SpanningCycle(Vec<usize>),
    /// Neighbors in the order of a Hamiltonian path of `G[N(v)]`.
    SpanningPath(Vec<usize>),
}

impl NeighborhoodStructure {
    pub fn is_cycle(&self) -> bool {
        matches!(self, Self::SpanningCycle(_))
    }
}

/// Both sides of the face-count inequality
/// `f4 + 2 * sum_{i>=6} f_i <= |V| - 2 - (f3 + 3 f5) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesInequality {
    pub lhs: i64,
    pub rhs: i64,
    /// Twice the strengthened right-hand side, kept integral.
    pub strengthened_rhs_twice: i64,
    pub holds: bool,
    pub strengthened_holds: bool,
}

impl FacesInequality {
    pub fn strengthened_rhs(&self) -> f64 {
        self.strengthened_rhs_twice as f64 / 2.0
    }
}

impl PlaneGraph {
    /// Hamiltonian cycle, or failing that a Hamiltonian path, of `G[N(v)]`.
    ///
    /// The search is exhaustive; neighbors are tried in rotation order so the
    /// link cycle of an interior vertex is found first. For near
    /// triangulations on at least four vertices, a path is only legitimate
    /// when `v` lies on a non-triangular outer face; anything else is
    /// reported as an invariant breach.
    pub fn neighborhood_structure(&self, v: usize) -> Result<NeighborhoodStructure, PlaneError> {
        let nbrs = self.neighbors(v)?.to_vec();
        let k = nbrs.len();
        // Candidates ordered by rotational distance, so the link walk is tried first.
        let adj: Vec<Vec<usize>> = (0..k)
            .map(|i| (1..k).map(|d| (i + d) % k).filter(|&j| self.has_edge(nbrs[i], nbrs[j])).collect())
            .collect();

        let structure = if k >= 3 {
            hamiltonian(&adj, true)
                .map(|order| NeighborhoodStructure::SpanningCycle(order.iter().map(|&i| nbrs[i]).collect()))
        } else {
            None
        }
        .or_else(|| {
            hamiltonian(&adj, false)
                .map(|order| NeighborhoodStructure::SpanningPath(order.iter().map(|&i| nbrs[i]).collect()))
        });

        let structure = structure.ok_or_else(|| {
            PlaneError::InvariantBreach(format!("neighborhood of {v} has neither spanning cycle nor path"))
        })?;

        let class = self.classify();
        if class.is_near_triangulation() && self.vertex_count() >= 4 && !structure.is_cycle() {
            let outer = self.outer_face();
            if !(outer.contains(v) && outer.degree != 3) {
                return Err(PlaneError::InvariantBreach(format!(
                    "vertex {v} has only a spanning path but is not on a non-triangular outer face"
                )));
            }
        }
        Ok(structure)
    }

    /// Evaluates the face-count inequality and its strengthened form.
    pub fn faces_inequality(&self) -> FacesInequality {
        let hist = self.face_degree_histogram();
        let f = |i: usize| *hist.get(&i).unwrap_or(&0) as i64;
        let large: i64 = hist.iter().filter(|(&d, _)| d >= 6).map(|(_, &c)| c as i64).sum();
        let lhs = f(4) + 2 * large;
        let rhs = self.vertex_count() as i64 - 2;
        let strengthened_rhs_twice = 2 * rhs - (f(3) + 3 * f(5));
        FacesInequality {
            lhs,
            rhs,
            strengthened_rhs_twice,
            holds: lhs <= rhs,
            strengthened_holds: 2 * lhs <= strengthened_rhs_twice,
        }
    }

    /// Replaces edge `uv` by the opposite diagonal `xy` of its two triangles.
    pub fn flip_edge(&self, u: usize, v: usize) -> Result<PlaneGraph, PlaneError> {
        let illegal = |reason: &str| PlaneError::IllegalFlip { u, v, reason: reason.to_string() };
        if !self.has_edge(u, v) {
            return Err(PlaneError::NoSuchEdge(u, v));
        }
        let left = self.face_of_dart(u, v).expect("edge exists");
        let right = self.face_of_dart(v, u).expect("edge exists");
        if left == self.outer_face_id() || right == self.outer_face_id() {
            return Err(illegal("edge lies on the outer face"));
        }
        if self.face(left).degree != 3 || self.face(right).degree != 3 {
            return Err(illegal("incident faces are not both triangles"));
        }
        // Face of u->v is u,v,x; face of v->u is v,u,y.
        let x = self.rotation_succ(v, u).expect("edge exists");
        let y = self.rotation_succ(u, v).expect("edge exists");
        if x == y {
            return Err(illegal("both incident triangles share their apex"));
        }
        if self.has_edge(x, y) {
            return Err(illegal("the opposite diagonal is already an edge"));
        }
        let mut rot = self.rotations().to_vec();
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
        // At x, v is followed by u; y goes between them. At y, u is followed by v.
        let pos = rot[x].iter().position(|&w| w == v).expect("x adjacent to v");
        rot[x].insert(pos + 1, y);
        let pos = rot[y].iter().position(|&w| w == u).expect("y adjacent to u");
        rot[y].insert(pos + 1, x);
        let outer = self.outer_face();
        let hint = OuterHint::Dart(outer.boundary[0], outer.boundary[1 % outer.boundary.len()]);
        PlaneGraph::from_rotations(rot, hint)
    }

    /// Removes edge `uv`, merging its two faces. The outer face of the
    /// result contains the old outer face.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<PlaneGraph, PlaneError> {
        if !self.has_edge(u, v) {
            return Err(PlaneError::NoSuchEdge(u, v));
        }
        let outer = self.outer_face();
        let walk = &outer.boundary;
        let dart = (0..walk.len()).map(|i| (walk[i], walk[(i + 1) % walk.len()])).find(|&d| d != (u, v) && d != (v, u));
        let mut rot = self.rotations().to_vec();
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
        let hint = match dart {
            Some((a, b)) => OuterHint::Dart(a, b),
            None => OuterHint::Boundary(vec![u]),
        };
        PlaneGraph::from_rotations(rot, hint)
    }

    /// Edges whose flip is legal.
    pub fn flippable_edges(&self) -> Vec<(usize, usize)> {
        self.edges().filter(|&(u, v)| self.flip_edge(u, v).is_ok()).collect()
    }
}

/// Exhaustive Hamiltonian cycle/path search on a small graph.
fn hamiltonian(adj: &[Vec<usize>], cycle: bool) -> Option<Vec<usize>> {
    let k = adj.len();
    if k == 0 {
        return None;
    }
    // Path starts: vertices not joined to their rotational predecessor first.
    let starts: Vec<usize> = if cycle {
        vec![0]
    } else {
        let (gaps, rest): (Vec<usize>, Vec<usize>) = (0..k).partition(|&i| !adj[i].contains(&((i + k - 1) % k)));
        gaps.into_iter().chain(rest).collect()
    };
    for s in starts {
        let mut path = vec![s];
        let mut used = vec![false; k];
        used[s] = true;
        if extend(adj, &mut path, &mut used, cycle) {
            return Some(path);
        }
    }
    None
}

fn extend(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], cycle: bool) -> bool {
    let k = adj.len();
    let last = *path.last().unwrap();
    if path.len() == k {
        return !cycle || adj[last].contains(&path[0]);
    }
    for &next in &adj[last] {
        if used[next] {
            continue;
        }
        used[next] = true;
        path.push(next);
        if extend(adj, path, used, cycle) {
            return true;
        }
        path.pop();
        used[next] = false;
    }
    false
}
