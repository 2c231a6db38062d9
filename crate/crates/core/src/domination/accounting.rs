//! Instance-level recomputation of the counting argument behind the
//! combinator's size bounds.
//!
//! With `S` the union of the `S_i`, `O` the outer boundary of `G`,
//! `Y = S ∩ O`, `X = S \ Y` and `H = G - S`, every quantity the argument
//! uses is recomputed and every intermediate comparison is checked.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_independent, Breach, DomError, DominationResult};
use crate::coloring::Coloring;
use crate::plane_graph::{GraphKind, PlaneGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub holds: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "ok" } else { "FAILED" };
        write!(f, "{}: {} {} {} {verdict}", self.name, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountingReport {
    pub n: usize,
    /// `|V(H)|`.
    pub n_h: usize,
    pub s: usize,
    pub x: usize,
    pub y: usize,
    /// Vertices on the outer boundary of `G`.
    pub o: usize,
    /// Faces of degree 4 in `H`, outer face included.
    pub f4: usize,
    /// Inner faces of degree 4 in `H`.
    pub f4_inner: usize,
    /// Size of the selected `C_i ∪ S_i`.
    pub selected: usize,
    pub checks: Vec<Check>,
}

impl AccountingReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, lhs: usize, relation: Relation, rhs: i64) {
        let lhs = lhs as i64;
        self.0.push(Check { name: name.to_string(), lhs, relation, rhs, holds: relation.holds(lhs, rhs) });
    }
}

/// Like [`combinator_accounting`], but any failed check becomes a breach
/// carrying the instance.
pub fn verify_combinator_accounting(
    g: &PlaneGraph,
    c: &Coloring,
    result: &DominationResult,
) -> Result<AccountingReport, DomError> {
    let report = combinator_accounting(g, c, result)?;
    if report.all_hold() {
        return Ok(report);
    }
    let partition = result.partition.as_ref().expect("checked by combinator_accounting");
    let failed: Vec<String> = report.failures().map(ToString::to_string).collect();
    Err(Breach::new(format!("accounting failed: {}", failed.join("; ")), g, Some(c))
        .with_set("S", &partition.joint())
        .with_set("result", &result.set)
        .into_error())
}

/// Recomputes the accounting for a combinator run with a 4-coloring without
/// empty classes on a near triangulation, reporting every check.
pub fn combinator_accounting(
    g: &PlaneGraph,
    c: &Coloring,
    result: &DominationResult,
) -> Result<AccountingReport, DomError> {
    let class = g.classify();
    let Some(partition) = &result.partition else {
        return Err(DomError::Precondition("result carries no per-class sets".into()));
    };
    if c.k() != 4 || c.class_sizes().contains(&0) {
        return Err(DomError::Precondition("needs a 4-coloring with every class nonempty".into()));
    }
    if !class.is_near_triangulation() {
        return Err(DomError::Precondition("graph is not a near triangulation".into()));
    }

    let n = g.vertex_count();
    let s = partition.joint();
    let outer = g.outer_face().vertex_set();
    let y = s.intersection(&outer);
    let x = s.difference(&y);
    let deletion = g.delete_vertices(&s)?;
    let h = &deletion.graph;
    let hist = h.face_degree_histogram();
    let f = |i: usize| hist.get(&i).copied().unwrap_or(0);
    let f4 = f(4);
    let even_faces: usize = hist.iter().filter(|(&d, _)| d % 2 == 0).map(|(_, &c)| c).sum();
    let h_outer = h.outer_face_id();
    let f4_inner = f4 - usize::from(h.outer_face().degree == 4);
    let o = outer.len();
    let res = result.size;

    let mut y_misplaced = 0;
    for v in y.iter() {
        if deletion.face_containing(v) != Some(h_outer) {
            y_misplaced += 1;
        }
    }
    let mut x_outer = 0;
    let mut x_odd = 0;
    let mut x_many_colors = 0;
    let mut x4 = 0;
    let mut per_face = vec![0usize; h.face_count()];
    for v in x.iter() {
        let Some(face) = deletion.face_containing(v) else {
            x_outer += 1;
            continue;
        };
        per_face[face] += 1;
        if face == h_outer {
            x_outer += 1;
            continue;
        }
        let boundary = &h.face(face).boundary;
        if boundary.len() % 2 == 1 {
            x_odd += 1;
        }
        if boundary.len() == 4 {
            x4 += 1;
        }
        let classes: VertexSet = boundary.iter().map(|&w| c.class_of(deletion.new_to_old[w])).collect();
        if classes.len() > 2 {
            x_many_colors += 1;
        }
    }
    let max_x_per_inner_face =
        per_face.iter().enumerate().filter(|&(id, _)| id != h_outer).map(|(_, &k)| k).max().unwrap_or(0);
    let class_sum: usize = result.per_class.iter().sum();
    let faces = h.faces_inequality();

    let (n_i, n_h, f4_i, o_i) = (n as i64, h.vertex_count() as i64, f4 as i64, o as i64);
    let mut checks = Checks(Vec::new());
    use Relation::*;
    checks.push("s_independent", usize::from(!is_independent(g, &s)), Eq, 0);
    checks.push("h_connected", h.component_count(), Eq, 1);
    checks.push("y_in_outer_face", y_misplaced, Eq, 0);
    checks.push("x_in_inner_faces", x_outer, Eq, 0);
    checks.push("x_per_inner_face", max_x_per_inner_face, Le, 1);
    checks.push("x_face_two_classes", x_many_colors, Eq, 0);
    checks.push("x_face_even", x_odd, Eq, 0);
    checks.push("x_at_most_even_faces", x.len(), Le, even_faces as i64);
    checks.push("face_count_inequality", faces.lhs as usize, Le, faces.rhs);
    checks.push("face_count_strengthened", 2 * faces.lhs as usize, Le, faces.strengthened_rhs_twice);
    checks.push("two_x", 2 * x.len(), Le, n_h - 2 + f4_i);
    checks.push("three_x_plus_y", 3 * x.len() + y.len(), Le, n_i - 2 + f4_i);
    checks.push("two_y", 2 * y.len(), Le, o_i);
    checks.push("three_s", 3 * s.len(), Le, n_i - 2 + f4_i + o_i);
    checks.push("class_sum", class_sum, Eq, n_i + s.len() as i64);
    checks.push("inner_f4_is_x4", f4_inner, Eq, x4);
    checks.push("f4_inner_slack", f4, Le, f4_inner as i64 + 1);
    checks.push("f4_plus_o", f4 + o, Le, n_i + 1);
    checks.push("selected_twelfths", 12 * res, Le, 4 * n_i + f4_i + o_i - 2);
    checks.push("selected_five_twelfths", 12 * res, Lt, 5 * n_i);
    if class.kind == GraphKind::PlanarTriangulation {
        checks.push("o_triangle", o, Eq, 3);
        checks.push("y_at_most_one", y.len(), Le, 1);
        checks.push("three_s_planar", 3 * s.len(), Le, n_i + f4_i);
        checks.push("four_f4", 4 * f4, Le, 2 * n_i - 4);
        checks.push("two_f4", 2 * f4, Lt, n_i);
        checks.push("two_s", 2 * s.len(), Lt, n_i);
        checks.push("selected_quarter", 4 * res, Le, n_i + s.len() as i64);
        checks.push("selected_three_eighths", 8 * res, Lt, 3 * n_i);
        if class.min_degree >= 5 {
            checks.push("f4_zero", f4, Eq, 0);
            checks.push("three_s_min_degree5", 3 * s.len(), Le, n_i);
            checks.push("selected_third", 3 * res, Le, n_i);
        }
    }

    Ok(AccountingReport {
        n,
        n_h: h.vertex_count(),
        s: s.len(),
        x: x.len(),
        y: y.len(),
        o,
        f4,
        f4_inner,
        selected: res,
        checks: checks.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::four_coloring;
    use crate::domination::class_combinator;
    use crate::generators::{icosahedron, min_degree5_sample, near_triangulation_from, random_triangulation};

    fn run(g: &PlaneGraph) -> AccountingReport {
        let c = four_coloring(g).unwrap();
        let r = class_combinator(g, &c).unwrap();
        verify_combinator_accounting(g, &c, &r).unwrap()
    }

    #[test]
    fn random_triangulations_pass() {
        for seed in 0..15 {
            let g = random_triangulation(30, seed, 90).unwrap();
            let report = run(&g);
            assert!(report.y <= 1);
            assert!(report.checks.iter().any(|c| c.name == "three_s_planar"));
        }
    }

    #[test]
    fn near_triangulations_pass() {
        for seed in 0..15 {
            let g = random_triangulation(25, seed, 60).unwrap();
            let near = near_triangulation_from(&g, (seed as usize) % 25).unwrap();
            let report = run(&near);
            let planar = near.classify().is_planar_triangulation();
            assert_eq!(report.checks.iter().any(|c| c.name == "o_triangle"), planar);
        }
    }

    #[test]
    fn min_degree_five_has_no_quadrilaterals() {
        assert_eq!(run(&icosahedron()).f4, 0);
        let g = min_degree5_sample(18, 2, 20).unwrap();
        assert_eq!(run(&g).f4, 0);
    }

    #[test]
    fn shortcut_results_are_rejected() {
        let g = crate::generators::triangle();
        let c = four_coloring(&g).unwrap();
        let r = class_combinator(&g, &c).unwrap();
        assert!(matches!(verify_combinator_accounting(&g, &c, &r), Err(DomError::Precondition(_))));
    }
}
