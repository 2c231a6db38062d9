use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::bounds::{BoundKind, BoundRecord, BoundReport, Ratio};
use crate::coloring::{require_proper, Coloring};
use crate::domination::{class_combinator, is_dominating, undominated, Breach, DomError};
use crate::plane_graph::PlaneGraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// `gamma <= n/4` for sufficiently large triangulations.
    GammaQuarter,
    /// `iota <= n/3` for triangulations.
    IotaThird,
}

impl Conjecture {
    fn bound(self, n: usize) -> Ratio {
        match self {
            Conjecture::GammaQuarter => Ratio::new(n as i64, 4),
            Conjecture::IotaThird => Ratio::new(n as i64, 3),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Tight,
    /// Above the bound on a graph too small for the conjecture to say
    /// anything.
    SmallN,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureHit {
    pub conjecture: Conjecture,
    pub verdict: Verdict,
    pub graph_id: String,
    pub n: usize,
    pub value: usize,
    pub bound: Ratio,
    pub graph: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub reports: usize,
    pub gamma_checked: usize,
    pub iota_checked: usize,
    pub hits: Vec<ConjectureHit>,
}

impl AuditSummary {
    pub fn count(&self, conjecture: Conjecture, verdict: Verdict) -> usize {
        self.hits.iter().filter(|h| h.conjecture == conjecture && h.verdict == verdict).count()
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &ConjectureHit> {
        self.hits.iter().filter(|h| h.verdict == Verdict::Counterexample)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "reports: {}", self.reports);
        for (name, conj, checked) in [
            ("gamma <= n/4", Conjecture::GammaQuarter, self.gamma_checked),
            ("iota <= n/3", Conjecture::IotaThird, self.iota_checked),
        ] {
            let _ = writeln!(
                out,
                "{name}: checked {checked}, tight {}, small-n excess {}, counterexamples {}",
                self.count(conj, Verdict::Tight),
                self.count(conj, Verdict::SmallN),
                self.count(conj, Verdict::Counterexample),
            );
        }
        for h in self.hits.iter().filter(|h| h.verdict != Verdict::Tight) {
            let _ = writeln!(out, "  {:?} {:?}: {} has {} > {}", h.conjecture, h.verdict, h.graph_id, h.value, h.bound);
        }
        out
    }
}

/// Compares exact values on planar triangulations against both
/// conjectures. Excess over `n/4` for the domination number is annotated
/// only, since that conjecture is stated for large `n` without a
/// threshold; excess over `n/3` for the independent domination number is a
/// counterexample candidate.
pub fn audit_conjectures(reports: &[BoundReport]) -> AuditSummary {
    let mut summary = AuditSummary { reports: reports.len(), ..AuditSummary::default() };
    for r in reports.iter().filter(|r| r.class.is_some_and(|c| c.is_planar_triangulation())) {
        let mut check = |conjecture: Conjecture, value: Option<usize>, over: Verdict| {
            let Some(value) = value else { return false };
            let bound = conjecture.bound(r.n);
            let verdict = if bound.admits(value as i64, crate::domination::Relation::Eq) {
                Verdict::Tight
            } else if bound.admits(value as i64, crate::domination::Relation::Lt) {
                return true;
            } else {
                over
            };
            summary.hits.push(ConjectureHit {
                conjecture,
                verdict,
                graph_id: r.graph_id.clone(),
                n: r.n,
                value,
                bound,
                graph: r.graph.clone(),
            });
            true
        };
        let gamma = check(Conjecture::GammaQuarter, r.values.gamma, Verdict::SmallN);
        let iota = check(Conjecture::IotaThird, r.values.iota, Verdict::Counterexample);
        summary.gamma_checked += usize::from(gamma);
        summary.iota_checked += usize::from(iota);
    }
    summary
}

/// Odd-degree facts for a 4-coloring of a planar triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddDegreeRecord {
    pub n: usize,
    pub odd_vertices: usize,
    /// Fraction of odd-degree vertices.
    pub alpha: Ratio,
    pub combinator: usize,
    pub iota: Option<usize>,
    pub records: Vec<BoundRecord>,
}

/// Checks that odd-degree vertices lie in no `U_i`, that every class
/// dominates when all degrees are odd, and records the combinator size (and
/// `iota`, when given) against `(2 - alpha) n / 4`. Only the first two are
/// proved; their failure is a breach. The last is recorded as a finding.
pub fn odd_degree_analysis(g: &PlaneGraph, c: &Coloring, iota: Option<usize>) -> Result<OddDegreeRecord, DomError> {
    require_proper(g, c)?;
    if !g.classify().is_planar_triangulation() {
        return Err(DomError::Precondition("graph is not a planar triangulation".into()));
    }
    if c.k() != 4 {
        return Err(DomError::Precondition(format!("needs a 4-coloring, got k = {}", c.k())));
    }
    let n = g.vertex_count();
    let odd: VertexSet = (0..n).filter(|&v| g.rotation(v).len() % 2 == 1).collect();

    for i in 0..4 {
        let stray = undominated(g, c, i).intersection(&odd);
        if !stray.is_empty() {
            return Err(Breach::new(format!("odd-degree vertices left undominated by class {i}"), g, Some(c))
                .with_set(&format!("U_{i}"), &stray)
                .into_error());
        }
    }
    if odd.len() == n {
        if let Some(i) = (0..4).find(|&i| !is_dominating(g, &c.class(i))) {
            return Err(Breach::new(format!("all degrees odd but class {i} does not dominate"), g, Some(c))
                .with_set(&format!("C_{i}"), &c.class(i))
                .into_error());
        }
    }

    let combinator = class_combinator(g, c)?.size;
    let mut records = vec![
        BoundKind::OddDomination.record(n, 0),
        BoundKind::AlphaCombinator.record(n, 4 * combinator as i64 + odd.len() as i64),
    ];
    if let Some(i) = iota {
        records.push(BoundKind::AlphaIota.record(n, 4 * i as i64 + odd.len() as i64));
    }
    Ok(OddDegreeRecord {
        n,
        odd_vertices: odd.len(),
        alpha: Ratio::new(odd.len() as i64, n as i64),
        combinator,
        iota,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::four_coloring;
    use crate::generators::{icosahedron, octahedron};
    use crate::harness::sweep::{analyze, AnalysisOptions};

    #[test]
    fn icosahedron_is_all_odd() {
        let g = icosahedron();
        let rec = odd_degree_analysis(&g, &four_coloring(&g).unwrap(), Some(2)).unwrap();
        assert_eq!(rec.alpha, Ratio::integer(1));
        assert!(rec.records.iter().all(|r| r.holds));
    }

    #[test]
    fn octahedron_degenerates_to_half() {
        let g = octahedron();
        let rec = odd_degree_analysis(&g, &four_coloring(&g).unwrap(), None).unwrap();
        assert_eq!(rec.odd_vertices, 0);
        assert_eq!(rec.records[1].rhs, Ratio::integer(12));
    }

    #[test]
    fn audit_marks_k4_tight() {
        let rep = analyze(&crate::generators::k4(), None, None, &AnalysisOptions::default());
        let summary = audit_conjectures(&[rep]);
        assert_eq!(summary.count(Conjecture::GammaQuarter, Verdict::Tight), 1);
        assert_eq!(summary.counterexamples().count(), 0);
    }
}
