use std::time::Instant;

use rayon::prelude::*;

use super::audit::odd_degree_analysis;
use super::bounds::{BoundKind, BoundReport, Values};
use super::config::{CheckToggles, Family, ParamDefault, SweepConfig};
use crate::coloring::{
    adjacent_degree4_distinct_missing, four_coloring, is_proper, is_r_dynamic, missing_colors,
    rec_eulerian_six_coloring, stacked_four_coloring, Coloring,
};
use crate::domination::{
    class_combinator, combinator_accounting, exact_gamma, exact_iota, is_dominating, is_independent,
    separation_violations, Breach, DomError, DominationResult, OracleLimit,
};
use crate::generators::{
    degree_four_components, degree_four_triangles, diamond_chain, diamond_chain_witness, icosahedron, k4, k4_chain,
    min_degree5_sample, near_triangulation_from, octahedron, odd_degree_sample, planar_three_tree,
    random_connected_plane, random_triangulation, recursive_eulerian, BuildTrace, GenError, TraceKind,
};
use crate::plane_graph::{pgr, PlaneGraph};
use crate::vertex_set::VertexSet;

/// One point of a sweep: a family, its parameters and, for seeded
/// families, the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub family: Family,
    pub params: Vec<(String, u64)>,
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn id(&self) -> String {
        let mut id = self.family.name().to_string();
        for (name, value) in &self.params {
            id.push_str(&format!(" {name}={value}"));
        }
        if let Some(seed) = self.seed {
            id.push_str(&format!(" seed={seed}"));
        }
        id
    }

    fn param(&self, name: &str) -> usize {
        let given = self.params.iter().find(|(p, _)| p == name).map(|(_, v)| *v as usize);
        given.unwrap_or_else(|| {
            let spec = self.family.params().iter().find(|p| p.name == name).expect("declared parameter");
            match spec.default.expect("required parameters are always given") {
                ParamDefault::Fixed(v) => v as usize,
                ParamDefault::TimesN(m) => m as usize * self.param("n"),
            }
        })
    }
}

/// A generated graph, plus its build trace for traced families.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub graph: PlaneGraph,
    pub trace: Option<BuildTrace>,
}

/// Every instance of the sweep, in config order.
pub fn instances(cfg: &SweepConfig) -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for fam in &cfg.families {
        for point in fam.points() {
            if fam.family.is_seeded() {
                for j in 0..cfg.seeds_per_point {
                    let seed = cfg.seed.wrapping_add(j);
                    out.push(InstanceSpec { family: fam.family, params: point.clone(), seed: Some(seed) });
                }
            } else {
                out.push(InstanceSpec { family: fam.family, params: point, seed: None });
            }
        }
    }
    out
}

/// Builds the graph; `Ok(None)` when a sampler ran out of attempts.
pub fn generate(spec: &InstanceSpec) -> Result<Option<Instance>, GenError> {
    let seed = spec.seed.unwrap_or(0);
    let p = |name: &str| spec.param(name);
    let (graph, trace) = match spec.family {
        Family::ThreeTree => {
            let (g, t) = planar_three_tree(p("n"), seed)?;
            (g, Some(t))
        }
        Family::Eulerian => {
            let (g, t) = recursive_eulerian(p("t"), seed)?;
            (g, Some(t))
        }
        Family::DiamondChain => (diamond_chain(p("k"))?, None),
        Family::K4Chain => (k4_chain(p("k"))?, None),
        Family::Random => (random_triangulation(p("n"), seed, p("flips"))?, None),
        Family::Near => {
            let n = p("n");
            let base = random_triangulation(n + 1, seed, p("flips"))?;
            (near_triangulation_from(&base, seed as usize % (n + 1))?, None)
        }
        Family::MinDegree5 => match min_degree5_sample(p("n"), seed, p("budget")) {
            Some(g) => (g, None),
            None => return Ok(None),
        },
        Family::AllOdd => match odd_degree_sample(p("n"), seed, p("budget")) {
            Some(g) => (g, None),
            None => return Ok(None),
        },
        Family::Connected => (random_connected_plane(p("n"), seed, p("removals"))?, None),
        Family::Icosahedron => (icosahedron(), None),
        Family::Octahedron => (octahedron(), None),
        Family::K4 => (k4(), None),
    };
    Ok(Some(Instance { spec: spec.clone(), graph, trace }))
}

/// What to compute per graph.
#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub iota_limit: usize,
    pub gamma_limit: usize,
    pub checks: CheckToggles,
    pub timing: bool,
}

impl From<&SweepConfig> for AnalysisOptions {
    fn from(cfg: &SweepConfig) -> Self {
        Self { iota_limit: cfg.iota_limit, gamma_limit: cfg.gamma_limit, checks: cfg.checks, timing: cfg.timing }
    }
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        (&SweepConfig::default()).into()
    }
}

/// Generates and analyzes every instance. Instances run in parallel;
/// the output keeps config order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<BoundReport> {
    let opts = AnalysisOptions::from(cfg);
    instances(cfg).par_iter().map(|spec| run_one(spec, &opts)).collect()
}

fn run_one(spec: &InstanceSpec, opts: &AnalysisOptions) -> BoundReport {
    let started = Instant::now();
    let mut report = match generate(spec) {
        Ok(Some(inst)) => analyze(&inst.graph, inst.trace.as_ref(), Some(spec.family), opts),
        Ok(None) => {
            let mut r = empty_report(spec.param_n());
            r.notes.push("sampler budget exhausted; no graph".into());
            r
        }
        Err(e) => {
            let mut r = empty_report(spec.param_n());
            r.notes.push(format!("generation failed: {e}"));
            r
        }
    };
    report.graph_id = spec.id();
    report.family = spec.family.name().to_string();
    report.seed = spec.seed;
    report.runtime_ms = opts.timing.then(|| started.elapsed().as_millis() as u64);
    report
}

impl InstanceSpec {
    fn param_n(&self) -> usize {
        self.params.iter().find(|(p, _)| p == "n").map_or(0, |(_, v)| *v as usize)
    }
}

fn empty_report(n: usize) -> BoundReport {
    BoundReport {
        graph_id: String::new(),
        family: String::new(),
        n,
        seed: None,
        class: None,
        values: Values::default(),
        records: Vec::new(),
        breaches: Vec::new(),
        notes: Vec::new(),
        graph: None,
        runtime_ms: None,
    }
}

fn breach_from(err: DomError, g: &PlaneGraph, c: Option<&Coloring>) -> Breach {
    match err {
        DomError::Breach(b) => *b,
        other => Breach::new(other.to_string(), g, c),
    }
}

/// Runs every applicable check on one graph. `family` enables the
/// family-specific exact rows; the trace enables the stacked and Eulerian
/// colorings.
pub fn analyze(
    g: &PlaneGraph,
    trace: Option<&BuildTrace>,
    family: Option<Family>,
    opts: &AnalysisOptions,
) -> BoundReport {
    let n = g.vertex_count();
    let class = g.classify();
    let mut rep = empty_report(n);
    rep.graph_id = family.map_or_else(|| "graph".into(), |f| f.name().to_string());
    rep.family = rep.graph_id.clone();
    rep.class = Some(class);
    let degrees = g.degrees();
    rep.values.odd_vertices = degrees.iter().filter(|&&d| d % 2 == 1).count();
    rep.values.degree4_vertices = degrees.iter().filter(|&&d| d == 4).count();
    let near = class.is_near_triangulation();
    let planar = class.is_planar_triangulation();

    if !g.is_connected() {
        rep.notes.push("graph is disconnected; nothing checked".into());
        return rep;
    }
    if opts.checks.structure {
        let fi = g.faces_inequality();
        let lhs = i64::from(!fi.holds) + i64::from(!fi.strengthened_holds);
        rep.records.push(BoundKind::FaceInequality.record(n, lhs));
    }
    if !near {
        rep.notes.push("not a near triangulation; domination bounds skipped".into());
        return finish(rep, g);
    }

    let c4 = match four_coloring(g) {
        Ok(c) => Some(c),
        Err(e) => {
            rep.breaches.push(Breach::new(format!("4-coloring failed: {e}"), g, None));
            None
        }
    };
    let comb = c4.as_ref().and_then(|c| match class_combinator(g, c) {
        Ok(r) => Some(r),
        Err(e) => {
            rep.breaches.push(breach_from(e, g, Some(c)));
            None
        }
    });
    if let Some(r) = &comb {
        rep.values.combinator = Some(r.size);
        rep.records.push(BoundKind::CombinatorFiveTwelfths.record(n, r.size as i64));
        if planar {
            rep.records.push(BoundKind::CombinatorThreeEighths.record(n, r.size as i64));
            if class.min_degree >= 5 {
                rep.records.push(BoundKind::CombinatorThird.record(n, r.size as i64));
            }
        }
    }

    let mut iota_set = None;
    if opts.checks.oracles {
        match exact_iota(g, OracleLimit::iota().with_max_vertices(opts.iota_limit)) {
            Ok(r) => {
                rep.values.iota = Some(r.size);
                iota_set = Some(r.set);
            }
            Err(DomError::LimitExceeded { .. }) => {
                rep.notes.push(format!("iota oracle skipped (n > {})", opts.iota_limit))
            }
            Err(e) => rep.breaches.push(breach_from(e, g, None)),
        }
        match exact_gamma(g, OracleLimit::gamma().with_max_vertices(opts.gamma_limit)) {
            Ok(r) => rep.values.gamma = Some(r.size),
            Err(DomError::LimitExceeded { .. }) => {
                rep.notes.push(format!("gamma oracle skipped (n > {})", opts.gamma_limit))
            }
            Err(e) => rep.breaches.push(breach_from(e, g, None)),
        }
        let v = &rep.values;
        let mut rows = Vec::new();
        if let (Some(i), Some(c)) = (v.iota, v.combinator) {
            rows.push(BoundKind::IotaAtMostCombinator.record(n, i as i64 - c as i64));
        }
        if let (Some(gm), Some(i)) = (v.gamma, v.iota) {
            rows.push(BoundKind::GammaAtMostIota.record(n, gm as i64 - i as i64));
        }
        if let Some(gm) = v.gamma {
            rows.push(BoundKind::GammaThird.record(n, gm as i64));
        }
        rep.records.extend(rows);
    }

    if let (Some(c), Some(r)) = (&c4, &comb) {
        if opts.checks.structure {
            structure_rows(&mut rep, g, c, r, iota_set.as_ref());
        }
        if opts.checks.accounting {
            accounting_row(&mut rep, g, c, r);
        }
        if opts.checks.odd && planar {
            match odd_degree_analysis(g, c, rep.values.iota) {
                Ok(odd) => rep.records.extend(odd.records),
                Err(e) => rep.breaches.push(breach_from(e, g, Some(c))),
            }
        }
    }

    match trace.map(|t| t.kind) {
        Some(TraceKind::Stacked) => stacked_rows(&mut rep, g, trace.expect("matched")),
        Some(TraceKind::Eulerian) => eulerian_rows(&mut rep, g, trace.expect("matched")),
        None => {}
    }
    match family {
        Some(Family::DiamondChain) => {
            let witness = diamond_chain_witness(n / 7);
            let bad = !(is_dominating(g, &witness) && is_independent(g, &witness) && witness.len() * 7 == 2 * n);
            rep.records.push(BoundKind::DiamondWitness.record(n, i64::from(bad)));
            if let Some(i) = rep.values.iota {
                rep.records.push(BoundKind::IotaTwoSevenths.record(n, i as i64));
            }
        }
        Some(Family::K4Chain) => {
            if let Some(gm) = rep.values.gamma {
                rep.records.push(BoundKind::GammaQuarter.record(n, gm as i64));
            }
        }
        _ => {}
    }
    finish(rep, g)
}

fn finish(mut rep: BoundReport, g: &PlaneGraph) -> BoundReport {
    let n = rep.n;
    let planar = rep.class.is_some_and(|c| c.is_planar_triangulation());
    let conjecture_edge =
        planar && (rep.values.gamma.is_some_and(|gm| 4 * gm >= n) || rep.values.iota.is_some_and(|i| 3 * i >= n));
    if rep.hard_failures() > 0 || rep.findings() > 0 || conjecture_edge {
        rep.graph = Some(pgr::to_pgr(g));
    }
    rep
}

/// Neighborhood structure, connectivity of `G - S` for every independent
/// set the run produced, the face inequality on each remainder, and the
/// separation of the `U_i`.
fn structure_rows(
    rep: &mut BoundReport,
    g: &PlaneGraph,
    c: &Coloring,
    r: &DominationResult,
    iota_set: Option<&VertexSet>,
) {
    let n = rep.n;
    let bad_neighborhoods = (0..n).filter(|&v| g.neighborhood_structure(v).is_err()).count();
    rep.records.push(BoundKind::Neighborhoods.record(n, bad_neighborhoods as i64));

    let mut sets: Vec<&VertexSet> = vec![&r.set];
    if let Some(p) = &r.partition {
        sets.extend(p.selected.iter());
    }
    sets.extend(iota_set);
    let joint = r.partition.as_ref().map(|p| p.joint());
    if let Some(j) = &joint {
        if is_independent(g, j) {
            sets.push(j);
        }
    }
    let (mut disconnected, mut face_failures) = (0, 0);
    for s in sets.into_iter().filter(|s| s.len() < n) {
        match g.delete_vertices(s) {
            Ok(d) => {
                disconnected += usize::from(!d.is_connected());
                let fi = d.graph.faces_inequality();
                face_failures += usize::from(!fi.holds) + usize::from(!fi.strengthened_holds);
            }
            Err(e) => rep.breaches.push(Breach::new(format!("deletion failed: {e}"), g, Some(c)).with_set("S", s)),
        }
    }
    rep.records.push(BoundKind::RemainderConnected.record(n, disconnected as i64));
    if let Some(existing) = rep.records.iter_mut().find(|x| x.bound == BoundKind::FaceInequality) {
        *existing = BoundKind::FaceInequality.record(n, existing.lhs + face_failures as i64);
    }

    let full_four = c.k() == 4 && !c.class_sizes().contains(&0);
    if let (true, Some(p), Some(j)) = (full_four, &r.partition, &joint) {
        let violations = separation_violations(g, p).len() + usize::from(!is_independent(g, j));
        rep.records.push(BoundKind::Separation.record(n, violations as i64));
    }
}

fn accounting_row(rep: &mut BoundReport, g: &PlaneGraph, c: &Coloring, r: &DominationResult) {
    if r.partition.is_none() || c.class_sizes().contains(&0) {
        return;
    }
    match combinator_accounting(g, c, r) {
        Ok(acc) => {
            let failed: Vec<String> = acc.failures().map(ToString::to_string).collect();
            if !failed.is_empty() {
                rep.notes.push(format!("accounting failed: {}", failed.join("; ")));
            }
            rep.records.push(BoundKind::Accounting.record(rep.n, failed.len() as i64));
        }
        Err(DomError::Precondition(msg)) => rep.notes.push(format!("accounting skipped: {msg}")),
        Err(e) => rep.breaches.push(breach_from(e, g, Some(c))),
    }
}

fn stacked_rows(rep: &mut BoundReport, g: &PlaneGraph, trace: &BuildTrace) {
    let n = rep.n;
    match stacked_four_coloring(g, trace) {
        Ok(c) => {
            let non_dominating = c.classes().iter().filter(|s| !is_dominating(g, s)).count();
            rep.records.push(BoundKind::StackedNonDominating.record(n, non_dominating as i64));
            let min = c.class_sizes().into_iter().min().unwrap_or(0);
            rep.records.push(BoundKind::StackedMinClass.record(n, min as i64));
        }
        Err(e) => rep.breaches.push(Breach::new(format!("stacked coloring failed: {e}"), g, None)),
    }
    if let Some(i) = rep.values.iota {
        rep.records.push(BoundKind::IotaQuarter.record(n, i as i64));
    }
}

fn eulerian_rows(rep: &mut BoundReport, g: &PlaneGraph, trace: &BuildTrace) {
    let n = rep.n;
    let v4 = rep.values.degree4_vertices as i64;
    rep.records.push(BoundKind::EvenDegrees.record(n, rep.values.odd_vertices as i64));
    let c6 = match rec_eulerian_six_coloring(g, trace) {
        Ok(c) => c,
        Err(e) => {
            rep.breaches.push(Breach::new(format!("six-coloring failed: {e}"), g, None));
            return;
        }
    };
    let violations = six_coloring_violations(g, &c6);
    rep.records.push(BoundKind::SixColoring.record(n, violations as i64));
    match class_combinator(g, &c6) {
        Ok(r) => {
            rep.values.combinator6 = Some(r.size);
            rep.records.push(BoundKind::EulerianSixfold.record(n, 6 * r.size as i64 - v4));
            if n >= 9 {
                rep.records.push(BoundKind::EulerianThirteen.record(n, r.size as i64));
            }
        }
        Err(e) => rep.breaches.push(breach_from(e, g, Some(&c6))),
    }
    if n >= 9 {
        rep.records.push(BoundKind::EulerianDegreeFourCount.record(n, 7 * v4));
        let bad = i64::from(degree_four_triangles(g).is_err());
        rep.records.push(BoundKind::DegreeFourTriangles.record(n, bad));
        let not_cliques = degree_four_components(g)
            .iter()
            .filter(|comp| comp.len() > 3 || comp.iter().any(|a| comp.iter().any(|b| a != b && !g.has_edge(a, b))))
            .count();
        rep.records.push(BoundKind::DegreeFourCliques.record(n, not_cliques as i64));
    }
}

/// Failed properties among: proper, 5-dynamic, distinct missing sets on
/// adjacent degree-4 vertices, exactly one missing color at degree 4, no
/// missing color at degree >= 6.
fn six_coloring_violations(g: &PlaneGraph, c: &Coloring) -> usize {
    let ok = |r: Result<bool, _>| r.unwrap_or(false);
    let mut bad = usize::from(!ok(is_proper(g, c)))
        + usize::from(!ok(is_r_dynamic(g, c, 5)))
        + usize::from(!ok(adjacent_degree4_distinct_missing(g, c)));
    let missing: Vec<(usize, usize)> = (0..g.vertex_count())
        .map(|v| (g.rotation(v).len(), missing_colors(g, c, v).map_or(usize::MAX, |m| m.missing.len())))
        .collect();
    bad += usize::from(missing.iter().any(|&(d, m)| d == 4 && m != 1));
    bad += usize::from(missing.iter().any(|&(d, m)| d >= 6 && m != 0));
    bad
}
