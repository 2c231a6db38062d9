use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use domtri_core::coloring::{
    four_coloring, is_acyclic, is_proper, is_r_dynamic, rec_eulerian_six_coloring, stacked_four_coloring, Coloring,
};
use domtri_core::domination::{
    class_combinator, combinator_accounting, exact_gamma, exact_iota, is_dominating, is_independent, Check, DomError,
    DominationResult, OracleLimit,
};
use domtri_core::generators::{BuildTrace, TraceKind};
use domtri_core::harness::{
    audit_conjectures, emit, generate, read_reports, run_sweep, verify_instance, write_reports, AnalysisOptions,
    BoundKind, BoundRecord, BoundReport, Family, Format, InstanceSpec, Level, SweepConfig,
};
use domtri_core::plane_graph::pgr;
use domtri_core::PlaneGraph;
use serde_json::json;

#[derive(Parser)]
#[command(name = "domtri", version, about = "Independent domination experiments on plane triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and print it in PGR format.
    Gen {
        /// three_tree, eulerian, diamond_chain, k4_chain, random, near,
        /// min_degree5, all_odd, connected, icosahedron, octahedron, k4
        family: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        flips: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        removals: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the build trace (three_tree and eulerian only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Color a graph and print `vertex class` lines.
    Color {
        file: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=6))]
        k: u8,
        /// Build trace; required for k = 6, selects the stacked coloring for k = 4.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Report properness, dynamic levels and acyclicity on stderr.
        #[arg(long)]
        check: bool,
    },
    /// Compute an independent dominating set or a dominating set.
    Dominate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Combinator)]
        method: MethodArg,
        /// Coloring for the combinator; a 4-coloring is searched otherwise.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Largest n the exact oracles accept.
        #[arg(long)]
        limit_n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(short, long)]
        config: PathBuf,
        /// Output stem; overrides `output` in the config.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every applicable check on one graph.
    Verify {
        file: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Audit exact values in a structured report against the conjectures.
    Audit {
        reports: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Combinator,
    Iota,
    Gamma,
}

/// Command outcome: `Ok(true)` when everything held.
type Outcome = Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { family, n, k, t, flips, budget, removals, seed, output, trace } => {
            let params = [("n", n), ("k", k), ("t", t), ("flips", flips), ("budget", budget), ("removals", removals)];
            cmd_gen(&family, &params, seed, output.as_deref(), trace.as_deref())
        }
        Command::Color { file, k, trace, check } => cmd_color(&file, k, trace.as_deref(), check),
        Command::Dominate { file, method, coloring, limit_n, json } => {
            cmd_dominate(&file, method, coloring.as_deref(), limit_n, json)
        }
        Command::Sweep { config, output } => cmd_sweep(&config, output),
        Command::Verify { file, trace, json } => cmd_verify(&file, trace.as_deref(), json),
        Command::Audit { reports, json } => cmd_audit(&reports, json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<PlaneGraph> {
    pgr::parse_pgr(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_trace(path: &Path) -> Result<BuildTrace> {
    BuildTrace::from_json(&read(path)?).with_context(|| format!("parsing trace {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(
    family: &str,
    given: &[(&str, Option<u64>)],
    seed: u64,
    output: Option<&Path>,
    trace_path: Option<&Path>,
) -> Outcome {
    let family: Family = family.parse().map_err(anyhow::Error::msg)?;
    let mut params = Vec::new();
    for spec in family.params() {
        match given.iter().find(|(name, _)| *name == spec.name).and_then(|(_, v)| *v) {
            Some(v) => params.push((spec.name.to_string(), v)),
            None if spec.default.is_some() => {}
            None => bail!("family {family} needs --{}", spec.name),
        }
    }
    for (name, value) in given {
        if value.is_some() && !family.params().iter().any(|p| p.name == *name) {
            bail!("family {family} takes no --{name}");
        }
    }
    let spec = InstanceSpec { family, params, seed: family.is_seeded().then_some(seed) };
    let Some(inst) = generate(&spec)? else {
        bail!("sampler found no graph for {}; raise --budget or change the seed", spec.id());
    };
    write_or_print(output, &pgr::to_pgr(&inst.graph))?;
    if let Some(path) = trace_path {
        let trace = inst.trace.with_context(|| format!("family {family} has no build trace"))?;
        fs::write(path, trace.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn cmd_color(file: &Path, k: u8, trace: Option<&Path>, check: bool) -> Outcome {
    let g = read_graph(file)?;
    let trace = trace.map(read_trace).transpose()?;
    let c = match (k, &trace) {
        (6, Some(t)) if t.kind == TraceKind::Eulerian => rec_eulerian_six_coloring(&g, t)?,
        (6, _) => bail!("a 6-coloring needs an eulerian build trace (--trace)"),
        (4, Some(t)) if t.kind == TraceKind::Stacked => stacked_four_coloring(&g, t)?,
        (4, Some(_)) => bail!("a 4-coloring from a trace needs a stacked build trace"),
        (4, None) => four_coloring(&g)?,
        _ => bail!("--k must be 4 or 6"),
    };
    print!("{}", c.to_text());
    if check {
        let dynamic = (1..=6).take_while(|&r| is_r_dynamic(&g, &c, r).unwrap_or(false)).last().unwrap_or(0);
        eprintln!("proper: {}", is_proper(&g, &c)?);
        eprintln!("r-dynamic up to r = {dynamic}");
        eprintln!("acyclic: {}", is_acyclic(&g, &c)?);
        eprintln!("class sizes: {:?}", c.class_sizes());
    }
    Ok(true)
}

fn bound_rows(g: &PlaneGraph, r: &DominationResult, method: MethodArg) -> Vec<BoundRecord> {
    let class = g.classify();
    let n = g.vertex_count();
    let size = r.size as i64;
    let mut rows = Vec::new();
    if !class.is_near_triangulation() {
        return rows;
    }
    match method {
        MethodArg::Gamma => rows.push(BoundKind::GammaThird.record(n, size)),
        MethodArg::Iota => {}
        MethodArg::Combinator => {
            rows.push(BoundKind::CombinatorFiveTwelfths.record(n, size));
            if class.is_planar_triangulation() {
                rows.push(BoundKind::CombinatorThreeEighths.record(n, size));
                if class.min_degree >= 5 {
                    rows.push(BoundKind::CombinatorThird.record(n, size));
                }
            }
        }
    }
    rows
}

fn cmd_dominate(
    file: &Path,
    method: MethodArg,
    coloring: Option<&Path>,
    limit_n: Option<usize>,
    json: bool,
) -> Outcome {
    let g = read_graph(file)?;
    let mut accounting: Vec<Check> = Vec::new();
    let computed = match method {
        MethodArg::Combinator => {
            let c = match coloring {
                Some(path) => Coloring::from_text(&read(path)?, None)?,
                None => four_coloring(&g)?,
            };
            class_combinator(&g, &c).inspect(|r| {
                if let Ok(acc) = combinator_accounting(&g, &c, r) {
                    accounting = acc.checks;
                }
            })
        }
        MethodArg::Iota => {
            let limit = OracleLimit::iota();
            exact_iota(&g, limit_n.map_or(limit, |m| limit.with_max_vertices(m)))
        }
        MethodArg::Gamma => {
            let limit = OracleLimit::gamma();
            exact_gamma(&g, limit_n.map_or(limit, |m| limit.with_max_vertices(m)))
        }
    };
    let r = match computed {
        Ok(r) => r,
        Err(DomError::Breach(b)) => {
            eprintln!("breach: {}", b.message);
            println!("{}", serde_json::to_string_pretty(&b)?);
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let dominating = is_dominating(&g, &r.set);
    let independent = is_independent(&g, &r.set);
    let rows = bound_rows(&g, &r, method);
    let all_hold = dominating
        && (independent || matches!(method, MethodArg::Gamma))
        && rows.iter().all(|x| x.holds || x.level == Level::Finding)
        && accounting.iter().all(|c| c.holds);
    if json {
        let out = json!({
            "result": r,
            "dominating": dominating,
            "independent": independent,
            "bounds": rows,
            "accounting": accounting,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("size {}", r.size);
        println!("set {}", r.set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        if let Some(i) = r.witness_class {
            println!("witness class {i}");
        }
        if !r.per_class.is_empty() {
            println!("per class {:?}", r.per_class);
        }
        println!("dominating {dominating}");
        println!("independent {independent}");
        for row in &rows {
            println!("{}: {} vs {} {}", row.bound.label(), row.lhs, row.rhs, if row.holds { "ok" } else { "FAILED" });
        }
        for check in &accounting {
            println!("{check}");
        }
    }
    Ok(all_hold)
}

fn print_report(report: &BoundReport) {
    println!("{} (n = {})", report.graph_id, report.n);
    for r in &report.records {
        let status = match (r.holds, r.level) {
            (true, _) => "ok",
            (false, Level::Hard) => "FAILED",
            (false, Level::Finding) => "finding",
        };
        println!("  {}: {} vs {} {status}", r.bound.label(), r.lhs, r.rhs);
    }
    for b in &report.breaches {
        println!("  breach: {}", b.message);
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn cmd_sweep(config: &Path, output: Option<PathBuf>) -> Outcome {
    let mut cfg = SweepConfig::parse(&read(config)?).with_context(|| format!("in {}", config.display()))?;
    if let Ok(seed) = std::env::var("DOMTRI_SEED") {
        cfg.seed = seed.trim().parse().with_context(|| format!("DOMTRI_SEED={seed:?} is not a u64"))?;
    }
    if output.is_some() {
        cfg.output = output;
    }
    let reports = run_sweep(&cfg);
    match &cfg.output {
        Some(stem) => {
            let (json, tsv) = write_reports(&reports, stem)?;
            eprintln!("wrote {} and {}", json.display(), tsv.display());
        }
        None => print!("{}", emit(&reports, Format::Tabular)?),
    }
    let failures: usize = reports.iter().map(BoundReport::hard_failures).sum();
    let findings: usize = reports.iter().map(BoundReport::findings).sum();
    eprintln!("{} graphs, {failures} hard failures, {findings} findings", reports.len());
    for r in reports.iter().filter(|r| r.hard_failures() > 0) {
        eprintln!("failed: {}", r.graph_id);
    }
    Ok(failures == 0)
}

fn cmd_verify(file: &Path, trace: Option<&Path>, json: bool) -> Outcome {
    let trace_text = trace.map(read).transpose()?;
    let report = verify_instance(&read(file)?, trace_text.as_deref(), &AnalysisOptions::default())
        .with_context(|| format!("verifying {}", file.display()))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_report(&report);
    }
    Ok(report.hard_failures() == 0)
}

fn cmd_audit(path: &Path, json: bool) -> Outcome {
    let reports = read_reports(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let summary = audit_conjectures(&reports);
    if json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        print!("{}", summary.to_text());
    }
    let clean = summary.counterexamples().next().is_none();
    Ok(clean)
}
