//! Experiment driver: sweep configuration, per-graph analysis, conjecture
//! audits and report output.

mod audit;
mod bounds;
mod config;
mod emit;
mod sweep;

use thiserror::Error;

use crate::generators::BuildTrace;
use crate::plane_graph::{pgr, PlaneError};

pub use audit::{
    audit_conjectures, odd_degree_analysis, AuditSummary, Conjecture, ConjectureHit, OddDegreeRecord, Verdict,
};
pub use bounds::{BoundKind, BoundRecord, BoundReport, Level, Ratio, Values};
pub use config::{CheckToggles, Family, FamilySpec, ParamDefault, ParamSpec, SweepConfig};
pub use emit::{emit, read_reports, write_reports, Format, TSV_HEADER};
pub use sweep::{analyze, generate, instances, run_sweep, AnalysisOptions, Instance, InstanceSpec};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("trace does not replay to the given graph: {0}")]
    Trace(String),
}

/// Parses a PGR graph (and optionally its build trace) and runs every
/// applicable check on it.
pub fn verify_instance(
    pgr_text: &str,
    trace_json: Option<&str>,
    opts: &AnalysisOptions,
) -> Result<BoundReport, HarnessError> {
    let g = pgr::parse_pgr(pgr_text)?;
    let trace = trace_json.map(BuildTrace::from_json).transpose()?;
    if let Some(t) = &trace {
        let replayed = t.replay().map_err(|e| HarnessError::Trace(e.to_string()))?;
        if replayed.rotations() != g.rotations() {
            return Err(HarnessError::Trace("rotation systems differ".into()));
        }
    }
    Ok(analyze(&g, trace.as_ref(), None, opts))
}
