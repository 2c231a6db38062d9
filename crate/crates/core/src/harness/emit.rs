use std::fs;
use std::path::{Path, PathBuf};

use super::bounds::BoundReport;
use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Pretty-printed JSON array of reports.
    Structured,
    /// Tab-separated, one row per (graph, bound) pair.
    Tabular,
}

pub const TSV_HEADER: &str = "family\tn\tseed\tbound\tlhs\trhs\tholds\truntime_ms";

fn or_dash(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// Renders reports. Output depends only on the reports.
pub fn emit(reports: &[BoundReport], format: Format) -> Result<String, HarnessError> {
    match format {
        Format::Structured => {
            let mut text = serde_json::to_string_pretty(reports)?;
            text.push('\n');
            Ok(text)
        }
        Format::Tabular => {
            let mut out = String::from(TSV_HEADER);
            out.push('\n');
            for r in reports {
                let (seed, runtime) = (or_dash(r.seed), or_dash(r.runtime_ms));
                for rec in &r.records {
                    out.push_str(&format!(
                        "{}\t{}\t{seed}\t{}\t{}\t{}\t{}\t{runtime}\n",
                        r.family,
                        r.n,
                        rec.bound.label(),
                        rec.lhs,
                        rec.rhs,
                        rec.holds
                    ));
                }
                for b in &r.breaches {
                    let msg = b.message.replace(['\t', '\n'], " ");
                    out.push_str(&format!("{}\t{}\t{seed}\tbreach: {msg}\t1\t0\tfalse\t{runtime}\n", r.family, r.n));
                }
            }
            Ok(out)
        }
    }
}

/// Writes `<stem>.json` and `<stem>.tsv`, creating parent directories.
pub fn write_reports(reports: &[BoundReport], stem: &Path) -> Result<(PathBuf, PathBuf), HarnessError> {
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let json = stem.with_extension("json");
    let tsv = stem.with_extension("tsv");
    fs::write(&json, emit(reports, Format::Structured)?)?;
    fs::write(&tsv, emit(reports, Format::Tabular)?)?;
    Ok((json, tsv))
}

/// Reads a structured report file back.
pub fn read_reports(text: &str) -> Result<Vec<BoundReport>, HarnessError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_sweep, SweepConfig};

    #[test]
    fn empty_reports_give_header_only() {
        assert_eq!(emit(&[], Format::Tabular).unwrap(), format!("{TSV_HEADER}\n"));
        assert_eq!(emit(&[], Format::Structured).unwrap(), "[]\n");
    }

    #[test]
    fn one_row_per_record() {
        let cfg = SweepConfig::parse("families = diamond_chain\ndiamond_chain.k = 2\n").unwrap();
        let reports = run_sweep(&cfg);
        let tsv = emit(&reports, Format::Tabular).unwrap();
        assert_eq!(tsv.lines().count(), 1 + reports[0].records.len());
        assert!(tsv.lines().nth(1).unwrap().starts_with("diamond_chain\t14\t-\t"));
        let json = emit(&reports, Format::Structured).unwrap();
        assert_eq!(read_reports(&json).unwrap(), reports);
    }
}
