//! CSV persistence: UTF-8, LF endings, one header row, numbers via the
//! shortest round-trip formatting.

use std::io;
use std::path::Path;

use vouch_core::engine::TrajectorySample;
use vouch_core::stats::MetricSummary;
use vouch_core::sweep::{CellSummary, RunRecord};

pub const RAW_HEADER: &str =
    "model,k,malicious_ratio,repetition,seed,reports,avg_witnesses,unsure_ratio,benign_majority_ratio";

pub const SUMMARY_HEADER: &str = "model,k,malicious_ratio,\
avg_witnesses_mean,avg_witnesses_ci99_low,avg_witnesses_ci99_high,\
unsure_ratio_mean,unsure_ratio_ci99_low,unsure_ratio_ci99_high,\
benign_majority_ratio_mean,benign_majority_ratio_ci99_low,benign_majority_ratio_ci99_high";

pub const TRAJECTORY_HEADER: &str = "time_s,node,x_m,y_m";

fn raw_row(rec: &RunRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        rec.model.label(),
        rec.hop_limit,
        rec.malicious_ratio,
        rec.repetition,
        rec.seed,
        rec.result.reports_total,
        rec.result.avg_witnesses,
        rec.result.unsure_ratio,
        rec.result.benign_majority_ratio,
    )
}

/// One row per run, grid order.
pub fn raw_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(RAW_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&raw_row(rec));
        out.push('\n');
    }
    out
}

fn metric_cols(m: &MetricSummary) -> String {
    format!("{},{},{}", m.mean, m.ci99_low, m.ci99_high)
}

/// One row per cell with mean and 99% CI bounds per metric.
pub fn summary_csv(cells: &[CellSummary]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for cell in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell.model.label(),
            cell.hop_limit,
            cell.malicious_ratio,
            metric_cols(&cell.summary.avg_witnesses),
            metric_cols(&cell.summary.unsure_ratio),
            metric_cols(&cell.summary.benign_majority_ratio),
        ));
    }
    out
}

pub fn trajectory_csv(samples: &[TrajectorySample]) -> String {
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for (t, node, x, y) in samples {
        out.push_str(&format!("{t},{node},{x},{y}\n"));
    }
    out
}

/// Creates the directory if needed and writes the file atomically enough for
/// our purposes (single writer).
pub fn write_file(dir: &Path, name: &str, contents: &str) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)
}
