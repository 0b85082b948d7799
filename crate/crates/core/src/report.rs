//! CSV rendering for the CLI outputs. UTF-8, LF line endings, header first,
//! numbers in shortest round-trip scientific notation.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::analysis::{Budget, ComparisonRow, SweepSeries};
use crate::error::{Error, Result};
use crate::montecarlo::{PsdEstimate, SimRun};
use crate::preamp::NOISE_SOURCES;

pub const SWEEP_HEADER: &str = "T_C,gain_V_per_C,output_V,drift_ppm";
pub const BUDGET_HEADER: &str = "source,input_C_per_sqrtHz,output_V_per_sqrtHz";
pub const COMPARE_HEADER: &str = "topology,noise_V_per_sqrtHz,drift_ppm,integrable,simplicity";
pub const PSD_HEADER: &str = "freq_Hz,psd_V_per_sqrtHz";
pub const TRACE_HEADER: &str = "t_s,v_V";

fn table(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut out = String::with_capacity(64);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn sweep_csv(s: &SweepSeries) -> String {
    table(
        SWEEP_HEADER,
        (0..s.len()).map(|i| {
            format!(
                "{:e},{:e},{:e},{:e}",
                s.temperatures[i], s.gains[i], s.outputs[i], s.drift_ppm[i]
            )
        }),
    )
}

/// One row per noise source, then `total`.
pub fn budget_csv(b: &Budget) -> String {
    let input = b.input.sources();
    let output = b.breakdown.sources();
    let rows = NOISE_SOURCES
        .iter()
        .enumerate()
        .map(|(i, name)| format!("{name},{:e},{:e}", input[i], output[i]))
        .chain(std::iter::once(format!(
            "total,{:e},{:e}",
            b.input.total_rss, b.breakdown.total_rss
        )));
    table(BUDGET_HEADER, rows)
}

pub fn compare_csv(rows: &[ComparisonRow]) -> String {
    table(
        COMPARE_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{:e},{:e},{},{}",
                r.name, r.noise_density, r.drift_ppm, r.integrable, r.simplicity
            )
        }),
    )
}

pub fn psd_csv(p: &PsdEstimate) -> String {
    table(
        PSD_HEADER,
        p.frequencies
            .iter()
            .zip(&p.densities)
            .map(|(f, d)| format!("{f:e},{d:e}")),
    )
}

pub fn trace_csv(run: &SimRun) -> String {
    let mut out = String::with_capacity(run.trace.len() * 32);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (i, v) in run.trace.iter().enumerate() {
        let _ = writeln!(out, "{:e},{v:e}", i as f64 / run.fs);
    }
    out
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.to_path_buf(), e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::io(path.clone(), e))
}
