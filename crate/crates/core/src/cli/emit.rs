//! Report files: `<PREFIX>.csv`, `<PREFIX>.json`, `<PREFIX>.svg`.

use super::svg::decay_plot;
use crate::error::{Error, Result};
use crate::riesz::ExperimentReport;
use std::fs;
use std::path::PathBuf;

pub const CSV_HEADER: &str = "n,sup_value,bound_value,ratio";

/// C `%.{digits}g`: shortest of fixed and scientific, trailing zeros dropped.
pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let p = digits.max(1);
    // rounding decides the exponent, as in C
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = strip_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_string(report: &ExperimentReport) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in &report.rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            format_g(r.sup_value, 12),
            format_g(r.bound_value, 12),
            format_g(r.ratio, 12)
        ));
    }
    s
}

pub fn json_string(report: &ExperimentReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Paths written for a prefix.
pub fn output_paths(prefix: &str) -> [PathBuf; 3] {
    ["csv", "json", "svg"].map(|ext| PathBuf::from(format!("{prefix}.{ext}")))
}

/// Write all three files. If any write fails, the ones already written are
/// removed.
pub fn emit(report: &ExperimentReport, prefix: &str) -> Result<[PathBuf; 3]> {
    let paths = output_paths(prefix);
    let contents = [csv_string(report), json_string(report)?, decay_plot(report)];
    if let Some(parent) = paths[0].parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    for (i, (path, text)) in paths.iter().zip(&contents).enumerate() {
        if let Err(e) = fs::write(path, text) {
            remove_outputs(&paths[..i]);
            let _ = fs::remove_file(path);
            return Err(Error::Io(format!("{}: {e}", path.display())));
        }
    }
    Ok(paths)
}

pub fn remove_outputs(paths: &[PathBuf]) {
    for p in paths {
        let _ = fs::remove_file(p);
    }
}
