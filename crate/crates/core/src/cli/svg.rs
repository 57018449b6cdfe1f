//! Static log-log decay plot, written without a plotting dependency.

use crate::riesz::ExperimentReport;
use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const MAX_Y_TICKS: i32 = 10;

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    // log2 range padded outward to whole powers of 2
    fn spanning(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| *v > 0.0 && v.is_finite()) {
            lo = lo.min(v.log2());
            hi = hi.max(v.log2());
        }
        if !lo.is_finite() {
            return Axis { lo: 0.0, hi: 1.0 };
        }
        let (lo, hi) = (lo.floor(), hi.ceil());
        Axis {
            lo,
            hi: if hi > lo { hi } else { lo + 1.0 },
        }
    }

    fn frac(&self, v: f64) -> f64 {
        (v.log2() - self.lo) / (self.hi - self.lo)
    }
}

fn px(x: &Axis, v: f64) -> f64 {
    LEFT + x.frac(v) * (WIDTH - LEFT - RIGHT)
}

fn py(y: &Axis, v: f64) -> f64 {
    HEIGHT - BOTTOM - y.frac(v) * (HEIGHT - TOP - BOTTOM)
}

fn polyline(out: &mut String, pts: &[(f64, f64)], x: &Axis, y: &Axis, style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .filter(|(_, v)| *v > 0.0 && v.is_finite())
        .map(|&(n, v)| format!("{:.2},{:.2}", px(x, n), py(y, v)))
        .collect();
    let _ = writeln!(out, r#"<polyline fill="none" {style} points="{}"/>"#, coords.join(" "));
}

/// 800×600 log-log chart of `sup_value` and `bound_value` against `n`.
/// Ticks sit at powers of 2 on both axes. The output contains exactly two
/// `<polyline>` elements.
pub fn decay_plot(report: &ExperimentReport) -> String {
    let sup: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.n as f64, r.sup_value)).collect();
    let bound: Vec<(f64, f64)> = report.rows.iter().map(|r| (r.n as f64, r.bound_value)).collect();
    let x = Axis::spanning(sup.iter().map(|p| p.0));
    let y = Axis::spanning(sup.iter().chain(&bound).map(|p| p.1));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let title = format!(
        "{} · {} · N={} α={} l={}",
        report.setup.experiment, report.setup.distribution, report.setup.dim, report.setup.alpha, report.setup.l
    );
    let _ = writeln!(s, r#"<text x="400" y="28" text-anchor="middle" font-size="15">{}</text>"#, escape(&title));

    // frame
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        s,
        r##"<path d="M{x0},{y0} L{x0},{y1} L{x1},{y1}" fill="none" stroke="#000"/>"##
    );

    for e in x.lo as i32..=x.hi as i32 {
        let p = px(&x, 2f64.powi(e));
        let _ = writeln!(s, r##"<line x1="{p:.2}" y1="{y1}" x2="{p:.2}" y2="{:.2}" stroke="#000"/>"##, y1 + 6.0);
        let _ = writeln!(s, r#"<text x="{p:.2}" y="{:.2}" text-anchor="middle">2^{e}</text>"#, y1 + 22.0);
    }
    let span = (y.hi - y.lo) as i32;
    let step = (span + MAX_Y_TICKS - 1) / MAX_Y_TICKS;
    let mut e = y.lo as i32;
    while e <= y.hi as i32 {
        let p = py(&y, 2f64.powi(e));
        let _ = writeln!(s, r##"<line x1="{:.2}" y1="{p:.2}" x2="{x0}" y2="{p:.2}" stroke="#000"/>"##, x0 - 6.0);
        let _ = writeln!(s, r##"<line x1="{x0}" y1="{p:.2}" x2="{x1}" y2="{p:.2}" stroke="#ddd"/>"##);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">2^{e}</text>"#, x0 - 10.0, p + 4.0);
        e += step.max(1);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">n</text>"#, (x0 + x1) / 2.0, HEIGHT - 20.0);

    polyline(&mut s, &sup, &x, &y, r##"stroke="#1f5fbf" stroke-width="2""##);
    polyline(&mut s, &bound, &x, &y, r##"stroke="#c0392b" stroke-width="2" stroke-dasharray="6,4""##);

    let lx = x1 - 190.0;
    let _ = writeln!(s, r##"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="#1f5fbf" stroke-width="2"/>"##, y0 + 15.0, lx + 30.0, y0 + 15.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">sup value</text>"#, lx + 38.0, y0 + 19.0);
    let _ = writeln!(
        s,
        r##"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="2" stroke-dasharray="6,4"/>"##,
        y0 + 35.0,
        lx + 30.0,
        y0 + 35.0
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}">bound value</text>"#, lx + 38.0, y0 + 39.0);
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::{ExperimentSetup, ReportRow, Verdict};

    fn report() -> ExperimentReport {
        let rows: Vec<ReportRow> = [32usize, 64, 128, 256, 512]
            .iter()
            .map(|&n| ReportRow {
                n,
                sup_value: (n as f64).powf(-1.5),
                bound_value: (n as f64).powf(-0.3),
                ratio: (n as f64).powf(-1.2),
            })
            .collect();
        ExperimentReport {
            setup: ExperimentSetup {
                experiment: "localize".into(),
                dim: 2,
                alpha: 2.0,
                l: 1.2,
                distribution: "δ<north>".into(),
                region: None,
                compact: None,
                resolution: None,
                window: 3,
                n_list: vec![],
                probe_angle: None,
            },
            envelope: vec![],
            rows,
            deformation: None,
            fit: None,
            ratio_fit: None,
            degenerate_fit: false,
            verdict: Verdict {
                bound_respected: true,
                max_ratio: 0.0,
                fitted_exponent: None,
                theoretical_exponent: 0.0,
                fixed_angle_exponent: None,
                decreasing: true,
                passed: true,
            },
        }
    }

    #[test]
    fn two_polylines_and_power_of_two_ticks() {
        let svg = decay_plot(&report());
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r#"width="800" height="600""#));
        for e in 5..=9 {
            assert!(svg.contains(&format!(">2^{e}</text>")));
        }
        assert!(svg.contains("δ&lt;north&gt;"));
    }

    #[test]
    fn points_are_log_scaled() {
        let svg = decay_plot(&report());
        let line = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        let pts: Vec<f64> = line
            .split("points=\"")
            .nth(1)
            .unwrap()
            .trim_end_matches("\"/>")
            .split(' ')
            .map(|p| p.split(',').next().unwrap().parse().unwrap())
            .collect();
        let gaps: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
        for g in &gaps {
            assert!((g - gaps[0]).abs() < 0.02);
        }
    }
}
