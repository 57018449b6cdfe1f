//! Command-line front end: configuration, experiment dispatch and report
//! emission for the `sphere-riesz` binary.
//!
//! Exit codes: 0 success, 1 failed verdict or numerical failure, 2
//! configuration or hypothesis error (clap also exits 2 on usage errors).

pub mod config;
pub mod emit;
pub mod selftest;
pub mod svg;

pub use config::{parse_config, parse_n_list, Args, Command, ExperimentConfig};
pub use emit::{emit, format_g};

use crate::distributions::{Distribution, GeneralDistribution, ZonalDistribution};
use crate::error::{Error, Result};
use crate::harmonics_s2::{harmonics_at, HarmonicIndex, SphericalCoefficients};
use crate::riesz::{
    kernel_norm_experiment, localization_experiment, reconstruction_experiment,
    sharpness_experiment, weak_convergence_probe, ExperimentReport, ExperimentSetup,
    LocalizationParams, ReportRow, Verdict,
};
use crate::sphere_geom::{Cap, Region, SpherePoint};
use clap::Parser;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::f64::consts::PI;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. }
        | Error::Hypothesis(_)
        | Error::Domain { .. }
        | Error::DimensionMismatch { .. }
        | Error::Unsupported(_)
        | Error::CoefficientRange { .. } => EXIT_CONFIG,
        _ => EXIT_FAILED,
    }
}

/// Parse process arguments, run, return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match parse_config(&args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("sphere-riesz: {e}");
            exit_code(&e)
        }
    }
}

/// Parse an argument vector (program name first) into a validated config.
pub fn config_from_args<I, T>(args: I) -> Result<ExperimentConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(args).map_err(|e| Error::Config {
        field: "arguments".into(),
        detail: e.to_string(),
    })?;
    parse_config(&args)
}

fn pole(cfg: &ExperimentConfig) -> SpherePoint {
    SpherePoint::from_angles_in(cfg.dim, cfg.pole_theta, cfg.pole_phi)
}

fn singular_part(cfg: &ExperimentConfig) -> Distribution {
    let d = ZonalDistribution::dirac(pole(cfg));
    if cfg.laplacian_power == 0 {
        d.into()
    } else {
        d.laplacian_power(cfg.laplacian_power).into()
    }
}

fn domain(cfg: &ExperimentConfig) -> Result<Region> {
    Ok(Region::Complement(Cap::new(pole(cfg), cfg.v_radius)?))
}

fn localization_params(cfg: &ExperimentConfig) -> LocalizationParams {
    LocalizationParams {
        l: cfg.l,
        alpha: cfg.alpha,
        n_list: cfg.n_list.clone(),
        resolution: cfg.resolution,
        k_margin: cfg.k_margin,
        window: cfg.window,
    }
}

/// `g = 1 + cos γ(x, pole)` on `S^2`, as an exact degree-1 coefficient table.
pub fn one_plus_cosine(p: &SpherePoint) -> Result<GeneralDistribution> {
    let mut c = SphericalCoefficients::zeros(1);
    c.set(0, 0, (4.0 * PI).sqrt())?;
    // cos γ = (4π/3) Σ_m Y_1m(p) Y_1m(x)
    let y = harmonics_at(1, p)?;
    for m in -1..=1 {
        let idx = HarmonicIndex::new(1, m)?;
        c.set(1, m, 4.0 * PI / 3.0 * y[idx.flat()])?;
    }
    Ok(GeneralDistribution::new(c, "1 + cos γ"))
}

/// Seeded random test function of degree ≤ 8 on `S^2`.
pub fn random_test_function(seed: u64) -> GeneralDistribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GeneralDistribution::new(selftest::random_coefficients(&mut rng, 8), format!("random(seed {seed})"))
}

fn weak_convergence_report(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.dim != 2 {
        return Err(Error::Unsupported("weak-convergence runs on S^2".into()));
    }
    let f = singular_part(cfg);
    let g: Distribution = random_test_function(cfg.seed).into();
    let table = weak_convergence_probe(&f, &g, &cfg.n_list)?;
    let rows: Vec<ReportRow> = table
        .rows
        .iter()
        .map(|&(n, v)| ReportRow {
            n,
            sup_value: v,
            bound_value: table.limit,
            ratio: v / table.limit,
        })
        .collect();
    let saturated = table
        .rows
        .iter()
        .filter(|(n, _)| *n > table.bandlimit)
        .all(|(_, v)| v.to_bits() == table.limit.to_bits());
    Ok(ExperimentReport {
        setup: ExperimentSetup {
            experiment: "weak-convergence".into(),
            dim: 2,
            alpha: 0.0,
            l: 0.0,
            distribution: format!("⟨{}, {}⟩", f.label(), g.label()),
            region: None,
            compact: None,
            resolution: None,
            window: 1,
            n_list: cfg.n_list.clone(),
            probe_angle: None,
        },
        envelope: table.rows.iter().map(|r| r.1.abs()).collect(),
        rows,
        deformation: None,
        fit: None,
        ratio_fit: None,
        degenerate_fit: false,
        verdict: Verdict {
            bound_respected: saturated,
            max_ratio: table.rows.iter().map(|r| (r.1 / table.limit).abs()).fold(0.0, f64::max),
            fitted_exponent: None,
            theoretical_exponent: 0.0,
            fixed_angle_exponent: None,
            decreasing: false,
            passed: saturated,
        },
    })
}

/// Run the experiment named by `cfg.command` (without writing files).
pub fn build_report(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.command {
        Command::KernelNorm => kernel_norm_experiment(cfg.dim, cfg.alpha, cfg.l, cfg.v_radius, &cfg.n_list),
        Command::Localize => localization_experiment(&singular_part(cfg), &domain(cfg)?, &localization_params(cfg)),
        Command::Reconstruct => {
            if cfg.dim != 2 {
                return Err(Error::Unsupported("reconstruct runs on S^2".into()));
            }
            let g = one_plus_cosine(&pole(cfg))?;
            reconstruction_experiment(&singular_part(cfg), &g, &domain(cfg)?, &localization_params(cfg))
        }
        Command::Sharpness => sharpness_experiment(&singular_part(cfg), cfg.probe_angle, cfg.alpha, &cfg.n_list, cfg.window),
        Command::WeakConvergence => weak_convergence_report(cfg),
        Command::Selftest => Err(Error::Unsupported("selftest produces no report".into())),
    }
}

/// Run a validated configuration and return the exit status.
pub fn run(cfg: &ExperimentConfig) -> i32 {
    if cfg.command == Command::Selftest {
        let checks = selftest::run_all(cfg.seed);
        let mut ok = true;
        for c in &checks {
            println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            ok &= c.passed;
        }
        return if ok { EXIT_OK } else { EXIT_FAILED };
    }
    let report = match build_report(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("sphere-riesz {}: {e}", cfg.command.name());
            return exit_code(&e);
        }
    };
    let paths = match emit(&report, &cfg.out) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("sphere-riesz {}: {e}", cfg.command.name());
            return EXIT_CONFIG;
        }
    };
    print_summary(&report);
    for p in &paths {
        println!("wrote {}", p.display());
    }
    if report.verdict.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn print_summary(r: &ExperimentReport) {
    println!("{:>8}  {:>18}  {:>18}  {:>14}", "n", "sup_value", "bound_value", "ratio");
    for row in &r.rows {
        println!(
            "{:>8}  {:>18}  {:>18}  {:>14}",
            row.n,
            format_g(row.sup_value, 10),
            format_g(row.bound_value, 10),
            format_g(row.ratio, 6)
        );
    }
    let v = &r.verdict;
    if let Some(s) = v.fitted_exponent {
        println!("fitted exponent {s:.4} (theory {:.4})", v.theoretical_exponent);
    }
    if let Some(f) = v.fixed_angle_exponent {
        println!("fixed-angle kernel rate {f:.4}");
    }
    println!(
        "bound respected: {}  decreasing: {}  max ratio: {}  verdict: {}",
        v.bound_respected,
        v.decreasing,
        format_g(v.max_ratio, 6),
        if v.passed { "PASS" } else { "FAIL" }
    );
}
