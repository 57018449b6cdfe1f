//! Experiment configuration: JSON file, flags on top, defaults underneath.

use crate::error::{Error, Result};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    KernelNorm,
    Localize,
    Reconstruct,
    Sharpness,
    WeakConvergence,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::KernelNorm => "kernel-norm",
            Command::Localize => "localize",
            Command::Reconstruct => "reconstruct",
            Command::Sharpness => "sharpness",
            Command::WeakConvergence => "weak-convergence",
            Command::Selftest => "selftest",
        }
    }
}

/// Flags. Every value is optional so that a config file can fill it.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "sphere-riesz",
    version,
    about = "Riesz means of distributions on the sphere: localization experiments",
    allow_negative_numbers = true
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Sphere dimension N (S^N in R^{N+1}).
    #[arg(long = "N")]
    pub dim: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub l: Option<f64>,
    /// V = {γ > v_radius} around the pole; also r0 for kernel-norm.
    #[arg(long)]
    pub v_radius: Option<f64>,
    /// Degrees: "32..1024" (dyadic), "8..40 linear 8", or "32,64,128".
    #[arg(long = "n")]
    pub n_list: Option<String>,
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output prefix for <PREFIX>.csv/.json/.svg.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// m in (I - Δ)^m δ.
    #[arg(long)]
    pub laplacian_power: Option<u32>,
    /// Distance between ∂V and the compact K.
    #[arg(long)]
    pub k_margin: Option<f64>,
    /// Angle of the sharpness probe point from the pole.
    #[arg(long)]
    pub probe_angle: Option<f64>,
    #[arg(long)]
    pub window: Option<usize>,
}

/// Contents of a config file; absent fields fall back to defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(alias = "N")]
    pub dim: Option<usize>,
    pub alpha: Option<f64>,
    pub l: Option<f64>,
    pub pole_theta: Option<f64>,
    pub pole_phi: Option<f64>,
    pub v_radius: Option<f64>,
    pub n_list: Option<NListInput>,
    pub resolution: Option<usize>,
    pub out: Option<String>,
    pub seed: Option<u64>,
    pub laplacian_power: Option<u32>,
    pub k_margin: Option<f64>,
    pub probe_angle: Option<f64>,
    pub window: Option<usize>,
}

/// A degree list as a spec string or an explicit array.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NListInput {
    Spec(String),
    List(Vec<usize>),
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(rename = "N")]
    pub dim: usize,
    pub alpha: f64,
    pub l: f64,
    pub pole_theta: f64,
    pub pole_phi: f64,
    pub v_radius: f64,
    pub n_list: Vec<usize>,
    pub resolution: usize,
    pub out: String,
    pub seed: u64,
    pub laplacian_power: u32,
    pub k_margin: f64,
    pub probe_angle: f64,
    pub window: usize,
}

pub const DEFAULT_N_LIST: &str = "32..512";
pub const DEFAULT_RESOLUTION: usize = 64;

impl ExperimentConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            dim: 2,
            alpha: if command == Command::Sharpness { 0.0 } else { 2.0 },
            l: 1.2,
            pole_theta: 0.0,
            pole_phi: 0.0,
            v_radius: PI / 4.0,
            n_list: parse_n_list(DEFAULT_N_LIST).expect("default parses"),
            resolution: DEFAULT_RESOLUTION,
            out: format!("sphere-riesz-{}", command.name()),
            seed: 42,
            laplacian_power: 0,
            k_margin: 0.1,
            probe_angle: PI / 2.0 + 0.1,
            window: crate::riesz::DEFAULT_WINDOW,
        }
    }

    fn apply(&mut self, f: FileConfig) -> Result<()> {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = f.$field { self.$field = v; } )* };
        }
        take!(dim, alpha, l, pole_theta, pole_phi, v_radius, resolution, out, seed, laplacian_power, k_margin, probe_angle, window);
        if let Some(n) = f.n_list {
            self.n_list = match n {
                NListInput::Spec(s) => parse_n_list(&s)?,
                NListInput::List(v) => v,
            };
        }
        Ok(())
    }

    /// Range checks; errors name the field and the accepted range.
    pub fn validate(&self) -> Result<()> {
        fn bad(field: &str, detail: String) -> Result<()> {
            Err(Error::Config {
                field: field.into(),
                detail,
            })
        }
        let finite = |x: f64| x.is_finite();
        if !(2..=6).contains(&self.dim) {
            return bad("N", format!("{} is outside [2, 6]", self.dim));
        }
        if !(finite(self.alpha) && (0.0..=8.0).contains(&self.alpha)) {
            return bad("alpha", format!("{} is outside [0, 8]", self.alpha));
        }
        if !(finite(self.l) && (0.0..=6.0).contains(&self.l)) {
            return bad("l", format!("{} is outside [0, 6]", self.l));
        }
        if !(self.v_radius > 0.0 && self.v_radius < PI) {
            return bad("v_radius", format!("{} is outside (0, π)", self.v_radius));
        }
        if !(finite(self.pole_theta) && (0.0..=PI).contains(&self.pole_theta)) {
            return bad("pole_theta", format!("{} is outside [0, π]", self.pole_theta));
        }
        if !finite(self.pole_phi) {
            return bad("pole_phi", "must be finite".into());
        }
        if !(self.probe_angle > 0.0 && self.probe_angle <= PI) {
            return bad("probe_angle", format!("{} is outside (0, π]", self.probe_angle));
        }
        if !(self.k_margin >= 0.1 && self.v_radius + self.k_margin < PI) {
            return bad(
                "k_margin",
                format!("{} must be ≥ 0.1 with v_radius + k_margin < π", self.k_margin),
            );
        }
        if !(1..=4096).contains(&self.resolution) {
            return bad("resolution", format!("{} is outside [1, 4096]", self.resolution));
        }
        if self.laplacian_power > 4 {
            return bad("laplacian_power", format!("{} is outside [0, 4]", self.laplacian_power));
        }
        if !(1..=64).contains(&self.window) {
            return bad("window", format!("{} is outside [1, 64]", self.window));
        }
        if self.n_list.is_empty()
            || self.n_list[0] == 0
            || self.n_list.windows(2).any(|w| w[0] >= w[1])
            || *self.n_list.last().unwrap() > 1 << 16
        {
            return bad(
                "n_list",
                "degrees must be strictly increasing within [1, 65536]".into(),
            );
        }
        if self.out.is_empty() {
            return bad("out", "empty output prefix".into());
        }
        Ok(())
    }
}

/// Parse a degree list.
///
/// * `"a..b"` or `"a..b dyadic"`: `a, 2a, 4a, …` up to `b`
/// * `"a..b linear s"`: `a, a+s, …` up to `b`
/// * `"a,b,c"`: explicit
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>> {
    let err = |detail: String| Error::Config {
        field: "n_list".into(),
        detail,
    };
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| err(format!("'{s}' is not a nonnegative integer")))
    };
    let spec = spec.trim();
    let out: Vec<usize> = if let Some((a, rest)) = spec.split_once("..") {
        let mut words = rest.split_whitespace();
        let b = num(words.next().ok_or_else(|| err("missing upper end".into()))?)?;
        let a = num(a)?;
        if a == 0 || a > b {
            return Err(err(format!("range {a}..{b} must satisfy 1 ≤ start ≤ stop")));
        }
        match (words.next(), words.next(), words.next()) {
            (None | Some("dyadic"), None, None) => {
                let mut v = vec![a];
                while let Some(&last) = v.last() {
                    match last.checked_mul(2) {
                        Some(n) if n <= b => v.push(n),
                        _ => break,
                    }
                }
                v
            }
            (Some("linear"), step, None) => {
                let s = step.map(num).transpose()?.unwrap_or(1);
                if s == 0 {
                    return Err(err("linear step must be positive".into()));
                }
                (a..=b).step_by(s).collect()
            }
            _ => return Err(err(format!("cannot parse '{spec}'"))),
        }
    } else {
        spec.split(',').map(num).collect::<Result<_>>()?
    };
    if out.is_empty() || out[0] == 0 || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(format!("'{spec}' must give strictly increasing degrees ≥ 1")));
    }
    Ok(out)
}

pub fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        field: "config".into(),
        detail: format!("{}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Config {
        field: "config".into(),
        detail: format!("{}: {e}", path.display()),
    })
}

/// Defaults, then the file named by `--config`, then flags; validated.
pub fn parse_config(args: &Args) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::defaults(args.command);
    if let Some(path) = &args.config {
        cfg.apply(read_file_config(path)?)?;
    }
    let n_list = args.n_list.as_deref().map(parse_n_list).transpose()?.map(NListInput::List);
    cfg.apply(FileConfig {
        dim: args.dim,
        alpha: args.alpha,
        l: args.l,
        pole_theta: None,
        pole_phi: None,
        v_radius: args.v_radius,
        n_list,
        resolution: args.resolution,
        out: args.out.clone(),
        seed: args.seed,
        laplacian_power: args.laplacian_power,
        k_margin: args.k_margin,
        probe_angle: args.probe_angle,
        window: args.window,
    })?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("sphere-riesz").chain(list.iter().copied())).unwrap()
    }

    #[test]
    fn dyadic_lists() {
        assert_eq!(parse_n_list("32..1024 dyadic").unwrap(), vec![32, 64, 128, 256, 512, 1024]);
        assert_eq!(parse_n_list("32..1000").unwrap(), vec![32, 64, 128, 256, 512]);
        assert_eq!(parse_n_list("4..12 linear 4").unwrap(), vec![4, 8, 12]);
        assert_eq!(parse_n_list("3, 5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_n_list("0..8").is_err());
        assert!(parse_n_list("9..8").is_err());
        assert!(parse_n_list("8,4").is_err());
        assert!(parse_n_list("8..64 cubic").is_err());
    }

    #[test]
    fn minimal_file_gets_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"v_radius": 0.9}"#).unwrap();
        let a = args(&["localize", "--config", path.to_str().unwrap()]);
        let c = parse_config(&a).unwrap();
        assert_eq!(c.command, Command::Localize);
        assert_eq!(c.v_radius, 0.9);
        assert_eq!(c.n_list, vec![32, 64, 128, 256, 512]);
        assert_eq!(c.resolution, 64);
        assert_eq!(c.dim, 2);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"alpha": 3.0, "l": 2.0, "n_list": [8, 16, 32]}"#).unwrap();
        let a = args(&["localize", "--config", path.to_str().unwrap(), "--alpha", "4"]);
        let c = parse_config(&a).unwrap();
        assert_eq!((c.alpha, c.l, c.n_list.clone()), (4.0, 2.0, vec![8, 16, 32]));
    }

    #[test]
    fn range_errors_name_the_field() {
        let e = parse_config(&args(&["localize", "--alpha", "-1"])).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "alpha"), "{e}");
        let e = parse_config(&args(&["localize", "--N", "7"])).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "N"));
        let e = parse_config(&args(&["localize", "--v-radius", "3.5"])).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "v_radius"));
        let e = parse_config(&args(&["localize", "--l", "6.5"])).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "l"));
    }

    #[test]
    fn unknown_command_is_a_usage_error() {
        let e = Args::try_parse_from(["sphere-riesz", "frobnicate"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn unknown_file_fields_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"alpah": 3.0}"#).unwrap();
        assert!(parse_config(&args(&["localize", "--config", path.to_str().unwrap()])).is_err());
    }

    #[test]
    fn sharpness_defaults_to_partial_sums() {
        assert_eq!(parse_config(&args(&["sharpness"])).unwrap().alpha, 0.0);
    }
}
