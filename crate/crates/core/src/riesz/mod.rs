//! Riesz means of distributions, sup-norm measurements and decay fits.
//!
//! `E_n^α f(x) = Σ_{k ≤ n} (1 - λ_k/λ_n)_+^α Σ_j Y_j^k(x) ⟨f, Y_j^k⟩`.
//!
//! Zonal distributions take the fast path `Σ_k w_k d_k Z_k(⟨x, pole⟩)`.
//! `S^2` coefficient tables are summed over `(k, m)` directly.

mod experiments;

pub use experiments::{
    kernel_norm_experiment, localization_experiment, reconstruction_experiment,
    sharpness_experiment, sharpness_probe, weak_convergence_probe, ExperimentReport,
    ExperimentSetup, LocalizationParams, ReportRow, Verdict, WeakConvergenceTable,
    DEFAULT_WINDOW, EXPONENT_TOL, OSCILLATORY_EXPONENT_TOL, RATIO_TREND_TOL,
};

use crate::distributions::{Distribution, Growth};
use crate::error::{Error, Result};
use crate::special_fn::{gegenbauer_sequence, CompensatedSum};
use crate::spectrum::{gegenbauer_index, riesz_factor, zonal_normalisers};
use crate::sphere_geom::SpherePoint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `E_n^α f` prepared for repeated evaluation at many points.
#[derive(Debug, Clone)]
pub struct RieszMean<'a> {
    f: &'a Distribution,
    // zonal: w_k d_k a_k / (ω C_k(1)); general: w_k
    factors: Vec<f64>,
}

impl<'a> RieszMean<'a> {
    pub fn new(f: &'a Distribution, n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("riesz_mean", "n must be ≥ 1"));
        }
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::domain("riesz_mean", format!("alpha = {alpha} must be ≥ 0")));
        }
        let dim = f.dim();
        let top = f.bandlimit().map_or(n, |b| b.min(n));
        let factors = match f {
            Distribution::Zonal(z) => {
                let norms = zonal_normalisers(dim, top)?;
                (0..=top)
                    .map(|k| riesz_factor(dim, n, alpha, k) * z.coefficient(k) * norms[k])
                    .collect()
            }
            Distribution::General(_) => (0..=top).map(|k| riesz_factor(dim, n, alpha, k)).collect(),
        };
        Ok(Self { f, factors })
    }

    pub fn eval(&self, x: &SpherePoint) -> Result<f64> {
        if x.dim() != self.f.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.f.dim(),
                got: x.dim(),
            });
        }
        match self.f {
            Distribution::Zonal(z) => {
                let t = x.dot(z.pole())?;
                let kmax = self.factors.len() - 1;
                let c = gegenbauer_sequence(gegenbauer_index(z.dim()), kmax, t)?;
                Ok(self
                    .factors
                    .iter()
                    .zip(&c)
                    .map(|(a, b)| a * b)
                    .collect::<CompensatedSum>()
                    .value())
            }
            Distribution::General(g) => g
                .coefficients()
                .evaluate_weighted(x, |k| self.factors.get(k).copied().unwrap_or(0.0)),
        }
    }
}

/// `E_n^α f(x)`.
pub fn riesz_mean_eval(f: &Distribution, n: usize, alpha: f64, x: &SpherePoint) -> Result<f64> {
    RieszMean::new(f, n, alpha)?.eval(x)
}

/// `max_{x ∈ grid} |E_n^α f(x)|`.
pub fn sup_on_grid(f: &Distribution, n: usize, alpha: f64, grid: &[SpherePoint]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::domain("sup_on_grid", "empty grid"));
    }
    let mean = RieszMean::new(f, n, alpha)?;
    sup_abs(grid, |x| mean.eval(x))
}

/// `max_{x ∈ grid} |h(x)|`, evaluated in parallel; the result does not
/// depend on scheduling.
pub(crate) fn sup_abs(
    grid: &[SpherePoint],
    h: impl Fn(&SpherePoint) -> Result<f64> + Sync,
) -> Result<f64> {
    grid.par_iter()
        .map(|x| h(x).map(f64::abs))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// `max_{0 ≤ j < window} |value(n + j)|`. Running over consecutive degrees
/// removes isolated near-zeros of oscillating sequences.
pub fn windowed_max(
    n: usize,
    window: usize,
    mut value: impl FnMut(usize) -> Result<f64>,
) -> Result<f64> {
    let mut best = 0.0f64;
    for j in 0..window.max(1) {
        best = best.max(value(n + j)?.abs());
    }
    Ok(best)
}

/// Least-squares line through `(log n, log value)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn exponent_fit(points: &[(f64, f64)]) -> Result<DecayFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, v)) = points.iter().find(|(_, v)| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateFit(format!(
            "value {v} at n = {n} is not positive; floor or drop it"
        )));
    }
    if points.windows(2).any(|w| !(w[0].0 < w[1].0)) || points[0].0 <= 0.0 {
        return Err(Error::DegenerateFit("n must be positive and strictly increasing".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(DecayFit {
        points: points.to_vec(),
        slope,
        intercept,
        r_squared,
    })
}

/// Leading growth power of the coefficients (0 for a Dirac mass, `2m` after
/// `(I - Δ)^m`). `None` for bandlimited inputs.
pub fn coefficient_growth(f: &Distribution) -> Option<f64> {
    match f {
        Distribution::Zonal(z) => match z.growth() {
            Growth::Polynomial(g) => Some(g),
            Growth::Bandlimited(_) => None,
        },
        Distribution::General(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{GeneralDistribution, ZonalDistribution};
    use crate::harmonics_s2::SphericalCoefficients;
    use crate::spectrum::{eigenvalue, zonal_eigenkernel, KernelProfile};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn constant_one() -> Distribution {
        let mut c = SphericalCoefficients::zeros(0);
        c.set(0, 0, (4.0 * PI).sqrt()).unwrap();
        GeneralDistribution::new(c, "1").into()
    }

    #[test]
    fn constant_is_reproduced() {
        let one = constant_one();
        let x = SpherePoint::from_angles(2.0, 0.3);
        for &a in &[0.0, 1.0, 2.0] {
            for n in [1, 2, 17] {
                assert_abs_diff_eq!(riesz_mean_eval(&one, n, a, &x).unwrap(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn dirac_at_pole_with_one_term() {
        let north = SpherePoint::north(2);
        let d: Distribution = ZonalDistribution::dirac(north.clone()).into();
        assert_abs_diff_eq!(
            riesz_mean_eval(&d, 1, 0.0, &north).unwrap(),
            1.0 / (4.0 * PI),
            epsilon = 1e-15
        );
    }

    #[test]
    fn dirac_on_equator_matches_direct_sum() {
        let d: Distribution = ZonalDistribution::dirac(SpherePoint::north(2)).into();
        let x = SpherePoint::from_angles(PI / 2.0, 1.0);
        let direct: f64 = (0..8)
            .map(|k| (1.0 - eigenvalue(2, k) / 72.0).powi(2) * zonal_eigenkernel(2, k, 0.0).unwrap())
            .sum();
        assert_abs_diff_eq!(riesz_mean_eval(&d, 8, 2.0, &x).unwrap(), direct, epsilon = 1e-14);
    }

    #[test]
    fn dirac_mean_is_the_kernel() {
        let p = SpherePoint::from_angles(0.4, 1.0);
        let d: Distribution = ZonalDistribution::dirac(p.clone()).into();
        let x = SpherePoint::from_angles(1.9, 4.0);
        let t = x.dot(&p).unwrap();
        let k = KernelProfile::riesz(2, 40, 1.5, 0.0).unwrap();
        assert_abs_diff_eq!(
            riesz_mean_eval(&d, 40, 1.5, &x).unwrap(),
            k.eval(t).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn sup_examples() {
        let zero: Distribution = ZonalDistribution::zero(SpherePoint::north(2)).into();
        let grid = vec![SpherePoint::from_angles(1.0, 1.0), SpherePoint::from_angles(2.0, 2.0)];
        assert_eq!(sup_on_grid(&zero, 8, 2.0, &grid).unwrap(), 0.0);
        let d: Distribution = ZonalDistribution::dirac(SpherePoint::north(2)).into();
        let single = &grid[..1];
        assert_eq!(
            sup_on_grid(&d, 8, 2.0, single).unwrap(),
            riesz_mean_eval(&d, 8, 2.0, &single[0]).unwrap().abs()
        );
        assert!(sup_on_grid(&d, 8, 2.0, &[]).is_err());
    }

    #[test]
    fn fit_examples() {
        let f = exponent_fit(&[(2.0, 0.25), (4.0, 0.0625), (8.0, 0.015625)]).unwrap();
        assert_abs_diff_eq!(f.slope, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f.r_squared, 1.0, epsilon = 1e-14);
        let f = exponent_fit(&[(2.0, 0.7), (4.0, 0.7), (8.0, 0.7)]).unwrap();
        assert_abs_diff_eq!(f.slope, 0.0, epsilon = 1e-15);
        let pts: Vec<(f64, f64)> = [8.0f64, 16.0, 32.0, 64.0, 128.0, 256.0]
            .iter()
            .map(|&n| (n, 3.0 * n.powf(-1.5)))
            .collect();
        let f = exponent_fit(&pts).unwrap();
        assert_abs_diff_eq!(f.slope, -1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.intercept, 3f64.ln(), epsilon = 1e-12);
        assert!(exponent_fit(&[(2.0, 1.0), (4.0, 0.0), (8.0, 1.0)]).is_err());
        assert!(exponent_fit(&[(2.0, 1.0), (4.0, 1.0)]).is_err());
        assert!(exponent_fit(&[(4.0, 1.0), (2.0, 1.0), (8.0, 1.0)]).is_err());
    }

    #[test]
    fn windowed_max_grows_with_window() {
        let seq = |n: usize| Ok(((n as f64) * 1.7).sin());
        let mut last = 0.0;
        for w in 1..6 {
            let v = windowed_max(20, w, seq).unwrap();
            assert!(v >= last);
            last = v;
        }
    }
}
