//! Eigenstructure of the Laplace–Beltrami operator and the zonal kernels
//! built from it.
//!
//! Every kernel here is zonal: its value at `(x, y)` depends only on
//! `t = ⟨x, y⟩ = cos γ`. The degree-`k` reproducing kernel is
//!
//! ```text
//! Z_k(t) = (a_k / ω_N) · C_k^ν(t) / C_k^ν(1),   ν = (N-1)/2,
//! ```
//!
//! and a [`KernelProfile`] is a weighted sum `Σ w_k Z_k(t)`.

use crate::error::{Error, Result};
use crate::special_fn::{
    gegenbauer_at_one, gegenbauer_sequence, sphere_surface_area, CompensatedSum,
};
use crate::sphere_geom::{default_node_count, zonal_integral_cos};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn check_dim(func: &'static str, dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::domain(func, format!("N = {dim} must be at least 2")));
    }
    Ok(())
}

/// Gegenbauer index `ν = (N-1)/2` for `S^N`.
pub fn gegenbauer_index(dim: usize) -> f64 {
    (dim as f64 - 1.0) / 2.0
}

/// `λ_k = k(k + N - 1)`.
pub fn eigenvalue(dim: usize, k: usize) -> f64 {
    let k = k as f64;
    k * (k + dim as f64 - 1.0)
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Dimension of the degree-`k` eigenspace:
/// `a_k = binom(N+k, N) - binom(N+k-2, N)`.
pub fn multiplicity(dim: usize, k: usize) -> u64 {
    let hi = binomial(dim + k, dim);
    let lo = if k >= 2 { binomial(dim + k - 2, dim) } else { 0 };
    (hi - lo) as u64
}

/// `Z_k(t)` for a single degree.
pub fn zonal_eigenkernel(dim: usize, k: usize, t: f64) -> Result<f64> {
    check_dim("zonal_eigenkernel", dim)?;
    let nu = gegenbauer_index(dim);
    let c = gegenbauer_sequence(nu, k, t)?;
    Ok(multiplicity(dim, k) as f64 / sphere_surface_area(dim) * c[k] / gegenbauer_at_one(nu, k)?)
}

/// `a_k / (ω_N C_k^ν(1))` for `k = 0..=kmax`: the factor turning `C_k^ν(t)`
/// into `Z_k(t)`.
pub fn zonal_normalisers(dim: usize, kmax: usize) -> Result<Vec<f64>> {
    check_dim("zonal_normalisers", dim)?;
    let nu = gegenbauer_index(dim);
    let omega = sphere_surface_area(dim);
    (0..=kmax)
        .map(|k| Ok(multiplicity(dim, k) as f64 / (omega * gegenbauer_at_one(nu, k)?)))
        .collect()
}

/// Parameters a [`WeightSequence`] was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RieszParams {
    pub n: usize,
    pub alpha: f64,
    pub l: f64,
}

/// Per-degree weights `w_0..w_n` applied to the eigenspace kernels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    dim: usize,
    riesz: Option<RieszParams>,
    w: Vec<f64>,
}

impl WeightSequence {
    /// Arbitrary nonnegative weights.
    pub fn custom(dim: usize, w: Vec<f64>) -> Result<Self> {
        check_dim("WeightSequence::custom", dim)?;
        if w.is_empty() || w.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(Error::domain(
                "WeightSequence::custom",
                "weights must be a nonempty list of finite nonnegative values",
            ));
        }
        Ok(Self { dim, riesz: None, w })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest degree carried (the cutoff `n` for Riesz weights).
    pub fn max_degree(&self) -> usize {
        self.w.len() - 1
    }

    pub fn riesz_params(&self) -> Option<RieszParams> {
        self.riesz
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn get(&self, k: usize) -> f64 {
        self.w.get(k).copied().unwrap_or(0.0)
    }
}

/// Riesz factor `(1 - λ_k/λ_n)_+^α`, with the value at `k = n` fixed to 0
/// for every `α ≥ 0`.
pub fn riesz_factor(dim: usize, n: usize, alpha: f64, k: usize) -> f64 {
    if k >= n {
        return 0.0;
    }
    let x = 1.0 - eigenvalue(dim, k) / eigenvalue(dim, n);
    if alpha == 0.0 {
        1.0
    } else {
        x.max(0.0).powf(alpha)
    }
}

/// `w_k = (1 - λ_k/λ_n)_+^α (1 + λ_k)^{l/2}` for `k = 0..=n`.
///
/// With `α = 0, l = 0` this is the indicator of `k < n`, i.e. the spectral
/// projector onto `λ_k < λ_n`.
pub fn riesz_weights(dim: usize, n: usize, alpha: f64, l: f64) -> Result<WeightSequence> {
    check_dim("riesz_weights", dim)?;
    if n == 0 {
        return Err(Error::domain("riesz_weights", "cutoff degree n must be ≥ 1"));
    }
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain("riesz_weights", format!("alpha = {alpha} must be ≥ 0")));
    }
    if !l.is_finite() {
        return Err(Error::domain("riesz_weights", "l must be finite"));
    }
    let w = (0..=n)
        .map(|k| riesz_factor(dim, n, alpha, k) * sobolev_weight(dim, k, l))
        .collect();
    Ok(WeightSequence {
        dim,
        riesz: Some(RieszParams { n, alpha, l }),
        w,
    })
}

/// `(1 + λ_k)^{l/2}`.
pub fn sobolev_weight(dim: usize, k: usize, l: f64) -> f64 {
    if l == 0.0 {
        1.0
    } else {
        (1.0 + eigenvalue(dim, k)).powf(0.5 * l)
    }
}

/// `|(1+λ_k)^{l/2} - (1+λ_{k+1})^{l/2}| / (1+k)^{l-1}`.
///
/// Bounded in `k` and tending to `l`, since `(1+λ_k)^{1/2} = k + (N-1)/2 + O(1/k)`.
pub fn weight_increment_ratio(dim: usize, l: f64, k: usize) -> f64 {
    let d = (sobolev_weight(dim, k, l) - sobolev_weight(dim, k + 1, l)).abs();
    d / (1.0 + k as f64).powf(l - 1.0)
}

/// A zonal kernel `Σ_k w_k Z_k(t)`.
#[derive(Debug, Clone)]
pub struct KernelProfile {
    weights: WeightSequence,
    // w_k a_k / (ω_N C_k(1))
    scaled: Vec<f64>,
}

impl KernelProfile {
    pub fn new(weights: WeightSequence) -> Result<Self> {
        let norms = zonal_normalisers(weights.dim, weights.max_degree())?;
        let scaled = weights.w.iter().zip(&norms).map(|(w, c)| w * c).collect();
        Ok(Self { weights, scaled })
    }

    /// Riesz kernel `Θ^α` (l = 0) or its weighted version `Θ^α_{l/2}`.
    pub fn riesz(dim: usize, n: usize, alpha: f64, l: f64) -> Result<Self> {
        Self::new(riesz_weights(dim, n, alpha, l)?)
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.dim
    }

    /// `Σ_k w_k Z_k(t)`, ascending in `k` with compensated summation.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let nu = gegenbauer_index(self.dim());
        let c = gegenbauer_sequence(nu, self.weights.max_degree(), t)?;
        Ok(self
            .scaled
            .iter()
            .zip(&c)
            .map(|(s, ck)| s * ck)
            .collect::<CompensatedSum>()
            .value())
    }

    /// `‖Σ w_k Z_k(⟨x, ·⟩)‖_{L_2({γ ≥ r0})}` by band quadrature.
    pub fn norm_outside(&self, r0: f64) -> Result<f64> {
        self.norm_on_band(r0, PI)
    }

    /// `L_2` norm over the band `lo ≤ γ ≤ hi`.
    pub fn norm_on_band(&self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo >= 0.0 && lo < hi && hi <= PI) {
            return Err(Error::domain(
                "kernel_norm",
                format!("band [{lo}, {hi}] invalid"),
            ));
        }
        let m = default_node_count(self.weights.max_degree());
        let nu = gegenbauer_index(self.dim());
        let kmax = self.weights.max_degree();
        let sq = zonal_integral_cos(
            |t| {
                // t comes from a quadrature node, always inside [-1, 1]
                let c = gegenbauer_sequence(nu, kmax, t).expect("node inside [-1, 1]");
                let v = self
                    .scaled
                    .iter()
                    .zip(&c)
                    .map(|(s, ck)| s * ck)
                    .collect::<CompensatedSum>()
                    .value();
                v * v
            },
            lo,
            hi,
            self.dim(),
            m,
        )?;
        Ok(sq.max(0.0).sqrt())
    }

    /// Full-sphere norm by Parseval: `sqrt(Σ w_k² a_k / ω_N)`.
    pub fn norm_full(&self) -> f64 {
        let omega = sphere_surface_area(self.dim());
        self.weights
            .w
            .iter()
            .enumerate()
            .map(|(k, w)| w * w * multiplicity(self.dim(), k) as f64 / omega)
            .collect::<CompensatedSum>()
            .value()
            .sqrt()
    }
}

/// `kernel_eval` as a free function.
pub fn kernel_eval(profile: &KernelProfile, t: f64) -> Result<f64> {
    profile.eval(t)
}

pub fn kernel_norm_outside(profile: &KernelProfile, r0: f64) -> Result<f64> {
    if !(r0 > 0.0 && r0 < PI) {
        return Err(Error::domain("kernel_norm_outside", format!("r0 = {r0} outside (0, π)")));
    }
    profile.norm_outside(r0)
}

pub fn kernel_norm_full(profile: &KernelProfile) -> f64 {
    profile.norm_full()
}

/// Angular regime of the pointwise Riesz-kernel envelopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvelopeRegime {
    /// Away from both the pole and the antipode:
    /// `γ ∈ [π/(2(n+1)), π - π/(2(n+1))]`.
    Interior,
    /// Everywhere: `n^N`.
    Uniform,
    /// `γ ≥ γ_0 > 0`: `n^{N-1-α}`.
    AwayFromPole { gamma0: f64 },
}

/// Unit-constant pointwise envelope of the Riesz kernel `Θ^α(x, y, n)`.
///
/// The multiplicative constants are fixed to 1; only ratios and slopes of
/// these envelopes are meaningful.
pub fn riesz_envelope(
    dim: usize,
    n: usize,
    alpha: f64,
    gamma: f64,
    regime: EnvelopeRegime,
) -> Result<f64> {
    check_dim("riesz_envelope", dim)?;
    if !(0.0..=PI).contains(&gamma) {
        return Err(Error::domain("riesz_envelope", format!("γ = {gamma} outside [0, π]")));
    }
    let nf = n as f64;
    let d = dim as f64;
    match regime {
        EnvelopeRegime::Uniform => Ok(nf.powf(d)),
        EnvelopeRegime::AwayFromPole { gamma0 } => {
            if !(gamma0 > 0.0) || gamma < gamma0 {
                return Err(Error::domain(
                    "riesz_envelope",
                    format!("γ = {gamma} must be ≥ γ_0 = {gamma0} > 0"),
                ));
            }
            Ok(nf.powf(d - 1.0 - alpha))
        }
        EnvelopeRegime::Interior => {
            let edge = PI / (2.0 * (nf + 1.0));
            if gamma < edge || gamma > PI - edge {
                return Err(Error::domain(
                    "riesz_envelope",
                    format!("γ = {gamma} outside the interior regime [{edge}, π - {edge}]"),
                ));
            }
            let s = gamma.sin();
            let h = (0.5 * gamma).sin().powf(1.0 + alpha);
            Ok(nf.powf(0.5 * (d - 1.0)) / (s.powf(0.5 * (d - 1.0)) * h)
                + nf.powf(0.5 * (d - 3.0)) / (s.powf(0.5 * (d + 1.0)) * h)
                + 1.0 / (nf * (0.5 * s).powf(1.0 + d)))
        }
    }
}

/// Weighted Riesz kernel `Θ^α_{l/2}(t)` by summation by parts:
///
/// ```text
/// Σ_{k<n} [(1+λ_k)^{l/2} - (1+λ_{k+1})^{l/2}] S_k(t) + (1+λ_n)^{l/2} S_n(t),
/// S_k(t) = Σ_{j ≤ k} (1 - λ_j/λ_n)_+^α Z_j(t).
/// ```
///
/// The partial sums keep the fixed `λ_n`; renormalising them to `λ_k` breaks
/// the identity.
pub fn abel_weighted_kernel(dim: usize, n: usize, alpha: f64, l: f64, t: f64) -> Result<f64> {
    let plain = riesz_weights(dim, n, alpha, 0.0)?;
    let norms = zonal_normalisers(dim, n)?;
    let c = gegenbauer_sequence(gegenbauer_index(dim), n, t)?;
    let mut partial = CompensatedSum::new();
    let mut out = CompensatedSum::new();
    for k in 0..=n {
        partial.add(plain.get(k) * norms[k] * c[k]);
        let s_k = partial.value();
        if k < n {
            out.add((sobolev_weight(dim, k, l) - sobolev_weight(dim, k + 1, l)) * s_k);
        } else {
            out.add(sobolev_weight(dim, n, l) * s_k);
        }
    }
    Ok(out.value())
}
