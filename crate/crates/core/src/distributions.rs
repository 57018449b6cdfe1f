//! Distributions on the sphere, accessed only through their coefficients
//! `⟨f, Y_j^k⟩`.
//!
//! A [`ZonalDistribution`] is symmetric about a pole. Its degree-`k`
//! component at `x` is `d_k Z_k(⟨x, pole⟩)`, and every orthonormal basis sees
//! `⟨f, Y_j^k⟩ = d_k Y_j^k(pole)`. A [`GeneralDistribution`] is a
//! bandlimited coefficient table on `S^2`; it stands in for smooth test
//! functions.
//!
//! Support is tracked symbolically from how a distribution was built and is
//! never inferred numerically.

use crate::error::{Error, Result};
use crate::harmonics_s2::{forward_transform, harmonics_at, SphericalCoefficients};
use crate::special_fn::{gegenbauer_at_one, gegenbauer_eval, sphere_surface_area, CompensatedSum};
use crate::spectrum::{eigenvalue, gegenbauer_index, multiplicity};
use crate::sphere_geom::{default_node_count, geodesic_distance, zonal_integral_cos, Region, SpherePoint};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Lazily evaluated per-degree coefficient sequence.
pub type CoefficientFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Default relative tolerance of the tail test in [`sobolev_norm`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

const TAIL_START: usize = 64;
const TAIL_MAX: usize = 1 << 24;
const FUNK_HECKE_NODE_BUDGET: usize = 1 << 14;

/// How fast the per-degree coefficients may grow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// Zero beyond this degree.
    Bandlimited(usize),
    /// `|d_k| ≍ k^g` exactly (the leading power is known symbolically).
    Polynomial(f64),
}

impl Growth {
    fn join(self, other: Growth) -> Growth {
        match (self, other) {
            (Growth::Bandlimited(a), Growth::Bandlimited(b)) => Growth::Bandlimited(a.max(b)),
            (Growth::Polynomial(a), Growth::Polynomial(b)) => Growth::Polynomial(a.max(b)),
            (Growth::Polynomial(a), _) | (_, Growth::Polynomial(a)) => Growth::Polynomial(a),
        }
    }
}

/// Piece of a symbolically known support.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportPiece {
    Point(SpherePoint),
    /// `{x : lo ≤ γ(x, pole) ≤ hi}`.
    Band { pole: SpherePoint, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    /// Union of the listed pieces; empty means the zero distribution.
    Known(Vec<SupportPiece>),
    Unknown,
}

impl Support {
    fn union(&self, other: &Support) -> Support {
        match (self, other) {
            (Support::Known(a), Support::Known(b)) => {
                Support::Known(a.iter().chain(b).cloned().collect())
            }
            _ => Support::Unknown,
        }
    }

    /// Whether this support is certified disjoint from the closure of `v`.
    pub fn avoids(&self, v: &Region) -> bool {
        let pieces = match self {
            Support::Known(p) => p,
            Support::Unknown => return false,
        };
        let center = v.cap().pole();
        let r = v.cap().radius();
        pieces.iter().all(|piece| match piece {
            SupportPiece::Point(p) => match geodesic_distance(p, center) {
                Ok(g) => match v {
                    Region::Cap(_) => g > r,
                    Region::Complement(_) => g < r,
                },
                Err(_) => false,
            },
            SupportPiece::Band { pole, lo, hi } => {
                let same = matches!(geodesic_distance(pole, center), Ok(g) if g < 1e-12);
                let opposite = matches!(geodesic_distance(pole, center), Ok(g) if g > PI - 1e-12);
                let (lo, hi) = if same {
                    (*lo, *hi)
                } else if opposite {
                    (PI - hi, PI - lo)
                } else {
                    return false;
                };
                match v {
                    Region::Cap(_) => lo > r,
                    Region::Complement(_) => hi < r,
                }
            }
        })
    }
}

/// Shared surface of both distribution kinds needed by the Sobolev norms.
pub trait SpectralEnergy {
    fn dim(&self) -> usize;
    /// `Σ_j |⟨f, Y_j^k⟩|²`.
    fn degree_energy(&self, k: usize) -> f64;
    fn growth(&self) -> Growth;
}

/// Rotation-invariant distribution about `pole`.
#[derive(Clone)]
pub struct ZonalDistribution {
    pole: SpherePoint,
    coeff: CoefficientFn,
    growth: Growth,
    support: Support,
    label: String,
}

impl fmt::Debug for ZonalDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZonalDistribution")
            .field("label", &self.label)
            .field("dim", &self.dim())
            .field("growth", &self.growth)
            .field("support", &self.support)
            .finish()
    }
}

impl ZonalDistribution {
    /// Build from an arbitrary coefficient rule. The caller vouches for
    /// `growth` and `support`.
    pub fn from_fn(
        pole: SpherePoint,
        coeff: CoefficientFn,
        growth: Growth,
        support: Support,
        label: impl Into<String>,
    ) -> Self {
        Self {
            pole,
            coeff,
            growth,
            support,
            label: label.into(),
        }
    }

    /// Finitely many coefficients `d_0..d_K`.
    pub fn from_coefficients(pole: SpherePoint, d: Vec<f64>, support: Support, label: impl Into<String>) -> Self {
        let kmax = d.len().saturating_sub(1);
        let d = Arc::new(d);
        Self::from_fn(
            pole,
            Arc::new(move |k| d.get(k).copied().unwrap_or(0.0)),
            Growth::Bandlimited(kmax),
            support,
            label,
        )
    }

    /// Point mass: `d_k = 1` for every `k`.
    pub fn dirac(pole: SpherePoint) -> Self {
        let label = format!("dirac({})", fmt_point(&pole));
        Self::from_fn(
            pole.clone(),
            Arc::new(|_| 1.0),
            Growth::Polynomial(0.0),
            Support::Known(vec![SupportPiece::Point(pole)]),
            label,
        )
    }

    pub fn zero(pole: SpherePoint) -> Self {
        Self::from_fn(pole, Arc::new(|_| 0.0), Growth::Bandlimited(0), Support::Known(vec![]), "0")
    }

    /// The constant function `value`.
    pub fn constant(pole: SpherePoint, value: f64) -> Self {
        let d0 = value * sphere_surface_area(pole.dim());
        let support = if value == 0.0 {
            Support::Known(vec![])
        } else {
            Support::Known(vec![SupportPiece::Band {
                pole: pole.clone(),
                lo: 0.0,
                hi: PI,
            }])
        };
        Self::from_coefficients(pole, vec![d0], support, format!("const({value})"))
    }

    pub fn dim(&self) -> usize {
        self.pole.dim()
    }

    pub fn pole(&self) -> &SpherePoint {
        &self.pole
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    /// `d_k`.
    pub fn coefficient(&self, k: usize) -> f64 {
        if let Growth::Bandlimited(kmax) = self.growth {
            if k > kmax {
                return 0.0;
            }
        }
        (self.coeff)(k)
    }

    /// `(I - Δ_s)^m f`: `d_k ↦ (1 + λ_k)^m d_k`. Support is unchanged.
    pub fn laplacian_power(&self, m: u32) -> Self {
        if m == 0 {
            return self.clone();
        }
        let dim = self.dim();
        let inner = self.coeff.clone();
        let growth = match self.growth {
            Growth::Polynomial(g) => Growth::Polynomial(g + 2.0 * m as f64),
            b => b,
        };
        Self {
            pole: self.pole.clone(),
            coeff: Arc::new(move |k| (1.0 + eigenvalue(dim, k)).powi(m as i32) * inner(k)),
            growth,
            support: self.support.clone(),
            label: format!("(I-Δ)^{m} {}", self.label),
        }
    }

    /// `a·f + b·g` for two distributions about the same pole.
    pub fn linear_combination(a: f64, f: &ZonalDistribution, b: f64, g: &ZonalDistribution) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                got: g.dim(),
            });
        }
        if geodesic_distance(&f.pole, &g.pole)? > 1e-12 {
            return Err(Error::domain(
                "ZonalDistribution::linear_combination",
                "zonal distributions must share a pole",
            ));
        }
        let (fc, gc) = (f.coeff.clone(), g.coeff.clone());
        let (fg, gg) = (f.growth, g.growth);
        let cut = move |growth: Growth, k: usize, c: &CoefficientFn| match growth {
            Growth::Bandlimited(kmax) if k > kmax => 0.0,
            _ => c(k),
        };
        Ok(Self {
            pole: f.pole.clone(),
            coeff: Arc::new(move |k| a * cut(fg, k, &fc) + b * cut(gg, k, &gc)),
            growth: fg.join(gg),
            support: f.support.union(&g.support),
            label: format!("{a}·{} + {b}·{}", f.label, g.label),
        })
    }

    /// `Σ_j ⟨f, Y_j^k⟩ ⟨g, Y_j^k⟩` against an `S^2` table (`k ≤ g.kmax`).
    pub fn degree_pairing_s2(&self, g: &SphericalCoefficients, k: usize, y_pole: &[f64]) -> f64 {
        let start = k * k;
        let dk = self.coefficient(k);
        g.degree(k)
            .iter()
            .zip(&y_pole[start..start + 2 * k + 1])
            .map(|(c, y)| dk * c * y)
            .collect::<CompensatedSum>()
            .value()
    }
}

impl SpectralEnergy for ZonalDistribution {
    fn dim(&self) -> usize {
        self.pole.dim()
    }

    fn degree_energy(&self, k: usize) -> f64 {
        let d = self.coefficient(k);
        d * d * multiplicity(self.dim(), k) as f64 / sphere_surface_area(self.dim())
    }

    fn growth(&self) -> Growth {
        self.growth
    }
}

fn fmt_point(p: &SpherePoint) -> String {
    let c: Vec<String> = p.coords().iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", c.join(","))
}

/// Zonal density `ρ(γ)` about `pole`, expanded by Funk–Hecke:
///
/// ```text
/// d_k = ω_{N-1} ∫_{-1}^{1} ρ(arccos t) C_k^ν(t)/C_k^ν(1) (1-t²)^{(N-2)/2} dt.
/// ```
///
/// `support` is the angular interval `[lo, hi]` outside which `ρ` vanishes;
/// it is used both for integration and as symbolic support. The node count
/// doubles until two successive rules agree to 1e-10.
pub fn funk_hecke_density(
    rho: impl Fn(f64) -> f64,
    pole: SpherePoint,
    kmax: usize,
    support: Option<(f64, f64)>,
) -> Result<ZonalDistribution> {
    let dim = pole.dim();
    let (lo, hi) = support.unwrap_or((0.0, PI));
    let nu = gegenbauer_index(dim);
    let norms: Vec<f64> = (0..=kmax)
        .map(|k| gegenbauer_at_one(nu, k))
        .collect::<Result<_>>()?;
    let coefficients = |m: usize| -> Result<Vec<f64>> {
        (0..=kmax)
            .map(|k| {
                zonal_integral_cos(
                    |t| rho(t.acos()) * gegenbauer_eval(nu, k, t).unwrap_or(0.0) / norms[k],
                    lo,
                    hi,
                    dim,
                    m,
                )
            })
            .collect()
    };
    let mut m = default_node_count(kmax);
    let mut coarse = coefficients(m)?;
    loop {
        if 2 * m > FUNK_HECKE_NODE_BUDGET {
            return Err(Error::Convergence {
                method: "funk_hecke_density",
                detail: format!("node budget {FUNK_HECKE_NODE_BUDGET} exceeded"),
            });
        }
        m *= 2;
        let fine = coefficients(m)?;
        let scale = fine.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        let diff = fine
            .iter()
            .zip(&coarse)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        if diff <= 1e-10 * scale {
            let sup = if support.is_some() {
                Support::Known(vec![SupportPiece::Band {
                    pole: pole.clone(),
                    lo,
                    hi,
                }])
            } else {
                Support::Unknown
            };
            return Ok(ZonalDistribution::from_coefficients(
                pole,
                fine,
                sup,
                format!("funk_hecke(kmax={kmax}, γ∈[{lo:.4},{hi:.4}])"),
            ));
        }
        coarse = fine;
    }
}

/// Bandlimited coefficient table on `S^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralDistribution {
    coeffs: SphericalCoefficients,
    support: Support,
    label: String,
}

impl GeneralDistribution {
    pub fn new(coeffs: SphericalCoefficients, label: impl Into<String>) -> Self {
        Self {
            coeffs,
            support: Support::Unknown,
            label: label.into(),
        }
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = support;
        self
    }

    /// Expand a function bandlimited to `kmax`.
    pub fn from_function(f: impl Fn(&SpherePoint) -> f64, kmax: usize, label: impl Into<String>) -> Result<Self> {
        Ok(Self::new(forward_transform(f, kmax, kmax + 2)?, label))
    }

    pub fn coefficients(&self) -> &SphericalCoefficients {
        &self.coeffs
    }

    pub fn kmax(&self) -> usize {
        self.coeffs.kmax()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn evaluate(&self, x: &SpherePoint) -> Result<f64> {
        self.coeffs.evaluate(x)
    }
}

impl SpectralEnergy for GeneralDistribution {
    fn dim(&self) -> usize {
        2
    }

    fn degree_energy(&self, k: usize) -> f64 {
        self.coeffs.degree(k).iter().map(|c| c * c).sum()
    }

    fn growth(&self) -> Growth {
        Growth::Bandlimited(self.coeffs.kmax())
    }
}

/// Either kind of distribution.
#[derive(Debug, Clone)]
pub enum Distribution {
    Zonal(ZonalDistribution),
    General(GeneralDistribution),
}

impl Distribution {
    pub fn dim(&self) -> usize {
        match self {
            Distribution::Zonal(z) => z.dim(),
            Distribution::General(_) => 2,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Distribution::Zonal(z) => z.label(),
            Distribution::General(g) => g.label(),
        }
    }

    pub fn support(&self) -> &Support {
        match self {
            Distribution::Zonal(z) => z.support(),
            Distribution::General(g) => g.support(),
        }
    }

    /// Highest degree that can carry a nonzero coefficient, if finite.
    pub fn bandlimit(&self) -> Option<usize> {
        match self {
            Distribution::Zonal(z) => match z.growth() {
                Growth::Bandlimited(k) => Some(k),
                Growth::Polynomial(_) => None,
            },
            Distribution::General(g) => Some(g.kmax()),
        }
    }

    /// `Σ_j ⟨f, Y_j^k⟩ ⟨g, Y_j^k⟩`: the degree-`k` part of the pairing.
    pub fn degree_pairing(&self, other: &Distribution, k: usize) -> Result<f64> {
        pairing_terms(self, other, k + 1, k)
    }

    /// `⟨f, g⟩`; at least one side must be bandlimited.
    pub fn pairing(&self, other: &Distribution) -> Result<f64> {
        let k = match (self.bandlimit(), other.bandlimit()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => {
                return Err(Error::Unsupported(
                    "pairing of two non-bandlimited distributions".into(),
                ))
            }
        };
        pairing_terms(self, other, k + 1, 0)
    }
}

impl SpectralEnergy for Distribution {
    fn dim(&self) -> usize {
        Distribution::dim(self)
    }

    fn degree_energy(&self, k: usize) -> f64 {
        match self {
            Distribution::Zonal(z) => z.degree_energy(k),
            Distribution::General(g) => g.degree_energy(k),
        }
    }

    fn growth(&self) -> Growth {
        match self {
            Distribution::Zonal(z) => z.growth(),
            Distribution::General(g) => g.growth(),
        }
    }
}

impl From<ZonalDistribution> for Distribution {
    fn from(z: ZonalDistribution) -> Self {
        Distribution::Zonal(z)
    }
}

impl From<GeneralDistribution> for Distribution {
    fn from(g: GeneralDistribution) -> Self {
        Distribution::General(g)
    }
}

/// `Σ_{first ≤ k < end} Σ_j ⟨f, Y_j^k⟩⟨g, Y_j^k⟩`, ascending `k`, compensated.
pub(crate) fn pairing_terms(f: &Distribution, g: &Distribution, end: usize, first: usize) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: g.dim(),
        });
    }
    let mut acc = CompensatedSum::new();
    match (f, g) {
        (Distribution::Zonal(a), Distribution::Zonal(b)) => {
            if geodesic_distance(a.pole(), b.pole())? > 1e-12 {
                return Err(Error::Unsupported(
                    "pairing of zonal distributions about different poles".into(),
                ));
            }
            let omega = sphere_surface_area(a.dim());
            for k in first..end {
                acc.add(a.coefficient(k) * b.coefficient(k) * multiplicity(a.dim(), k) as f64 / omega);
            }
        }
        (Distribution::Zonal(z), Distribution::General(t)) | (Distribution::General(t), Distribution::Zonal(z)) => {
            let kmax = t.kmax();
            let y = harmonics_at(kmax, z.pole())?;
            for k in first..end.min(kmax + 1) {
                acc.add(z.degree_pairing_s2(t.coefficients(), k, &y));
            }
        }
        (Distribution::General(a), Distribution::General(b)) => {
            for k in first..end {
                let s: CompensatedSum = a
                    .coefficients()
                    .degree(k)
                    .iter()
                    .zip(b.coefficients().degree(k))
                    .map(|(x, y)| x * y)
                    .collect();
                acc.add(s.value());
            }
        }
    }
    Ok(acc.value())
}

/// Symbolic membership test for `H_2^s`.
///
/// Bandlimited inputs are always members. For coefficients growing like
/// `k^g` the series terms behave like `k^{2s + 2g + N - 1}`, so membership
/// holds iff that exponent is below `-1`.
pub fn member_of<D: SpectralEnergy + ?Sized>(f: &D, s: f64) -> bool {
    match f.growth() {
        Growth::Bandlimited(_) => true,
        Growth::Polynomial(g) => series_exponent(f.dim(), g, s) < -1.0,
    }
}

fn series_exponent(dim: usize, g: f64, s: f64) -> f64 {
    2.0 * s + 2.0 * g + dim as f64 - 1.0
}

/// Partial sums `Σ_{k ≤ M} (1+λ_k)^s Σ_j |⟨f, Y_j^k⟩|²`.
fn sobolev_partial<D: SpectralEnergy + ?Sized>(f: &D, s: f64, from: usize, to: usize, acc: &mut CompensatedSum) {
    let dim = f.dim();
    for k in from..=to {
        acc.add((1.0 + eigenvalue(dim, k)).powf(s) * f.degree_energy(k));
    }
}

/// `‖f‖_{H_2^s} = sqrt(Σ_k (1+λ_k)^s Σ_j |⟨f, Y_j^k⟩|²)`.
///
/// Bandlimited inputs are summed exactly. Otherwise the series must pass the
/// symbolic exponent check and then a doubling test. Partial sums at `M`,
/// `2M`, `4M` are Richardson-extrapolated: the known tail powers `M^{p+1}`
/// and `M^p` are removed, where `p` is the term exponent. Doubling stops once
/// successive estimates agree to `tail_tol` relatively.
pub fn sobolev_norm<D: SpectralEnergy + ?Sized>(f: &D, s: f64, tail_tol: f64) -> Result<f64> {
    let g = match f.growth() {
        Growth::Bandlimited(kmax) => {
            let mut acc = CompensatedSum::new();
            sobolev_partial(f, s, 0, kmax, &mut acc);
            return Ok(acc.value().max(0.0).sqrt());
        }
        Growth::Polynomial(g) => g,
    };
    let p = series_exponent(f.dim(), g, s);
    if p >= -1.0 {
        return Err(Error::Divergence(format!(
            "terms decay like k^{p:.3} (need < -1): not in H_2^{s}"
        )));
    }
    let q = p + 1.0;
    let u = 2f64.powf(q);
    let v = 2f64.powf(q - 1.0);
    let extrapolate = |s1: f64, s2: f64, s4: f64| {
        let (d1, d2) = (s2 - s1, s4 - s2);
        let b = (d2 - u * d1) / ((1.0 - v) * (v - u));
        let a = (d1 - b * (1.0 - v)) / (1.0 - u);
        s1 + a + b
    };

    let mut acc = CompensatedSum::new();
    let mut sums = Vec::new();
    let mut m = TAIL_START;
    sobolev_partial(f, s, 0, m, &mut acc);
    sums.push(acc.value());
    let mut previous: Option<f64> = None;
    while m < TAIL_MAX {
        sobolev_partial(f, s, m + 1, 2 * m, &mut acc);
        m *= 2;
        sums.push(acc.value());
        if sums.len() < 3 {
            continue;
        }
        let n = sums.len();
        let est = extrapolate(sums[n - 3], sums[n - 2], sums[n - 1]);
        if let Some(prev) = previous {
            if (est - prev).abs() <= tail_tol * est.abs() {
                return Ok(est.max(0.0).sqrt());
            }
        }
        previous = Some(est);
    }
    Err(Error::Divergence(format!(
        "tail test failed to reach {tail_tol:e} by degree {TAIL_MAX}"
    )))
}

/// Result of comparing the Parseval norm with the dual (sup) characterisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualNormCheck {
    pub parseval_value: f64,
    pub matched_ratio: f64,
}

/// `‖f‖_{-l}` two ways: by Parseval, and as `|⟨f, u*⟩| / ‖u*‖_{H^l}` for
/// the supremising element `u*` with zonal coefficients `(1+λ_k)^{-l} d_k`,
/// truncated at `kmax`.
pub fn dual_norm_check(f: &ZonalDistribution, l: f64, kmax: usize) -> Result<DualNormCheck> {
    if !(l > 0.0) {
        return Err(Error::domain("dual_norm_check", format!("l = {l} must be > 0")));
    }
    if !member_of(f, -l) {
        return Err(Error::Hypothesis(format!("{} is not in H_2^-{l}", f.label())));
    }
    let parseval_value = sobolev_norm(f, -l, 1e-12)?;
    let dim = f.dim();
    let omega = sphere_surface_area(dim);
    let mut pair = CompensatedSum::new();
    let mut norm_sq = CompensatedSum::new();
    for k in 0..=kmax {
        let d = f.coefficient(k);
        let lam = 1.0 + eigenvalue(dim, k);
        let u = lam.powf(-l) * d;
        let a = multiplicity(dim, k) as f64 / omega;
        pair.add(d * u * a);
        norm_sq.add(lam.powf(l) * u * u * a);
    }
    let norm = norm_sq.value().sqrt();
    let matched_ratio = if norm > 0.0 { pair.value().abs() / norm } else { 0.0 };
    Ok(DualNormCheck {
        parseval_value,
        matched_ratio,
    })
}

/// `|⟨f, u⟩| / ‖u‖_{H_2^l}` for one test element `u`.
pub fn dual_ratio(f: &Distribution, u: &GeneralDistribution, l: f64) -> Result<f64> {
    let norm = sobolev_norm(u, l, DEFAULT_TAIL_TOL)?;
    if norm == 0.0 {
        return Err(Error::domain("dual_ratio", "test element is zero"));
    }
    let pairing = f.pairing(&Distribution::General(u.clone()))?;
    Ok(pairing.abs() / norm)
}

/// True iff `f` is certified (from how it was built) to vanish on `V`.
/// `false` means unknown, not "does not vanish".
pub fn restrict_to_vanish(f: &Distribution, v: &Region) -> bool {
    f.dim() == v.dim() && f.support().avoids(v)
}
