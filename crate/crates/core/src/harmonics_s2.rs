//! Real orthonormal spherical harmonics on `S^2`.
//!
//! `Y_{km}(θ, φ) = N_{km} P_k^{|m|}(cos θ) · {√2 cos mφ, 1, √2 sin|m|φ}` for
//! `m > 0`, `m = 0`, `m < 0`, with no Condon–Shortley phase. The normalised
//! Legendre values come from a three-term recurrence that never forms the
//! factorial ratio, so degrees in the thousands are fine.

use crate::error::{Error, Result};
use crate::special_fn::{gauss_legendre_rule, CompensatedSum};
use crate::spectrum::zonal_eigenkernel;
use crate::sphere_geom::SpherePoint;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

/// Degree and order of a real harmonic, `|m| ≤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HarmonicIndex {
    pub k: usize,
    pub m: i64,
}

impl HarmonicIndex {
    pub fn new(k: usize, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > k {
            return Err(Error::domain(
                "HarmonicIndex::new",
                format!("|m| = {} exceeds k = {k}", m.abs()),
            ));
        }
        Ok(Self { k, m })
    }

    /// Position in the flat `(k, m)` layout: `k² + k + m`.
    pub fn flat(&self) -> usize {
        ((self.k * self.k + self.k) as i64 + self.m) as usize
    }

    /// All indices with degree ≤ `kmax`, in flat order.
    pub fn up_to(kmax: usize) -> impl Iterator<Item = HarmonicIndex> {
        (0..=kmax).flat_map(|k| (-(k as i64)..=k as i64).map(move |m| HarmonicIndex { k, m }))
    }
}

/// Number of harmonics with degree ≤ `kmax`.
pub fn table_len(kmax: usize) -> usize {
    (kmax + 1) * (kmax + 1)
}

/// Triangular table of `P̄_k^m(t) = N_{km} P_k^m(t)` for `0 ≤ m ≤ k ≤ kmax`.
#[derive(Debug, Clone)]
pub struct NormalisedLegendre {
    kmax: usize,
    vals: Vec<f64>,
}

impl NormalisedLegendre {
    pub fn new(kmax: usize, t: f64) -> Self {
        let t = t.clamp(-1.0, 1.0);
        let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
        let mut vals = vec![0.0; (kmax + 1) * (kmax + 2) / 2];
        let idx = |k: usize, m: usize| k * (k + 1) / 2 + m;
        let mut pmm = 1.0 / (4.0 * PI).sqrt();
        for m in 0..=kmax {
            if m > 0 {
                pmm *= ((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
            }
            vals[idx(m, m)] = pmm;
            if m == kmax {
                break;
            }
            let mut prev = pmm;
            let mut cur = ((2 * m + 3) as f64).sqrt() * t * pmm;
            vals[idx(m + 1, m)] = cur;
            let a = |l: usize| {
                let (lf, mf) = (l as f64, m as f64);
                ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt()
            };
            for l in (m + 2)..=kmax {
                let next = a(l) * (t * cur - prev / a(l - 1));
                prev = cur;
                cur = next;
                vals[idx(l, m)] = cur;
            }
        }
        Self { kmax, vals }
    }

    pub fn get(&self, k: usize, m: usize) -> f64 {
        debug_assert!(m <= k && k <= self.kmax);
        self.vals[k * (k + 1) / 2 + m]
    }
}

fn azimuthal(m: i64, phi: f64) -> f64 {
    match m {
        0 => 1.0,
        m if m > 0 => SQRT_2 * (m as f64 * phi).cos(),
        m => SQRT_2 * ((-m) as f64 * phi).sin(),
    }
}

/// `Y_{km}(θ, φ)`.
pub fn real_harmonic(k: usize, m: i64, theta: f64, phi: f64) -> Result<f64> {
    let idx = HarmonicIndex::new(k, m)?;
    let leg = NormalisedLegendre::new(k, theta.cos());
    Ok(leg.get(k, idx.m.unsigned_abs() as usize) * azimuthal(m, phi))
}

/// All `Y_{km}` with `k ≤ kmax` at one point, in flat order.
pub fn harmonics_at(kmax: usize, x: &SpherePoint) -> Result<Vec<f64>> {
    let (theta, phi) = x.angles()?;
    let leg = NormalisedLegendre::new(kmax, theta.cos());
    Ok(HarmonicIndex::up_to(kmax)
        .map(|i| leg.get(i.k, i.m.unsigned_abs() as usize) * azimuthal(i.m, phi))
        .collect())
}

/// Coefficient table `c_{km}`, `k ≤ kmax`, of a bandlimited function on `S^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoefficients {
    kmax: usize,
    c: Vec<f64>,
}

impl SphericalCoefficients {
    pub fn zeros(kmax: usize) -> Self {
        Self {
            kmax,
            c: vec![0.0; table_len(kmax)],
        }
    }

    pub fn from_flat(kmax: usize, c: Vec<f64>) -> Result<Self> {
        if c.len() != table_len(kmax) {
            return Err(Error::domain(
                "SphericalCoefficients::from_flat",
                format!("expected {} values, got {}", table_len(kmax), c.len()),
            ));
        }
        Ok(Self { kmax, c })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// `c_{km}`; zero beyond `kmax`.
    pub fn get(&self, k: usize, m: i64) -> f64 {
        if k > self.kmax || m.unsigned_abs() as usize > k {
            return 0.0;
        }
        self.c[HarmonicIndex { k, m }.flat()]
    }

    pub fn set(&mut self, k: usize, m: i64, v: f64) -> Result<()> {
        if k > self.kmax {
            return Err(Error::CoefficientRange {
                available: self.kmax,
                requested: k,
            });
        }
        let i = HarmonicIndex::new(k, m)?.flat();
        self.c[i] = v;
        Ok(())
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.c
    }

    /// Coefficients of degree `k`, `m = -k..=k`.
    pub fn degree(&self, k: usize) -> &[f64] {
        if k > self.kmax {
            return &[];
        }
        let start = k * k;
        &self.c[start..start + 2 * k + 1]
    }

    /// `Σ_{k,m} c_{km} Y_{km}(x)`.
    pub fn evaluate(&self, x: &SpherePoint) -> Result<f64> {
        let y = harmonics_at(self.kmax, x)?;
        Ok(self
            .c
            .iter()
            .zip(&y)
            .map(|(a, b)| a * b)
            .collect::<CompensatedSum>()
            .value())
    }

    /// `Σ_k weight(k) Σ_m c_{km} Y_{km}(x)`, ascending `k`.
    pub fn evaluate_weighted(&self, x: &SpherePoint, weight: impl Fn(usize) -> f64) -> Result<f64> {
        let y = harmonics_at(self.kmax, x)?;
        let mut acc = CompensatedSum::new();
        for k in 0..=self.kmax {
            let w = weight(k);
            if w == 0.0 {
                continue;
            }
            let start = k * k;
            for i in start..start + 2 * k + 1 {
                acc.add(w * self.c[i] * y[i]);
            }
        }
        Ok(acc.value())
    }

    /// `a·self + b·other`, padded to the larger degree.
    pub fn combine(&self, a: f64, other: &SphericalCoefficients, b: f64) -> Self {
        let kmax = self.kmax.max(other.kmax);
        let c = HarmonicIndex::up_to(kmax)
            .map(|i| a * self.get(i.k, i.m) + b * other.get(i.k, i.m))
            .collect();
        Self { kmax, c }
    }
}

/// Analysis on `S^2`: `c_{km} = ∫ f Y_{km} dσ` by a Gauss–Legendre(cos θ) ×
/// equispaced(φ, `2·mq` points) product rule.
///
/// Exact for `f` bandlimited to degree ≤ `kmax` once `mq ≥ kmax + 1`.
pub fn forward_transform(
    f: impl Fn(&SpherePoint) -> f64,
    kmax: usize,
    mq: usize,
) -> Result<SphericalCoefficients> {
    if mq < kmax + 1 {
        return Err(Error::domain(
            "forward_transform",
            format!("quadrature size {mq} below kmax + 1 = {}", kmax + 1),
        ));
    }
    let rule = gauss_legendre_rule(mq)?;
    let nphi = 2 * mq;
    let dphi = 2.0 * PI / nphi as f64;
    let phis: Vec<f64> = (0..nphi).map(|j| j as f64 * dphi).collect();
    let mut acc = vec![CompensatedSum::new(); table_len(kmax)];
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let theta = t.acos();
        let values: Vec<f64> = phis
            .iter()
            .map(|&phi| f(&SpherePoint::from_angles(theta, phi)))
            .collect();
        let leg = NormalisedLegendre::new(kmax, t);
        for m in 0..=kmax {
            let (mut a, mut b) = (CompensatedSum::new(), CompensatedSum::new());
            for (v, &phi) in values.iter().zip(&phis) {
                let (s, c) = (m as f64 * phi).sin_cos();
                a.add(v * c);
                b.add(v * s);
            }
            let (a, b) = (a.value() * dphi * w, b.value() * dphi * w);
            for k in m..=kmax {
                let p = leg.get(k, m);
                if m == 0 {
                    acc[HarmonicIndex { k, m: 0 }.flat()].add(p * a);
                } else {
                    let mi = m as i64;
                    acc[HarmonicIndex { k, m: mi }.flat()].add(SQRT_2 * p * a);
                    acc[HarmonicIndex { k, m: -mi }.flat()].add(SQRT_2 * p * b);
                }
            }
        }
    }
    Ok(SphericalCoefficients {
        kmax,
        c: acc.iter().map(CompensatedSum::value).collect(),
    })
}

/// `|Σ_m Y_{km}(x) Y_{km}(y) - Z_k(⟨x, y⟩)|` on `S^2`.
pub fn addition_residual(k: usize, x: &SpherePoint, y: &SpherePoint) -> Result<f64> {
    let (tx, px) = x.angles()?;
    let (ty, py) = y.angles()?;
    let lx = NormalisedLegendre::new(k, tx.cos());
    let ly = NormalisedLegendre::new(k, ty.cos());
    let mut acc = CompensatedSum::new();
    for m in -(k as i64)..=(k as i64) {
        let a = m.unsigned_abs() as usize;
        acc.add(lx.get(k, a) * azimuthal(m, px) * ly.get(k, a) * azimuthal(m, py));
    }
    Ok((acc.value() - zonal_eigenkernel(2, k, x.dot(y)?)?).abs())
}
