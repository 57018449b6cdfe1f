//! Points on `S^N`, geodesic distance, caps, zonal band integrals and grids.
//!
//! For `N > 2` only zonal quantities are supported: anything that depends on
//! a point through its angle to a pole is reduced to a function of that angle.

use crate::error::{Error, Result};
use crate::special_fn::{gauss_legendre_rule, sphere_surface_area, CompensatedSum};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Unit vector in `R^{N+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Normalises `coords`; needs at least two components and a nonzero norm.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::domain(
                "SpherePoint::new",
                "need at least 2 ambient coordinates",
            ));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::domain("SpherePoint::new", "zero or non-finite vector"));
        }
        Ok(Self {
            coords: coords.into_iter().map(|c| c / norm).collect(),
        })
    }

    /// `e_{N+1}`, the north pole of `S^N`.
    pub fn north(dim: usize) -> Self {
        let mut coords = vec![0.0; dim + 1];
        coords[dim] = 1.0;
        Self { coords }
    }

    pub fn south(dim: usize) -> Self {
        let mut coords = vec![0.0; dim + 1];
        coords[dim] = -1.0;
        Self { coords }
    }

    /// Point of `S^2` at colatitude `theta` and longitude `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            coords: vec![st * cp, st * sp, ct],
        }
    }

    /// Point of `S^N` with the given colatitude from `e_{N+1}` and longitude in
    /// the `(x_1, x_2)` plane. Reduces to [`SpherePoint::from_angles`] for `N = 2`.
    pub fn from_angles_in(dim: usize, theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let mut coords = vec![0.0; dim + 1];
        coords[0] = st * cp;
        coords[1] = st * sp;
        coords[dim] += ct;
        Self { coords }
    }

    /// Sphere dimension `N`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `(colatitude, longitude)` of a point of `S^2`, longitude in `[0, 2π)`.
    pub fn angles(&self) -> Result<(f64, f64)> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        let [x, y, z] = [self.coords[0], self.coords[1], self.coords[2]];
        let theta = z.clamp(-1.0, 1.0).acos();
        let mut phi = y.atan2(x);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        Ok((theta, phi))
    }

    /// Ambient inner product, clamped to `[-1, 1]`.
    pub fn dot(&self, other: &SpherePoint) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let d: f64 = self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum();
        Ok(d.clamp(-1.0, 1.0))
    }

    pub fn antipode(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Geodesic angle `γ(x, y) ∈ [0, π]`.
///
/// Computed as `2·atan2(|x - y|, |x + y|)`, which stays accurate near 0 and
/// π where `acos` of the inner product loses half the digits.
pub fn geodesic_distance(x: &SpherePoint, y: &SpherePoint) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let (mut minus, mut plus) = (0.0, 0.0);
    for (a, b) in x.coords.iter().zip(&y.coords) {
        minus += (a - b) * (a - b);
        plus += (a + b) * (a + b);
    }
    Ok(2.0 * minus.sqrt().atan2(plus.sqrt()))
}

/// Geodesic ball `{x : γ(x, pole) < radius}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    pole: SpherePoint,
    radius: f64,
}

impl Cap {
    pub fn new(pole: SpherePoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < PI) {
            return Err(Error::domain(
                "Cap::new",
                format!("radius {radius} outside (0, π)"),
            ));
        }
        Ok(Self { pole, radius })
    }

    pub fn pole(&self) -> &SpherePoint {
        &self.pole
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.pole.dim()
    }
}

/// A cap or the complement of a cap.
///
/// `contains` treats both as closed sets (`γ ≤ r` and `γ ≥ r`); that is the
/// right reading for the compact sets the grids sample. Open-set questions
/// (does a point lie in the domain `V`?) go through [`Region::contains_open`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Cap(Cap),
    Complement(Cap),
}

impl Region {
    pub fn cap(&self) -> &Cap {
        match self {
            Region::Cap(c) | Region::Complement(c) => c,
        }
    }

    pub fn dim(&self) -> usize {
        self.cap().dim()
    }

    /// Range of the angle to the cap pole covered by the region.
    pub fn angle_interval(&self) -> (f64, f64) {
        match self {
            Region::Cap(c) => (0.0, c.radius),
            Region::Complement(c) => (c.radius, PI),
        }
    }

    pub fn contains(&self, x: &SpherePoint) -> Result<bool> {
        let g = geodesic_distance(x, &self.cap().pole)?;
        Ok(match self {
            Region::Cap(c) => g <= c.radius,
            Region::Complement(c) => g >= c.radius,
        })
    }

    pub fn contains_open(&self, x: &SpherePoint) -> Result<bool> {
        let g = geodesic_distance(x, &self.cap().pole)?;
        Ok(match self {
            Region::Cap(c) => g < c.radius,
            Region::Complement(c) => g > c.radius,
        })
    }

    /// Compact subregion at geodesic distance `margin` inside `self`.
    pub fn shrink(&self, margin: f64) -> Result<Region> {
        let c = self.cap();
        Ok(match self {
            Region::Cap(_) => Region::Cap(Cap::new(c.pole.clone(), c.radius - margin)?),
            Region::Complement(_) => {
                Region::Complement(Cap::new(c.pole.clone(), c.radius + margin)?)
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Region::Cap(c) => format!("{{γ < {:.6}}}", c.radius),
            Region::Complement(c) => format!("{{γ > {:.6}}}", c.radius),
        }
    }
}

/// Default band-quadrature size for integrands built from kernels of degree
/// `max_degree`.
pub fn default_node_count(max_degree: usize) -> usize {
    4 * max_degree + 64
}

fn check_band(func: &'static str, dim: usize, lo: f64, hi: f64, m: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::domain(func, format!("N = {dim} must be at least 2")));
    }
    if !(0.0 <= lo && lo < hi && hi <= PI) {
        return Err(Error::domain(
            func,
            format!("invalid band [{lo}, {hi}], need 0 ≤ lo < hi ≤ π"),
        ));
    }
    if m < 2 {
        return Err(Error::domain(func, format!("node count {m} below 2")));
    }
    Ok(())
}

/// `∫_{lo ≤ γ ≤ hi} f(γ) dσ = ω_{N-1} ∫_lo^hi f(γ) sin^{N-1} γ dγ`.
pub fn zonal_integral(
    f: impl Fn(f64) -> f64,
    gamma_lo: f64,
    gamma_hi: f64,
    dim: usize,
    m: usize,
) -> Result<f64> {
    zonal_integral_cos(|t| f(t.clamp(-1.0, 1.0).acos()), gamma_lo, gamma_hi, dim, m)
}

/// Same band integral with the integrand given as a function of `t = cos γ`.
///
/// Even `N`: Gauss–Legendre in `t` with the polynomial weight
/// `(1 - t²)^{(N-2)/2}` folded in, exact for polynomial integrands up to the
/// rule order. Odd `N`: the weight has a square-root endpoint singularity in
/// `t`, so the rule is applied in `γ` instead, where the integrand is analytic.
pub fn zonal_integral_cos(
    f: impl Fn(f64) -> f64,
    gamma_lo: f64,
    gamma_hi: f64,
    dim: usize,
    m: usize,
) -> Result<f64> {
    check_band("zonal_integral", dim, gamma_lo, gamma_hi, m)?;
    let rule = gauss_legendre_rule(m)?;
    let ring = sphere_surface_area(dim - 1);
    let mut acc = CompensatedSum::new();
    if dim % 2 == 0 {
        let p = (dim - 2) / 2;
        for (t, w) in rule.mapped(gamma_hi.cos(), gamma_lo.cos()) {
            acc.add(w * (1.0 - t * t).powi(p as i32) * f(t));
        }
    } else {
        for (g, w) in rule.mapped(gamma_lo, gamma_hi) {
            acc.add(w * g.sin().powi(dim as i32 - 1) * f(g.cos()));
        }
    }
    Ok(ring * acc.value())
}

/// What a grid has to resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Latitude–longitude product grid; `S^2` only.
    Full,
    /// One representative per sampled angle to the region's pole.
    Zonal,
}

// Pushes the boundary ring this far into the region so that membership
// survives rounding in the rotation.
const BOUNDARY_NUDGE: f64 = 1e-12;

/// Deterministic grid over a cap or cap complement.
///
/// Angles to the pole are `iπ/resolution` plus the region boundary; for the
/// full grid each ring carries `2·resolution` equispaced longitudes. Doubling
/// the resolution yields a superset.
pub fn cap_grid(region: &Region, resolution: usize, kind: GridKind) -> Result<Vec<SpherePoint>> {
    if resolution == 0 {
        return Err(Error::domain("cap_grid", "resolution must be positive"));
    }
    let dim = region.dim();
    if kind == GridKind::Full && dim != 2 {
        return Err(Error::Unsupported(format!(
            "full grids exist only on S^2 (got S^{dim}); request a zonal grid"
        )));
    }
    let (lo, hi) = region.angle_interval();
    let mut angles: Vec<f64> = (0..=resolution)
        .map(|i| i as f64 * PI / resolution as f64)
        .filter(|&g| g >= lo && g <= hi)
        .collect();
    let boundary = match region {
        Region::Cap(c) => c.radius - BOUNDARY_NUDGE,
        Region::Complement(c) => c.radius + BOUNDARY_NUDGE,
    };
    if !angles.iter().any(|&g| (g - boundary).abs() < 1e-9) {
        angles.push(boundary);
    }
    angles.sort_by(|a, b| a.total_cmp(b));

    let frame = Frame::with_pole(region.cap().pole());
    let mut out = Vec::new();
    for &g in &angles {
        let at_pole = g == 0.0 || g == PI;
        let nphi = match kind {
            GridKind::Full if !at_pole => 2 * resolution,
            _ => 1,
        };
        for j in 0..nphi {
            let phi = 2.0 * PI * j as f64 / nphi as f64;
            out.push(frame.place(g, phi));
        }
    }
    Ok(out)
}

/// Orthonormal frame whose last axis is a given pole (Householder reflection
/// of the standard basis).
#[derive(Debug, Clone)]
pub struct Frame {
    dim: usize,
    v: Vec<f64>,
    vv: f64,
}

impl Frame {
    pub fn with_pole(pole: &SpherePoint) -> Self {
        let dim = pole.dim();
        let mut v: Vec<f64> = pole.coords().iter().map(|c| -c).collect();
        v[dim] += 1.0;
        let vv = v.iter().map(|x| x * x).sum();
        Self { dim, v, vv }
    }

    /// Point at angle `gamma` from the pole and longitude `phi` around it.
    pub fn place(&self, gamma: f64, phi: f64) -> SpherePoint {
        let local = SpherePoint::from_angles_in(self.dim, gamma, phi);
        let mut u = local.coords;
        if self.vv > 1e-30 {
            let s = 2.0 * u.iter().zip(&self.v).map(|(a, b)| a * b).sum::<f64>() / self.vv;
            for (ui, vi) in u.iter_mut().zip(&self.v) {
                *ui -= s * vi;
            }
        }
        SpherePoint::new(u).expect("reflection preserves unit norm")
    }
}
