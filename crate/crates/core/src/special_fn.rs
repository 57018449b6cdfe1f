//! Scalar special functions: Gegenbauer and associated Legendre polynomials,
//! Gauss–Legendre rules and sphere surface areas.
//!
//! Everything here is `f64`. Factorial-like quantities go through log-gamma
//! (or short exact products) so nothing overflows for the degrees the kernels use.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest degree accepted by [`gegenbauer_at_one`].
pub const MAX_DEGREE: usize = 1_000_000;

const T_SLACK: f64 = 1e-12;

/// Neumaier's variant of Kahan summation.
///
/// Ascending-order accumulation with a running compensation term; used wherever
/// alternating kernel terms would otherwise cancel catastrophically.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Natural log of |Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> (f64, f64) {
    let (v, sign) = libm::lgamma_r(x);
    (v, if sign < 0 { -1.0 } else { 1.0 })
}

fn check_nu(func: &'static str, nu: f64) -> Result<()> {
    if !(nu > -0.5) || !nu.is_finite() {
        return Err(Error::domain(func, format!("nu = {nu} must exceed -1/2")));
    }
    Ok(())
}

fn check_t(func: &'static str, t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() > 1.0 + T_SLACK {
        return Err(Error::domain(func, format!("|t| = {} exceeds 1", t.abs())));
    }
    Ok(t.clamp(-1.0, 1.0))
}

/// Gegenbauer polynomial `C_k^nu(t)` by the forward three-term recurrence.
pub fn gegenbauer_eval(nu: f64, k: usize, t: f64) -> Result<f64> {
    check_nu("gegenbauer_eval", nu)?;
    let t = check_t("gegenbauer_eval", t)?;
    Ok(gegenbauer_recurrence(nu, k, t, |_, _| {}))
}

/// All values `C_0^nu(t), ..., C_kmax^nu(t)` in one pass of the recurrence.
pub fn gegenbauer_sequence(nu: f64, kmax: usize, t: f64) -> Result<Vec<f64>> {
    check_nu("gegenbauer_sequence", nu)?;
    let t = check_t("gegenbauer_sequence", t)?;
    let mut out = vec![0.0; kmax + 1];
    gegenbauer_recurrence(nu, kmax, t, |k, c| out[k] = c);
    Ok(out)
}

// Calls `visit(j, C_j)` for j = 0..=k and returns C_k.
fn gegenbauer_recurrence(nu: f64, k: usize, t: f64, mut visit: impl FnMut(usize, f64)) -> f64 {
    let mut prev = 1.0;
    visit(0, prev);
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * nu * t;
    visit(1, cur);
    for j in 2..=k {
        let jf = j as f64;
        let next = (2.0 * (jf + nu - 1.0) * t * cur - (jf + 2.0 * nu - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
        visit(j, cur);
    }
    cur
}

/// `C_k^nu(1) = binom(k + 2nu - 1, k)`.
pub fn gegenbauer_at_one(nu: f64, k: usize) -> Result<f64> {
    check_nu("gegenbauer_at_one", nu)?;
    if k > MAX_DEGREE {
        return Err(Error::Overflow {
            func: "gegenbauer_at_one",
            detail: format!("degree {k} exceeds {MAX_DEGREE}"),
        });
    }
    if k == 0 {
        return Ok(1.0);
    }
    let two_nu = 2.0 * nu;
    if two_nu == two_nu.round() {
        // binom(k + m - 1, m - 1) with m = 2nu a nonnegative integer.
        let m = two_nu as usize;
        if m == 0 {
            return Ok(0.0);
        }
        let mut v = 1.0;
        for j in 1..m {
            v *= (k + j) as f64 / j as f64;
        }
        return finite_or_overflow(v, k);
    }
    let (a, sa) = ln_gamma(k as f64 + two_nu);
    let (b, sb) = ln_gamma(two_nu);
    let (c, _) = ln_gamma(k as f64 + 1.0);
    finite_or_overflow(sa * sb * (a - b - c).exp(), k)
}

fn finite_or_overflow(v: f64, k: usize) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            func: "gegenbauer_at_one",
            detail: format!("C_{k}(1) not representable"),
        })
    }
}

/// Associated Legendre function `P_l^m(t)` without the Condon–Shortley phase.
///
/// Seeded by `P_m^m = (2m-1)!! (1-t^2)^{m/2}` and raised in `l` with the
/// standard upward recurrence. Values grow like `(2m-1)!!`, so orders beyond
/// roughly 150 overflow; the orthonormal harmonics use a normalised
/// recurrence instead (see `harmonics_s2`).
pub fn assoc_legendre(l: usize, m: usize, t: f64) -> Result<f64> {
    if m > l {
        return Err(Error::domain(
            "assoc_legendre",
            format!("order m = {m} exceeds degree l = {l}"),
        ));
    }
    let t = check_t("assoc_legendre", t)?;
    let s = ((1.0 - t) * (1.0 + t)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= (2 * i - 1) as f64 * s;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = (2 * m + 1) as f64 * t * pmm;
    for ll in (m + 2)..=l {
        let next = ((2 * ll - 1) as f64 * t * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Nodes and weights of an interpolatory rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_{-1}^{1} f(t) dt`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect::<CompensatedSum>()
            .value()
    }

    /// `∫_a^b f(t) dt` via the affine map from `[-1, 1]`.
    pub fn integrate_interval(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Legendre `P_m(x)` and `P_{m-1}(x)`.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for j in 2..=m {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * cur - (jf - 1.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Gauss–Legendre rule with `m` nodes.
///
/// Newton iteration on `P_m` from Chebyshev-type starting points; only the
/// nonnegative half is iterated and the rest mirrored.
pub fn gauss_legendre_rule(m: usize) -> Result<QuadratureRule> {
    if !(1..=100_000).contains(&m) {
        return Err(Error::domain(
            "gauss_legendre_rule",
            format!("order {m} outside 1..=100000"),
        ));
    }
    if m == 1 {
        return Ok(QuadratureRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mf = m as f64;
    let half = m.div_ceil(2);
    let mut pos = Vec::with_capacity(half);
    for i in 1..=half {
        if m % 2 == 1 && i == half {
            let (_, pm1) = legendre_pair(m, 0.0);
            let dp = mf * pm1;
            pos.push((0.0, 2.0 / (dp * dp)));
            continue;
        }
        let mut x = (PI * (i as f64 - 0.25) / (mf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(m, x);
            let dp = mf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-14 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence {
                method: "gauss_legendre_rule",
                detail: format!("root {i} of P_{m}"),
            });
        }
        let (p, pm1) = legendre_pair(m, x);
        let dp = mf * (x * p - pm1) / (x * x - 1.0);
        pos.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    // pos is ordered by descending node; negatives first.
    for &(x, w) in &pos {
        if x != 0.0 {
            nodes.push(-x);
            weights.push(w);
        }
    }
    for &(x, w) in pos.iter().rev() {
        nodes.push(x);
        weights.push(w);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Total surface measure `ω_N = 2 π^{(N+1)/2} / Γ((N+1)/2)` of `S^N ⊂ R^{N+1}`.
pub fn sphere_surface_area(n: usize) -> f64 {
    // Γ at integers and half-integers by exact recursion.
    let h = n + 1; // Γ(h/2)
    let mut gamma = if h % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut arg = if h % 2 == 0 { 1.0 } else { 0.5 };
    while arg < h as f64 / 2.0 {
        gamma *= arg;
        arg += 1.0;
    }
    2.0 * PI.powf(h as f64 / 2.0) / gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_eval(0.5, 0, 0.7).unwrap(), 1.0);
        assert_abs_diff_eq!(gegenbauer_eval(0.5, 2, 0.0).unwrap(), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(gegenbauer_eval(1.0, 2, 1.0).unwrap(), 3.0, epsilon = 1e-15);
    }

    #[test]
    fn gegenbauer_domain_errors() {
        assert!(gegenbauer_eval(0.5, 3, 1.0 + 1e-9).is_err());
        assert!(gegenbauer_eval(-0.5, 3, 0.0).is_err());
        assert!(gegenbauer_eval(0.5, 3, 1.0 + 1e-13).is_ok());
        assert!(gegenbauer_at_one(-0.7, 2).is_err());
    }

    #[test]
    fn gegenbauer_at_one_examples() {
        assert_eq!(gegenbauer_at_one(0.5, 7).unwrap(), 1.0);
        assert_abs_diff_eq!(gegenbauer_at_one(1.0, 2).unwrap(), 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(gegenbauer_at_one(1.5, 1).unwrap(), 3.0, epsilon = 1e-14);
        assert!(matches!(
            gegenbauer_at_one(1.0, MAX_DEGREE + 1),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn gegenbauer_at_one_matches_recurrence_for_fractional_nu() {
        for &nu in &[0.3, 0.75, 1.25, 2.7, -0.2] {
            for k in 0..40 {
                let rec = gegenbauer_eval(nu, k, 1.0).unwrap();
                let closed = gegenbauer_at_one(nu, k).unwrap();
                assert!(
                    (rec - closed).abs() <= 1e-11 * rec.abs().max(1.0),
                    "nu={nu} k={k}: {rec} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn gegenbauer_sequence_matches_single() {
        let seq = gegenbauer_sequence(1.5, 20, 0.37).unwrap();
        for (k, &v) in seq.iter().enumerate() {
            assert_eq!(v, gegenbauer_eval(1.5, k, 0.37).unwrap());
        }
    }

    #[test]
    fn assoc_legendre_examples() {
        assert_abs_diff_eq!(assoc_legendre(2, 0, 0.0).unwrap(), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(assoc_legendre(1, 1, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        // closed form 15 t (1 - t^2)
        assert_abs_diff_eq!(assoc_legendre(3, 2, 0.5).unwrap(), 5.625, epsilon = 1e-13);
        assert!(assoc_legendre(2, 3, 0.0).is_err());
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }

    #[test]
    fn gauss_legendre_small_rules() {
        let r1 = gauss_legendre_rule(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);
        let r2 = gauss_legendre_rule(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(r2.nodes()[0], -x, epsilon = 1e-15);
        assert_abs_diff_eq!(r2.nodes()[1], x, epsilon = 1e-15);
        assert_abs_diff_eq!(r2.weights()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r2.weights()[1], 1.0, epsilon = 1e-15);
        assert!(gauss_legendre_rule(0).is_err());
        assert!(gauss_legendre_rule(100_001).is_err());
    }

    #[test]
    fn gauss_legendre_sixteen_integrates_t30() {
        let r = gauss_legendre_rule(16).unwrap();
        assert_abs_diff_eq!(r.integrate(|t| t.powi(30)), 2.0 / 31.0, epsilon = 1e-12);
    }

    #[test]
    fn gauss_legendre_rule_invariants() {
        for m in [3, 7, 64, 255, 1000, 4160] {
            let r = gauss_legendre_rule(m).unwrap();
            assert_eq!(r.order(), m);
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]), "m={m}");
            assert!(r.nodes().iter().all(|x| x.abs() < 1.0));
            assert!(r.weights().iter().all(|&w| w > 0.0));
            let total: CompensatedSum = r.weights().iter().copied().collect();
            assert_abs_diff_eq!(total.value(), 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn sphere_areas() {
        assert_abs_diff_eq!(sphere_surface_area(1), 2.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_surface_area(2), 4.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_surface_area(3), 2.0 * PI * PI, epsilon = 1e-13);
        // ω_N = 2π ω_{N-2} / (N-1)
        for n in 3..10 {
            let rec = 2.0 * PI * sphere_surface_area(n - 2) / (n - 1) as f64;
            assert_abs_diff_eq!(sphere_surface_area(n), rec, epsilon = 1e-12);
        }
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        let s: CompensatedSum = xs.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
    }
}
