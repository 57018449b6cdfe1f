//! Quick invariant checks across all modules, run by `sphere-riesz selftest`.

use crate::distributions::{
    dual_norm_check, dual_ratio, Distribution, GeneralDistribution, ZonalDistribution,
};
use crate::error::Result;
use crate::harmonics_s2::{addition_residual, forward_transform, real_harmonic, HarmonicIndex, SphericalCoefficients};
use crate::riesz::{exponent_fit, riesz_mean_eval, weak_convergence_probe};
use crate::special_fn::{assoc_legendre, gauss_legendre_rule, gegenbauer_eval};
use crate::spectrum::{abel_weighted_kernel, riesz_weights, zonal_eigenkernel, KernelProfile};
use crate::sphere_geom::SpherePoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    SpherePoint::from_angles(rng.gen::<f64>().mul_add(2.0, -1.0).acos(), rng.gen::<f64>() * 2.0 * PI)
}

/// Random `S^2` coefficient table of degree `kmax`, entries in `[-1, 1]`.
pub fn random_coefficients(rng: &mut ChaCha8Rng, kmax: usize) -> SphericalCoefficients {
    let mut c = SphericalCoefficients::zeros(kmax);
    for idx in HarmonicIndex::up_to(kmax) {
        c.set(idx.k, idx.m, rng.gen_range(-1.0..=1.0)).expect("index in range");
    }
    c
}

pub fn run_all(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    out.push(check("quadrature exactness (m ≤ 16)", (|| {
        let mut worst = 0.0f64;
        for m in 1..=16 {
            let r = gauss_legendre_rule(m)?;
            for j in 0..2 * m {
                let exact = if j % 2 == 0 { 2.0 / (j as f64 + 1.0) } else { 0.0 };
                worst = worst.max((r.integrate(|t| t.powi(j as i32)) - exact).abs());
            }
        }
        Ok((worst <= 1e-12, format!("max error {worst:.2e}")))
    })()));

    out.push(check("Gegenbauer ν=1/2 equals Legendre", (|| {
        let mut worst = 0.0f64;
        for k in 0..=64 {
            for i in 0..=20 {
                let t = -1.0 + 0.1 * i as f64;
                worst = worst.max((gegenbauer_eval(0.5, k, t)? - assoc_legendre(k, 0, t)?).abs());
            }
        }
        Ok((worst <= 1e-11, format!("max difference {worst:.2e}")))
    })()));

    let pairs: Vec<(SpherePoint, SpherePoint)> =
        (0..5).map(|_| (random_point(&mut rng), random_point(&mut rng))).collect();
    out.push(check("addition theorem (k ≤ 16)", (|| {
        let mut worst = 0.0f64;
        for (x, y) in &pairs {
            for k in 0..=16 {
                worst = worst.max(addition_residual(k, x, y)?);
            }
        }
        Ok((worst <= 1e-9, format!("max residual {worst:.2e}")))
    })()));

    out.push(check("harmonic Gram matrix (k ≤ 4)", (|| {
        let mut worst = 0.0f64;
        for a in HarmonicIndex::up_to(4) {
            let c = forward_transform(
                |x| {
                    let (th, ph) = x.angles().expect("S^2 point");
                    real_harmonic(a.k, a.m, th, ph).expect("valid index")
                },
                4,
                6,
            )?;
            for b in HarmonicIndex::up_to(4) {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((c.get(b.k, b.m) - want).abs());
            }
        }
        Ok((worst <= 1e-9, format!("max deviation {worst:.2e}")))
    })()));

    out.push(check("constant reproduction", (|| {
        let mut c = SphericalCoefficients::zeros(0);
        c.set(0, 0, (4.0 * PI).sqrt())?;
        let one: Distribution = GeneralDistribution::new(c, "1").into();
        let mut worst = 0.0f64;
        for &a in &[0.0, 1.0, 2.0] {
            for n in [1, 7, 64] {
                for (x, _) in &pairs {
                    worst = worst.max((riesz_mean_eval(&one, n, a, x)? - 1.0).abs());
                }
            }
        }
        Ok((worst <= 1e-12, format!("max error {worst:.2e}")))
    })()));

    out.push(check("Riesz mean of δ equals the kernel", (|| {
        let (p, x) = &pairs[0];
        let d: Distribution = ZonalDistribution::dirac(p.clone()).into();
        let t = x.dot(p)?;
        let a = riesz_mean_eval(&d, 48, 2.0, x)?;
        let b = KernelProfile::riesz(2, 48, 2.0, 0.0)?.eval(t)?;
        Ok(((a - b).abs() <= 1e-12, format!("difference {:.2e}", (a - b).abs())))
    })()));

    out.push(check("Abel identity", (|| {
        let mut worst = 0.0f64;
        for &(n, a, l) in &[(16, 0.0, 0.0), (24, 1.0, 1.0), (40, 2.0, 2.4)] {
            let w = riesz_weights(2, n, a, l)?;
            for i in 0..=8 {
                let t = -1.0 + 0.25 * i as f64;
                let mut direct = 0.0;
                for k in 0..=n {
                    direct += w.get(k) * zonal_eigenkernel(2, k, t)?;
                }
                let abel = abel_weighted_kernel(2, n, a, l, t)?;
                worst = worst.max((abel - direct).abs() / direct.abs().max(1.0));
            }
        }
        Ok((worst <= 1e-9, format!("max relative error {worst:.2e}")))
    })()));

    out.push(check("Parseval kernel norm", (|| {
        let k = KernelProfile::riesz(2, 32, 1.0, 0.0)?;
        let (a, b) = (k.norm_full(), k.norm_on_band(0.0, PI)?);
        Ok((((a - b) / a).abs() <= 1e-6, format!("{a:.10} vs {b:.10}")))
    })()));

    out.push(check("dual norm: test elements stay below", (|| {
        let pole = SpherePoint::north(2);
        let chk = dual_norm_check(&ZonalDistribution::dirac(pole.clone()), 1.2, 64)?;
        let d: Distribution = ZonalDistribution::dirac(pole).into();
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..10 {
            let u = GeneralDistribution::new(random_coefficients(&mut rng, 8), "u");
            worst = worst.max(dual_ratio(&d, &u, 1.2)?);
        }
        Ok((
            worst <= chk.parseval_value + 1e-10 && chk.matched_ratio <= chk.parseval_value,
            format!("largest ratio {worst:.6} ≤ {:.6}", chk.parseval_value),
        ))
    })()));

    out.push(check("exponent fit recovers a power law", (|| {
        let pts: Vec<(f64, f64)> = (3..9).map(|e| {
            let n = 2f64.powi(e);
            (n, 3.0 * n.powf(-1.5))
        }).collect();
        let f = exponent_fit(&pts)?;
        Ok(((f.slope + 1.5).abs() <= 1e-12, format!("slope {:.15}", f.slope)))
    })()));

    out.push(check("weak convergence saturates", (|| {
        let d: Distribution = ZonalDistribution::dirac(random_point(&mut rng)).into();
        let g: Distribution = GeneralDistribution::new(random_coefficients(&mut rng, 6), "g").into();
        let table = weak_convergence_probe(&d, &g, &[1, 3, 7, 8, 20])?;
        let ok = table
            .rows
            .iter()
            .filter(|(n, _)| *n > table.bandlimit)
            .all(|(_, v)| v.to_bits() == table.limit.to_bits());
        Ok((ok, format!("limit {:.12}", table.limit)))
    })()));

    out
}
