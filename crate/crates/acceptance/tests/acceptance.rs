//! Acceptance criteria 1–14. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphere_riesz::cli::{build_report, config_from_args, emit, one_plus_cosine};
use sphere_riesz::distributions::{
    dual_norm_check, dual_ratio, Distribution, GeneralDistribution, ZonalDistribution,
};
use sphere_riesz::harmonics_s2::{addition_residual, forward_transform, real_harmonic, HarmonicIndex, SphericalCoefficients};
use sphere_riesz::riesz::{
    kernel_norm_experiment, localization_experiment, reconstruction_experiment,
    riesz_mean_eval, sharpness_probe, weak_convergence_probe, ExperimentReport, LocalizationParams,
};
use sphere_riesz::spectrum::{
    abel_weighted_kernel, eigenvalue, riesz_weights, weight_increment_ratio, zonal_eigenkernel, KernelProfile,
};
use sphere_riesz::sphere_geom::{cap_grid, GridKind};
use sphere_riesz::{Cap, Error, Region, SpherePoint};
use sphere_riesz_acceptance::{criterion, dyadic, Outcome};
use std::f64::consts::PI;
use std::time::Instant;

type R = Result<(bool, String), Error>;

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    SpherePoint::from_angles(z.acos(), rng.gen_range(0.0..2.0 * PI))
}

fn random_coefficients(rng: &mut ChaCha8Rng, kmax: usize) -> SphericalCoefficients {
    let mut c = SphericalCoefficients::zeros(kmax);
    for i in HarmonicIndex::up_to(kmax) {
        c.set(i.k, i.m, rng.gen_range(-1.0..=1.0)).unwrap();
    }
    c
}

fn north() -> SpherePoint {
    SpherePoint::north(2)
}

fn v_region() -> Region {
    Region::Complement(Cap::new(north(), PI / 4.0).unwrap())
}

fn acceptance_params(l: f64, alpha: f64) -> LocalizationParams {
    LocalizationParams {
        l,
        alpha,
        n_list: dyadic(32, 1024),
        resolution: 64,
        k_margin: PI / 12.0,
        window: 3,
    }
}

fn c1_addition() -> R {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        for k in 0..=32 {
            worst = worst.max(addition_residual(k, &x, &y)?);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((worst <= 1e-9 && secs < 5.0, format!("max residual {worst:.2e}, {secs:.3} s")))
}

fn c2_orthonormality() -> R {
    let start = Instant::now();
    let mut gram = 0.0f64;
    for a in HarmonicIndex::up_to(8) {
        let c = forward_transform(
            |x| {
                let (th, ph) = x.angles().unwrap();
                real_harmonic(a.k, a.m, th, ph).unwrap()
            },
            8,
            10,
        )?;
        for b in HarmonicIndex::up_to(8) {
            let want = if a == b { 1.0 } else { 0.0 };
            gram = gram.max((c.get(b.k, b.m) - want).abs());
        }
    }
    let mut rel = 0.0f64;
    for &alpha in &[0.0, 1.0, 2.0] {
        for n in 1..=64 {
            let k = KernelProfile::riesz(2, n, alpha, 0.0)?;
            let (full, quad) = (k.norm_full(), k.norm_on_band(0.0, PI)?);
            rel = rel.max(((full - quad) / full).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        gram <= 1e-9 && rel <= 1e-6 && secs < 10.0,
        format!("Gram deviation {gram:.2e}, Parseval vs quadrature {rel:.2e}, {secs:.3} s"),
    ))
}

fn c3_constants() -> R {
    let mut c = SphericalCoefficients::zeros(0);
    c.set(0, 0, (4.0 * PI).sqrt())?;
    let one: Distribution = GeneralDistribution::new(c, "1").into();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points: Vec<SpherePoint> = (0..5).map(|_| random_point(&mut rng)).collect();
    let mut worst = 0.0f64;
    for &alpha in &[0.0, 1.0, 2.0] {
        for n in 1..=64 {
            for x in &points {
                worst = worst.max((riesz_mean_eval(&one, n, alpha, x)? - 1.0).abs());
            }
        }
    }
    Ok((worst <= 1e-12, format!("max |E_n^α 1 - 1| = {worst:.2e}")))
}

fn kernel_slope(alpha: f64, l: f64) -> Result<f64, Error> {
    let r = kernel_norm_experiment(2, alpha, l, PI / 3.0, &dyadic(32, 512))?;
    Ok(r.verdict.fitted_exponent.expect("positive norms"))
}

fn c4_kernel_decay() -> R {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in [1.0, 2.0] {
        let s = kernel_slope(alpha, 0.0)?;
        ok &= (s - (0.5 - alpha)).abs() <= 0.2;
        parts.push(format!("α={alpha}: slope {s:+.3} (want {:+.1} ± 0.2)", 0.5 - alpha));
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((ok && secs < 30.0, format!("{}, {secs:.2} s", parts.join("; "))))
}

fn c5_weighted_kernel() -> R {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in [1.0, 2.0] {
        let shift = kernel_slope(alpha, 1.0)? - kernel_slope(alpha, 0.0)?;
        let pass = (shift - 1.0).abs() <= 0.25;
        ok &= pass;
        parts.push(format!("α={alpha}: shift {shift:+.3} ({})", if pass { "ok" } else { "want +1 ± 0.25" }));
    }
    Ok((ok, parts.join("; ")))
}

fn c6_abel() -> R {
    let ts: Vec<f64> = (0..33).map(|i| -1.0 + i as f64 / 16.0).collect();
    let mut worst = 0.0f64;
    for n in 1..=64 {
        for &alpha in &[0.0, 1.0, 2.0] {
            for &l in &[0.0, 1.0, 2.4] {
                let w = riesz_weights(2, n, alpha, l)?;
                let direct: Vec<f64> = ts
                    .iter()
                    .map(|&t| {
                        (0..=n)
                            .map(|k| w.get(k) * zonal_eigenkernel(2, k, t).unwrap())
                            .sum::<f64>()
                    })
                    .collect();
                // relative to the kernel's size on the grid
                let scale = direct.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                for (&t, d) in ts.iter().zip(&direct) {
                    let abel = abel_weighted_kernel(2, n, alpha, l, t)?;
                    worst = worst.max((abel - d).abs() / scale);
                }
            }
        }
    }
    Ok((worst <= 1e-9, format!("max relative error {worst:.2e}")))
}

fn c7_difference() -> R {
    let mut ok = true;
    let mut parts = Vec::new();
    for &l in &[0.5, 1.2, 3.0] {
        for dim in [2, 3] {
            let r: Vec<f64> = (0..=10_000).map(|k| weight_increment_ratio(dim, l, k)).collect();
            let max = r.iter().copied().fold(0.0f64, f64::max);
            let tail_dev = r[100..].iter().map(|v| (v - l).abs() / l).fold(0.0f64, f64::max);
            ok &= max.is_finite() && tail_dev <= 0.2;
            parts.push(format!("l={l} N={dim}: max {max:.3}, tail dev {:.1}%", 100.0 * tail_dev));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn localization_verdicts(r: &ExperimentReport, bound_exp: f64, rate: f64) -> (bool, String) {
    let first = r.rows.first().unwrap().sup_value;
    let last = r.rows.last().unwrap().sup_value;
    let slope = r.fit.as_ref().map_or(f64::NAN, |f| f.slope);
    let ratio_slope = r.ratio_fit.as_ref().map_or(f64::NAN, |f| f.slope);
    let ok = last < first
        && slope <= bound_exp + 0.2
        && (slope - rate).abs() <= 0.25
        && ratio_slope <= 0.1
        && r.verdict.bound_respected;
    (
        ok,
        format!(
            "sup {first:.3e} → {last:.3e}, slope {slope:+.3} (≤ {:+.1}, ≈ {rate:+.1} ± 0.25), ratio slope {ratio_slope:+.3}, C = {:.3e}",
            bound_exp + 0.2,
            r.verdict.max_ratio
        ),
    )
}

fn c8_localization() -> R {
    let start = Instant::now();
    let f: Distribution = ZonalDistribution::dirac(north()).into();
    let r = single_threaded(|| localization_experiment(&f, &v_region(), &acceptance_params(1.2, 2.0)))?;
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = localization_verdicts(&r, -0.3, -1.5);
    Ok((ok && secs < 60.0, format!("{detail}, {secs:.2} s single-threaded")))
}

fn c9_rough() -> R {
    let f: Distribution = ZonalDistribution::dirac(north()).laplacian_power(1).into();
    let r = localization_experiment(&f, &v_region(), &acceptance_params(3.2, 3.8))?;
    // fixed-angle kernel rate for (I-Δ)δ: 1/2 - α + 2
    Ok(localization_verdicts(&r, -0.1, -1.3))
}

fn c10_reconstruction() -> R {
    let g = one_plus_cosine(&north())?;
    let p = acceptance_params(1.2, 2.0);
    let f: Distribution = ZonalDistribution::dirac(north()).into();
    let r = reconstruction_experiment(&f, &g, &v_region(), &p)?;
    let first = r.rows.first().unwrap().sup_value;
    let last = r.rows.last().unwrap().sup_value;
    // sup_K |g_1| with g_1 = cos γ, from the same grid
    let k = v_region().shrink(p.k_margin)?;
    let grid = cap_grid(&k, p.resolution, GridKind::Full)?;
    let g1 = grid.iter().map(|x| x.coords()[2].abs()).fold(0.0f64, f64::max);
    let mut worst = 0.0f64;
    for (row, d) in r.rows.iter().zip(r.deformation.as_ref().unwrap()) {
        let lam = eigenvalue(2, row.n);
        let exact = ((1.0 - 2.0 / lam).powf(p.alpha) - 1.0).abs() * g1;
        worst = worst.max((d - exact).abs());
    }
    Ok((
        last * 4.0 <= first && worst <= 1e-10,
        format!("sup|E f - g| {first:.3e} → {last:.3e} (factor {:.1}), deformation vs closed form {worst:.2e}", first / last),
    ))
}

fn c11_sharpness() -> R {
    let f: Distribution = ZonalDistribution::dirac(north()).into();
    let fit = sharpness_probe(&f, PI / 2.0 + 0.1, 0.0, &dyadic(16, 1024))?;
    Ok(((fit.slope - 0.5).abs() <= 0.25, format!("envelope slope {:+.3} (want +0.5 ± 0.25)", fit.slope)))
}

fn c12_dual_norm() -> R {
    let d = ZonalDistribution::dirac(north());
    let c = dual_norm_check(&d, 1.2, 256)?;
    let q = c.matched_ratio / c.parseval_value;
    let part_a = (0.99..=1.0).contains(&q);
    let f: Distribution = d.into();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut best = 0.0f64;
    for _ in 0..100 {
        let kmax = rng.gen_range(0..=16);
        let u = GeneralDistribution::new(random_coefficients(&mut rng, kmax), "u");
        best = best.max(dual_ratio(&f, &u, 1.2)?);
    }
    let part_b = best <= c.parseval_value + 1e-10;
    Ok((
        part_a && part_b,
        format!(
            "(a) matched/parseval = {q:.6} {} [0.99, 1]; (b) best random ratio {best:.6} ≤ {:.6}: {part_b}",
            if part_a { "in" } else { "NOT in" },
            c.parseval_value
        ),
    ))
}

fn c13_weak_convergence() -> R {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    let mut ok = true;
    for _ in 0..10 {
        let pole = random_point(&mut rng);
        let f: Distribution = ZonalDistribution::dirac(pole).laplacian_power(rng.gen_range(0..=2)).into();
        let deg = rng.gen_range(0..=8);
        let g: Distribution = GeneralDistribution::new(random_coefficients(&mut rng, deg), "g").into();
        let limit = f.pairing(&g)?;
        let ns: Vec<usize> = (deg + 1..=deg + 12).collect();
        let t = weak_convergence_probe(&f, &g, &ns)?;
        for (_, v) in &t.rows {
            ok &= v.to_bits() == limit.to_bits();
            checked += 1;
        }
    }
    Ok((ok, format!("{checked} values compared bitwise")))
}

fn c14_determinism() -> R {
    let configs: [&[&str]; 5] = [
        &["localize", "--n", "32..1024", "--k-margin", "0.2617993877991494"],
        &["localize", "--n", "32..1024", "--k-margin", "0.2617993877991494", "--laplacian-power", "1", "--l", "3.2", "--alpha", "3.8"],
        &["reconstruct", "--n", "32..1024", "--k-margin", "0.2617993877991494"],
        &["sharpness", "--n", "16..1024"],
        &["weak-convergence", "--n", "1..16 linear", "--seed", "42"],
    ];
    let (a, b) = (tempfile::tempdir()?, tempfile::tempdir()?);
    let mut identical = true;
    for (i, cfg) in configs.iter().enumerate() {
        let mut outs = Vec::new();
        for dir in [&a, &b] {
            let prefix = dir.path().join(format!("run{i}")).to_string_lossy().into_owned();
            let argv = std::iter::once("sphere-riesz")
                .chain(cfg.iter().copied())
                .chain(["--out", &prefix]);
            let report = build_report(&config_from_args(argv)?)?;
            let paths = emit(&report, &prefix)?;
            outs.push((std::fs::read(&paths[0])?, std::fs::read(&paths[1])?));
        }
        identical &= outs[0] == outs[1];
    }
    Ok((identical, format!("{} configs, CSV and JSON byte-identical: {identical}", configs.len())))
}

fn main() {
    let outcomes: Vec<Outcome> = vec![
        criterion("1", "addition theorem", c1_addition),
        criterion("2", "orthonormality and Parseval", c2_orthonormality),
        criterion("3", "constant reproduction", c3_constants),
        criterion("4", "kernel norm exponent", c4_kernel_decay),
        criterion("5", "weighted kernel exponent", c5_weighted_kernel),
        criterion("6", "Abel identity", c6_abel),
        criterion("7", "difference estimate", c7_difference),
        criterion("8", "localization of δ", c8_localization),
        criterion("9", "localization of (I-Δ)δ", c9_rough),
        criterion("10", "reconstruction", c10_reconstruction),
        criterion("11", "sharpness at α = 0", c11_sharpness),
        criterion("12", "dual norm", c12_dual_norm),
        criterion("13", "weak convergence", c13_weak_convergence),
        criterion("14", "determinism", c14_determinism),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!(
        "acceptance: {} passed, {} failed{}",
        outcomes.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
