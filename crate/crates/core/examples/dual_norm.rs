//! ‖δ‖_{-l} by Parseval and as a supremum over test elements.
use sphere_riesz::cli::random_test_function;
use sphere_riesz::distributions::{dual_norm_check, dual_ratio, sobolev_norm, ZonalDistribution, DEFAULT_TAIL_TOL};
use sphere_riesz::SpherePoint;

fn main() -> sphere_riesz::Result<()> {
    let d = ZonalDistribution::dirac(SpherePoint::north(2));
    for l in [1.2, 1.5, 2.0] {
        println!("‖δ‖_-{l} = {:.12}", sobolev_norm(&d, -l, DEFAULT_TAIL_TOL)?);
    }
    for kmax in [16, 64, 256, 1024, 4096] {
        let c = dual_norm_check(&d, 1.2, kmax)?;
        println!("kmax={kmax:>5}  matched/parseval = {:.6}", c.matched_ratio / c.parseval_value);
    }
    let f = d.clone().into();
    let best = (0..100)
        .map(|s| dual_ratio(&f, &random_test_function(s), 1.2))
        .collect::<sphere_riesz::Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("best of 100 random test elements: {best:.6}");
    Ok(())
}
