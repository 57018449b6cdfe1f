//! Partial sums (α = 0) of δ grow like n^{1/2} at a fixed angle; α = 2 decays.
use sphere_riesz::distributions::ZonalDistribution;
use sphere_riesz::riesz::sharpness_probe;
use sphere_riesz::SpherePoint;
use std::f64::consts::PI;

fn main() -> sphere_riesz::Result<()> {
    let d = ZonalDistribution::dirac(SpherePoint::north(2)).into();
    let ns = [16, 32, 64, 128, 256, 512, 1024];
    for alpha in [0.0, 1.0, 2.0] {
        let fit = sharpness_probe(&d, PI / 2.0 + 0.1, alpha, &ns)?;
        println!("α={alpha}: envelope slope {:+.3} (r² = {:.3})", fit.slope, fit.r_squared);
    }
    Ok(())
}
