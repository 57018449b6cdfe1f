//! Riesz means of δ_north tend to zero uniformly on K = {γ ≥ π/3}.
use sphere_riesz::distributions::ZonalDistribution;
use sphere_riesz::riesz::{localization_experiment, LocalizationParams};
use sphere_riesz::{Cap, Region, SpherePoint};
use std::f64::consts::PI;

fn main() -> sphere_riesz::Result<()> {
    let north = SpherePoint::north(2);
    let v = Region::Complement(Cap::new(north.clone(), PI / 4.0)?);
    let params = LocalizationParams {
        n_list: vec![32, 64, 128, 256, 512, 1024],
        k_margin: PI / 12.0,
        ..Default::default()
    };
    for (m, l, alpha) in [(0, 1.2, 2.0), (1, 3.2, 3.8)] {
        let f = ZonalDistribution::dirac(north.clone()).laplacian_power(m).into();
        let r = localization_experiment(&f, &v, &LocalizationParams { l, alpha, ..params.clone() })?;
        println!("{} on {}, l={l}, α={alpha}", r.setup.distribution, r.setup.compact.as_deref().unwrap());
        for row in &r.rows {
            println!("  n={:>5}  sup={:.4e}  bound={:.4e}", row.n, row.sup_value, row.bound_value);
        }
        let v = &r.verdict;
        println!(
            "  slope {:+.3}, bound exponent {:+.3}, kernel rate {:+.3}, verdict {}",
            v.fitted_exponent.unwrap(),
            v.theoretical_exponent,
            v.fixed_angle_exponent.unwrap(),
            v.passed
        );
    }
    Ok(())
}
