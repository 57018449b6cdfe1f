//! f = δ + g with g continuous on V: the means recover g there.
use sphere_riesz::cli::one_plus_cosine;
use sphere_riesz::distributions::ZonalDistribution;
use sphere_riesz::riesz::{reconstruction_experiment, LocalizationParams};
use sphere_riesz::{Cap, Region, SpherePoint};
use std::f64::consts::PI;

fn main() -> sphere_riesz::Result<()> {
    let north = SpherePoint::north(2);
    let g = one_plus_cosine(&north)?;
    let v = Region::Complement(Cap::new(north.clone(), PI / 4.0)?);
    let p = LocalizationParams {
        n_list: vec![32, 64, 128, 256, 512, 1024],
        k_margin: PI / 12.0,
        ..Default::default()
    };
    let r = reconstruction_experiment(&ZonalDistribution::dirac(north).into(), &g, &v, &p)?;
    let deform = r.deformation.as_ref().unwrap();
    println!("{:>6} {:>14} {:>14} {:>14}", "n", "sup|E f - g|", "sup|E g - g|", "closed form");
    for (row, d) in r.rows.iter().zip(deform) {
        let lam = (row.n * (row.n + 1)) as f64;
        let exact = ((1.0 - 2.0 / lam).powf(p.alpha) - 1.0).abs();
        println!("{:>6} {:>14.6e} {:>14.6e} {:>14.6e}", row.n, row.sup_value, d, exact);
    }
    Ok(())
}
