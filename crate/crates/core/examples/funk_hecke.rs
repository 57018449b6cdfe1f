//! Zonal coefficients of a cap indicator, and which domains it vanishes on.
use sphere_riesz::distributions::{funk_hecke_density, restrict_to_vanish};
use sphere_riesz::{Cap, Region, SpherePoint};

fn main() -> sphere_riesz::Result<()> {
    let north = SpherePoint::north(2);
    // smooth bump on γ < 0.5
    let bump = |g: f64| if g < 0.5 { (1.0 - (g / 0.5).powi(2)).powi(3) } else { 0.0 };
    let z = funk_hecke_density(bump, north.clone(), 12, Some((0.0, 0.5)))?;
    for k in 0..=12 {
        println!("d_{k:<2} = {:+.10}", z.coefficient(k));
    }
    let f = z.into();
    for r in [0.4, 0.5, 0.6] {
        let v = Region::Complement(Cap::new(north.clone(), r)?);
        println!("vanishes on {}: {}", v.describe(), restrict_to_vanish(&f, &v));
    }
    Ok(())
}
