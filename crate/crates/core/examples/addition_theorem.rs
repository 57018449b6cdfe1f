//! Explicit real harmonics on S^2 summed over m reproduce the zonal kernel.
use sphere_riesz::harmonics_s2::addition_residual;
use sphere_riesz::spectrum::zonal_eigenkernel;
use sphere_riesz::SpherePoint;

fn main() -> sphere_riesz::Result<()> {
    let x = SpherePoint::from_angles(0.7, 0.2);
    let y = SpherePoint::from_angles(2.1, 4.0);
    let t = x.dot(&y)?;
    println!("{:>4} {:>16} {:>10}", "k", "Z_k(<x,y>)", "residual");
    for k in [0, 1, 2, 5, 10, 20, 32] {
        println!("{k:>4} {:>16.10} {:>10.2e}", zonal_eigenkernel(2, k, t)?, addition_residual(k, &x, &y)?);
    }
    Ok(())
}
