//! <E_n f, g> freezes at <f, g> once n passes the degree of g.
use sphere_riesz::cli::random_test_function;
use sphere_riesz::distributions::ZonalDistribution;
use sphere_riesz::riesz::weak_convergence_probe;
use sphere_riesz::SpherePoint;

fn main() -> sphere_riesz::Result<()> {
    let f = ZonalDistribution::dirac(SpherePoint::from_angles(0.9, 0.4)).laplacian_power(1).into();
    let g = random_test_function(7).into();
    let ns: Vec<usize> = (1..=12).collect();
    let t = weak_convergence_probe(&f, &g, &ns)?;
    for (n, v) in &t.rows {
        let mark = if v.to_bits() == t.limit.to_bits() { "=" } else { " " };
        println!("n={n:>3}  {v:+.15} {mark}");
    }
    println!("limit  {:+.15}  (deg g = {})", t.limit, t.bandlimit);
    Ok(())
}
