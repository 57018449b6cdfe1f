//! L2 norm of the Riesz kernel outside a cap, against n^{(N-1)/2 - α + l}.
use sphere_riesz::riesz::kernel_norm_experiment;
use std::f64::consts::PI;

fn main() -> sphere_riesz::Result<()> {
    let ns = [32, 64, 128, 256, 512];
    for (alpha, l) in [(1.0, 0.0), (2.0, 0.0), (1.0, 1.0)] {
        let r = kernel_norm_experiment(2, alpha, l, PI / 3.0, &ns)?;
        let norms: Vec<String> = r.rows.iter().map(|row| format!("{:.3e}", row.sup_value)).collect();
        println!(
            "α={alpha} l={l}: slope {:+.3} (theory {:+.3})  [{}]",
            r.verdict.fitted_exponent.unwrap(),
            r.verdict.theoretical_exponent,
            norms.join(", ")
        );
    }
    Ok(())
}
