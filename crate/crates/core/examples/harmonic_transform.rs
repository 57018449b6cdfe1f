//! Forward transform of a bandlimited function and evaluation back.
use sphere_riesz::harmonics_s2::{forward_transform, real_harmonic};
use sphere_riesz::SpherePoint;

fn main() -> sphere_riesz::Result<()> {
    // f = 2 Y_{2,1} - 0.5 Y_{3,-2} + 1
    let f = |x: &SpherePoint| {
        let (th, ph) = x.angles().unwrap();
        2.0 * real_harmonic(2, 1, th, ph).unwrap() - 0.5 * real_harmonic(3, -2, th, ph).unwrap() + 1.0
    };
    let c = forward_transform(f, 4, 6)?;
    for k in 0..=4 {
        let row: Vec<String> = c.degree(k).iter().map(|v| format!("{v:+.3}")).collect();
        println!("k={k}: {}", row.join(" "));
    }
    let x = SpherePoint::from_angles(1.1, 2.3);
    println!("f(x) = {:.12}, synthesis = {:.12}", f(&x), c.evaluate(&x)?);
    Ok(())
}
