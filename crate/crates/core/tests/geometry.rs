use proptest::prelude::*;
use sphere_riesz::special_fn::sphere_surface_area;
use sphere_riesz::sphere_geom::{cap_grid, geodesic_distance, zonal_integral, Frame, GridKind};
use sphere_riesz::{Cap, Region, SpherePoint};
use std::f64::consts::PI;

fn point(dim: usize) -> impl Strategy<Value = SpherePoint> {
    prop::collection::vec(-1.0f64..1.0, dim + 1)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| SpherePoint::new(v).unwrap())
}

proptest! {
    #[test]
    fn distance_symmetric_and_triangular(x in point(2), y in point(2), z in point(2)) {
        let d = |a: &SpherePoint, b: &SpherePoint| geodesic_distance(a, b).unwrap();
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() <= 1e-15);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-10);
    }

    #[test]
    fn triangle_in_higher_dimension(x in point(4), y in point(4), z in point(4)) {
        let d = |a: &SpherePoint, b: &SpherePoint| geodesic_distance(a, b).unwrap();
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-10);
    }

    #[test]
    fn frame_places_at_the_requested_angle(p in point(3), g in 0.0f64..=PI, phi in 0.0f64..std::f64::consts::TAU) {
        let x = Frame::with_pole(&p).place(g, phi);
        prop_assert!((geodesic_distance(&x, &p).unwrap() - g).abs() <= 1e-7);
    }

    #[test]
    fn grid_points_lie_in_region(p in point(2), r in 0.2f64..2.9, complement in any::<bool>(), res in 4usize..24) {
        let cap = Cap::new(p, r).unwrap();
        let region = if complement { Region::Complement(cap) } else { Region::Cap(cap) };
        for x in cap_grid(&region, res, GridKind::Full).unwrap() {
            prop_assert!(region.contains(&x).unwrap());
        }
    }

    #[test]
    fn refined_grid_is_a_superset(r in 0.2f64..2.9, res in 2usize..12) {
        let region = Region::Complement(Cap::new(SpherePoint::north(2), r).unwrap());
        let coarse = cap_grid(&region, res, GridKind::Full).unwrap();
        let fine = cap_grid(&region, 2 * res, GridKind::Full).unwrap();
        for x in &coarse {
            prop_assert!(fine.iter().any(|y| geodesic_distance(x, y).unwrap() < 1e-9));
        }
    }
}

#[test]
fn band_integral_of_one_is_the_area() {
    for dim in 2..=4 {
        for m in [64, 100] {
            let got = zonal_integral(|_| 1.0, 0.0, PI, dim, m).unwrap();
            assert!((got - sphere_surface_area(dim)).abs() <= 1e-9, "N={dim}: {got}");
        }
    }
}

#[test]
fn band_integral_of_cap_area() {
    // area of {γ ≤ r} on S^2 is 2π(1 - cos r)
    for r in [0.3, 1.0, 2.5] {
        let got = zonal_integral(|_| 1.0, 0.0, r, 2, 64).unwrap();
        assert!((got - 2.0 * PI * (1.0 - r.cos())).abs() < 1e-12);
    }
}

#[test]
fn zonal_grid_off_s2() {
    let region = Region::Cap(Cap::new(SpherePoint::north(3), 1.0).unwrap());
    assert!(cap_grid(&region, 8, GridKind::Full).is_err());
    let g = cap_grid(&region, 8, GridKind::Zonal).unwrap();
    assert!(g.iter().all(|x| region.contains(x).unwrap()));
}
