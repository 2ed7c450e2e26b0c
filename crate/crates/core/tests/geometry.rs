mod common;

use qcdl::distortion_envelope::*;
use qcdl::oracle_maps::inversion;
use qcdl::point::{ExtendedPoint, Point};
use qcdl::verify::random_point;
use rand::Rng;

#[test]
fn heron_matches_circle_intersection() {
    for i in 1..=100 {
        let r = 10f64.powf(-2.0 + 4.0 * i as f64 / 100.0);
        for j in 1..=100 {
            let e = j as f64 / 101.0;
            let exact = circle_intersection(0.0, r + e, 1.0, r + 1.0 - e).expect("circles meet");
            let h = heron_im_y(r, e).unwrap();
            assert!((exact[1] - h).abs() <= 1e-8 * h.max(1.0), "r = {r}, e = {e}: {} vs {h}", exact[1]);
        }
    }
}

#[test]
fn bruteforce_diameter_below_upper_bound() {
    let mut rng = common::rng(11);
    let mut checked = 0;
    while checked < 1_000 {
        let n = rng.gen_range(2..=3);
        let x = random_point(&mut rng, n, (1e-2, 1e2));
        let Ok(sup) = epsilon_sup(&x) else { continue };
        let e = sup * rng.gen_range(1e-4..1.0);
        let Ok(upper) = diam_a_upper(&x, e) else { continue };
        let brute = diam_a_bruteforce(&x, e, 400).unwrap();
        checked += 1;
        assert!(brute <= upper, "{x:?}, e = {e}: {brute} > {upper}");
        assert!(brute > 0.0);
    }
}

#[test]
fn inversion_is_involution() {
    let mut rng = common::rng(12);
    for _ in 0..1_000 {
        let n = rng.gen_range(2..=4);
        let x = random_point(&mut rng, n, (1e-3, 1e3));
        let back = inversion(&inversion(&ExtendedPoint::Finite(x.clone()), n), n);
        assert!(back.as_finite().unwrap().distance(&x) <= 1e-14 * x.norm());
    }
    assert!(inversion(&inversion(&ExtendedPoint::<f64>::Infinity, 3), 3).is_infinity());
}

#[test]
fn inversion_commutes_with_meridian_projection() {
    let mut rng = common::rng(13);
    for _ in 0..1_000 {
        let x = random_point(&mut rng, 3, (1e-3, 1e3));
        let a = meridian_projection(inversion(&ExtendedPoint::Finite(x.clone()), 3).as_finite().unwrap()).unwrap();
        let px = ExtendedPoint::Finite(meridian_projection(&x).unwrap());
        let b = inversion(&px, 3);
        assert!(a.distance(b.as_finite().unwrap()) <= 1e-14 * a.norm());
    }
}

#[test]
fn boundary_lies_on_shells() {
    let x = Point::new(vec![0.3_f64, 0.4]);
    let e = 0.05;
    let a = set_a(&x, e).unwrap();
    let rows = cross_section_boundary(&x, e, 200).unwrap();
    assert!(!rows.is_empty());
    for (u, v, _) in rows {
        let z = Point::new(vec![u, v]);
        let on_some = a.shells.iter().any(|s| {
            let d = z.distance(&s.center);
            (d - s.inner).abs() < 1e-9 || (d - s.outer).abs() < 1e-9
        });
        assert!(on_some, "({u}, {v})");
        assert!(a.shells.iter().all(|s| s.depth(&z) >= -1e-9));
    }
}
