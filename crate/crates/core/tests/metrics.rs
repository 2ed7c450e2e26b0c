mod common;

use qcdl::metrics::*;
use qcdl::point::{ExtendedPoint, Point};
use qcdl::verify::random_point;
use rand::Rng;

const RANGE: (f64, f64) = (1e-3, 1e3);

fn triangle(d: impl Fn(&Point<f64>, &Point<f64>) -> f64, seed: u64) {
    let mut rng = common::rng(seed);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=4);
        let (x, y, z) = (random_point(&mut rng, n, RANGE), random_point(&mut rng, n, RANGE), random_point(&mut rng, n, RANGE));
        let (xy, xz, zy) = (d(&x, &y), d(&x, &z), d(&z, &y));
        assert!(xy <= (xz + zy) * (1.0 + 1e-12) + 1e-15, "{x:?} {y:?} {z:?}");
        assert!((xy - d(&y, &x)).abs() <= 1e-12 * xy.max(1.0));
        assert_eq!(d(&x, &x), 0.0);
    }
}

#[test]
fn chordal_triangle() {
    let q = |x: &Point<f64>, y: &Point<f64>| chordal(&ExtendedPoint::Finite(x.clone()), &ExtendedPoint::Finite(y.clone())).unwrap();
    triangle(q, 1);
}

#[test]
fn chordal_at_infinity() {
    let mut rng = common::rng(2);
    for _ in 0..1_000 {
        let x = ExtendedPoint::Finite(random_point(&mut rng, 3, RANGE));
        let y = ExtendedPoint::Finite(random_point(&mut rng, 3, RANGE));
        let inf = ExtendedPoint::Infinity;
        let q = |a: &ExtendedPoint<f64>, b: &ExtendedPoint<f64>| chordal(a, b).unwrap();
        assert!(q(&x, &inf) <= 1.0 && q(&x, &y) <= 1.0);
        assert!(q(&x, &y) <= q(&x, &inf) + q(&inf, &y) + 1e-15);
    }
}

#[test]
fn j_triangle() {
    triangle(|x, y| j_punctured(x, y).unwrap(), 3);
}

#[test]
fn k_triangle() {
    triangle(|x, y| k_punctured(x, y).unwrap(), 4);
}

#[test]
fn j_below_k() {
    let mut rng = common::rng(5);
    for _ in 0..100_000 {
        let n = rng.gen_range(2..=4);
        let (x, y) = (random_point(&mut rng, n, RANGE), random_point(&mut rng, n, RANGE));
        let (j, k) = (j_punctured(&x, &y).unwrap(), k_punctured(&x, &y).unwrap());
        assert!(j <= k * (1.0 + 1e-12) + 1e-15, "{x:?} {y:?}: {j} > {k}");
    }
}

#[test]
fn k_below_scaled_j_near_diagonal() {
    let mut rng = common::rng(6);
    for lambda in [0.1, 0.5, 0.9] {
        let mut checked = 0;
        while checked < 10_000 {
            let n = rng.gen_range(2..=4);
            let x = random_point(&mut rng, n, RANGE);
            let y = &x + &random_point(&mut rng, n, (1e-6 * x.norm(), x.norm()));
            let Ok(out) = jk_sandwich_check(&x, &y, lambda) else { continue };
            checked += 1;
            let tol = (1e-12 * out.k).max(1e-15);
            assert!(out.lower_margin >= -tol && out.upper_margin >= -tol, "{x:?} {y:?} {out:?}");
        }
    }
}

#[test]
fn subdivision_is_additive() {
    let mut rng = common::rng(7);
    for _ in 0..1_000 {
        let n = rng.gen_range(2..=4);
        let (x, y) = (random_point(&mut rng, n, RANGE), random_point(&mut rng, n, RANGE));
        let total = k_punctured(&x, &y).unwrap();
        let step = total / rng.gen_range(1.0..50.0);
        let pts = geodesic_subdivision(&x, &y, step).unwrap();
        let sum: f64 = pts.windows(2).map(|w| k_punctured(&w[0], &w[1]).unwrap()).sum();
        assert!((sum - total).abs() <= 1e-9 * total.max(1.0), "{sum} vs {total}");
        for w in pts.windows(2) {
            assert!(k_punctured(&w[0], &w[1]).unwrap() <= step * (1.0 + 1e-9));
        }
        assert!(pts[0].distance(&y) <= 1e-12 * y.norm() && pts.last().unwrap().distance(&x) <= 1e-12 * x.norm());
    }
}

#[test]
fn antiparallel_endpoints() {
    let x = Point::new(vec![2.0, 0.0, 0.0]);
    let y = Point::new(vec![-0.5, 0.0, 0.0]);
    let total = k_punctured(&x, &y).unwrap();
    assert!((total - (4f64.ln()).hypot(std::f64::consts::PI)).abs() < 1e-14);
    let pts = geodesic_subdivision(&x, &y, total / 8.0).unwrap();
    assert_eq!(pts.len(), 9);
}
