#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫₀^{π/2} dθ / √(1 − r² sin² θ)` by quadrature.
pub fn elliptic_k_quadrature(r: f64) -> f64 {
    integrate(&|t: f64| 1.0 / (1.0 - r * r * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14)
}

pub fn mu_quadrature(r: f64) -> f64 {
    FRAC_PI_2 * elliptic_k_quadrature((1.0 - r * r).sqrt()) / elliptic_k_quadrature(r)
}

/// `0.05, 0.10, …, 0.95`.
pub fn r_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}
