//! Exact quasiconformal test maps fixing `0`, `e₁` and `∞`.

use crate::error::{domain, Result};
use crate::metrics::{angle_between, j_punctured, k_punctured};
use crate::point::{ExtendedPoint, Point};
use crate::scalar::Real;

/// The radial stretch `x ↦ |x|^{p−1} x` in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialStretch<T> {
    pub exponent: T,
    pub n: u32,
}

impl<T: Real> RadialStretch<T> {
    pub fn new(exponent: T, n: u32) -> Result<Self> {
        if !(exponent > T::zero()) || !exponent.is_finite() {
            return domain(format!("stretch exponent must be finite and positive, got {exponent}"));
        }
        if n < 2 {
            return domain(format!("dimension must be >= 2, got {n}"));
        }
        Ok(RadialStretch { exponent, n })
    }

    /// Maximal dilatation of the map.
    pub fn dilatation(&self) -> T {
        stretch_dilatation(self.exponent, self.n).expect("validated exponent")
    }

    fn check_point(&self, x: &Point<T>) -> Result<()> {
        if x.dim() != self.n as usize {
            return Err(crate::error::Error::DimensionMismatch(x.dim(), self.n as usize));
        }
        Ok(())
    }
}

/// `|x|^{p−1} x` for `x ≠ 0`.
pub fn apply_stretch<T: Real>(map: &RadialStretch<T>, x: &Point<T>) -> Result<Point<T>> {
    map.check_point(x)?;
    let r = x.norm();
    if !(r > T::zero()) || !r.is_finite() {
        return domain(format!("radial stretch needs a finite nonzero point, got |x| = {r}"));
    }
    let unit = x.scale(r.recip());
    Ok(unit.scale(r.powf(map.exponent)))
}

/// [`apply_stretch`] on the extended space, where `0` and `∞` are fixed.
pub fn apply_stretch_extended<T: Real>(map: &RadialStretch<T>, x: &ExtendedPoint<T>) -> Result<ExtendedPoint<T>> {
    match x {
        ExtendedPoint::Infinity => Ok(ExtendedPoint::Infinity),
        ExtendedPoint::Finite(p) if p.is_origin() => {
            map.check_point(p)?;
            Ok(x.clone())
        }
        ExtendedPoint::Finite(p) => apply_stretch(map, p).map(ExtendedPoint::Finite),
    }
}

/// `max{p, 1/p}^{n−1}`.
pub fn stretch_dilatation<T: Real>(p: T, n: u32) -> Result<T> {
    if !(p > T::zero()) || !p.is_finite() {
        return domain(format!("stretch exponent must be finite and positive, got {p}"));
    }
    if n < 2 {
        return domain(format!("dimension must be >= 2, got {n}"));
    }
    Ok(p.max(p.recip()).powi(n as i32 - 1))
}

/// Inversion in the unit sphere of `R^dim`, `x ↦ x/|x|²`, swapping `0`
/// and `∞`.
pub fn inversion<T: Real>(x: &ExtendedPoint<T>, dim: usize) -> ExtendedPoint<T> {
    match x {
        ExtendedPoint::Infinity => ExtendedPoint::Finite(Point::origin(dim)),
        ExtendedPoint::Finite(p) if p.is_origin() => ExtendedPoint::Infinity,
        ExtendedPoint::Finite(p) => {
            let r = p.norm();
            // Two divisions keep |x|² from overflowing.
            ExtendedPoint::Finite(p.scale(r.recip()).scale(r.recip()))
        }
    }
}

/// The conjugate `s ∘ f ∘ s` by the unit-sphere inversion `s`.
///
/// `s(f(s(x))) = |x|^{p−1} x` again, so the conjugate has the same
/// exponent.
pub fn conjugate_by_inversion<T: Real>(map: &RadialStretch<T>) -> RadialStretch<T> {
    *map
}

/// Quasihyperbolic and distance-ratio distances of `ℝⁿ ∖ {0}` before and
/// after the stretch: `(k_before, k_after, j_before, j_after)`.
pub fn oracle_metric_distortion<T: Real>(map: &RadialStretch<T>, x: &Point<T>, y: &Point<T>) -> Result<(T, T, T, T)> {
    let (fx, fy) = (apply_stretch(map, x)?, apply_stretch(map, y)?);
    let k_before = k_punctured(x, y)?;
    // log|f(x)| = p log|x| and angles at the origin are preserved.
    let theta = angle_between(x, y)?;
    let k_after = (map.exponent * (x.norm() / y.norm()).ln()).hypot(theta);
    Ok((k_before, k_after, j_punctured(x, y)?, j_punctured(&fx, &fy)?))
}
