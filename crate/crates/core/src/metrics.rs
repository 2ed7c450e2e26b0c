//! Chordal, distance-ratio and quasihyperbolic metrics.
//!
//! The quasihyperbolic metric is only available on the punctured space
//! `R^n \ {0}`, where it has the closed form
//! `k(x, y) = √(log²(|x|/|y|) + θ²)` with `θ` the angle between `x` and `y`.

use crate::error::{domain, Error, Result};
use crate::point::{ExtendedPoint, Point};
use crate::scalar::{lit, Real};

/// Spherical (chordal) metric on `R^n ∪ {∞}`; values in `[0, 1]`.
pub fn chordal<T: Real>(x: &ExtendedPoint<T>, y: &ExtendedPoint<T>) -> Result<T> {
    match (x, y) {
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => Ok(T::zero()),
        (ExtendedPoint::Finite(p), ExtendedPoint::Infinity)
        | (ExtendedPoint::Infinity, ExtendedPoint::Finite(p)) => {
            Ok(T::one().hypot(p.norm()).recip())
        }
        (ExtendedPoint::Finite(p), ExtendedPoint::Finite(q)) => {
            p.check_same_dim(q)?;
            Ok(p.distance(q) / (T::one().hypot(p.norm()) * T::one().hypot(q.norm())))
        }
    }
}

fn nonzero_moduli<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<(T, T)> {
    x.check_same_dim(y)?;
    let (rx, ry) = (x.norm(), y.norm());
    if !(rx > T::zero() && ry > T::zero()) {
        return domain("point at the origin (boundary of the punctured space)");
    }
    Ok((rx, ry))
}

/// Distance-ratio metric of `R^n \ {0}`.
pub fn j_punctured<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<T> {
    let (rx, ry) = nonzero_moduli(x, y)?;
    Ok((x.distance(y) / rx.min(ry)).ln_1p())
}

/// Distance-ratio metric of an arbitrary proper subdomain, given the
/// boundary distances `dx = d(x)` and `dy = d(y)`.
pub fn j_general<T: Real>(x: &Point<T>, y: &Point<T>, dx: T, dy: T) -> Result<T> {
    x.check_same_dim(y)?;
    if !(dx > T::zero() && dy > T::zero()) {
        return domain(format!("boundary distances must be positive, got {dx}, {dy}"));
    }
    Ok((x.distance(y) / dx.min(dy)).ln_1p())
}

/// Distance-ratio metric of the upper half-space `{x_n > 0}`.
pub fn j_half_space<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<T> {
    x.check_same_dim(y)?;
    let last = x.dim() - 1;
    j_general(x, y, x[last], y[last])
}

/// Angle between `x` and `y` seen from the origin, `2 arcsin(|x/|x| − y/|y||/2)`.
pub fn angle_between<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<T> {
    let (rx, ry) = nonzero_moduli(x, y)?;
    let chord = (&x.scale(rx.recip()) - &y.scale(ry.recip())).norm();
    Ok(lit::<T>(2.0) * (chord * lit(0.5)).min(T::one()).asin())
}

/// Quasihyperbolic metric of `R^n \ {0}` (Martin–Osgood closed form).
pub fn k_punctured<T: Real>(x: &Point<T>, y: &Point<T>) -> Result<T> {
    let (rx, ry) = nonzero_moduli(x, y)?;
    let theta = angle_between(x, y)?;
    Ok((rx / ry).ln().hypot(theta))
}

/// Both sides of `j ≤ k ≤ (1 + λ) j` for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome<T> {
    pub j: T,
    pub k: T,
    pub c1: T,
    /// `k − j`
    pub lower_margin: T,
    /// `(1 + λ) j − k`
    pub upper_margin: T,
}

impl<T: Real> CheckOutcome<T> {
    pub fn margin(&self) -> T {
        self.lower_margin.min(self.upper_margin)
    }
}

/// Evaluates the `j`/`k` comparison on a pair with `|x − y| <= λ|x|`.
pub fn jk_sandwich_check<T: Real>(x: &Point<T>, y: &Point<T>, lambda: T) -> Result<CheckOutcome<T>> {
    if !(lambda > T::zero() && lambda < T::one()) {
        return domain(format!("lambda must lie in (0, 1), got {lambda}"));
    }
    let (rx, _) = nonzero_moduli(x, y)?;
    if x.distance(y) > lambda * rx {
        return Err(Error::PreconditionNotMet(format!(
            "|x - y| = {} exceeds lambda |x| = {}",
            x.distance(y),
            lambda * rx
        )));
    }
    let j = j_punctured(x, y)?;
    let k = k_punctured(x, y)?;
    let c1 = T::one() + lambda;
    Ok(CheckOutcome {
        j,
        k,
        c1,
        lower_margin: k - j,
        upper_margin: c1 * j - k,
    })
}

/// A quasihyperbolic geodesic of the punctured space, parametrized by
/// arc-length fraction `s ∈ [0, 1]` from `start` to `end`.
///
/// Geodesics are straight lines in (log-radius, angle) coordinates inside a
/// 2-plane through the origin.
#[derive(Debug, Clone)]
pub struct PuncturedGeodesic<T> {
    start_radius: T,
    log_ratio: T,
    angle: T,
    u: Point<T>,
    w: Point<T>,
    length: T,
}

impl<T: Real> PuncturedGeodesic<T> {
    pub fn new(start: &Point<T>, end: &Point<T>) -> Result<Self> {
        let (rs, re) = nonzero_moduli(start, end)?;
        let u = start.scale(rs.recip());
        let v = end.scale(re.recip());
        let angle = angle_between(start, end)?;
        let residual = &v - &u.scale(u.dot(&v));
        let w = match residual.unit() {
            Some(w) if residual.norm() > lit(1e-12) => w,
            // Parallel or antiparallel: the plane through the lowest-index
            // basis vector not parallel to the start direction.
            _ => orthogonal_basis_direction(&u)?,
        };
        Ok(PuncturedGeodesic {
            start_radius: rs,
            log_ratio: (re / rs).ln(),
            angle,
            u,
            w,
            length: (re / rs).ln().hypot(angle),
        })
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn point_at(&self, s: T) -> Point<T> {
        let radius = self.start_radius * (s * self.log_ratio).exp();
        let phi = s * self.angle;
        let dir = &self.u.scale(phi.cos()) + &self.w.scale(phi.sin());
        dir.scale(radius)
    }
}

fn orthogonal_basis_direction<T: Real>(u: &Point<T>) -> Result<Point<T>> {
    let n = u.dim();
    for i in 0..n {
        let e = Point::basis(n, i);
        let residual = &e - &u.scale(u.dot(&e));
        if residual.norm() > lit(1e-8) {
            if let Some(w) = residual.unit() {
                return Ok(w);
            }
        }
    }
    Err(Error::DegenerateConfiguration(
        "no basis direction transverse to the geodesic start".into(),
    ))
}

/// Points `x₀ = y, x₁, …, x_{p+1} = x` on the quasihyperbolic geodesic from
/// `y` to `x` with consecutive distances equal to `step` (the last one at
/// most `step`).
pub fn geodesic_subdivision<T: Real>(x: &Point<T>, y: &Point<T>, step: T) -> Result<Vec<Point<T>>> {
    if !(step > T::zero()) || !step.is_finite() {
        return domain(format!("step must be finite and positive, got {step}"));
    }
    if x == y {
        return domain("geodesic subdivision needs distinct endpoints");
    }
    let geodesic = PuncturedGeodesic::new(y, x)?;
    let total = geodesic.length();
    let ratio = total / step;
    // Absorb roundoff when the length is an exact multiple of the step.
    let pieces = (ratio - lit(1e-9)).ceil().max(T::one());
    let count = pieces
        .to_usize()
        .ok_or_else(|| Error::Domain(format!("step {step} too small for length {total}")))?;
    let mut points = Vec::with_capacity(count + 1);
    points.push(y.clone());
    for j in 1..count {
        let s = lit::<T>(j as f64) * step / total;
        points.push(geodesic.point_at(s));
    }
    points.push(x.clone());
    Ok(points)
}
