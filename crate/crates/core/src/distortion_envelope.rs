//! Where a normalized `K`-quasiconformal map can send a point: the ring
//! shell envelope, its diameter and chordal size, and the constants of the
//! metric distortion bounds.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::point::Point;
use crate::scalar::{lit, Real};
use crate::special_functions::{linear_distortion, make_params};

/// The open spherical ring `B(center, outer) ∖ B̄(center, inner)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingShell<T> {
    pub center: Point<T>,
    pub inner: T,
    pub outer: T,
}

impl<T: Real> RingShell<T> {
    pub fn new(center: Point<T>, inner: T, outer: T) -> Result<Self> {
        if !(inner >= T::zero() && inner < outer) || !outer.is_finite() {
            return domain(format!("ring radii must satisfy 0 <= inner < outer, got {inner}, {outer}"));
        }
        Ok(RingShell { center, inner, outer })
    }

    /// Closed membership `inner <= |z − center| <= outer`.
    pub fn contains(&self, z: &Point<T>) -> bool {
        let d = z.distance(&self.center);
        d >= self.inner && d <= self.outer
    }

    /// Signed distance of `|z − center|` to the nearest radius; negative
    /// outside the shell.
    pub fn depth(&self, z: &Point<T>) -> T {
        let d = z.distance(&self.center);
        (d - self.inner).min(self.outer - d)
    }
}

/// The envelope set: two shells about `0` and `e₁`, cut down to the
/// `(x₁, x₂)` coordinate plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeSet<T> {
    pub epsilon: T,
    /// `|x|`
    pub r0: T,
    /// `|x − e₁|`
    pub r1: T,
    pub shells: [RingShell<T>; 2],
}

impl<T: Real> EnvelopeSet<T> {
    /// Membership in both shells, ignoring the plane restriction.
    pub fn in_shells(&self, z: &Point<T>) -> bool {
        self.shells.iter().all(|s| s.contains(z))
    }

    /// Membership in the planar cross-section.
    pub fn contains(&self, z: &Point<T>) -> bool {
        self.in_shells(z) && z.coords().iter().skip(2).all(|c| *c == T::zero())
    }
}

/// Outer bound on the displacement of one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeBound<T> {
    pub epsilon: T,
    pub diam_bound: T,
    /// Chordal bound, clipped to the trivial value 1.
    pub chordal_bound: T,
    pub shells: [RingShell<T>; 2],
}

fn moduli<T: Real>(x: &Point<T>) -> Result<(T, T)> {
    if x.dim() < 2 {
        return domain(format!("points must have dimension >= 2, got {}", x.dim()));
    }
    if !x.is_finite() {
        return domain("point must be finite");
    }
    let e1 = Point::basis(x.dim(), 0);
    let (r0, r1) = (x.norm(), x.distance(&e1));
    if r0 == T::zero() || r1 == T::zero() {
        return domain("x must differ from 0 and e1");
    }
    Ok((r0, r1))
}

fn sup_from_moduli<T: Real>(r0: T, r1: T) -> T {
    ((T::one() - (r0 - r1).abs()) / lit(2.0)).max(T::zero())
}

/// `(1 − ||x| − |x − e₁||)/2`, the supremum of admissible `ε`.
pub fn epsilon_sup<T: Real>(x: &Point<T>) -> Result<T> {
    let (r0, r1) = moduli(x)?;
    let s = sup_from_moduli(r0, r1);
    // On the axis rays the two moduli differ by exactly one; allow for the
    // rounding of both norms.
    if s <= lit::<T>(4.0) * T::epsilon() * (r0 + r1) {
        return Err(Error::DegenerateConfiguration(format!(
            "x lies on the e1-axis outside (0, e1): |x| = {r0}, |x - e1| = {r1}"
        )));
    }
    Ok(s)
}

/// `min{1 + (log(1 + ε/2)/62)², 2}`.
pub fn k_threshold<T: Real>(epsilon: T) -> Result<T> {
    if !(epsilon > T::zero()) {
        return domain(format!("epsilon must be positive, got {epsilon}"));
    }
    let s = (epsilon / lit(2.0)).ln_1p() / lit(62.0);
    Ok((T::one() + s * s).min(lit(2.0)))
}

/// `2(e^{62√(K−1)} − 1)`, the `ε` at which `K` reaches the threshold.
pub fn epsilon_from_k<T: Real>(k: T) -> Result<T> {
    check_k(k)?;
    Ok(lit::<T>(2.0) * (lit::<T>(62.0) * (k - T::one()).sqrt()).exp_m1())
}

fn check_k<T: Real>(k: T) -> Result<()> {
    if !(k > T::one() && k <= lit(2.0)) {
        return domain(format!("K must lie in (1, 2], got {k}"));
    }
    Ok(())
}

/// The two shells of radii `|x| ± ε` about `0` and `|x − e₁| ± ε` about `e₁`.
pub fn set_a<T: Real>(x: &Point<T>, epsilon: T) -> Result<EnvelopeSet<T>> {
    let sup = epsilon_sup(x)?;
    let (r0, r1) = moduli(x)?;
    if !(epsilon > T::zero() && epsilon < sup) {
        return Err(Error::EpsilonOutOfRange(format!(
            "need 0 < epsilon < {sup}, got {epsilon}"
        )));
    }
    if !(r0 > epsilon && r1 > epsilon) {
        return Err(Error::EpsilonOutOfRange(format!(
            "epsilon = {epsilon} exceeds |x| = {r0} or |x - e1| = {r1}"
        )));
    }
    let n = x.dim();
    Ok(EnvelopeSet {
        epsilon,
        r0,
        r1,
        shells: [
            RingShell::new(Point::origin(n), r0 - epsilon, r0 + epsilon)?,
            RingShell::new(Point::basis(n, 0), r1 - epsilon, r1 + epsilon)?,
        ],
    })
}

/// Height of the apex of the triangle with base `[0, e₁]` and sides
/// `r + ε`, `r + 1 − ε`: `2√((r+1) r (1−ε) ε)`.
pub fn heron_im_y<T: Real>(r: T, epsilon: T) -> Result<T> {
    if !(r > T::zero()) || !r.is_finite() {
        return domain(format!("r must be finite and positive, got {r}"));
    }
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return domain(format!("epsilon must lie in (0, 1), got {epsilon}"));
    }
    Ok(lit::<T>(2.0) * ((r + T::one()) * r * (T::one() - epsilon) * epsilon).sqrt())
}

/// `4√ε (min{|x|, |x − e₁|} + 1)`.
pub fn diam_a_upper<T: Real>(x: &Point<T>, epsilon: T) -> Result<T> {
    let a = set_a(x, epsilon)?;
    Ok(lit::<T>(4.0) * epsilon.sqrt() * (a.r0.min(a.r1) + T::one()))
}

/// Upper intersection point of two circles centred on the real axis, by
/// the quadratic formula.
pub fn circle_intersection<T: Real>(c0: T, rad0: T, c1: T, rad1: T) -> Option<[T; 2]> {
    let d = c1 - c0;
    if d == T::zero() {
        return None;
    }
    let a = (rad0 * rad0 - rad1 * rad1 + d * d) / (lit::<T>(2.0) * d);
    let h2 = rad0 * rad0 - a * a;
    if h2 < T::zero() {
        return None;
    }
    Some([c0 + a, h2.sqrt()])
}

/// One boundary arc of the planar cross-section, in the upper half-plane.
#[derive(Debug, Clone)]
struct Arc<T> {
    id: usize,
    points: Vec<[T; 2]>,
}

/// Arc of the circle of radius `rad` about `center` (`0` or `e₁`) on which
/// the distance to the other centre stays in `[lo, hi]`.
fn shell_arc<T: Real>(id: usize, center: T, rad: T, lo: T, hi: T, resolution: usize) -> Option<Arc<T>> {
    let two: T = lit(2.0);
    let lo = lo.max((rad - T::one()).abs());
    let hi = hi.min(rad + T::one());
    if lo > hi {
        return None;
    }
    let angle = |other: T| {
        let c = (rad * rad + T::one() - other * other) / (two * rad);
        c.max(-T::one()).min(T::one()).acos()
    };
    let (a0, a1) = (angle(lo), angle(hi));
    // Angles are measured from the direction of the other centre.
    let toward = if center == T::zero() { T::one() } else { -T::one() };
    let steps = resolution.max(1);
    let points = (0..=steps)
        .map(|i| {
            let s: T = lit(i as f64 / steps as f64);
            let phi = a0 + (a1 - a0) * s;
            [center + toward * rad * phi.cos(), rad * phi.sin()]
        })
        .collect();
    Some(Arc { id, points })
}

/// Boundary arcs of the connected component of the cross-section that
/// contains `x`. Arcs `0..4` lie in the closed upper half-plane; when the
/// component meets the axis its mirror image `4..8` is part of it.
fn cross_section_arcs<T: Real>(a: &EnvelopeSet<T>, resolution: usize) -> Result<Vec<Arc<T>>> {
    let e = a.epsilon;
    let (r0, r1) = (a.r0, a.r1);
    let mut arcs: Vec<Arc<T>> = [
        shell_arc(0, T::zero(), r0 + e, r1 - e, r1 + e, resolution),
        shell_arc(1, T::zero(), r0 - e, r1 - e, r1 + e, resolution),
        shell_arc(2, T::one(), r1 + e, r0 - e, r0 + e, resolution),
        shell_arc(3, T::one(), r1 - e, r0 - e, r0 + e, resolution),
    ]
    .into_iter()
    .flatten()
    .collect();
    if arcs.is_empty() {
        return Err(Error::EmptyIntersection(format!(
            "no boundary arcs for |x| = {r0}, |x - e1| = {r1}, epsilon = {e}"
        )));
    }
    let two: T = lit(2.0);
    let touches_axis = r0 + r1 - two * e <= T::one() || (r0 - r1).abs() + two * e >= T::one();
    if touches_axis {
        let mirrored: Vec<_> = arcs
            .iter()
            .map(|arc| Arc {
                id: arc.id + 4,
                points: arc.points.iter().map(|p| [p[0], -p[1]]).collect(),
            })
            .collect();
        arcs.extend(mirrored);
    }
    Ok(arcs)
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull by the monotone chain, counterclockwise without repeats.
fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite points"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Largest pairwise distance, by rotating calipers on the hull.
fn planar_diameter(pts: Vec<[f64; 2]>) -> f64 {
    let hull = convex_hull(pts);
    let m = hull.len();
    match m {
        0 | 1 => return 0.0,
        2 => return dist(hull[0], hull[1]),
        _ => {}
    }
    let mut best = 0.0_f64;
    let mut j = 1;
    for i in 0..m {
        let next = (i + 1) % m;
        while cross(hull[i], hull[next], hull[(j + 1) % m]).abs() > cross(hull[i], hull[next], hull[j]).abs() {
            j = (j + 1) % m;
        }
        best = best.max(dist(hull[i], hull[j])).max(dist(hull[next], hull[j]));
    }
    best
}

/// Diameter of the planar cross-section of the envelope set, from
/// `resolution` samples along each boundary arc. Converges from below.
pub fn diam_a_bruteforce<T: Real>(x: &Point<T>, epsilon: T, resolution: usize) -> Result<T> {
    let a = set_a(x, epsilon)?;
    let arcs = cross_section_arcs(&a, resolution)?;
    let pts: Vec<[f64; 2]> = arcs
        .iter()
        .flat_map(|arc| arc.points.iter())
        .map(|p| [p[0].to_f64().unwrap_or(f64::NAN), p[1].to_f64().unwrap_or(f64::NAN)])
        .collect();
    Ok(lit(planar_diameter(pts)))
}

/// Closed boundary polyline of the cross-section component containing `x`,
/// counterclockwise, as `(x₁, x₂, arc_id)` rows.
pub fn cross_section_boundary<T: Real>(x: &Point<T>, epsilon: T, resolution: usize) -> Result<Vec<(T, T, usize)>> {
    let a = set_a(x, epsilon)?;
    let mut pending: Vec<Arc<T>> = cross_section_arcs(&a, resolution)?
        .into_iter()
        .filter(|arc| {
            let (p, q) = (arc.points[0], arc.points[arc.points.len() - 1]);
            p != q
        })
        .collect();
    let gap = |p: [T; 2], q: [T; 2]| (p[0] - q[0]).hypot(p[1] - q[1]);
    let mut chain = vec![pending.remove(0)];
    while !pending.is_empty() {
        let tail = *chain.last().and_then(|arc| arc.points.last()).expect("nonempty arc");
        let (idx, reverse) = pending
            .iter()
            .enumerate()
            .flat_map(|(i, arc)| {
                let first = arc.points[0];
                let last = arc.points[arc.points.len() - 1];
                [(i, false, gap(tail, first)), (i, true, gap(tail, last))]
            })
            .min_by(|u, v| u.2.partial_cmp(&v.2).expect("finite gaps"))
            .map(|(i, rev, _)| (i, rev))
            .expect("pending arcs");
        let mut arc = pending.remove(idx);
        if reverse {
            arc.points.reverse();
        }
        chain.push(arc);
    }
    let mut rows: Vec<(T, T, usize)> = chain
        .iter()
        .flat_map(|arc| arc.points.iter().map(move |p| (p[0], p[1], arc.id)))
        .collect();
    let area = rows.iter().zip(rows.iter().cycle().skip(1)).fold(T::zero(), |acc, (p, q)| {
        acc + p.0 * q.1 - q.0 * p.1
    });
    if area < T::zero() {
        rows.reverse();
    }
    Ok(rows)
}

/// `(log(1 + (1 − ||x| − |x − e₁||)/4)/62)²`; zero on the axis rays.
pub fn theta<T: Real>(x: &Point<T>) -> Result<T> {
    let (r0, r1) = moduli(x)?;
    let s = (sup_from_moduli(r0, r1) / lit(2.0)).ln_1p() / lit(62.0);
    Ok(s * s)
}

/// `60 √(e^{62√(K−1)} − 1)`.
pub fn chordal_a_bound<T: Real>(k: T) -> Result<T> {
    check_k(k)?;
    Ok(lit::<T>(60.0) * (lit::<T>(62.0) * (k - T::one()).sqrt()).exp_m1().sqrt())
}

/// Envelope for `x` at dilatation `K`, with `ε` at its smallest admissible
/// value for this `K`.
pub fn envelope_bound<T: Real>(x: &Point<T>, k: T) -> Result<EnvelopeBound<T>> {
    let sup = epsilon_sup(x)?;
    let epsilon = epsilon_from_k(k)?;
    if !(epsilon < sup) {
        return Err(Error::KTooLarge(format!(
            "K = {k} needs epsilon = {epsilon}, but x only admits epsilon < {sup}"
        )));
    }
    let a = set_a(x, epsilon)?;
    Ok(EnvelopeBound {
        epsilon,
        diam_bound: diam_a_upper(x, epsilon)?,
        chordal_bound: chordal_a_bound(k)?.min(T::one()),
        shells: a.shells,
    })
}

/// `(x₁, x₂, x₃) ↦ (x₁, √(x₂² + x₃²), 0)`.
pub fn meridian_projection<T: Real>(x: &Point<T>) -> Result<Point<T>> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch(x.dim(), 3));
    }
    Ok(Point::new(vec![x[0], x[1].hypot(x[2]), T::zero()]))
}

/// Euclidean and chordal bounds on the displacement of the meridian
/// projection: `(4(r+1)√ε, 12√2 √(e^{62√(K−1)} − 1))`.
pub fn main1_bounds<T: Real>(x: &Point<T>, r: T, epsilon: T, k: T) -> Result<(T, T)> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch(x.dim(), 3));
    }
    let unmet = |what: String| Err(Error::PreconditionNotMet(what));
    if !(r > T::zero()) || !(x.norm() < r) {
        return unmet(format!("x must lie in the open ball of radius r = {r}, |x| = {}", x.norm()));
    }
    let sup = match epsilon_sup(x) {
        Ok(s) => s,
        Err(e) => return unmet(format!("x is not admissible: {e}")),
    };
    if !(epsilon > T::zero() && epsilon < sup) {
        return unmet(format!("epsilon must lie in (0, {sup}), got {epsilon}"));
    }
    let threshold = k_threshold(epsilon)?;
    if !(k > T::one() && k <= threshold) {
        return unmet(format!("K must lie in (1, {threshold}] for epsilon = {epsilon}, got {k}"));
    }
    let euclidean = lit::<T>(4.0) * (r + T::one()) * epsilon.sqrt();
    let chordal = lit::<T>(12.0) * T::SQRT_2() * (lit::<T>(62.0) * (k - T::one()).sqrt()).exp_m1().sqrt();
    Ok((euclidean, chordal))
}

/// `c(K) = c₃/α`.
pub fn c_main2<T: Real>(k: T, n: u32) -> Result<T> {
    check_k(k)?;
    let p = make_params(k, n)?;
    Ok(p.c3 / p.alpha)
}

fn max_power<T: Real>(s: T, alpha: T) -> T {
    s.powf(alpha).max(s)
}

fn check_nonnegative<T: Real>(what: &str, s: T) -> Result<()> {
    if !(s >= T::zero()) || !s.is_finite() {
        return domain(format!("{what} must be finite and nonnegative, got {s}"));
    }
    Ok(())
}

/// `c(K) max{j^α, j}`.
pub fn j_distortion_bound<T: Real>(k: T, n: u32, jxy: T) -> Result<T> {
    check_nonnegative("j", jxy)?;
    let alpha = make_params(k, n)?.alpha;
    Ok(c_main2(k, n)? * max_power(jxy, alpha))
}

/// Geodesic step length `log^β(1+λ)/c`.
pub fn mu_step<T: Real>(lambda: T, c: T, beta: T) -> T {
    lambda.ln_1p().powf(beta) / c
}

/// `ω(K, n) = c(1+λ) mu_step^{α−1} 2^{1−α}` with `λ = β − 1` unless
/// overridden.
pub fn omega_main3<T: Real>(k: T, n: u32, lambda_choice: Option<T>) -> Result<T> {
    let c = c_main2(k, n)?;
    let p = make_params(k, n)?;
    let lambda = lambda_choice.unwrap_or_else(|| p.beta_minus_one());
    if !(lambda > T::zero() && lambda < T::one()) {
        return Err(Error::LambdaOutOfRange(format!(
            "lambda = {lambda} not in (0, 1) for K = {k}, n = {n}"
        )));
    }
    let step = mu_step(lambda, c, p.beta);
    let two: T = lit(2.0);
    Ok(c * (T::one() + lambda) * step.powf(p.alpha - T::one()) * two.powf(T::one() - p.alpha))
}

/// `ω(K, n) max{k^α, k}`.
pub fn k_distortion_bound<T: Real>(k: T, n: u32, kxy: T, lambda_choice: Option<T>) -> Result<T> {
    check_nonnegative("k", kxy)?;
    let alpha = make_params(k, n)?.alpha;
    Ok(omega_main3(k, n, lambda_choice)? * max_power(kxy, alpha))
}

/// `ω(K, n) max{φ^α, φ}` for an angle `φ ∈ [0, π]`.
pub fn angle_bound<T: Real>(k: T, n: u32, phi: T, lambda_choice: Option<T>) -> Result<T> {
    if !(phi >= T::zero() && phi <= T::PI()) {
        return domain(format!("angle must lie in [0, pi], got {phi}"));
    }
    let alpha = make_params(k, n)?.alpha;
    Ok(omega_main3(k, n, lambda_choice)? * max_power(phi, alpha))
}

/// `log(2 + λ(K^{1/(n−1)}))/log 3`, a lower bound for any admissible `c(K)`.
pub fn c_lower_bound<T: Real>(k: T, n: u32) -> Result<T> {
    check_k(k)?;
    if n < 2 {
        return domain(format!("dimension must be >= 2, got {n}"));
    }
    let k_plane = k.powf(lit::<T>(1.0 / f64::from(n - 1)));
    let lambda = linear_distortion(k_plane)?;
    let floor = (T::PI() * (k_plane - T::one())).exp();
    if lambda < floor * (T::one() - T::tol(1e-12)) {
        return Err(Error::SanityCheck(format!(
            "lambda({k_plane}) = {lambda} below exp(pi (K - 1)) = {floor}"
        )));
    }
    Ok((lit::<T>(2.0) + lambda).ln() / lit::<T>(3.0).ln())
}
