//! Executable predicates for the preliminary and Bernoulli-type
//! inequalities, and the seeded sampling harness that runs them.
//!
//! Every predicate returns a [`Margin`]: a claimed inequality `lhs <= rhs`
//! together with the magnitude of the terms it was computed from, so that
//! roundoff near equality cases can be told apart from genuine violations.

mod harness;
pub mod suites;

pub use harness::{run_suite, CheckReport, SamplingPlan, Suite, Tolerance};

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};
use crate::special_functions::DistortionParams;

/// A claimed inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margin<T> {
    pub lhs: T,
    pub rhs: T,
    /// Magnitude of the terms entering `lhs` and `rhs`.
    pub scale: T,
}

impl<T: Real> Margin<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        Margin {
            lhs,
            rhs,
            scale: lhs.abs().max(rhs.abs()),
        }
    }

    pub fn with_scale(lhs: T, rhs: T, scale: T) -> Self {
        Margin { lhs, rhs, scale }
    }

    /// Compares two positive quantities through their logarithms; a log
    /// difference is already a relative difference.
    pub fn from_logs(ln_lhs: T, ln_rhs: T) -> Self {
        Margin {
            lhs: ln_lhs,
            rhs: ln_rhs,
            scale: T::one(),
        }
    }

    /// `rhs − lhs`.
    pub fn slack(&self) -> T {
        self.rhs - self.lhs
    }

    /// Slack relative to the term scale, floored at `absolute / relative`.
    /// The inequality holds within tolerance iff this is `>= −relative`.
    pub fn normalized(&self, tol: &Tolerance) -> T {
        let slack = self.slack();
        if slack.is_nan() || slack.is_infinite() {
            return slack;
        }
        let floor = lit::<T>(tol.absolute / tol.relative);
        slack / self.scale.max(floor)
    }

    pub fn holds(&self, tol: &Tolerance) -> bool {
        self.normalized(tol) >= -lit::<T>(tol.relative)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus<T: Real>(z: T) -> T {
    if z > lit(30.0) {
        z + (-z).exp()
    } else {
        z.exp().ln_1p()
    }
}

/// `ln(ln(1 + e^z))` without underflow or overflow.
fn ln_softplus<T: Real>(z: T) -> T {
    if z < lit(-30.0) {
        z - z.exp() * lit(0.5)
    } else {
        softplus(z).ln()
    }
}

/// `ln(ln(1 + t^p))` for `t > 0`.
fn ln_ln1p_pow<T: Real>(t: T, p: T) -> T {
    ln_softplus(p * t.ln())
}

/// The exponents `0 < a <= 1 <= b` and the derived `u = log^{1−a} 2`,
/// `v = log^{1−b} 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair<T> {
    pub a: T,
    pub b: T,
    pub u: T,
    pub v: T,
}

impl<T: Real> ExponentPair<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && a <= T::one() && b >= T::one()) || !b.is_finite() {
            return domain(format!("exponents must satisfy 0 < a <= 1 <= b, got a = {a}, b = {b}"));
        }
        let ln2 = T::LN_2();
        Ok(ExponentPair {
            a,
            b,
            u: ln2.powf(T::one() - a),
            v: ln2.powf(T::one() - b),
        })
    }

    /// `ln φ(t)` for `φ(t) = max{t^a, t^b}`.
    fn ln_phi(&self, t: T) -> T {
        self.exponent_at(t) * t.ln()
    }

    fn exponent_at(&self, t: T) -> T {
        if t <= T::one() {
            self.a
        } else {
            self.b
        }
    }

    /// `ln ln(1 + φ(t))`.
    fn ln_ln1p_phi(&self, t: T) -> T {
        ln_ln1p_pow(t, self.exponent_at(t))
    }

    /// `ln φ(ln(1 + t))`.
    fn ln_phi_of_ln1p(&self, t: T) -> T {
        let l = t.ln_1p();
        self.exponent_at(l) * l.ln()
    }
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) || !t.is_finite() {
        return domain(format!("t must be finite and positive, got {t}"));
    }
    Ok(())
}

/// `max{q, 1/q}` with `q = √((b − 1)/(1 − a))`.
pub fn vesna_threshold<T: Real>(a: T, b: T) -> T {
    let q = ((b - T::one()) / (T::one() - a)).sqrt();
    q.max(q.recip())
}

/// The two-branch inequality `m t^a − t >= t − t^b/m` (`t <= 1`) and
/// `m t^b − t >= t − t^a/m` (`t >= 1`), evaluated without checking `m`.
pub fn vesna_margin<T: Real>(a: T, b: T, m: T, t: T) -> Margin<T> {
    let (near, far) = if t <= T::one() { (a, b) } else { (b, a) };
    let grow = m * t.powf(near);
    let shrink = t.powf(far) / m;
    Margin::with_scale(t - shrink, grow - t, grow.max(t).max(shrink))
}

/// [`vesna_margin`] with its hypotheses enforced.
pub fn vesna_check<T: Real>(a: T, b: T, m: T, t: T) -> Result<Margin<T>> {
    if !(a > T::zero() && a < T::one() && b > T::one()) || !b.is_finite() {
        return domain(format!("need 0 < a < 1 < b, got a = {a}, b = {b}"));
    }
    check_t(t)?;
    let threshold = vesna_threshold(a, b);
    if !(m >= threshold) {
        return Err(Error::PreconditionNotMet(format!(
            "m = {m} below max(q, 1/q) = {threshold}"
        )));
    }
    Ok(vesna_margin(a, b, m, t))
}

/// The same inequality with `a = α`, `b = β` and constant `c >= √β`.
pub fn c3_check<T: Real>(params: &DistortionParams<T>, t: T, c: T) -> Result<Margin<T>> {
    check_t(t)?;
    let floor = params.beta.sqrt();
    if !(c >= floor) {
        return Err(Error::PreconditionNotMet(format!(
            "constant {c} below sqrt(beta) = {floor}"
        )));
    }
    Ok(vesna_margin(params.alpha, params.beta, c, t))
}

/// `f₁(t) = log(1+t)/log(1+t^a)`.
pub fn f1<T: Real>(p: &ExponentPair<T>, t: T) -> T {
    (ln_ln1p_pow(t, T::one()) - ln_ln1p_pow(t, p.a)).exp()
}

/// `f₂(t) = log(1+t^a)/log^a(1+t)`.
pub fn f2<T: Real>(p: &ExponentPair<T>, t: T) -> T {
    (ln_ln1p_pow(t, p.a) - p.a * ln_ln1p_pow(t, T::one())).exp()
}

/// `f₃(t) = log(1+t^b)/log^b(1+t)`.
pub fn f3<T: Real>(p: &ExponentPair<T>, t: T) -> T {
    (ln_ln1p_pow(t, p.b) - p.b * ln_ln1p_pow(t, T::one())).exp()
}

/// `f₄(t) = log(1+t^b)/log(1+t)`.
pub fn f4<T: Real>(p: &ExponentPair<T>, t: T) -> T {
    (ln_ln1p_pow(t, p.b) - ln_ln1p_pow(t, T::one())).exp()
}

/// Evaluates `f_k`, `k ∈ 1..=4`.
pub fn bernoulli_f<T: Real>(k: u8, a: T, b: T, t: T) -> Result<T> {
    let pair = ExponentPair::new(a, b)?;
    check_t(t)?;
    match k {
        1 => Ok(f1(&pair, t)),
        2 => Ok(f2(&pair, t)),
        3 => Ok(f3(&pair, t)),
        4 => Ok(f4(&pair, t)),
        _ => domain(format!("bernoulli_f selector must be 1..=4, got {k}")),
    }
}

/// `φ(t) = max{t^a, t^b}`.
pub fn phi_max<T: Real>(a: T, b: T, t: T) -> T {
    if t <= T::one() {
        t.powf(a)
    } else {
        t.powf(b)
    }
}

/// Part (5), `t ∈ (0, e−1]`: `[u log(1+φ(t)) <= φ(log(1+t)), φ(log(1+t)) <= log(1+φ(t))/u]`.
pub fn genbernoulli5<T: Real>(p: &ExponentPair<T>, t: T) -> Result<[Margin<T>; 2]> {
    check_t(t)?;
    if t > T::E() - T::one() {
        return Err(Error::PreconditionNotMet(format!("part (5) needs t <= e - 1, got {t}")));
    }
    let ln_u = p.u.ln();
    let lhs = p.ln_ln1p_phi(t);
    let mid = p.ln_phi_of_ln1p(t);
    Ok([
        Margin::from_logs(ln_u + lhs, mid),
        Margin::from_logs(mid, lhs - ln_u),
    ])
}

/// `c₅ = max{1/u, v}`.
pub fn c5<T: Real>(p: &ExponentPair<T>) -> T {
    p.u.recip().max(p.v)
}

/// Part (6), `t > 0`: `[log(1+φ(t))/c₅ <= φ(log(1+t)), φ(log(1+t)) <= c₅ log^b(1+φ(t))]`.
pub fn genbernoulli6<T: Real>(p: &ExponentPair<T>, t: T) -> Result<[Margin<T>; 2]> {
    check_t(t)?;
    let ln_c5 = c5(p).ln();
    let inner = p.ln_ln1p_phi(t);
    let mid = p.ln_phi_of_ln1p(t);
    Ok([
        Margin::from_logs(inner - ln_c5, mid),
        Margin::from_logs(mid, ln_c5 + p.b * inner),
    ])
}

/// Part (7), `c > 1`: `log(1 + c φ(t)) <= c log^a(1+t)` for `t < 1` and
/// `<= c b log(1+t)` for `t >= 1`.
pub fn genbernoulli7<T: Real>(p: &ExponentPair<T>, c: T, t: T) -> Result<Margin<T>> {
    check_t(t)?;
    if !(c > T::one()) || !c.is_finite() {
        return Err(Error::PreconditionNotMet(format!("part (7) needs c > 1, got {c}")));
    }
    let lhs = ln_softplus(c.ln() + p.ln_phi(t));
    let ln_l = ln_ln1p_pow(t, T::one());
    let rhs = if t < T::one() {
        c.ln() + p.a * ln_l
    } else {
        c.ln() + p.b.ln() + ln_l
    };
    Ok(Margin::from_logs(lhs, rhs))
}

/// Part (8), `s, t > 0`: `[2^{1−b} <= R, R <= 2^{1−a}]` with
/// `R = (φ(s) + φ(t))/φ(s + t)`.
pub fn genbernoulli8<T: Real>(p: &ExponentPair<T>, s: T, t: T) -> Result<[Margin<T>; 2]> {
    check_t(s)?;
    check_t(t)?;
    let (ls, lt) = (p.ln_phi(s), p.ln_phi(t));
    let hi = ls.max(lt);
    let ln_sum = hi + ((ls - hi).exp() + (lt - hi).exp()).ln();
    let ln_ratio = ln_sum - p.ln_phi(s + t);
    let ln2 = T::LN_2();
    Ok([
        Margin::from_logs((T::one() - p.b) * ln2, ln_ratio),
        Margin::from_logs(ln_ratio, (T::one() - p.a) * ln2),
    ])
}

/// Dispatches parts (5)–(8). `inputs` is `[t]` for (5) and (6), `[c, t]`
/// for (7) and `[s, t]` for (8).
pub fn genbernoulli_check<T: Real>(part: u8, a: T, b: T, inputs: &[T]) -> Result<Vec<Margin<T>>> {
    let p = ExponentPair::new(a, b)?;
    let arity = if matches!(part, 7 | 8) { 2 } else { 1 };
    if inputs.len() != arity {
        return domain(format!("part ({part}) takes {arity} inputs, got {}", inputs.len()));
    }
    match part {
        5 => Ok(genbernoulli5(&p, inputs[0])?.to_vec()),
        6 => Ok(genbernoulli6(&p, inputs[0])?.to_vec()),
        7 => Ok(vec![genbernoulli7(&p, inputs[0], inputs[1])?]),
        8 => Ok(genbernoulli8(&p, inputs[0], inputs[1])?.to_vec()),
        _ => domain(format!("genbernoulli_check part must be 5..=8, got {part}")),
    }
}

/// The sequence `c₅(a_j, b_j)` along `b_j = 1/a_j = 1 + 2^{−j}`, `j = 1..=count`.
pub fn c5_limit_sequence(count: u32) -> Vec<f64> {
    (1..=count)
        .map(|j| {
            let b = 1.0 + 0.5_f64.powi(j as i32);
            let p = ExponentPair::new(1.0 / b, b).expect("valid exponents");
            c5(&p)
        })
        .collect()
}

/// `f₅(t) = (b^t − a^t)/t`.
pub fn f5<T: Real>(a: T, b: T, t: T) -> T {
    ln_f5(a, b, t).exp()
}

/// `ln f₅(t)` for `0 < a < b`, finite where `a^t`, `b^t` are not.
fn ln_f5<T: Real>(a: T, b: T, t: T) -> T {
    t * b.ln() + (-(t * (a / b).ln()).exp_m1()).ln() - t.ln()
}

/// `f₆(t) = t log((1 + a/t)/(1 − a/t))`.
pub fn f6<T: Real>(a: T, t: T) -> T {
    let x = a / t;
    t * (x.ln_1p() - (-x).ln_1p())
}

/// Which of the two decreasing functions to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decreasing {
    F5,
    F6,
}

/// `f(t₂) <= f(t₁)` for `t₁ < t₂`.
pub fn f5_f6_check<T: Real>(which: Decreasing, a: T, b: T, t1: T, t2: T) -> Result<Margin<T>> {
    if !(t1 < t2) {
        return domain(format!("need t1 < t2, got {t1}, {t2}"));
    }
    match which {
        Decreasing::F5 => {
            if !(a > T::zero() && a < b && b < T::one()) {
                return Err(Error::PreconditionNotMet(format!("f5 needs 0 < a < b < 1, got {a}, {b}")));
            }
            check_t(t1)?;
            // The logs grow like t, so their roundoff scales with them.
            let (l1, l2) = (ln_f5(a, b, t1), ln_f5(a, b, t2));
            Ok(Margin::with_scale(l2, l1, T::one().max(l1.abs()).max(l2.abs())))
        }
        Decreasing::F6 => {
            if !(a > T::zero()) || !(t1 > a) {
                return Err(Error::PreconditionNotMet(format!("f6 needs 0 < a < t, got {a}, {t1}")));
            }
            Ok(Margin::new(f6(a, t2), f6(a, t1)))
        }
    }
}
