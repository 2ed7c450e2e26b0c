//! Plane conformal special functions and the simplified distortion bounds
//! built from them.
//!
//! The complete elliptic integral is evaluated by the arithmetic-geometric
//! mean, the modulus of the Grötzsch ring `μ` as a ratio of two AGMs, and
//! `μ⁻¹` by bracketed bisection with a Newton polish. Beyond the plane only
//! the power-type bounds for the quasisymmetry control function are
//! available; exact capacities for `n >= 3` are rejected.

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

const AGM_MAX_ITER: usize = 64;
const BISECTION_MAX_ITER: usize = 400;

/// Arithmetic-geometric mean of two nonnegative numbers.
pub fn agm<T: Real>(a: T, b: T) -> T {
    let (mut a, mut b) = (a, b);
    let tol = T::tol(1e-15);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= tol * a.max(b) {
            break;
        }
        let next_a = (a + b) * lit(0.5);
        b = (a * b).sqrt();
        a = next_a;
    }
    (a + b) * lit(0.5)
}

/// `√(1 − r²)` without cancellation near `r = 1`.
fn complement<T: Real>(r: T) -> T {
    ((T::one() - r) * (T::one() + r)).sqrt()
}

/// Complete elliptic integral of the first kind, modulus convention:
/// `𝒦(r) = ∫₀¹ dx / √((1 − x²)(1 − r²x²))`.
pub fn complete_elliptic_k<T: Real>(r: T) -> Result<T> {
    if !(r >= T::zero()) {
        return domain(format!("complete_elliptic_k requires r >= 0, got {r}"));
    }
    if r >= lit(1.0 - 1e-12) {
        return domain(format!(
            "complete_elliptic_k is near-singular for r >= 1 - 1e-12, got {r}"
        ));
    }
    Ok(T::FRAC_PI_2() / agm(T::one(), complement(r)))
}

/// `μ(r)` without range checks; valid for every `r` in `(0, 1)`.
///
/// `𝒦(√(1−r²)) / 𝒦(r) = agm(1, √(1−r²)) / agm(1, r)`, so neither elliptic
/// integral has to be formed near its singularity.
pub(crate) fn mu_unchecked<T: Real>(r: T) -> T {
    T::FRAC_PI_2() * agm(T::one(), complement(r)) / agm(T::one(), r)
}

fn check_mu_domain<T: Real>(r: T) -> Result<()> {
    if !(r > lit(1e-15) && r < lit(1.0 - 1e-15)) {
        return domain(format!("mu requires 1e-15 < r < 1 - 1e-15, got {r}"));
    }
    Ok(())
}

/// Modulus of the plane Grötzsch ring, `μ(r) = (π/2) 𝒦(√(1−r²)) / 𝒦(r)`.
pub fn mu<T: Real>(r: T) -> Result<T> {
    check_mu_domain(r)?;
    Ok(mu_unchecked(r))
}

/// `dμ/dr = −π² / (4 r (1 − r²) 𝒦(r)²)`.
pub fn mu_derivative<T: Real>(r: T) -> Result<T> {
    check_mu_domain(r)?;
    Ok(mu_derivative_unchecked(r))
}

fn mu_derivative_unchecked<T: Real>(r: T) -> T {
    let k = T::FRAC_PI_2() / agm(T::one(), complement(r));
    let pi = T::PI();
    -(pi * pi) / (lit::<T>(4.0) * r * (T::one() - r) * (T::one() + r) * k * k)
}

/// Inverse of [`mu`].
///
/// The image of `mu` over its admissible arguments is roughly
/// `[0.135, 35.9]` in `f64`; values outside it have no representable
/// preimage and are rejected.
pub fn mu_inv<T: Real>(y: T) -> Result<T> {
    if !(y > T::zero()) || !y.is_finite() {
        return domain(format!("mu_inv requires finite y > 0, got {y}"));
    }
    let mut lo: T = lit(1e-15);
    let mut hi: T = lit(1.0 - 1e-15);
    // mu is decreasing: mu(lo) is the largest attainable value.
    if y > mu_unchecked(lo) || y < mu_unchecked(hi) {
        return domain(format!(
            "mu_inv({y}): preimage lies outside (1e-15, 1 - 1e-15)"
        ));
    }
    let width = T::tol(1e-14);
    let mut converged = false;
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= width * hi {
            converged = true;
            break;
        }
        // Geometric midpoint while the bracket spans orders of magnitude.
        let mid = if hi > lo * lit(4.0) {
            (lo * hi).sqrt()
        } else {
            lo + (hi - lo) * lit(0.5)
        };
        if mu_unchecked(mid) > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "mu_inv({y}): bisection stalled at [{lo}, {hi}]"
        )));
    }
    let r = lo + (hi - lo) * lit(0.5);
    let step = (mu_unchecked(r) - y) / mu_derivative_unchecked(r);
    let polished = r - step;
    // Keep the polish only if it stays inside the bracket.
    Ok(if polished >= lo && polished <= hi { polished } else { r })
}

/// Plane Grötzsch capacity `γ₂(s) = 2π / μ(1/s)`.
pub fn gamma2<T: Real>(s: T) -> Result<T> {
    if !(s > lit(1.0 + 1e-12)) || !s.is_finite() {
        return domain(format!("gamma2 requires finite s > 1 + 1e-12, got {s}"));
    }
    Ok(T::TAU() / mu(s.recip())?)
}

/// Grötzsch capacity `γ_n(s)`; only `n = 2` has a closed form.
pub fn grotzsch_capacity<T: Real>(n: u32, s: T) -> Result<T> {
    match n {
        2 => gamma2(s),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Plane distortion function `φ_{K,2}(r) = μ⁻¹(μ(r)/K)`.
pub fn phi_k2<T: Real>(k: T, r: T) -> Result<T> {
    if !(k > T::zero()) || !k.is_finite() {
        return domain(format!("phi_K2 requires finite K > 0, got {k}"));
    }
    if !(r > T::zero() && r < T::one()) {
        return domain(format!("phi_K2 requires r in (0, 1), got {r}"));
    }
    if k == T::one() {
        return Ok(r);
    }
    mu_inv(mu(r)? / k)
}

/// Distortion function `φ_{K,n}`; only the plane case is computable.
pub fn phi_kn<T: Real>(k: T, n: u32, r: T) -> Result<T> {
    match n {
        2 => phi_k2(k, r),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Linear distortion `λ(K) = φ_K(1/√2)² / (1 − φ_K(1/√2)²)`.
pub fn linear_distortion<T: Real>(k: T) -> Result<T> {
    let phi = phi_k2(k, T::FRAC_1_SQRT_2())?;
    Ok(phi * phi / ((T::one() - phi) * (T::one() + phi)))
}

/// Dilatation `K`, dimension `n` and the constants derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionParams<T> {
    pub k: T,
    pub n: u32,
    /// `K^{1/(1−n)}`
    pub alpha: T,
    /// `1/α`
    pub beta: T,
    /// `exp(60 √(K − 1))`
    pub c3: T,
}

impl<T: Real> DistortionParams<T> {
    pub fn new(k: T, n: u32) -> Result<Self> {
        if !(k >= T::one()) || !k.is_finite() {
            return domain(format!("K must be a finite value >= 1, got {k}"));
        }
        if n < 2 {
            return domain(format!("dimension must be >= 2, got {n}"));
        }
        let log_beta = k.ln() / lit(f64::from(n - 1));
        Ok(DistortionParams {
            k,
            n,
            alpha: (-log_beta).exp(),
            beta: log_beta.exp(),
            c3: c3(k),
        })
    }

    /// `β − 1`, accurate for `K` close to 1.
    pub fn beta_minus_one(&self) -> T {
        (self.k.ln() / lit(f64::from(self.n - 1))).exp_m1()
    }
}

/// `exp(60 √(K − 1))`.
pub fn c3<T: Real>(k: T) -> T {
    (lit::<T>(60.0) * (k - T::one()).max(T::zero()).sqrt()).exp()
}

pub fn make_params<T: Real>(k: T, n: u32) -> Result<DistortionParams<T>> {
    DistortionParams::new(k, n)
}

/// Coefficients of the piecewise power bound on `η*_{K,n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaStarBound<T> {
    /// `exp(4K(K+1)√(K−1)) >= η*_{K,n}(1)`
    pub at_one: T,
    /// `2^{1−1/K} K >= λ_n^{1−α}`
    pub low_coeff: T,
    /// `2^{K−1} K^K >= λ_n^{β−1}`
    pub high_coeff: T,
}

impl<T: Real> EtaStarBound<T> {
    pub fn new(params: &DistortionParams<T>) -> Result<Self> {
        let k = params.k;
        if k > lit(2.0) {
            return domain(format!("eta_star bound requires K <= 2, got {k}"));
        }
        let two: T = lit(2.0);
        Ok(EtaStarBound {
            at_one: (lit::<T>(4.0) * k * (k + T::one()) * (k - T::one()).sqrt()).exp(),
            low_coeff: two.powf(T::one() - k.recip()) * k,
            high_coeff: two.powf(k - T::one()) * k.powf(k),
        })
    }

    /// Ratio of the `t → 1⁺` and `t = 1` values of the bound.
    pub fn jump_at_one(&self) -> T {
        self.high_coeff / self.low_coeff
    }
}

/// Upper bound for the optimal quasisymmetry control function:
/// `A·C_low·t^α` for `t <= 1` and `A·C_high·t^β` for `t > 1`.
pub fn eta_star_upper<T: Real>(params: &DistortionParams<T>, t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return domain(format!("eta_star_upper requires finite t > 0, got {t}"));
    }
    let b = EtaStarBound::new(params)?;
    Ok(if t <= T::one() {
        b.at_one * b.low_coeff * t.powf(params.alpha)
    } else {
        b.at_one * b.high_coeff * t.powf(params.beta)
    })
}

/// Two-sided bound on `|f(x)|` for a `K`-quasiconformal `f` fixing `0` and
/// `e₁`, as a function of `r = |x|`. Returns `(lower, upper)`.
pub fn qc_radial_bounds<T: Real>(params: &DistortionParams<T>, r: T) -> Result<(T, T)> {
    if !(r > T::zero()) || !r.is_finite() {
        return domain(format!("qc_radial_bounds requires finite r > 0, got {r}"));
    }
    if params.k > lit(2.0) {
        return domain(format!("qc_radial_bounds requires K <= 2, got {}", params.k));
    }
    let (low_exp, high_exp) = if r <= T::one() {
        (params.beta, params.alpha)
    } else {
        (params.alpha, params.beta)
    };
    Ok((r.powf(low_exp) / params.c3, params.c3 * r.powf(high_exp)))
}
