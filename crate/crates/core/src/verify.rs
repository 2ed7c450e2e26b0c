//! Oracle containment and envelope soundness suites, and the registry of
//! every suite addressable from the command line.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::distortion_envelope::{
    angle_bound, epsilon_sup, j_distortion_bound, k_distortion_bound, k_threshold, main1_bounds,
    meridian_projection, set_a,
};
use crate::error::Result;
use crate::inequality_lab::suites::{inequality_suites, log_uniform, open_uniform, probe_suites};
use crate::inequality_lab::{Margin, SamplingPlan, Suite};
use crate::metrics::{chordal, j_punctured};
use crate::oracle_maps::{apply_stretch, apply_stretch_extended, conjugate_by_inversion, inversion, oracle_metric_distortion, RadialStretch};
use crate::point::{ExtendedPoint, Point};
use crate::special_functions::{make_params, qc_radial_bounds};

/// Dilatations of the oracle grid.
pub const ORACLE_KS: [f64; 4] = [1.01, 1.1, 1.5, 2.0];
/// Dimensions of the oracle grid.
pub const ORACLE_DIMS: [u32; 2] = [2, 3];
/// Moduli range for oracle samples.
pub const MODULUS_RANGE: (f64, f64) = (1e-3, 1e3);

/// Which of the two stretches realizing `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StretchKind {
    /// Exponent `α <= 1`.
    Contraction,
    /// Exponent `β >= 1`.
    Expansion,
}

impl StretchKind {
    fn label(self) -> &'static str {
        match self {
            StretchKind::Contraction => "alpha",
            StretchKind::Expansion => "beta",
        }
    }

    pub fn stretch(self, k: f64, n: u32) -> Result<RadialStretch<f64>> {
        let p = make_params(k, n)?;
        let exponent = match self {
            StretchKind::Contraction => p.alpha,
            StretchKind::Expansion => p.beta,
        };
        RadialStretch::new(exponent, n)
    }
}

/// Uniform direction on the unit sphere of `R^n`.
pub fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Point<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = Point::new(v);
        let r = p.norm();
        if r > 1e-3 && r <= 1.0 {
            return p.scale(1.0 / r);
        }
    }
}

/// Point with log-uniform modulus in `range` and uniform direction.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> Point<f64> {
    let r = log_uniform(rng, range);
    random_direction(rng, n).scale(r)
}

fn radial_margins(params_k: f64, n: u32, r: f64, image_modulus: f64) -> Result<[Margin<f64>; 2]> {
    let params = make_params(params_k, n)?;
    let (lo, hi) = qc_radial_bounds(&params, r)?;
    Ok([Margin::new(lo, image_modulus), Margin::new(image_modulus, hi)])
}

/// Containment of one stretch in the radial, `j`, `k` and angle bounds.
fn oracle_suite(k: f64, n: u32, kind: StretchKind) -> Suite {
    let name = format!("oracle.K{k}.n{n}.{}", kind.label());
    // The default λ = β − 1 leaves (0, 1) for n = 2, K = 2.
    let with_main3 = !(n == 2 && k >= 2.0);
    Suite::new(name, move |rng, _| {
        let f = kind.stretch(k, n)?;
        let g = conjugate_by_inversion(&f);
        let dim = n as usize;
        let x = random_point(rng, dim, MODULUS_RANGE);
        let y = random_point(rng, dim, MODULUS_RANGE);
        let mut margins = Vec::with_capacity(8);
        margins.extend(radial_margins(k, n, x.norm(), apply_stretch(&f, &x)?.norm())?);
        // The conjugate is evaluated as the composition s ∘ f ∘ s.
        let sx = inversion(&ExtendedPoint::Finite(x.clone()), dim);
        let gx = inversion(&apply_stretch_extended(&g, &sx)?, dim);
        if let Some(gx) = gx.as_finite() {
            margins.extend(radial_margins(k, n, x.norm(), gx.norm())?);
        }
        let (k_before, k_after, j_before, j_after) = oracle_metric_distortion(&f, &x, &y)?;
        margins.push(Margin::new(j_after, j_distortion_bound(k, n, j_before)?));
        if with_main3 {
            margins.push(Margin::new(k_after, k_distortion_bound(k, n, k_before, None)?));
            let phi = open_uniform(rng, (0.0, std::f64::consts::PI));
            margins.push(Margin::new(phi, angle_bound(k, n, phi, None)?));
        }
        Ok(margins)
    })
}

/// Samples an admissible `(x, ε)` with `|x|` in `range`, in dimension `n`.
fn admissible(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> (Point<f64>, f64) {
    loop {
        let x = random_point(rng, n, range);
        if let Ok(sup) = epsilon_sup(&x) {
            let e = open_uniform(rng, (0.0, sup));
            if e < sup && set_a(&x, e).is_ok() {
                return (x, e);
            }
        }
    }
}

fn soundness_suite(name: &str, range: (f64, f64)) -> Suite {
    Suite::new(name, move |rng, _| {
        let n = if rng.gen::<bool>() { 2 } else { 3 };
        let (x, e) = admissible(rng, n as usize, range);
        let k = 1.0 + (k_threshold(e)? - 1.0) * open_uniform(rng, (0.0, 1.0)).max(1e-3);
        let k = if rng.gen_range(0..4) == 0 { k_threshold(e)? } else { k };
        let a = set_a(&x, e)?;
        let mut margins = Vec::with_capacity(4);
        for kind in [StretchKind::Contraction, StretchKind::Expansion] {
            let fx = apply_stretch(&kind.stretch(k, n)?, &x)?;
            for shell in &a.shells {
                margins.push(Margin::with_scale(0.0, shell.depth(&fx), shell.outer));
            }
        }
        Ok(margins)
    })
}

/// Meridian projection bounds for stretches of `R³` at the threshold `K`.
fn main1_suite() -> Suite {
    Suite::new("envelope.main1", |rng, _| {
        let (x, e, k) = loop {
            let (x, e) = admissible(rng, 3, MODULUS_RANGE);
            // Tiny ε rounds the threshold down to K = 1.
            let k = k_threshold(e)?;
            if k > 1.0 {
                break (x, e, k);
            }
        };
        let r = x.norm() * log_uniform(rng, (1.0 + 1e-9, 10.0));
        let (euclidean, chordal_bound) = main1_bounds(&x, r, e, k)?;
        let px = meridian_projection(&x)?;
        let mut margins = Vec::with_capacity(4);
        for kind in [StretchKind::Contraction, StretchKind::Expansion] {
            let pfx = meridian_projection(&apply_stretch(&kind.stretch(k, 3)?, &x)?)?;
            margins.push(Margin::new(pfx.distance(&px), euclidean));
            let q = chordal(&ExtendedPoint::Finite(pfx), &ExtendedPoint::Finite(px.clone()))?;
            margins.push(Margin::new(q, chordal_bound));
        }
        Ok(margins)
    })
}

/// `j ≤ k` on the punctured space for oracle pairs.
fn jk_suite() -> Suite {
    Suite::new("metrics.j_le_k", |rng, _| {
        let n = rng.gen_range(2..=4);
        let x = random_point(rng, n, MODULUS_RANGE);
        let y = random_point(rng, n, MODULUS_RANGE);
        Ok(vec![Margin::new(j_punctured(&x, &y)?, crate::metrics::k_punctured(&x, &y)?)])
    })
}

/// Both oracle suites for one `(K, n)`.
pub fn oracle_suites(k: f64, n: u32) -> Result<Vec<Suite>> {
    make_params(k, n)?;
    Ok([StretchKind::Contraction, StretchKind::Expansion]
        .into_iter()
        .map(|kind| oracle_suite(k, n, kind))
        .collect())
}

/// Every suite run by `verify all`, sorted by name.
pub fn all_suites() -> Vec<Suite> {
    let mut suites = inequality_suites();
    for k in ORACLE_KS {
        for n in ORACLE_DIMS {
            suites.extend(oracle_suites(k, n).expect("grid parameters are valid"));
        }
    }
    suites.push(soundness_suite("envelope.soundness", MODULUS_RANGE));
    suites.push(main1_suite());
    suites.push(jk_suite());
    suites.sort_by(|a, b| a.name().cmp(b.name()));
    suites
}

/// Suites expected to report violations: broken hypotheses, and the
/// ε-pinching far outside the moduli where its proof applies.
pub fn probes() -> Vec<Suite> {
    let mut suites = probe_suites();
    suites.push(soundness_suite("probe.envelope_far_field", (1e4, 1e6)));
    suites.sort_by(|a, b| a.name().cmp(b.name()));
    suites
}

/// Resolves a selector: `all`, an exact name, or a dotted prefix.
pub fn select(selector: &str) -> Vec<Suite> {
    if selector == "all" {
        return all_suites();
    }
    let prefix = format!("{selector}.");
    all_suites()
        .into_iter()
        .chain(probes())
        .filter(|s| s.name() == selector || s.name().starts_with(&prefix))
        .collect()
}

/// Plan used for the oracle and envelope suites when run standalone.
pub fn default_plan(samples: usize, seed: u64) -> SamplingPlan {
    SamplingPlan::default().with_samples(samples).with_seed(seed)
}
