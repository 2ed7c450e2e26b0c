use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Margin;
use crate::error::Result;

/// Relative tolerance with an absolute floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relative: 1e-12,
            absolute: 1e-15,
        }
    }
}

/// Seed, sample count, tolerance and default parameter ranges for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingPlan {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: Tolerance,
    /// Log-uniform range for `t`.
    pub t_range: (f64, f64),
    /// Uniform range for `a`.
    pub a_range: (f64, f64),
    /// Uniform range for `b`.
    pub b_range: (f64, f64),
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            seed: 0x5EED,
            samples: 100_000,
            tolerance: Tolerance::default(),
            t_range: (1e-6, 1e6),
            a_range: (0.01, 1.0),
            b_range: (1.0, 100.0),
        }
    }
}

impl SamplingPlan {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }
}

type Sampler = dyn Fn(&mut ChaCha8Rng, &SamplingPlan) -> Result<Vec<Margin<f64>>> + Send + Sync;

/// A named family of margins, one draw per sample index.
pub struct Suite {
    name: String,
    sampler: Box<Sampler>,
}

impl Suite {
    pub fn new<F>(name: impl Into<String>, sampler: F) -> Self
    where
        F: Fn(&mut ChaCha8Rng, &SamplingPlan) -> Result<Vec<Margin<f64>>> + Send + Sync + 'static,
    {
        Suite {
            name: name.into(),
            sampler: Box::new(sampler),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The margins drawn for one sample index.
    pub fn sample(&self, plan: &SamplingPlan, index: u64) -> Result<Vec<Margin<f64>>> {
        let mut rng = sample_rng(plan.seed, &self.name, index);
        (self.sampler)(&mut rng, plan)
    }
}

impl std::fmt::Debug for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Suite").field("name", &self.name).finish()
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Stream indexed by (seed, suite, sample), independent of evaluation order.
fn sample_rng(seed: u64, suite: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(suite.as_bytes()));
    rng.set_stream(index);
    rng
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite_name: String,
    pub samples: usize,
    pub violations: usize,
    /// Most negative normalized margin observed.
    pub worst_margin: f64,
    /// Sample index that produced `worst_margin`.
    pub worst_sample: Option<u64>,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub elapsed: f64,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    suite: &'a str,
    seed: u64,
    samples: usize,
    violations: usize,
    worst_margin: f64,
    tolerance: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// One-line JSON record. The elapsed time is left out so that equal
    /// seeds give byte-identical output.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportRecord {
            suite: &self.suite_name,
            seed: self.seed,
            samples: self.samples,
            violations: self.violations,
            worst_margin: self.worst_margin,
            tolerance: self.tolerance.relative,
        })
        .expect("report serializes")
    }
}

#[derive(Clone, Copy)]
struct Tally {
    violations: usize,
    worst: f64,
    worst_index: Option<u64>,
}

impl Tally {
    const EMPTY: Tally = Tally {
        violations: 0,
        worst: f64::INFINITY,
        worst_index: None,
    };

    fn merge(self, other: Tally) -> Tally {
        let pick_other = match (self.worst_index, other.worst_index) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(i), Some(j)) => other.worst < self.worst || (other.worst == self.worst && j < i),
        };
        let (worst, worst_index) = if pick_other {
            (other.worst, other.worst_index)
        } else {
            (self.worst, self.worst_index)
        };
        Tally {
            violations: self.violations + other.violations,
            worst,
            worst_index,
        }
    }
}

/// Runs every sample of `suite` under `plan` and aggregates the margins.
///
/// Samples are evaluated in parallel; each draws from its own stream and
/// the reduction is order independent, so the report only depends on the
/// plan.
pub fn run_suite(suite: &Suite, plan: &SamplingPlan) -> CheckReport {
    let start = Instant::now();
    let tol = plan.tolerance;
    let tally = (0..plan.samples as u64)
        .into_par_iter()
        .map(|index| {
            let worst = match suite.sample(plan, index) {
                Ok(margins) => margins
                    .iter()
                    .map(|m| {
                        let v = m.normalized(&tol);
                        if v.is_nan() {
                            f64::NEG_INFINITY
                        } else {
                            v
                        }
                    })
                    .fold(f64::INFINITY, f64::min),
                Err(_) => f64::NEG_INFINITY,
            };
            Tally {
                violations: usize::from(worst < -tol.relative),
                worst,
                worst_index: Some(index),
            }
        })
        .reduce(|| Tally::EMPTY, Tally::merge);
    CheckReport {
        suite_name: suite.name.clone(),
        samples: plan.samples,
        violations: tally.violations,
        worst_margin: tally.worst,
        worst_sample: tally.worst_index,
        seed: plan.seed,
        tolerance: tol,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn noisy_suite() -> Suite {
        Suite::new("noisy", |rng: &mut ChaCha8Rng, _: &SamplingPlan| {
            let x: f64 = rng.gen_range(-1.0..1.0);
            Ok(vec![Margin::new(x, 0.5)])
        })
    }

    #[test]
    fn deterministic_under_fixed_seed() {
        let plan = SamplingPlan::default().with_samples(5_000).with_seed(42);
        let a = run_suite(&noisy_suite(), &plan);
        let b = run_suite(&noisy_suite(), &plan);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.worst_sample, b.worst_sample);
        assert!(a.violations > 0);
        let c = run_suite(&noisy_suite(), &plan.clone().with_seed(43));
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn violations_iff_worst_below_tolerance() {
        let plan = SamplingPlan::default().with_samples(1_000);
        let ok = Suite::new("ok", |_: &mut ChaCha8Rng, _: &SamplingPlan| {
            Ok(vec![Margin::new(1.0, 1.0)])
        });
        let r = run_suite(&ok, &plan);
        assert_eq!(r.violations, 0);
        assert!(r.worst_margin >= -plan.tolerance.relative);
        let r = run_suite(&noisy_suite(), &plan);
        assert!(r.violations > 0 && r.worst_margin < -plan.tolerance.relative);
    }

    #[test]
    fn sampler_errors_count_as_violations() {
        let plan = SamplingPlan::default().with_samples(10);
        let broken = Suite::new("broken", |_: &mut ChaCha8Rng, _: &SamplingPlan| {
            crate::error::domain("bad draw")
        });
        let r = run_suite(&broken, &plan);
        assert_eq!(r.violations, 10);
        assert_eq!(r.worst_sample, Some(0));
    }

    #[test]
    fn json_schema() {
        let plan = SamplingPlan::default().with_samples(3);
        let r = run_suite(&noisy_suite(), &plan);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["samples", "seed", "suite", "tolerance", "violations", "worst_margin"]
        );
        assert!(r.to_json().starts_with("{\"suite\":\"noisy\",\"seed\":"));
    }
}
