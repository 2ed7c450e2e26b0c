//! Named sampling suites for the inequality predicates.
//!
//! Suite names are dotted paths (`genbernoulli.5.lower`); selecting a prefix
//! such as `genbernoulli.5` selects every suite below it.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::special_functions::make_params;

/// Log-uniform draw from `[lo, hi]`.
pub fn log_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    (rng.gen::<f64>() * (hi / lo).ln()).exp() * lo
}

/// Uniform draw from the open interval `(lo, hi)`.
pub fn open_uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    loop {
        let x = rng.gen_range(lo..hi);
        if x > lo {
            return x;
        }
    }
}

fn sorted_pair(rng: &mut ChaCha8Rng, range: (f64, f64)) -> (f64, f64) {
    loop {
        let (s, t) = (log_uniform(rng, range), log_uniform(rng, range));
        if s != t {
            return (s.min(t), s.max(t));
        }
    }
}

fn pair(rng: &mut ChaCha8Rng, plan: &SamplingPlan) -> Result<ExponentPair<f64>> {
    let a = rng.gen_range(plan.a_range.0..=plan.a_range.1);
    let b = rng.gen_range(plan.b_range.0..=plan.b_range.1);
    ExponentPair::new(a, b)
}

fn strict_pair(rng: &mut ChaCha8Rng, plan: &SamplingPlan) -> (f64, f64) {
    let a = open_uniform(rng, plan.a_range).min(1.0 - f64::EPSILON);
    let b = open_uniform(rng, plan.b_range).max(1.0 + f64::EPSILON);
    (a, b)
}

fn ln_f2(p: &ExponentPair<f64>, t: f64) -> f64 {
    f2(p, t).ln()
}

fn ln_f3(p: &ExponentPair<f64>, t: f64) -> f64 {
    f3(p, t).ln()
}

/// Pair `t₁ < t₂` on the same side of 1.
fn one_sided_pair(rng: &mut ChaCha8Rng, plan: &SamplingPlan) -> (f64, f64) {
    if rng.gen::<bool>() {
        sorted_pair(rng, (plan.t_range.0, 1.0))
    } else {
        sorted_pair(rng, (1.0, plan.t_range.1))
    }
}

/// Suites for every claimed inequality, in name order.
pub fn inequality_suites() -> Vec<Suite> {
    let mut suites = vec![
        Suite::new("vesna", |rng, plan| {
            let (a, b) = strict_pair(rng, plan);
            let threshold = vesna_threshold(a, b);
            // A quarter of the draws sit exactly on the threshold.
            let m = if rng.gen_range(0..4) == 0 {
                threshold
            } else {
                threshold * log_uniform(rng, (1.0, 10.0))
            };
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![vesna_check(a, b, m, t)?])
        }),
        Suite::new("c3", |rng, plan| {
            let k = 1.0 + open_uniform(rng, (0.0, 1.0));
            let n = rng.gen_range(2..=4);
            let params = make_params(k, n)?;
            let c = params.c3 * log_uniform(rng, (1.0, 10.0));
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![c3_check(&params, t, params.c3)?, c3_check(&params, t, c)?])
        }),
        Suite::new("genbernoulli.1.monotone", |rng, plan| {
            let p = pair(rng, plan)?;
            let (t1, t2) = sorted_pair(rng, plan.t_range);
            Ok(vec![Margin::new(f1(&p, t1), f1(&p, t2))])
        }),
        Suite::new("genbernoulli.1.range", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            let v = f1(&p, t);
            Ok(vec![Margin::new(0.0, v), Margin::new(v, p.a.recip())])
        }),
        Suite::new("genbernoulli.2.lower", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![Margin::from_logs(p.u.ln(), ln_f2(&p, t))])
        }),
        Suite::new("genbernoulli.2.upper", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![Margin::from_logs(ln_f2(&p, t), 0.0)])
        }),
        Suite::new("genbernoulli.2.monotone", |rng, plan| {
            let p = pair(rng, plan)?;
            let (t1, t2) = one_sided_pair(rng, plan);
            let (l1, l2) = (ln_f2(&p, t1), ln_f2(&p, t2));
            let order = if t2 <= 1.0 {
                Margin::from_logs(l2, l1)
            } else {
                Margin::from_logs(l1, l2)
            };
            Ok(vec![order, Margin::from_logs(ln_f2(&p, 1.0), l1)])
        }),
        Suite::new("genbernoulli.3.upper", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![Margin::from_logs(ln_f3(&p, t), p.v.ln())])
        }),
        Suite::new("genbernoulli.3.monotone", |rng, plan| {
            let p = pair(rng, plan)?;
            let (t1, t2) = one_sided_pair(rng, plan);
            let (l1, l2) = (ln_f3(&p, t1), ln_f3(&p, t2));
            let order = if t2 <= 1.0 {
                Margin::from_logs(l1, l2)
            } else {
                Margin::from_logs(l2, l1)
            };
            Ok(vec![order, Margin::from_logs(l1, ln_f3(&p, 1.0))])
        }),
        Suite::new("genbernoulli.4.monotone", |rng, plan| {
            let p = pair(rng, plan)?;
            let (t1, t2) = sorted_pair(rng, plan.t_range);
            Ok(vec![Margin::new(f4(&p, t1), f4(&p, t2))])
        }),
        Suite::new("genbernoulli.4.range", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            let v = f4(&p, t);
            Ok(vec![Margin::new(0.0, v), Margin::new(v, p.b)])
        }),
        Suite::new("genbernoulli.5.lower", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, (plan.t_range.0, std::f64::consts::E - 1.0));
            Ok(vec![genbernoulli5(&p, t)?[0]])
        }),
        Suite::new("genbernoulli.5.upper", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, (plan.t_range.0, std::f64::consts::E - 1.0));
            Ok(vec![genbernoulli5(&p, t)?[1]])
        }),
        Suite::new("genbernoulli.6.lower", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![genbernoulli6(&p, t)?[0]])
        }),
        Suite::new("genbernoulli.6.upper", |rng, plan| {
            let p = pair(rng, plan)?;
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![genbernoulli6(&p, t)?[1]])
        }),
        Suite::new("genbernoulli.7", |rng, plan| {
            let p = pair(rng, plan)?;
            let c = 1.0 + log_uniform(rng, (1e-6, 1e3));
            let t = log_uniform(rng, plan.t_range);
            Ok(vec![genbernoulli7(&p, c, t)?])
        }),
        Suite::new("genbernoulli.8", |rng, plan| {
            let p = pair(rng, plan)?;
            let s = log_uniform(rng, plan.t_range);
            let t = log_uniform(rng, plan.t_range);
            Ok(genbernoulli8(&p, s, t)?.to_vec())
        }),
        Suite::new("f5", |rng, plan| {
            let (a, b) = loop {
                let (a, b) = (open_uniform(rng, (0.0, 1.0)), open_uniform(rng, (0.0, 1.0)));
                if a != b {
                    break (a.min(b), a.max(b));
                }
            };
            let (t1, t2) = sorted_pair(rng, plan.t_range);
            Ok(vec![f5_f6_check(Decreasing::F5, a, b, t1, t2)?])
        }),
        Suite::new("f6", |rng, plan| {
            let a = open_uniform(rng, plan.a_range);
            let (s1, s2) = sorted_pair(rng, plan.t_range);
            let (t1, t2) = (a * (1.0 + s1), a * (1.0 + s2));
            if t1 >= t2 {
                return Ok(vec![]);
            }
            Ok(vec![f5_f6_check(Decreasing::F6, a, 0.0, t1, t2)?])
        }),
    ];
    suites.sort_by(|x, y| x.name().cmp(y.name()));
    suites
}

/// Deliberately broken inputs; expected to report violations.
pub fn probe_suites() -> Vec<Suite> {
    vec![Suite::new("probe.vesna_below_threshold", |rng, plan| {
        let (a, b) = strict_pair(rng, plan);
        let m = vesna_threshold(a, b) * rng.gen_range(0.05..0.5);
        let t = log_uniform(rng, plan.t_range);
        Ok(vec![vesna_margin(a, b, m, t)])
    })]
}
