//! Empirical checks that tie sampled batches back to symbolic verdicts.
//!
//! Every check emits an [`EmpiricalReport`] whose outcome is a pure function
//! of one statistic and one threshold; the diagnostics map carries the
//! intermediate quantities for inspection but never sways the verdict. A
//! NaN threshold means the check had no prediction to test against and the
//! outcome is reported as inconclusive.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functional::{gou_step, killed_functional_sample, sample_batch, SampleBatch};
use crate::path::SimParams;
use crate::process::ProcessSpec;
use crate::rng::RngStream;
use crate::support::{
    enumerate_closure, nearest_distance, EnumerationLimits, SupportDescriptor, SupportRelation,
};

/// Verdict of one empirical check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestOutcome {
    Pass,
    Fail,
    Inconclusive,
}

/// One check's result: the statistic, the threshold it was held against,
/// and supporting diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub scenario_id: String,
    pub test_name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub outcome: TestOutcome,
    pub diagnostics: BTreeMap<String, f64>,
}

impl EmpiricalReport {
    /// Assemble a report; the outcome is derived from the statistic and
    /// threshold alone (NaN threshold means inconclusive).
    pub fn build(
        scenario_id: &str,
        test_name: &str,
        statistic: f64,
        threshold: f64,
        diagnostics: BTreeMap<String, f64>,
    ) -> Self {
        let outcome = if threshold.is_nan() {
            TestOutcome::Inconclusive
        } else if statistic <= threshold {
            TestOutcome::Pass
        } else {
            TestOutcome::Fail
        };
        EmpiricalReport {
            scenario_id: scenario_id.to_string(),
            test_name: test_name.to_string(),
            statistic,
            threshold,
            outcome,
            diagnostics,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == TestOutcome::Pass
    }
}

/// Two-sample Kolmogorov distance sup_x |F_a(x) − F_b(x)|.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "need samples on both sides");
    let mut xs: Vec<f64> = a.to_vec();
    let mut ys: Vec<f64> = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut d: f64 = 0.0;
    while i < xs.len() || j < ys.len() {
        let t = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        if t.is_nan() {
            break;
        }
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// One-sample Kolmogorov distance against an analytic distribution function.
pub fn ks_against_cdf<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    assert!(!sample.is_empty(), "need a nonempty sample");
    let mut xs: Vec<f64> = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in xs.iter().enumerate() {
        let f = cdf(*x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}

/// Asymptotic two-sample critical value at the given level.
fn ks_critical(level: f64, n: usize, m: usize) -> f64 {
    let c = (-(level / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Two-sample Kolmogorov-Smirnov check at the given significance level.
pub fn ks_two_sample(a: &SampleBatch, b: &SampleBatch, level: f64) -> EmpiricalReport {
    let d = ks_statistic(&a.values, &b.values);
    let threshold = ks_critical(level, a.values.len(), b.values.len());
    let mut diag = BTreeMap::new();
    diag.insert("n_left".into(), a.values.len() as f64);
    diag.insert("n_right".into(), b.values.len() as f64);
    diag.insert("level".into(), level);
    EmpiricalReport::build(&a.scenario_id, "ks_two_sample", d, threshold, diag)
}

/// Compare the empirical mass of [−eps, eps] with a predicted atom at zero.
///
/// With a prediction p the statistic is |p̂ − p| and the threshold is a
/// three-sigma binomial radius plus a 2/n discretization allowance; without
/// one the observed mass is reported as inconclusive.
pub fn atom_at_zero_test(
    batch: &SampleBatch,
    eps: f64,
    predicted: Option<f64>,
) -> EmpiricalReport {
    let n = batch.values.len() as f64;
    let hits = batch.values.iter().filter(|v| v.abs() <= eps).count() as f64;
    let p_hat = hits / n;
    let mut diag = BTreeMap::new();
    diag.insert("atom_mass".into(), p_hat);
    diag.insert("eps".into(), eps);
    let (statistic, threshold) = match predicted {
        Some(p) => {
            let radius = 3.0 * (p * (1.0 - p) / n).sqrt() + 2.0 / n;
            diag.insert("predicted".into(), p);
            diag.insert("confidence_radius".into(), radius);
            ((p_hat - p).abs(), radius)
        }
        None => (p_hat, f64::NAN),
    };
    EmpiricalReport::build(
        &batch.scenario_id,
        "atom_at_zero",
        statistic,
        threshold,
        diag,
    )
}

/// Check a batch against a support descriptor.
///
/// Outside fraction: samples farther than `eps` from the claimed set, which
/// must vanish for any correct descriptor. Coverage: for descriptors marked
/// [`SupportRelation::Equal`] the set must also be reached, so a probe grid
/// spanning the sample's inner quantile range counts claimed cells with no
/// sample nearby. The statistic is the worse of the two fractions.
pub fn support_coverage_test(
    batch: &SampleBatch,
    descriptor: &SupportDescriptor,
    eps: f64,
    probes: usize,
) -> Result<EmpiricalReport> {
    let shape = &descriptor.shape;
    let enumerated = match shape.distance(0.0) {
        Some(_) => None,
        None => {
            let spread = batch
                .values
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
                .max(1.0);
            let limits = EnumerationLimits::default().with_window(-2.0 * spread, 2.0 * spread);
            Some(enumerate_closure(shape, &limits)?)
        }
    };
    let dist = |x: f64| match &enumerated {
        Some(points) => nearest_distance(points, x),
        None => shape.distance(x).expect("closed-form shape"),
    };

    let n = batch.values.len() as f64;
    let outside = batch.values.iter().filter(|&&v| dist(v) > eps).count() as f64;
    let outside_fraction = outside / n;

    let mut diag = BTreeMap::new();
    diag.insert("outside_fraction".into(), outside_fraction);
    diag.insert("eps".into(), eps);

    let mut uncovered_fraction = 0.0;
    if descriptor.relation == SupportRelation::Equal && probes > 0 {
        let mut xs = batch.values.clone();
        xs.sort_by(f64::total_cmp);
        let lo = xs[(xs.len() as f64 * 0.01) as usize];
        let hi = xs[((xs.len() as f64 * 0.99) as usize).min(xs.len() - 1)];
        if hi > lo {
            let mut claimed = 0usize;
            let mut missed = 0usize;
            let radius = (hi - lo) / probes as f64;
            for k in 0..probes {
                let x = lo + (k as f64 + 0.5) * (hi - lo) / probes as f64;
                if dist(x) <= radius {
                    claimed += 1;
                    let near = xs.iter().any(|&v| (v - x).abs() <= radius);
                    if !near {
                        missed += 1;
                    }
                }
            }
            if claimed > 0 {
                uncovered_fraction = missed as f64 / claimed as f64;
            }
            diag.insert("claimed_cells".into(), claimed as f64);
            diag.insert("uncovered_cells".into(), missed as f64);
        }
    }
    diag.insert("uncovered_fraction".into(), uncovered_fraction);

    Ok(EmpiricalReport::build(
        &batch.scenario_id,
        "support_coverage",
        outside_fraction.max(uncovered_fraction),
        0.02,
        diag,
    ))
}

/// Check that the inner batch lives inside the eps-fattened empirical
/// support of the outer batch: the fraction of inner samples farther than
/// eps from every outer sample must be negligible.
pub fn support_inclusion_test(
    inner: &SampleBatch,
    outer: &SampleBatch,
    eps: f64,
) -> EmpiricalReport {
    let mut sorted = outer.values.clone();
    sorted.sort_by(f64::total_cmp);
    let n = inner.values.len() as f64;
    let outside = inner
        .values
        .iter()
        .filter(|&&v| nearest_distance(&sorted, v) > eps)
        .count() as f64;
    let mut diag = BTreeMap::new();
    diag.insert("eps".into(), eps);
    diag.insert("outside_count".into(), outside);
    EmpiricalReport::build(
        &inner.scenario_id,
        "support_inclusion",
        outside / n,
        0.02,
        diag,
    )
}

/// Largest empirical mass carried by any window of the given width,
/// located by a sliding pass over the sorted sample. A continuous law keeps
/// this small; an atom shows up as a spike at its location.
pub fn max_atom_screen(batch: &SampleBatch, window: f64, threshold: f64) -> EmpiricalReport {
    let mut xs = batch.values.clone();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let mut best = 0usize;
    let mut at = 0.0;
    let mut j = 0usize;
    for i in 0..n {
        while j < n && xs[j] <= xs[i] + window {
            j += 1;
        }
        if j - i > best {
            best = j - i;
            at = xs[i];
        }
    }
    let mass = best as f64 / n as f64;
    let mut diag = BTreeMap::new();
    diag.insert("window".into(), window);
    diag.insert("heaviest_window_start".into(), at);
    diag.insert(
        "mass_near_zero".into(),
        xs.iter().filter(|v| v.abs() <= window).count() as f64 / n as f64,
    );
    EmpiricalReport::build(&batch.scenario_id, "max_atom_screen", mass, threshold, diag)
}

/// Check that the killed-functional law is a fixed point of the restarted
/// step: draw a batch, advance it once, and KS-compare before and after.
/// `initial` overrides the batch with a constant start, the negative
/// control that must fail for any nondegenerate pair.
#[allow(clippy::too_many_arguments)]
pub fn stationarity_test(
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    q: f64,
    t: f64,
    n: usize,
    rng: &RngStream,
    params: &SimParams,
    initial: Option<f64>,
) -> Result<EmpiricalReport> {
    let before = match initial {
        Some(c) => SampleBatch {
            scenario_id: "stationarity".into(),
            seed: rng.seed,
            params: *params,
            values: vec![c; n],
        },
        None => sample_batch("stationarity", n, &rng.child(0), params, |s| {
            killed_functional_sample(xi, eta, q, &s, params)
        })?,
    };
    let after = SampleBatch {
        values: gou_step(&before.values, xi, eta, q, t, &rng.child(1), params)?,
        ..before.clone()
    };
    let mut report = ks_two_sample(&before, &after, 0.01);
    report.test_name = "stationarity".into();
    report.diagnostics.insert("step_horizon".into(), t);
    Ok(report)
}
