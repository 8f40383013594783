//! End-to-end scenario driver: classify, sample, then hold the batch
//! against every check the verdict makes applicable. The command-line
//! tools call these functions and nothing else, so their results are the
//! library's results by construction.

use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_ac_unkilled, classify_continuity_killed, classify_deterministic_integrand,
    classify_fixed_t,
};
use crate::error::Result;
use crate::functional::{
    deterministic_integrand_sample, fixed_t_functional_sample, killed_functional_sample,
    sample_batch, unkilled_functional_sample, SampleBatch,
};
use crate::rng::RngStream;
use crate::scenario::{KnownLaw, Mode, Scenario};
use crate::stats::{
    atom_at_zero_test, ks_against_cdf, max_atom_screen, stationarity_test,
    support_coverage_test, support_inclusion_test, EmpiricalReport, TestOutcome,
};
use crate::support::{classify_support, SupportDescriptor};
use crate::verdict::{LawVerdict, Tri};

/// One empirical check together with its role: a negative control is a
/// check that must trip, so detection counts as success.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub report: EmpiricalReport,
    pub must_fail: bool,
    pub ok: bool,
}

fn plain(report: EmpiricalReport) -> CheckRecord {
    let ok = report.outcome != TestOutcome::Fail;
    CheckRecord {
        report,
        must_fail: false,
        ok,
    }
}

fn control(report: EmpiricalReport) -> CheckRecord {
    let ok = report.outcome == TestOutcome::Fail;
    CheckRecord {
        report,
        must_fail: true,
        ok,
    }
}

/// Everything one seed produced for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub scenario_id: String,
    pub seed: u64,
    pub verdict: LawVerdict,
    pub support: Option<SupportDescriptor>,
    /// Differences between the classifier output and the scenario's golden
    /// expectations; deterministic, so identical across seeds.
    pub golden_mismatches: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

/// Multi-seed aggregate with the standard flake allowance: one failing
/// seed per check is tolerated per ten seeds run; negative controls must
/// trip on every seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateOutcome {
    pub scenario_id: String,
    pub seeds: Vec<u64>,
    pub runs: Vec<VerifyOutcome>,
    pub failed_checks: Vec<String>,
    pub pass: bool,
}

/// Route the scenario to its classifier; killed scenarios also get their
/// support described.
pub fn classify_scenario(sc: &Scenario) -> Result<(LawVerdict, Option<SupportDescriptor>)> {
    match &sc.mode {
        Mode::Killed => Ok((
            classify_continuity_killed(&sc.xi, &sc.eta, sc.q)?,
            Some(classify_support(&sc.xi, &sc.eta, sc.q)?),
        )),
        Mode::Unkilled => Ok((classify_ac_unkilled(&sc.xi, &sc.eta)?, None)),
        Mode::FixedT { t } => Ok((classify_fixed_t(&sc.xi, &sc.eta, *t)?, None)),
        Mode::DeterministicIntegrand { f, stop } => {
            Ok((classify_deterministic_integrand(f, &sc.eta, *stop)?, None))
        }
    }
}

/// Compare classifier output against the scenario's golden expectations.
pub fn golden_check(
    sc: &Scenario,
    verdict: &LawVerdict,
    support: Option<&SupportDescriptor>,
) -> Vec<String> {
    let mut out = Vec::new();
    let Some(exp) = &sc.expected else {
        return out;
    };
    let mut flag = |name: &str, want: Option<Tri>, got: Tri| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{name}: expected {w:?}, classifier said {got:?}"));
            }
        }
    };
    flag("atom_at_zero", exp.atom_at_zero, verdict.atom_at_zero);
    flag("continuous", exp.continuous, verdict.continuous);
    flag(
        "absolutely_continuous",
        exp.absolutely_continuous,
        verdict.absolutely_continuous,
    );
    if !exp.rules.is_empty() {
        let mut trail: Vec<&str> = verdict.trail.iter().map(String::as_str).collect();
        if let Some(d) = support {
            trail.extend(d.trail.iter().map(String::as_str));
        }
        for rule in &exp.rules {
            if !trail.iter().any(|t| t == rule) {
                out.push(format!("rule '{rule}' missing from trail {trail:?}"));
            }
        }
    }
    if let Some(shape) = &exp.support {
        match support {
            Some(d) => {
                if d.shape != *shape {
                    out.push(format!(
                        "support shape: expected {shape:?}, classifier said {:?}",
                        d.shape
                    ));
                }
                if let Some(rel) = exp.support_relation {
                    if d.relation != rel {
                        out.push(format!(
                            "support relation: expected {rel:?}, classifier said {:?}",
                            d.relation
                        ));
                    }
                }
            }
            None => out.push("support expectation on a scenario without a support run".into()),
        }
    }
    out
}

/// Draw the scenario's functional n times under the given stream.
pub fn sample_scenario(sc: &Scenario, n: usize, root: &RngStream) -> Result<SampleBatch> {
    match &sc.mode {
        Mode::Killed => sample_batch(&sc.id, n, root, &sc.sim, |s| {
            killed_functional_sample(&sc.xi, &sc.eta, sc.q, &s, &sc.sim)
        }),
        Mode::Unkilled => sample_batch(&sc.id, n, root, &sc.sim, |s| {
            unkilled_functional_sample(&sc.xi, &sc.eta, &s, &sc.sim, &sc.horizon).map(|(v, _)| v)
        }),
        Mode::FixedT { t } => sample_batch(&sc.id, n, root, &sc.sim, |s| {
            fixed_t_functional_sample(&sc.xi, &sc.eta, *t, &s, &sc.sim)
        }),
        Mode::DeterministicIntegrand { f, stop } => sample_batch(&sc.id, n, root, &sc.sim, |s| {
            deterministic_integrand_sample(f, &sc.eta, *stop, &s, &sc.sim)
        }),
    }
}

/// Support fattening radius for the scenario's scheme: exact-event
/// arithmetic earns a tight radius, anything with a Gaussian part or a
/// small-jump cutoff gets a grid-scale one.
pub fn scheme_eps(sc: &Scenario) -> Result<f64> {
    let mut specs = vec![&sc.eta];
    if !matches!(sc.mode, Mode::DeterministicIntegrand { .. }) {
        specs.push(&sc.xi);
    }
    let mut exact = true;
    for spec in specs {
        let scheme = crate::path::SimScheme::new(spec, &sc.sim)?;
        if scheme.has_gaussian() || spec.triplet.profile().infinite_activity() {
            exact = false;
        }
    }
    Ok(if exact { 1e-6 } else { 1e-3 })
}

/// Run one scenario end to end under one seed.
pub fn verify_scenario(sc: &Scenario, n: usize, seed: u64) -> Result<VerifyOutcome> {
    let (verdict, support) = classify_scenario(sc)?;
    let golden_mismatches = golden_check(sc, &verdict, support.as_ref());
    let root = RngStream::root(seed);
    let batch = sample_scenario(sc, n, &root.child(0))?;
    let eps = scheme_eps(sc)?;
    let expected = sc.expected.clone().unwrap_or_default();

    let mut checks = Vec::new();

    if let Some(descriptor) = &support {
        checks.push(plain(support_coverage_test(&batch, descriptor, eps, 64)?));
    }

    let predicted_mass = expected
        .atom_mass
        .or_else(|| (verdict.atom_at_zero == Tri::No).then_some(0.0));
    checks.push(plain(atom_at_zero_test(&batch, eps, predicted_mass)));

    match verdict.continuous {
        Tri::Yes => checks.push(plain(max_atom_screen(&batch, 1e-3, 0.01))),
        Tri::No => {
            // an atom of known mass must be seen by the screen
            if let Some(m) = expected.atom_mass.filter(|m| *m > 0.0) {
                checks.push(control(max_atom_screen(&batch, eps, m / 2.0)));
            }
        }
        Tri::Unknown => {}
    }

    if let Some(law) = expected.law {
        let report = match law {
            KnownLaw::Point { at } => {
                let worst = batch
                    .values
                    .iter()
                    .fold(0.0f64, |w, v| w.max((v - at).abs()));
                EmpiricalReport::build(
                    &sc.id,
                    "point_law",
                    worst,
                    eps,
                    [("at".to_string(), at)].into(),
                )
            }
            _ => {
                let d = ks_against_cdf(&batch.values, |x| law.cdf(x));
                let critical = (-(0.01f64 / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt();
                EmpiricalReport::build(
                    &sc.id,
                    "ks_known_law",
                    d,
                    critical,
                    [("level".to_string(), 0.01)].into(),
                )
            }
        };
        checks.push(plain(report));
    }

    if let Mode::Killed = sc.mode {
        checks.push(plain(stationarity_test(
            &sc.xi,
            &sc.eta,
            sc.q,
            0.5,
            n,
            &root.child(1),
            &sc.sim,
            None,
        )?));
    }

    if let Mode::Unkilled = sc.mode {
        // the unkilled law must live inside the killed one's support
        let killed = sample_batch(&sc.id, n, &root.child(2), &sc.sim, |s| {
            killed_functional_sample(&sc.xi, &sc.eta, 0.1, &s, &sc.sim)
        })?;
        let lo = killed.values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = killed
            .values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let fattening = eps.max((hi - lo) / (n as f64).sqrt());
        checks.push(plain(support_inclusion_test(&batch, &killed, fattening)));
    }

    let pass = golden_mismatches.is_empty() && checks.iter().all(|c| c.ok);
    Ok(VerifyOutcome {
        scenario_id: sc.id.clone(),
        seed,
        verdict,
        support,
        golden_mismatches,
        checks,
        pass,
    })
}

/// Run one scenario under many seeds and aggregate with the flake
/// allowance.
pub fn verify_scenario_seeds(sc: &Scenario, n: usize, seeds: &[u64]) -> Result<AggregateOutcome> {
    let runs = seeds
        .iter()
        .map(|&seed| verify_scenario(sc, n, seed))
        .collect::<Result<Vec<_>>>()?;
    let tolerance = seeds.len() / 10;
    let mut failed_checks = Vec::new();
    if let Some(run) = runs.iter().find(|r| !r.golden_mismatches.is_empty()) {
        for m in &run.golden_mismatches {
            failed_checks.push(format!("golden: {m}"));
        }
    }
    let names: Vec<String> = runs
        .first()
        .map(|r| r.checks.iter().map(|c| c.report.test_name.clone()).collect())
        .unwrap_or_default();
    for name in names {
        let bad = runs
            .iter()
            .filter(|r| {
                r.checks
                    .iter()
                    .any(|c| c.report.test_name == name && !c.ok)
            })
            .count();
        let must_fail = runs
            .iter()
            .flat_map(|r| &r.checks)
            .any(|c| c.report.test_name == name && c.must_fail);
        let allowed = if must_fail { 0 } else { tolerance };
        if bad > allowed {
            failed_checks.push(format!("{name}: failed on {bad}/{} seeds", runs.len()));
        }
    }
    Ok(AggregateOutcome {
        scenario_id: sc.id.clone(),
        seeds: seeds.to_vec(),
        pass: failed_checks.is_empty(),
        runs,
        failed_checks,
    })
}
