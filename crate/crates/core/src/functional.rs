//! Pathwise evaluation of exponential functionals of Lévy pairs.
//!
//! The evaluator walks the merged event timeline of the two processes and
//! accumulates ∫ e^(−ξ_{s−}) dη_s in closed form:
//!
//! * the drift part of η integrates e^(−ξ) exactly over each segment on
//!   which ξ is linear;
//! * the Brownian part of η contributes a conditionally Gaussian draw with
//!   the exact variance σ_η² ∫ e^(−2ξ) over the segment;
//! * each η jump is weighted by e^(−ξ) at its left limit.
//!
//! When ξ carries no Gaussian part the walk is exact (no grid anywhere);
//! otherwise ξ's Brownian increments land at grid nodes and the multiplier
//! is treated as linear in between, an O(grid step) scheme.
//!
//! Draw layout per sample stream: child 0 holds the kill or restart clock,
//! child 1 the ξ jumps, child 2 the η jumps, child 3 the walk Gaussians.
//! Horizon-doubling stages of the improper integral use child 4+k with the
//! same layout inside each stage.

use rand_distr::{Distribution, Exp, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KefError, Result};
use crate::integrand::{Integrand, StopRule};
use crate::path::{PathRealization, SimParams, SimScheme};
use crate::process::{AssertedFlag, ProcessSpec};
use crate::rng::RngStream;
use crate::stats::ks_statistic;

/// (1 − e^(−x)) / x, extended by its limit 1 at x = 0.
fn em1_ratio(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -(-x).exp_m1() / x
    }
}

/// ∫_0^len e^(−(a + b s)) ds, exact.
fn exp_integral(a: f64, b: f64, len: f64) -> f64 {
    (-a).exp() * len * em1_ratio(b * len)
}

/// One process's contribution to the walk: linear drift, simulated Gaussian
/// variance per unit time, and jump skeleton with strictly increasing times.
struct Leg<'a> {
    drift: f64,
    sigma2: f64,
    jumps: &'a [(f64, f64)],
}

impl<'a> Leg<'a> {
    fn from_scheme(scheme: &SimScheme, jumps: &'a [(f64, f64)]) -> Leg<'a> {
        Leg {
            drift: scheme.drift_rate,
            sigma2: scheme.gaussian_variance,
            jumps,
        }
    }
}

/// Accumulate ∫_(lo, hi] e^(−ξ_{s−}) dη_s over the window, starting from
/// ξ = `xi_start` at `lo`. Returns the integral contribution and ξ at `hi`.
/// Jumps with times in (lo, hi] are consumed; at a shared timestamp the η
/// increment is weighted by e^(−ξ) before the ξ jump.
fn integrate_window(
    xi: &Leg,
    eta: &Leg,
    lo: f64,
    hi: f64,
    xi_start: f64,
    grid_step: f64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> (f64, f64) {
    let mut acc = 0.0;
    let mut xi_val = xi_start;
    let mut t = lo;
    let mut i = xi.jumps.partition_point(|&(tt, _)| tt <= lo);
    let mut j = eta.jumps.partition_point(|&(tt, _)| tt <= lo);
    // the grid exists only to refresh the multiplier under a Gaussian ξ
    let mut next_grid = if xi.sigma2 > 0.0 {
        let mut g = (lo / grid_step).floor() * grid_step;
        while g <= lo {
            g += grid_step;
        }
        g
    } else {
        f64::INFINITY
    };
    loop {
        let next_xi = xi.jumps.get(i).map_or(f64::INFINITY, |&(tt, _)| tt);
        let next_eta = eta.jumps.get(j).map_or(f64::INFINITY, |&(tt, _)| tt);
        let next = next_xi.min(next_eta).min(next_grid).min(hi);
        let len = next - t;
        if len > 0.0 {
            if eta.drift != 0.0 {
                acc += eta.drift * exp_integral(xi_val, xi.drift, len);
            }
            if eta.sigma2 > 0.0 {
                let var = eta.sigma2 * exp_integral(2.0 * xi_val, 2.0 * xi.drift, len);
                let z: f64 = StandardNormal.sample(rng);
                acc += var.sqrt() * z;
            }
            xi_val += xi.drift * len;
            if xi.sigma2 > 0.0 {
                let z: f64 = StandardNormal.sample(rng);
                xi_val += (xi.sigma2 * len).sqrt() * z;
            }
            t = next;
        }
        if next_eta == next {
            acc += (-xi_val).exp() * eta.jumps[j].1;
            j += 1;
        } else if next_xi == next {
            xi_val += xi.jumps[i].1;
            i += 1;
        } else if next_grid == next && next < hi {
            next_grid += grid_step;
        } else {
            break;
        }
    }
    (acc, xi_val)
}

/// Exponential kill time with rate q, drawn from the stream's own generator.
pub fn kill_time_sample(q: f64, rng: &RngStream) -> Result<f64> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(KefError::Parameter(format!(
            "killing rate must be positive and finite, got {q}"
        )));
    }
    let e = Exp::new(q).expect("validated rate");
    Ok(e.sample(&mut rng.rng()))
}

/// One draw of ∫_0^τ e^(−ξ_{s−}) dη_s with τ ~ Exp(q) independent.
pub fn killed_functional_sample(
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    q: f64,
    rng: &RngStream,
    params: &SimParams,
) -> Result<f64> {
    let tau = kill_time_sample(q, &rng.child(0))?;
    let sx = SimScheme::new(xi, params)?;
    let se = SimScheme::new(eta, params)?;
    let xi_jumps = sx.sample_jumps(tau, &mut rng.child(1).rng());
    let eta_jumps = se.sample_jumps(tau, &mut rng.child(2).rng());
    let mut walk = rng.child(3).rng();
    let (v, _) = integrate_window(
        &Leg::from_scheme(&sx, &xi_jumps),
        &Leg::from_scheme(&se, &eta_jumps),
        0.0,
        tau,
        0.0,
        params.grid_step,
        &mut walk,
    );
    Ok(v)
}

/// One draw of ∫_0^t e^(−ξ_{s−}) dη_s at a fixed horizon.
pub fn fixed_t_functional_sample(
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    t: f64,
    rng: &RngStream,
    params: &SimParams,
) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(KefError::Parameter(format!(
            "horizon must be positive and finite, got {t}"
        )));
    }
    let sx = SimScheme::new(xi, params)?;
    let se = SimScheme::new(eta, params)?;
    let xi_jumps = sx.sample_jumps(t, &mut rng.child(1).rng());
    let eta_jumps = se.sample_jumps(t, &mut rng.child(2).rng());
    let mut walk = rng.child(3).rng();
    let (v, _) = integrate_window(
        &Leg::from_scheme(&sx, &xi_jumps),
        &Leg::from_scheme(&se, &eta_jumps),
        0.0,
        t,
        0.0,
        params.grid_step,
        &mut walk,
    );
    Ok(v)
}

/// Horizon policy for the improper integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnkilledParams {
    /// First horizon; later stages double it.
    pub initial_horizon: f64,
    /// Stop once the tail bound falls below this.
    pub tail_tol: f64,
    /// Give up past this horizon.
    pub max_horizon: f64,
}

impl Default for UnkilledParams {
    fn default() -> Self {
        UnkilledParams {
            initial_horizon: 1.0,
            tail_tol: 1e-9,
            max_horizon: 1e4,
        }
    }
}

/// One draw of lim_{t→∞} ∫_0^t e^(−ξ_{s−}) dη_s together with a tail bound.
///
/// The horizon doubles until exp(−ξ_T) · scale / growth < tail_tol, where
/// scale gauges η's activity and growth is the realized average slope of ξ.
/// The bound is a plumbing heuristic, not a proven error estimate; a path
/// whose ξ refuses to grow exhausts the horizon cap and reports
/// [`KefError::HorizonExceeded`], the signature of a divergent integral.
pub fn unkilled_functional_sample(
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    rng: &RngStream,
    params: &SimParams,
    horizon: &UnkilledParams,
) -> Result<(f64, f64)> {
    if !xi.has_flag(AssertedFlag::UnkilledIntegralConverges)
        && !eta.has_flag(AssertedFlag::UnkilledIntegralConverges)
    {
        return Err(KefError::Precondition(
            "improper integration needs the integral-convergence flag on one process".into(),
        ));
    }
    if !(horizon.initial_horizon > 0.0 && horizon.tail_tol > 0.0) {
        return Err(KefError::Parameter(
            "initial horizon and tail tolerance must be positive".into(),
        ));
    }
    let sx = SimScheme::new(xi, params)?;
    let se = SimScheme::new(eta, params)?;
    let eta_scale = se.drift_rate.abs() + se.gaussian_variance.sqrt() + se.jump_rate();

    let mut acc = 0.0;
    let mut xi_val = 0.0;
    let mut t_done = 0.0;
    let mut stage = 0u64;
    loop {
        let t_next = if stage == 0 {
            horizon.initial_horizon
        } else {
            t_done * 2.0
        };
        let stage_rng = rng.child(4 + stage);
        let len = t_next - t_done;
        let xi_jumps = sx.sample_jumps(len, &mut stage_rng.child(1).rng());
        let eta_jumps = se.sample_jumps(len, &mut stage_rng.child(2).rng());
        let mut walk = stage_rng.child(3).rng();
        let (dv, xv) = integrate_window(
            &Leg::from_scheme(&sx, &xi_jumps),
            &Leg::from_scheme(&se, &eta_jumps),
            0.0,
            len,
            xi_val,
            params.grid_step,
            &mut walk,
        );
        acc += dv;
        xi_val = xv;
        t_done = t_next;
        let growth = (xi_val / t_done).max(1e-12);
        let tail_bound = (-xi_val).exp() * eta_scale / growth;
        if tail_bound < horizon.tail_tol {
            return Ok((acc, tail_bound));
        }
        if t_done >= horizon.max_horizon {
            return Err(KefError::HorizonExceeded {
                horizon: t_done,
                tail_bound,
                tail_tol: horizon.tail_tol,
            });
        }
        stage += 1;
    }
}

/// Advance a batch through the explicit one-step solution of the restarted
/// Ornstein-Uhlenbeck recursion: with N a Poisson clock of rate q and T the
/// time of its last jump before t,
/// `x ↦ e^(−ξ_t) · x · 1{N(t)=0} + e^(−ξ_t) ∫_(T, t] e^(ξ_{s−}) dη_s`.
/// Every batch element evolves under its own independent stream.
pub fn gou_step(
    x0: &[f64],
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    q: f64,
    t: f64,
    rng: &RngStream,
    params: &SimParams,
) -> Result<Vec<f64>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(KefError::Parameter(format!(
            "step horizon must be positive and finite, got {t}"
        )));
    }
    if !(q >= 0.0 && q.is_finite()) {
        return Err(KefError::Parameter(format!(
            "restart rate must be nonnegative and finite, got {q}"
        )));
    }
    let sx = SimScheme::new(xi, params)?;
    let se = SimScheme::new(eta, params)?;
    x0.par_iter()
        .enumerate()
        .map(|(k, &x)| {
            let s = rng.child(k as u64);
            let mut clock = s.child(0).rng();
            let mut restart = 0.0f64;
            let mut keep = true;
            if q > 0.0 {
                let count = rand_distr::Poisson::new(q * t)
                    .expect("positive mean")
                    .sample(&mut clock) as u64;
                for _ in 0..count {
                    let time = rand::Rng::gen::<f64>(&mut clock) * t;
                    restart = restart.max(time);
                    keep = false;
                }
            }
            let xi_jumps = sx.sample_jumps(t, &mut s.child(1).rng());
            let eta_jumps = se.sample_jumps(t, &mut s.child(2).rng());
            let mut walk = s.child(3).rng();

            // evolve ξ silently up to the restart time
            let quiet_eta = Leg {
                drift: 0.0,
                sigma2: 0.0,
                jumps: &[],
            };
            let xi_leg = Leg::from_scheme(&sx, &xi_jumps);
            let (_, xi_at_restart) = integrate_window(
                &xi_leg,
                &quiet_eta,
                0.0,
                restart,
                0.0,
                params.grid_step,
                &mut walk,
            );
            // integrate e^(+ξ) dη over (T, t] by walking the negated ξ
            let neg_jumps: Vec<(f64, f64)> =
                xi_jumps.iter().map(|&(tt, sz)| (tt, -sz)).collect();
            let neg_leg = Leg {
                drift: -sx.drift_rate,
                sigma2: sx.gaussian_variance,
                jumps: &neg_jumps,
            };
            let (inner, neg_xi_end) = integrate_window(
                &neg_leg,
                &Leg::from_scheme(&se, &eta_jumps),
                restart,
                t,
                -xi_at_restart,
                params.grid_step,
                &mut walk,
            );
            let xi_end = -neg_xi_end;
            Ok((-xi_end).exp() * (if keep { x } else { 0.0 }) + (-xi_end).exp() * inner)
        })
        .collect()
}

/// One draw of ∫_0^S f(s) dη_s for a deterministic integrand and a stop
/// rule. The drift and Brownian parts integrate f and f² in closed form,
/// so the draw is exact in law whenever η's jumps are fully represented.
pub fn deterministic_integrand_sample(
    f: &Integrand,
    eta: &ProcessSpec,
    stop: StopRule,
    rng: &RngStream,
    params: &SimParams,
) -> Result<f64> {
    let horizon = match stop {
        StopRule::FixedHorizon { t } => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(KefError::Parameter(format!(
                    "stop horizon must be positive and finite, got {t}"
                )));
            }
            t
        }
        StopRule::ExponentialTime { rate } => kill_time_sample(rate, &rng.child(0))?,
        StopRule::IndependentAcTime => {
            return Err(KefError::Unsupported(
                "the stop law is qualitative only; nothing to draw from".into(),
            ));
        }
    };
    // f vanishes beyond its support, so the window can stop early
    let upto = horizon.min(f.support_end());
    let se = SimScheme::new(eta, params)?;
    let mut acc = se.drift_rate * f.integral(upto);
    if upto > 0.0 {
        for &(t, size) in &se.sample_jumps(upto, &mut rng.child(2).rng()) {
            acc += f.value(t) * size;
        }
        if se.gaussian_variance > 0.0 {
            let z: f64 = StandardNormal.sample(&mut rng.child(3).rng());
            acc += (se.gaussian_variance * f.square_integral(upto)).sqrt() * z;
        }
    }
    Ok(acc)
}

/// Two-sample distance between a killed-functional batch and its image
/// under one restarted step, the self-consistency residual of the law.
/// Zero horizon leaves the batch untouched, so the residual is exactly 0.
pub fn fixed_point_residual(
    xi: &ProcessSpec,
    eta: &ProcessSpec,
    q: f64,
    t: f64,
    n: usize,
    rng: &RngStream,
    params: &SimParams,
) -> Result<f64> {
    if t < 0.0 {
        return Err(KefError::Parameter(format!(
            "step horizon must be nonnegative, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let before = sample_batch("fixed-point", n, &rng.child(0), params, |s| {
        killed_functional_sample(xi, eta, q, &s, params)
    })?;
    let after = gou_step(&before.values, xi, eta, q, t, &rng.child(1), params)?;
    Ok(ks_statistic(&before.values, &after))
}

/// A batch of functional draws with enough provenance to reproduce it
/// bit-exactly: scenario id, root seed, scheme parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub scenario_id: String,
    pub seed: u64,
    pub params: SimParams,
    pub values: Vec<f64>,
}

/// Draw `n` samples in parallel, one child stream per index. The output
/// order is the index order, so the batch is identical for any worker
/// count.
pub fn sample_batch<F>(
    scenario_id: &str,
    n: usize,
    root: &RngStream,
    params: &SimParams,
    f: F,
) -> Result<SampleBatch>
where
    F: Fn(RngStream) -> Result<f64> + Sync,
{
    let values = (0..n)
        .into_par_iter()
        .map(|i| f(root.child(i as u64)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SampleBatch {
        scenario_id: scenario_id.to_string(),
        seed: root.seed,
        params: *params,
        values,
    })
}

/// Deterministic integral of e^(−ξ) against a sampled η skeleton over
/// (0, upto]: jumps weighted by the left limit of e^(−ξ), the η drift
/// integrated in closed form over ξ's linear segments, stored Gaussian
/// increments of η weighted by e^(−ξ) frozen at their cell's left node.
/// Exact when neither path carries a Gaussian part; a killed ξ contributes
/// nothing past its kill time.
pub fn integrate_against_path(xi: &PathRealization, eta: &PathRealization, upto: f64) -> f64 {
    let mut acc = 0.0;
    for j in &eta.jumps {
        if j.time <= upto {
            let w = (-xi.value_before(j.time)).exp();
            acc += w * j.size;
        }
    }
    let mut left = 0.0;
    for (node, inc) in eta.gaussian_nodes.iter().zip(&eta.gaussian_increments) {
        if *node <= upto {
            acc += (-xi.value_at(left)).exp() * inc;
        }
        left = *node;
    }
    if eta.drift_rate != 0.0 {
        // breakpoints where ξ stops being linear
        let mut cuts: Vec<f64> = xi
            .jumps
            .iter()
            .map(|j| j.time)
            .chain(xi.gaussian_nodes.iter().copied())
            .chain(xi.kill_time)
            .filter(|&c| c > 0.0 && c < upto)
            .collect();
        cuts.push(upto);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut t = 0.0;
        for c in cuts {
            let start = xi.value_at(t);
            if start.is_finite() {
                acc += eta.drift_rate * exp_integral(start, xi.drift_rate, c - t);
            }
            t = c;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactValue;
    use crate::measure::{Atom, AtomList, LevyMeasureComponent};
    use crate::path::{simulate_path, JumpSource};
    use crate::triplet::LevyTriplet;

    fn bare(t: LevyTriplet) -> ProcessSpec {
        ProcessSpec::new(t).unwrap()
    }

    fn atom(location: f64, mass: f64) -> LevyMeasureComponent {
        LevyMeasureComponent::Atoms(AtomList {
            atoms: vec![Atom {
                x: ExactValue::untagged(location),
                mass,
            }],
        })
    }

    fn poisson_spec(rate: f64) -> ProcessSpec {
        bare(LevyTriplet::compound_poisson(vec![atom(1.0, rate)]).unwrap())
    }

    #[test]
    fn zero_xi_unit_drift_eta_returns_the_kill_time() {
        let xi = bare(LevyTriplet::zero());
        let eta = bare(LevyTriplet::drift(1.0));
        let params = SimParams::default();
        for i in 0..64 {
            let s = RngStream::root(5).child(i);
            let v = killed_functional_sample(&xi, &eta, 1.0, &s, &params).unwrap();
            let tau = kill_time_sample(1.0, &s.child(0)).unwrap();
            assert_eq!(v, tau);
        }
    }

    #[test]
    fn unit_drift_pair_is_one_minus_exp_of_kill_time() {
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::drift(1.0));
        let params = SimParams::default();
        for i in 0..64 {
            let s = RngStream::root(6).child(i);
            let v = killed_functional_sample(&xi, &eta, 1.0, &s, &params).unwrap();
            let tau = kill_time_sample(1.0, &s.child(0)).unwrap();
            assert!((v - (-(-tau).exp_m1())).abs() < 1e-15);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn killed_drift_pair_mean_approaches_one_half() {
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::drift(1.0));
        let params = SimParams::default();
        let n = 20_000;
        let batch = sample_batch("mean", n, &RngStream::root(7), &params, |s| {
            killed_functional_sample(&xi, &eta, 1.0, &s, &params)
        })
        .unwrap();
        let mean: f64 = batch.values.iter().sum::<f64>() / n as f64;
        // Var(1 − e^(−τ)) = 1/12 for a unit-rate τ
        let tol = 3.0 * (1.0f64 / 12.0 / n as f64).sqrt();
        assert!((mean - 0.5).abs() < tol, "mean {mean}");
    }

    #[test]
    fn killed_brownian_integrator_has_unit_variance() {
        let xi = bare(LevyTriplet::zero());
        let eta = bare(LevyTriplet::brownian(1.0, 0.0));
        let params = SimParams::default();
        let n = 20_000;
        let batch = sample_batch("var", n, &RngStream::root(8), &params, |s| {
            killed_functional_sample(&xi, &eta, 1.0, &s, &params)
        })
        .unwrap();
        let mean: f64 = batch.values.iter().sum::<f64>() / n as f64;
        let var: f64 =
            batch.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        // fourth moment of B_τ is 3 E τ² = 6, so Var of the variance
        // estimate is (6 − 1)/n
        assert!(mean.abs() < 3.0 * (1.0f64 / n as f64).sqrt() + 0.02);
        assert!((var - 1.0).abs() < 3.0 * (5.0f64 / n as f64).sqrt(), "var {var}");
    }

    #[test]
    fn fixed_horizon_matches_the_integrator_terminal_value() {
        // with ξ ≡ 0 and a finite-variation η the sample is η_t, pathwise
        let xi = bare(LevyTriplet::zero());
        let eta = bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 0.5,
            components: vec![atom(2.0, 1.0)],
        });
        let params = SimParams::default();
        for i in 0..32 {
            let s = RngStream::root(9).child(i);
            let v = fixed_t_functional_sample(&xi, &eta, 1.5, &s, &params).unwrap();
            let path =
                simulate_path(&eta, 1.5, JumpSource::Eta, &s.child(2), &params).unwrap();
            assert!((v - path.value_at(1.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn tiny_horizon_gives_tiny_samples() {
        let xi = poisson_spec(1.0);
        let eta = bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 1.0,
            components: vec![atom(1.0, 1.0)],
        });
        let params = SimParams::default();
        for i in 0..32 {
            let s = RngStream::root(10).child(i);
            let v = fixed_t_functional_sample(&xi, &eta, 1e-6, &s, &params).unwrap();
            assert!(v.abs() < 1e-3);
        }
    }

    #[test]
    fn killed_equals_path_integration_for_finite_activity() {
        let xi = poisson_spec(2.0);
        let eta = bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 1.0,
            components: vec![atom(-1.0, 3.0)],
        });
        let params = SimParams::default();
        for i in 0..64 {
            let s = RngStream::root(11).child(i);
            let v = killed_functional_sample(&xi, &eta, 0.7, &s, &params).unwrap();
            let tau = kill_time_sample(0.7, &s.child(0)).unwrap();
            let xp = simulate_path(&xi, tau, JumpSource::Xi, &s.child(1), &params).unwrap();
            let ep = simulate_path(&eta, tau, JumpSource::Eta, &s.child(2), &params).unwrap();
            let w = integrate_against_path(&xp, &ep, tau);
            assert!((v - w).abs() < 1e-12, "walk {v} vs path {w}");
        }
    }

    #[test]
    fn killing_the_path_truncates_the_integral() {
        let xi = poisson_spec(1.0);
        let eta = bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 2.0,
            components: vec![atom(1.0, 2.0)],
        });
        let params = SimParams::default();
        for i in 0..64 {
            let s = RngStream::root(12).child(i);
            let horizon = 3.0;
            let tau = 1.1;
            let xp = simulate_path(&xi, horizon, JumpSource::Xi, &s.child(1), &params).unwrap();
            let ep = simulate_path(&eta, horizon, JumpSource::Eta, &s.child(2), &params).unwrap();
            let truncated = integrate_against_path(&xp, &ep, tau);
            let killed = integrate_against_path(&xp.clone().killed_after(tau), &ep, horizon);
            assert!((truncated - killed).abs() < 1e-12);
        }
    }

    #[test]
    fn improper_integral_of_decaying_drift_is_one() {
        let xi = bare(LevyTriplet::drift(1.0))
            .with_flags(vec![AssertedFlag::UnkilledIntegralConverges]);
        let eta = bare(LevyTriplet::drift(1.0));
        let params = SimParams::default();
        let horizon = UnkilledParams::default();
        let (v, bound) =
            unkilled_functional_sample(&xi, &eta, &RngStream::root(13), &params, &horizon)
                .unwrap();
        assert!(bound < horizon.tail_tol);
        assert!((v - 1.0).abs() <= bound + 1e-15, "value {v} bound {bound}");
    }

    #[test]
    fn improper_integral_needs_the_flag() {
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::drift(1.0));
        assert!(matches!(
            unkilled_functional_sample(
                &xi,
                &eta,
                &RngStream::root(1),
                &SimParams::default(),
                &UnkilledParams::default()
            ),
            Err(KefError::Precondition(_))
        ));
    }

    #[test]
    fn improper_integral_with_brownian_integrator_halves_the_variance() {
        let xi = bare(LevyTriplet::drift(1.0))
            .with_flags(vec![AssertedFlag::UnkilledIntegralConverges]);
        let eta = bare(LevyTriplet::brownian(1.0, 0.0));
        let params = SimParams::default();
        let horizon = UnkilledParams::default();
        let n = 20_000;
        let batch = sample_batch("itovar", n, &RngStream::root(14), &params, |s| {
            unkilled_functional_sample(&xi, &eta, &s, &params, &horizon).map(|(v, _)| v)
        })
        .unwrap();
        let var: f64 = batch.values.iter().map(|v| v * v).sum::<f64>() / n as f64;
        // the law is exactly N(0, 1/2): Var of the variance estimate is 2·(1/2)²/n
        assert!((var - 0.5).abs() < 3.0 * (0.5f64 / n as f64).sqrt(), "var {var}");
    }

    #[test]
    fn sinking_xi_exhausts_the_horizon() {
        let xi = bare(LevyTriplet::brownian(1.0, -1.0))
            .with_flags(vec![AssertedFlag::UnkilledIntegralConverges]);
        let eta = bare(LevyTriplet::drift(1.0));
        let horizon = UnkilledParams {
            max_horizon: 64.0,
            ..UnkilledParams::default()
        };
        let r = unkilled_functional_sample(
            &xi,
            &eta,
            &RngStream::root(15),
            &SimParams::default(),
            &horizon,
        );
        assert!(matches!(r, Err(KefError::HorizonExceeded { .. })));
    }

    #[test]
    fn restart_step_decays_deterministic_states() {
        // no clock jumps at rate zero, no integrator: pure e^(−t) decay
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::zero());
        let x0 = vec![3.0, -2.0, 0.0];
        let out = gou_step(
            &x0,
            &xi,
            &eta,
            0.0,
            1.0,
            &RngStream::root(16),
            &SimParams::default(),
        )
        .unwrap();
        let d = (-1.0f64).exp();
        assert!((out[0] - 3.0 * d).abs() < 1e-15);
        assert!((out[1] + 2.0 * d).abs() < 1e-15);
        assert_eq!(out[2], 0.0);
    }

    #[test]
    fn restart_step_reduces_to_the_fixed_horizon_integral() {
        // deterministic pair: e^(−t) ∫_0^t e^s ds = 1 − e^(−t) exactly
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::drift(1.0));
        let out = gou_step(
            &vec![0.0; 8],
            &xi,
            &eta,
            0.0,
            0.7,
            &RngStream::root(17),
            &SimParams::default(),
        )
        .unwrap();
        let expected = -(-0.7f64).exp_m1();
        for v in out {
            assert!((v - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn weighted_integral_of_drift_is_the_area_under_f() {
        let f = Integrand::constant_on(2.0, 0.5, 1.5).unwrap();
        let eta = bare(LevyTriplet::drift(3.0));
        let v = deterministic_integrand_sample(
            &f,
            &eta,
            StopRule::FixedHorizon { t: 10.0 },
            &RngStream::root(40),
            &SimParams::default(),
        )
        .unwrap();
        assert!((v - 6.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_brownian_integral_has_the_squared_weight_variance() {
        let f = Integrand::constant_on(2.0, 0.0, 1.0).unwrap();
        let eta = bare(LevyTriplet::brownian(1.0, 0.0));
        let params = SimParams::default();
        let n = 20_000;
        let batch = sample_batch("w", n, &RngStream::root(41), &params, |s| {
            deterministic_integrand_sample(&f, &eta, StopRule::FixedHorizon { t: 5.0 }, &s, &params)
        })
        .unwrap();
        let var: f64 = batch.values.iter().map(|v| v * v).sum::<f64>() / n as f64;
        assert!((var - 4.0).abs() < 3.0 * (2.0 * 16.0 / n as f64).sqrt(), "var {var}");
    }

    #[test]
    fn qualitative_stop_rule_cannot_be_sampled() {
        let f = Integrand::constant_on(1.0, 0.0, 1.0).unwrap();
        let eta = bare(LevyTriplet::drift(1.0));
        assert!(matches!(
            deterministic_integrand_sample(
                &f,
                &eta,
                StopRule::IndependentAcTime,
                &RngStream::root(1),
                &SimParams::default()
            ),
            Err(KefError::Unsupported(_))
        ));
    }

    #[test]
    fn zero_step_has_zero_residual() {
        let xi = bare(LevyTriplet::drift(1.0));
        let eta = bare(LevyTriplet::drift(1.0));
        let r = fixed_point_residual(
            &xi,
            &eta,
            1.0,
            0.0,
            100,
            &RngStream::root(18),
            &SimParams::default(),
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn batches_replay_bit_exactly() {
        let xi = poisson_spec(1.0);
        let eta = bare(LevyTriplet::brownian(1.0, 0.0));
        let params = SimParams::default();
        let draw = |s: RngStream| killed_functional_sample(&xi, &eta, 1.0, &s, &params);
        let a = sample_batch("replay", 500, &RngStream::root(19), &params, draw).unwrap();
        let b = sample_batch("replay", 500, &RngStream::root(19), &params, draw).unwrap();
        assert_eq!(a, b);
    }
}
