//! Path-level Monte Carlo: jump and Gaussian skeletons of a Lévy process
//! over a finite horizon.
//!
//! A sampled path is an exact linear drift, Gaussian increments deposited
//! at grid nodes, and finitely many jumps. Finite-activity components are
//! simulated exactly (Poisson counts, inversion sampling of sizes).
//! Infinite-activity pieces are split at the cutoff δ: jumps of magnitude
//! at least δ are drawn exactly from the restricted measure, and the
//! compensated remainder is either dropped or replaced by an independent
//! Brownian motion with the matched variance ∫_{|x|<δ} x² ν(dx).

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{KefError, Result};
use crate::measure::LevyMeasureComponent;
use crate::process::ProcessSpec;
use crate::rng::RngStream;

/// What to do with the compensated small jumps of an infinite-activity
/// piece below the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallJumpPolicy {
    /// Omit them; sound for the mean, loses their variance.
    Drop,
    /// Replace them by a Brownian motion with the matched variance.
    GaussianMatch,
}

/// Scheme parameters shared by every sampler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    /// Grid step for Gaussian parts.
    pub grid_step: f64,
    /// Small-jump cutoff δ for infinite-activity pieces, in (0, 1].
    pub cutoff: f64,
    pub small_jump_policy: SmallJumpPolicy,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            grid_step: 1e-2,
            cutoff: 1e-3,
            small_jump_policy: SmallJumpPolicy::GaussianMatch,
        }
    }
}

/// Which process a jump belongs to in a merged realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JumpSource {
    Xi,
    Eta,
    /// The restart clock of the generalized Ornstein-Uhlenbeck step.
    Clock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    pub time: f64,
    pub size: f64,
    pub source: JumpSource,
}

/// One sampled path. The value at time t is
/// `drift_rate · t + Σ_{nodes ≤ t} gaussian + Σ_{jumps ≤ t} size`,
/// infinite past the kill time when one is set. Between Gaussian nodes the
/// sampled path carries only the drift; the Gaussian part updates at nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRealization {
    pub horizon: f64,
    /// Slope of the continuous linear part after jump compensation.
    pub drift_rate: f64,
    /// Per-unit-time variance of the simulated Gaussian part (process σ²
    /// plus any small-jump replacement).
    pub gaussian_variance: f64,
    /// Grid step used; zero when the path has no Gaussian part.
    pub grid_step: f64,
    /// Node times, strictly increasing, last equal to the horizon.
    pub gaussian_nodes: Vec<f64>,
    /// Increment deposited at the matching node.
    pub gaussian_increments: Vec<f64>,
    /// Jump events, times strictly increasing.
    pub jumps: Vec<JumpEvent>,
    /// Time after which the path is sent to +∞.
    pub kill_time: Option<f64>,
}

impl PathRealization {
    /// Right-continuous value at `t`.
    pub fn value_at(&self, t: f64) -> f64 {
        self.value(t, false)
    }

    /// Left limit at `t`.
    pub fn value_before(&self, t: f64) -> f64 {
        self.value(t, true)
    }

    fn value(&self, t: f64, strict: bool) -> f64 {
        if self.kill_time.is_some_and(|k| t > k) {
            return f64::INFINITY;
        }
        let mut v = self.drift_rate * t;
        for (node, inc) in self.gaussian_nodes.iter().zip(&self.gaussian_increments) {
            let counted = if strict { *node < t } else { *node <= t };
            if counted {
                v += inc;
            } else {
                break;
            }
        }
        for j in &self.jumps {
            let counted = if strict { j.time < t } else { j.time <= t };
            if counted {
                v += j.size;
            } else {
                break;
            }
        }
        v
    }

    /// Same skeleton with the path sent to +∞ strictly after `tau`.
    pub fn killed_after(mut self, tau: f64) -> PathRealization {
        self.kill_time = Some(tau);
        self
    }
}

/// Generator of one represented-jump family.
#[derive(Debug, Clone, PartialEq)]
enum JumpGenerator {
    /// Poisson arrivals of a fixed size.
    FixedSize { rate: f64, size: f64 },
    /// Poisson arrivals with magnitude density ∝ x^exponent on [lo, hi],
    /// sampled by inversion, then signed.
    PowerSlice {
        rate: f64,
        lo: f64,
        hi: f64,
        exponent: f64,
        sign: f64,
    },
}

impl JumpGenerator {
    fn rate(&self) -> f64 {
        match self {
            JumpGenerator::FixedSize { rate, .. } => *rate,
            JumpGenerator::PowerSlice { rate, .. } => *rate,
        }
    }

    fn draw_size(&self, rng: &mut ChaCha12Rng) -> f64 {
        match self {
            JumpGenerator::FixedSize { size, .. } => *size,
            JumpGenerator::PowerSlice {
                lo,
                hi,
                exponent,
                sign,
                ..
            } => {
                let u: f64 = rng.gen();
                let qp = exponent + 1.0;
                let x = if qp == 0.0 {
                    lo * (hi / lo).powf(u)
                } else {
                    (lo.powf(qp) + u * (hi.powf(qp) - lo.powf(qp))).powf(1.0 / qp)
                };
                sign * x
            }
        }
    }
}

/// Drift, Gaussian load, and represented-jump generators for one process
/// under fixed scheme parameters. Building the scheme is where parameter
/// validation against the process happens; sampling afterwards is
/// infallible.
#[derive(Debug, Clone, PartialEq)]
pub struct SimScheme {
    /// Slope of the continuous linear part: the truncated drift minus the
    /// compensator of the represented jumps inside the unit ball.
    pub drift_rate: f64,
    /// σ² plus the small-jump replacement variance, per unit time.
    pub gaussian_variance: f64,
    /// Variance of the discarded or replaced small-jump part, per unit
    /// time; zero for finite-activity processes.
    pub small_jump_variance: f64,
    grid_step: f64,
    generators: Vec<JumpGenerator>,
}

fn has_infinite_activity(c: &LevyMeasureComponent) -> bool {
    c.total_mass().is_pos_inf()
}

impl SimScheme {
    pub fn new(spec: &ProcessSpec, params: &SimParams) -> Result<SimScheme> {
        spec.validate()?;
        let t = &spec.triplet;
        let infinite_activity = t.components.iter().any(has_infinite_activity);
        if infinite_activity
            && !(params.cutoff > 0.0 && params.cutoff <= 1.0 && params.cutoff.is_finite())
        {
            return Err(KefError::Parameter(format!(
                "small-jump cutoff must lie in (0, 1] for infinite-activity processes, got {}",
                params.cutoff
            )));
        }
        let delta = params.cutoff;

        let mut drift_rate = t.gamma;
        let mut small_var = 0.0;
        let mut generators = Vec::new();
        for c in &t.components {
            match c {
                LevyMeasureComponent::Atoms(list) => {
                    for a in &list.atoms {
                        generators.push(JumpGenerator::FixedSize {
                            rate: a.mass,
                            size: a.x.as_f64(),
                        });
                    }
                    drift_rate -= c
                        .signed_moment_unit()
                        .expect("atom lists have finite unit moment");
                }
                LevyMeasureComponent::Density(p) => {
                    let (a0, b0) = density_abs_range(p);
                    let sign = if p.lo >= 0.0 { 1.0 } else { -1.0 };
                    if c.total_mass().is_finite() {
                        let rate = c.total_mass().finite().expect("finite mass");
                        if rate > 0.0 {
                            generators.push(JumpGenerator::PowerSlice {
                                rate,
                                lo: a0,
                                hi: b0,
                                exponent: p.form.exponent(),
                                sign,
                            });
                        }
                        drift_rate -= c
                            .signed_moment_unit()
                            .expect("finite-mass density has finite unit moment");
                    } else {
                        // infinite mass forces lo = 0; represent [δ, b0]
                        let lo = delta.min(b0);
                        let rate = c
                            .mass_on(
                                if sign > 0.0 { lo } else { -b0 },
                                if sign > 0.0 { b0 } else { -lo },
                            )
                            .finite()
                            .expect("mass away from zero is finite");
                        if rate > 0.0 {
                            generators.push(JumpGenerator::PowerSlice {
                                rate,
                                lo,
                                hi: b0,
                                exponent: p.form.exponent(),
                                sign,
                            });
                        }
                        drift_rate -= c.signed_moment_annulus(lo, 1.0);
                        small_var += c.second_moment(lo);
                    }
                }
                LevyMeasureComponent::Stable(s) => {
                    let lo = delta.min(s.radius);
                    for (weight, sign) in [(s.c_plus, 1.0), (s.c_minus, -1.0)] {
                        if weight > 0.0 && lo < s.radius {
                            let rate = c
                                .mass_on(
                                    if sign > 0.0 { lo } else { -s.radius },
                                    if sign > 0.0 { s.radius } else { -lo },
                                )
                                .finite()
                                .expect("mass away from zero is finite");
                            generators.push(JumpGenerator::PowerSlice {
                                rate,
                                lo,
                                hi: s.radius,
                                exponent: -1.0 - s.alpha,
                                sign,
                            });
                        }
                    }
                    drift_rate -= c.signed_moment_annulus(lo, 1.0);
                    small_var += c.second_moment(lo);
                }
                LevyMeasureComponent::Cascade(casc) => {
                    // split the explicit atoms at the cutoff by hand so an
                    // atom exactly at δ is counted once
                    for (loc, mass) in casc.explicit_atoms() {
                        if loc >= delta {
                            generators.push(JumpGenerator::FixedSize {
                                rate: mass,
                                size: loc,
                            });
                            if loc <= 1.0 {
                                drift_rate -= loc * mass;
                            }
                        } else {
                            small_var += loc * loc * mass;
                        }
                    }
                }
            }
        }

        let matched = match params.small_jump_policy {
            SmallJumpPolicy::Drop => 0.0,
            SmallJumpPolicy::GaussianMatch => small_var,
        };
        let gaussian_variance = t.sigma2 + matched;
        if gaussian_variance > 0.0
            && !(params.grid_step > 0.0 && params.grid_step.is_finite())
        {
            return Err(KefError::Parameter(format!(
                "grid step must be positive for processes with a Gaussian part, got {}",
                params.grid_step
            )));
        }
        Ok(SimScheme {
            drift_rate,
            gaussian_variance,
            small_jump_variance: small_var,
            grid_step: params.grid_step,
            generators,
        })
    }

    pub fn has_gaussian(&self) -> bool {
        self.gaussian_variance > 0.0
    }

    /// Total arrival rate of represented jumps.
    pub fn jump_rate(&self) -> f64 {
        self.generators.iter().map(JumpGenerator::rate).sum()
    }

    /// Jumps on (0, horizon], sorted with strictly increasing times.
    pub fn sample_jumps(&self, horizon: f64, rng: &mut ChaCha12Rng) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for g in &self.generators {
            let mean = g.rate() * horizon;
            if mean <= 0.0 {
                continue;
            }
            let count = Poisson::new(mean).expect("positive mean").sample(rng) as u64;
            for _ in 0..count {
                let time = rng.gen::<f64>() * horizon;
                out.push((time, g.draw_size(rng)));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        // float ties across independent uniforms are vanishingly rare but
        // would break the strict-increase invariant; nudge the later one
        for i in 1..out.len() {
            if out[i].0 <= out[i - 1].0 {
                out[i].0 = out[i - 1].0.next_up();
            }
        }
        out
    }

    /// Gaussian node times and increments over (0, horizon].
    pub fn sample_gaussian(
        &self,
        horizon: f64,
        rng: &mut ChaCha12Rng,
    ) -> (Vec<f64>, Vec<f64>) {
        if !self.has_gaussian() {
            return (Vec::new(), Vec::new());
        }
        let h = self.grid_step;
        let mut nodes = Vec::new();
        let mut incs = Vec::new();
        let mut prev = 0.0;
        while prev < horizon {
            let node = (prev + h).min(horizon);
            let sd = (self.gaussian_variance * (node - prev)).sqrt();
            let z: f64 = StandardNormal.sample(rng);
            nodes.push(node);
            incs.push(sd * z);
            prev = node;
        }
        (nodes, incs)
    }
}

fn density_abs_range(p: &crate::measure::DensityPiece) -> (f64, f64) {
    if p.lo >= 0.0 {
        (p.lo, p.hi)
    } else {
        (-p.hi, -p.lo)
    }
}

/// Sample one path of the process over [0, horizon], jumps tagged with
/// `source`.
pub fn simulate_path(
    spec: &ProcessSpec,
    horizon: f64,
    source: JumpSource,
    rng: &RngStream,
    params: &SimParams,
) -> Result<PathRealization> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(KefError::Parameter(format!(
            "horizon must be positive and finite, got {horizon}"
        )));
    }
    let scheme = SimScheme::new(spec, params)?;
    let mut r = rng.rng();
    let jumps = scheme
        .sample_jumps(horizon, &mut r)
        .into_iter()
        .map(|(time, size)| JumpEvent { time, size, source })
        .collect();
    let (gaussian_nodes, gaussian_increments) = scheme.sample_gaussian(horizon, &mut r);
    Ok(PathRealization {
        horizon,
        drift_rate: scheme.drift_rate,
        gaussian_variance: scheme.gaussian_variance,
        grid_step: if scheme.has_gaussian() {
            params.grid_step
        } else {
            0.0
        },
        gaussian_nodes,
        gaussian_increments,
        jumps,
        kill_time: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactValue;
    use crate::measure::{Atom, AtomList, DensityForm, DensityPiece, StablePiece};
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

    fn stable_spec(alpha: f64) -> ProcessSpec {
        bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 0.0,
            components: vec![LevyMeasureComponent::Stable(StablePiece {
                alpha,
                c_plus: 1.0,
                c_minus: 0.5,
                radius: 1.0,
            })],
        })
    }

    #[test]
    fn zero_process_path_is_flat() {
        let p = simulate_path(
            &bare(LevyTriplet::zero()),
            1.0,
            JumpSource::Xi,
            &RngStream::root(1),
            &SimParams::default(),
        )
        .unwrap();
        assert!(p.jumps.is_empty());
        assert!(p.gaussian_nodes.is_empty());
        assert_eq!(p.value_at(0.7), 0.0);
        assert_eq!(p.value_before(1.0), 0.0);
    }

    #[test]
    fn pure_drift_is_exact() {
        let p = simulate_path(
            &bare(LevyTriplet::drift(1.0)),
            1.0,
            JumpSource::Xi,
            &RngStream::root(1),
            &SimParams::default(),
        )
        .unwrap();
        assert_eq!(p.value_at(0.5), 0.5);
        assert_eq!(p.value_before(0.5), 0.5);
        assert_eq!(p.value_at(1.0), 1.0);
    }

    #[test]
    fn poisson_count_matches_rate() {
        let spec = bare(LevyTriplet::compound_poisson(vec![atom(1.0, 1.0)]).unwrap());
        let root = RngStream::root(42);
        let n = 100_000u64;
        let mut total = 0usize;
        for i in 0..n {
            let p = simulate_path(
                &spec,
                1.0,
                JumpSource::Eta,
                &root.child(i),
                &SimParams::default(),
            )
            .unwrap();
            total += p.jumps.len();
        }
        let mean = total as f64 / n as f64;
        // Poisson(1) count: sd of the batch mean is 1/sqrt(n)
        let tol = 3.0 / (n as f64).sqrt();
        assert!((mean - 1.0).abs() < tol, "mean count {mean}");
    }

    #[test]
    fn compound_poisson_has_no_drift() {
        let spec = bare(LevyTriplet::compound_poisson(vec![atom(0.5, 2.0)]).unwrap());
        let scheme = SimScheme::new(&spec, &SimParams::default()).unwrap();
        assert_eq!(scheme.drift_rate, 0.0);
        assert_eq!(scheme.gaussian_variance, 0.0);
    }

    #[test]
    fn stable_jumps_are_truncated_and_sorted() {
        let params = SimParams::default();
        let scheme = SimScheme::new(&stable_spec(0.7), &params).unwrap();
        let mut rng = RngStream::root(3).rng();
        let jumps = scheme.sample_jumps(2.0, &mut rng);
        assert!(!jumps.is_empty());
        for w in jumps.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        for (_, size) in &jumps {
            assert!(size.abs() >= params.cutoff && size.abs() <= 1.0);
        }
    }

    #[test]
    fn gaussian_match_reproduces_truncated_variance() {
        let params = SimParams::default();
        let scheme = SimScheme::new(&stable_spec(0.7), &params).unwrap();
        let expected = 1.5 * params.cutoff.powf(2.0 - 0.7) / (2.0 - 0.7);
        assert!((scheme.gaussian_variance - expected).abs() < 1e-15);
        assert!(scheme.has_gaussian());
    }

    #[test]
    fn drop_policy_leaves_no_gaussian_part() {
        let params = SimParams {
            small_jump_policy: SmallJumpPolicy::Drop,
            ..SimParams::default()
        };
        let scheme = SimScheme::new(&stable_spec(0.7), &params).unwrap();
        assert_eq!(scheme.gaussian_variance, 0.0);
        assert!(scheme.small_jump_variance > 0.0);
    }

    #[test]
    fn cutoff_is_required_only_for_infinite_activity() {
        let bad = SimParams {
            cutoff: 0.0,
            ..SimParams::default()
        };
        assert!(matches!(
            SimScheme::new(&stable_spec(0.7), &bad),
            Err(KefError::Parameter(_))
        ));
        // a finite-activity spec never looks at the cutoff
        let spec = bare(LevyTriplet::compound_poisson(vec![atom(1.0, 1.0)]).unwrap());
        assert!(SimScheme::new(&spec, &bad).is_ok());
    }

    #[test]
    fn grid_step_is_required_for_gaussian_parts() {
        let bad = SimParams {
            grid_step: 0.0,
            ..SimParams::default()
        };
        assert!(matches!(
            SimScheme::new(&bare(LevyTriplet::brownian(1.0, 0.0)), &bad),
            Err(KefError::Parameter(_))
        ));
        assert!(SimScheme::new(&bare(LevyTriplet::drift(1.0)), &bad).is_ok());
    }

    #[test]
    fn gaussian_nodes_tile_the_horizon() {
        let p = simulate_path(
            &bare(LevyTriplet::brownian(4.0, 0.0)),
            1.0,
            JumpSource::Xi,
            &RngStream::root(5),
            &SimParams {
                grid_step: 0.25,
                ..SimParams::default()
            },
        )
        .unwrap();
        assert_eq!(p.gaussian_nodes, vec![0.25, 0.5, 0.75, 1.0]);
        let total: f64 = p.gaussian_increments.iter().sum();
        assert_eq!(p.value_at(1.0), total);
        // between nodes only the drift moves, and the drift is zero here
        assert_eq!(p.value_at(0.1), 0.0);
        assert_eq!(p.value_at(0.25), p.gaussian_increments[0]);
        assert_eq!(p.value_before(0.25), 0.0);
    }

    #[test]
    fn brownian_terminal_variance_is_correct() {
        let root = RngStream::root(11);
        let n = 20_000u64;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for i in 0..n {
            let p = simulate_path(
                &bare(LevyTriplet::brownian(4.0, 0.0)),
                1.0,
                JumpSource::Xi,
                &root.child(i),
                &SimParams::default(),
            )
            .unwrap();
            let v = p.value_at(1.0);
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 3.0 * (4.0f64 / n as f64).sqrt());
        // sd of the sample variance of N(0, 4) is 4·sqrt(2/n)
        assert!((var - 4.0).abs() < 3.0 * 4.0 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn density_sizes_respect_the_piece() {
        let spec = bare(
            LevyTriplet::compound_poisson(vec![LevyMeasureComponent::Density(DensityPiece {
                lo: -2.0,
                hi: -1.0,
                form: DensityForm::Constant { level: 3.0 },
            })])
            .unwrap(),
        );
        let scheme = SimScheme::new(&spec, &SimParams::default()).unwrap();
        assert!((scheme.jump_rate() - 3.0).abs() < 1e-12);
        let mut rng = RngStream::root(8).rng();
        let jumps = scheme.sample_jumps(5.0, &mut rng);
        assert!(!jumps.is_empty());
        for (_, size) in &jumps {
            assert!((-2.0..=-1.0).contains(size));
        }
    }

    #[test]
    fn uniform_density_sizes_have_the_right_mean() {
        let spec = bare(
            LevyTriplet::compound_poisson(vec![LevyMeasureComponent::Density(DensityPiece {
                lo: 0.0,
                hi: 1.0,
                form: DensityForm::Constant { level: 1.0 },
            })])
            .unwrap(),
        );
        let scheme = SimScheme::new(&spec, &SimParams::default()).unwrap();
        let mut rng = RngStream::root(21).rng();
        let jumps = scheme.sample_jumps(20_000.0, &mut rng);
        let n = jumps.len() as f64;
        let mean: f64 = jumps.iter().map(|(_, s)| s).sum::<f64>() / n;
        // U(0,1) sizes: sd of the mean is 1/sqrt(12 n)
        assert!((mean - 0.5).abs() < 3.0 / (12.0 * n).sqrt(), "mean {mean}");
    }

    #[test]
    fn replayed_stream_reproduces_the_path() {
        let spec = stable_spec(1.2);
        let s = RngStream::root(9).child(4);
        let a = simulate_path(&spec, 1.0, JumpSource::Xi, &s, &SimParams::default()).unwrap();
        let b = simulate_path(&spec, 1.0, JumpSource::Xi, &s, &SimParams::default()).unwrap();
        assert_eq!(a, b);
        let c = simulate_path(
            &spec,
            1.0,
            JumpSource::Xi,
            &RngStream::root(9).child(5),
            &SimParams::default(),
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn killed_path_is_infinite_past_tau() {
        let p = simulate_path(
            &bare(LevyTriplet::drift(1.0)),
            2.0,
            JumpSource::Xi,
            &RngStream::root(1),
            &SimParams::default(),
        )
        .unwrap()
        .killed_after(1.5);
        assert_eq!(p.value_at(1.0), 1.0);
        assert_eq!(p.value_at(1.5), 1.5);
        assert_eq!(p.value_at(1.6), f64::INFINITY);
    }

    #[test]
    fn rejects_bad_horizon() {
        assert!(matches!(
            simulate_path(
                &bare(LevyTriplet::zero()),
                0.0,
                JumpSource::Xi,
                &RngStream::root(1),
                &SimParams::default()
            ),
            Err(KefError::Parameter(_))
        ));
    }

    #[test]
    fn infinite_mass_density_splits_at_cutoff() {
        // density x^(-1.5) on (0, 1]: infinite mass, finite variation
        let spec = bare(LevyTriplet {
            sigma2: 0.0,
            gamma: 0.0,
            components: vec![LevyMeasureComponent::Density(DensityPiece {
                lo: 0.0,
                hi: 1.0,
                form: DensityForm::Power {
                    coeff: 1.0,
                    exponent: -1.5,
                },
            })],
        });
        let params = SimParams::default();
        let scheme = SimScheme::new(&spec, &params).unwrap();
        // represented rate = ∫_δ^1 x^(-1.5) dx = 2(δ^(-1/2) − 1)
        let expected_rate = 2.0 * (params.cutoff.powf(-0.5) - 1.0);
        assert!((scheme.jump_rate() - expected_rate).abs() < 1e-9);
        // matched variance = ∫_0^δ x^(0.5) dx = (2/3) δ^(3/2)
        let expected_var = 2.0 / 3.0 * params.cutoff.powf(1.5);
        assert!((scheme.gaussian_variance - expected_var).abs() < 1e-15);
        let mut rng = RngStream::root(13).rng();
        for (_, size) in scheme.sample_jumps(1.0, &mut rng) {
            assert!(size >= params.cutoff && size <= 1.0);
        }
    }
}
