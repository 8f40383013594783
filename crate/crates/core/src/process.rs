//! Process descriptions and their sampling decompositions.
//!
//! A [`ProcessSpec`] is a validated triplet plus analyst-asserted side facts
//! that are not decidable from the catalog itself (potential-measure
//! properties and integral convergence at infinity). The simulation layer
//! never touches the triplet directly; it asks for a [`SimDecomposition`] at
//! a jump-size cutoff δ, or for the exact finite-activity form when one
//! exists.

use crate::error::{KefError, Result};
use crate::measure::{power_integral, LevyMeasureComponent};
use crate::triplet::LevyTriplet;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Facts asserted by the scenario author rather than derived from the
/// triplet. The continuity classifiers consume the first three; the
/// unkilled classifier requires the last one as a precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertedFlag {
    /// One-dimensional potential measures of the process are absolutely
    /// continuous.
    AcpHolds,
    /// Some one-dimensional potential measure has a nontrivial singular part.
    AcpFails,
    /// The zero-resolvent potential measure is singular.
    PotentialMeasureSingular,
    /// The improper integral defining the unkilled functional converges
    /// almost surely.
    UnkilledIntegralConverges,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    #[serde(flatten)]
    pub triplet: LevyTriplet,
    #[serde(default)]
    pub flags: Vec<AssertedFlag>,
}

impl ProcessSpec {
    pub fn new(triplet: LevyTriplet) -> Result<Self> {
        triplet.validate()?;
        Ok(ProcessSpec {
            triplet,
            flags: Vec::new(),
        })
    }

    pub fn with_flags(mut self, flags: Vec<AssertedFlag>) -> Self {
        self.flags = flags;
        self
    }

    pub fn has_flag(&self, flag: AssertedFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn validate(&self) -> Result<()> {
        self.triplet.validate()?;
        if self.has_flag(AssertedFlag::AcpHolds) && self.has_flag(AssertedFlag::AcpFails) {
            return Err(KefError::Parameter(
                "contradictory potential-measure assertions".into(),
            ));
        }
        Ok(())
    }
}

/// Distribution of a single jump drawn from one finite-rate part.
#[derive(Debug, Clone)]
pub enum JumpDist {
    /// Finite discrete law; `(value, cumulative weight)` with the last
    /// cumulative weight equal to the total rate of the part.
    Discrete(Vec<(f64, f64)>),
    /// |x| has density ∝ u^exponent on [a, b]; sign fixed per part.
    PowerInterval {
        sign: f64,
        a: f64,
        b: f64,
        exponent: f64,
    },
}

impl JumpDist {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            JumpDist::Discrete(entries) => {
                let total = entries.last().expect("nonempty discrete law").1;
                let u = rng.gen::<f64>() * total;
                for &(x, cum) in entries {
                    if u <= cum {
                        return x;
                    }
                }
                entries.last().unwrap().0
            }
            JumpDist::PowerInterval { sign, a, b, exponent } => {
                let u: f64 = rng.gen();
                let p1 = exponent + 1.0;
                let v = if *exponent == -1.0 {
                    a * (b / a).powf(u)
                } else {
                    (a.powf(p1) + u * (b.powf(p1) - a.powf(p1))).powf(1.0 / p1)
                };
                sign * v
            }
        }
    }
}

/// One independent Poissonian jump stream.
#[derive(Debug, Clone)]
pub struct JumpPart {
    pub rate: f64,
    pub dist: JumpDist,
}

/// Arithmetic decomposition used by the path scheme at cutoff δ:
/// drift + Brownian(σ²_eff) + Σ independent compound Poisson parts.
#[derive(Debug, Clone)]
pub struct SimDecomposition {
    /// Drift per unit time after removing the compensation of the jumps that
    /// are now sampled explicitly.
    pub drift: f64,
    /// Gaussian variance per unit time, including a small-jump match if
    /// requested.
    pub sigma2_eff: f64,
    /// Variance per unit time that the cutoff discarded (zero under matching).
    pub dropped_variance: f64,
    pub parts: Vec<JumpPart>,
}

impl SimDecomposition {
    pub fn total_jump_rate(&self) -> f64 {
        self.parts.iter().map(|p| p.rate).sum()
    }

    pub fn is_deterministic_between_jumps(&self) -> bool {
        self.sigma2_eff == 0.0
    }
}

/// How jumps of size ≤ δ enter the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallJumpPolicy {
    /// Replace them by a Brownian term with the matching variance.
    GaussianMatch,
    /// Discard them (their compensated mean is zero, so the drift is exact).
    Drop,
}

fn discrete_part(entries: Vec<(f64, f64)>) -> Option<JumpPart> {
    let mut cum = 0.0;
    let mut acc = Vec::with_capacity(entries.len());
    for (x, w) in entries {
        if w > 0.0 {
            cum += w;
            acc.push((x, cum));
        }
    }
    if acc.is_empty() {
        None
    } else {
        Some(JumpPart {
            rate: cum,
            dist: JumpDist::Discrete(acc),
        })
    }
}

fn power_part(sign: f64, a: f64, b: f64, exponent: f64, coeff: f64) -> Option<JumpPart> {
    if b <= a || coeff <= 0.0 {
        return None;
    }
    let rate = power_integral(a, b, exponent)
        .scale(coeff)
        .finite()
        .expect("rate finite away from zero");
    if rate <= 0.0 {
        return None;
    }
    Some(JumpPart {
        rate,
        dist: JumpDist::PowerInterval { sign, a, b, exponent },
    })
}

/// Jump parts for the restriction of one component to |x| > delta.
/// With delta = 0 the component must have finite total mass.
fn component_parts(comp: &LevyMeasureComponent, delta: f64) -> Vec<JumpPart> {
    match comp {
        LevyMeasureComponent::Atoms(list) => discrete_part(
            list.atoms
                .iter()
                .filter(|a| a.x.as_f64().abs() > delta)
                .map(|a| (a.x.as_f64(), a.mass))
                .collect(),
        )
        .into_iter()
        .collect(),
        LevyMeasureComponent::Cascade(c) => discrete_part(
            c.explicit_atoms()
                .into_iter()
                .filter(|&(l, _)| l > delta)
                .collect(),
        )
        .into_iter()
        .collect(),
        LevyMeasureComponent::Density(p) => {
            let (a0, b0) = p.abs_range();
            power_part(
                p.sign() as f64,
                a0.max(delta),
                b0,
                p.form.exponent(),
                p.form.coeff(),
            )
            .into_iter()
            .collect()
        }
        LevyMeasureComponent::Stable(s) => {
            let mut parts = Vec::new();
            if let Some(part) = power_part(1.0, delta, s.radius, -1.0 - s.alpha, s.c_plus) {
                parts.push(part);
            }
            if let Some(part) = power_part(-1.0, delta, s.radius, -1.0 - s.alpha, s.c_minus) {
                parts.push(part);
            }
            parts
        }
    }
}

impl ProcessSpec {
    /// Decomposition at cutoff 0 < delta ≤ 1.
    pub fn decomposition(&self, delta: f64, policy: SmallJumpPolicy) -> Result<SimDecomposition> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(KefError::Parameter(
                "jump cutoff must lie in (0, 1]".into(),
            ));
        }
        let t = &self.triplet;
        let drift = t.gamma - t.signed_moment_annulus(delta, 1.0);
        let small_var = t.second_moment(delta);
        let (sigma2_eff, dropped) = match policy {
            SmallJumpPolicy::GaussianMatch => (t.sigma2 + small_var, 0.0),
            SmallJumpPolicy::Drop => (t.sigma2, small_var),
        };
        let mut parts = Vec::new();
        for c in &t.components {
            parts.extend(component_parts(c, delta));
        }
        Ok(SimDecomposition {
            drift,
            sigma2_eff,
            dropped_variance: dropped,
            parts,
        })
    }

    /// Exact decomposition: available when σ² = 0 and ν(ℝ) < ∞, in which
    /// case paths are piecewise linear with slope γ⁰ and the jump law is
    /// sampled without any cutoff.
    pub fn exact_decomposition(&self) -> Option<SimDecomposition> {
        let t = &self.triplet;
        if t.sigma2 != 0.0 || !t.total_mass().is_finite() {
            return None;
        }
        let drift = t.natural_drift()?;
        let mut parts = Vec::new();
        for c in &t.components {
            parts.extend(component_parts(c, 0.0));
        }
        Some(SimDecomposition {
            drift,
            sigma2_eff: 0.0,
            dropped_variance: 0.0,
            parts,
        })
    }
}
