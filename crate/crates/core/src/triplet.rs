//! Characteristic triplets and the structural facts derived from them.
//!
//! A triplet is (σ², ν, γ) with the jump-part compensation cut at |x| ≤ 1.
//! Everything downstream (classifiers, simulators, transforms) consumes the
//! [`StructuralProfile`] computed here rather than re-deriving facts from the
//! raw components, so the decision of *what counts as* finite variation,
//! compound Poisson, or one-sided lives in exactly one place.

use crate::error::{KefError, Result};
use crate::extreal::ExtReal;
use crate::measure::{combined_support, LevyMeasureComponent, MeasureSupport, SmallScale};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevyTriplet {
    /// Gaussian variance σ² ≥ 0.
    pub sigma2: f64,
    /// Drift relative to the unit-ball truncation.
    pub gamma: f64,
    /// Jump measure, as a list of catalog components.
    #[serde(default)]
    pub components: Vec<LevyMeasureComponent>,
}

/// Path-variation class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variation {
    /// σ² = 0 and ∫_{|x|≤1} |x| ν(dx) < ∞.
    Finite,
    Infinite,
}

/// Facts the classifiers branch on; all are decidable on the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralProfile {
    pub sigma2: f64,
    pub gamma: f64,
    /// ν(ℝ), possibly infinite.
    pub total_mass: ExtReal,
    /// Mass of the absolutely continuous part of ν.
    pub ac_mass: ExtReal,
    /// ∫_{|x|≤1} |x| ν(dx), possibly infinite.
    pub unit_abs_moment: ExtReal,
    /// ∫_{|x|≤1} x² ν(dx); finite by definition of a Lévy measure.
    pub unit_second_moment: f64,
    pub variation: Variation,
    /// Natural drift γ⁰ = γ − ∫_{|x|≤1} x ν(dx); present iff finite variation.
    pub natural_drift: Option<f64>,
    /// Zero process: σ² = 0, ν = 0, γ = 0.
    pub is_zero: bool,
    /// Deterministic drift: σ² = 0, ν = 0 (γ may vanish).
    pub is_deterministic: bool,
    /// Compound Poisson: σ² = 0, 0 < ν(ℝ) < ∞, γ⁰ = 0.
    pub is_compound_poisson: bool,
    /// Nondecreasing paths: σ² = 0, finite variation, γ⁰ ≥ 0, no negative jumps.
    pub is_subordinator: bool,
    /// The negated process is a subordinator.
    pub neg_is_subordinator: bool,
    /// ν((−∞, 0)) = 0.
    pub spectrally_positive: bool,
    /// ν((0, ∞)) = 0.
    pub spectrally_negative: bool,
    /// Support of ν.
    pub jump_support: MeasureSupport,
    pub zero_in_supp_nu: bool,
    pub supp_nu_inf: ExtReal,
    pub supp_nu_sup: ExtReal,
    pub mass_pos: ExtReal,
    pub mass_neg: ExtReal,
    /// Small-scale activity classes of the individual components.
    pub small_scales: Vec<SmallScale>,
}

impl LevyTriplet {
    pub fn zero() -> Self {
        LevyTriplet {
            sigma2: 0.0,
            gamma: 0.0,
            components: Vec::new(),
        }
    }

    pub fn drift(gamma: f64) -> Self {
        LevyTriplet {
            sigma2: 0.0,
            gamma,
            components: Vec::new(),
        }
    }

    pub fn brownian(sigma2: f64, gamma: f64) -> Self {
        LevyTriplet {
            sigma2,
            gamma,
            components: Vec::new(),
        }
    }

    /// Compound Poisson process with the given jump components; γ is set so
    /// that the natural drift vanishes. Fails if the components carry
    /// infinite mass.
    pub fn compound_poisson(components: Vec<LevyMeasureComponent>) -> Result<Self> {
        let mut gamma = 0.0;
        for c in &components {
            c.validate()?;
            if !c.total_mass().is_finite() {
                return Err(KefError::Parameter(
                    "compound Poisson requires finite jump mass".into(),
                ));
            }
            gamma += c
                .signed_moment_unit()
                .expect("finite mass implies finite unit moment");
        }
        Ok(LevyTriplet {
            sigma2: 0.0,
            gamma,
            components,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sigma2.is_finite() || self.sigma2 < 0.0 {
            return Err(KefError::Parameter(
                "gaussian variance must be finite and nonnegative".into(),
            ));
        }
        if !self.gamma.is_finite() {
            return Err(KefError::Parameter("drift must be finite".into()));
        }
        for c in &self.components {
            c.validate()?;
        }
        Ok(())
    }

    pub fn total_mass(&self) -> ExtReal {
        crate::extreal::sum_ext(self.components.iter().map(|c| c.total_mass()))
    }

    pub fn unit_abs_moment(&self) -> ExtReal {
        crate::extreal::sum_ext(self.components.iter().map(|c| c.abs_moment(1.0)))
    }

    /// ∫_{0 < x ≤ 1} x ν(dx).
    pub fn unit_abs_moment_positive(&self) -> ExtReal {
        crate::extreal::sum_ext(self.components.iter().map(|c| c.abs_moment_side(1.0, true)))
    }

    /// ∫_{−1 ≤ x < 0} |x| ν(dx).
    pub fn unit_abs_moment_negative(&self) -> ExtReal {
        crate::extreal::sum_ext(self.components.iter().map(|c| c.abs_moment_side(1.0, false)))
    }

    pub fn unit_second_moment(&self) -> f64 {
        self.components.iter().map(|c| c.second_moment(1.0)).sum()
    }

    /// ∫_{|x| ≤ eps} x² ν(dx).
    pub fn second_moment(&self, eps: f64) -> f64 {
        self.components.iter().map(|c| c.second_moment(eps)).sum()
    }

    /// ∫_{lo ≤ |x| ≤ hi} x ν(dx), lo > 0.
    pub fn signed_moment_annulus(&self, lo: f64, hi: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.signed_moment_annulus(lo, hi))
            .sum()
    }

    /// ν({x : lo ≤ x ≤ hi}).
    pub fn mass_on(&self, lo: f64, hi: f64) -> ExtReal {
        crate::extreal::sum_ext(self.components.iter().map(|c| c.mass_on(lo, hi)))
    }

    /// Natural drift γ⁰; None when the small jumps have infinite variation.
    pub fn natural_drift(&self) -> Option<f64> {
        if self.sigma2 > 0.0 {
            return None;
        }
        let mut correction = 0.0;
        for c in &self.components {
            correction += c.signed_moment_unit()?;
        }
        Some(self.gamma - correction)
    }

    pub fn jump_support(&self) -> MeasureSupport {
        combined_support(&self.components)
    }

    pub fn profile(&self) -> StructuralProfile {
        let total_mass = self.total_mass();
        let unit_abs_moment = self.unit_abs_moment();
        let variation = if self.sigma2 == 0.0 && unit_abs_moment.is_finite() {
            Variation::Finite
        } else {
            Variation::Infinite
        };
        let natural_drift = if variation == Variation::Finite {
            self.natural_drift()
        } else {
            None
        };
        let is_deterministic = self.sigma2 == 0.0 && self.components.is_empty();
        let is_zero = is_deterministic && self.gamma == 0.0;
        let is_compound_poisson = self.sigma2 == 0.0
            && total_mass.is_finite()
            && total_mass != ExtReal::Finite(0.0)
            && natural_drift == Some(0.0);
        let mass_pos =
            crate::extreal::sum_ext(self.components.iter().map(|c| c.mass_positive_side()));
        let mass_neg =
            crate::extreal::sum_ext(self.components.iter().map(|c| c.mass_negative_side()));
        let spectrally_positive = mass_neg == ExtReal::Finite(0.0);
        let spectrally_negative = mass_pos == ExtReal::Finite(0.0);
        let is_subordinator = self.sigma2 == 0.0
            && natural_drift.is_some_and(|d| d >= 0.0)
            && spectrally_positive;
        let neg_is_subordinator = self.sigma2 == 0.0
            && natural_drift.is_some_and(|d| d <= 0.0)
            && spectrally_negative;
        let jump_support = self.jump_support();
        let zero_in_supp_nu = jump_support.contains_zero_in_closure();
        let supp_nu_inf = jump_support.inf();
        let supp_nu_sup = jump_support.sup();
        StructuralProfile {
            sigma2: self.sigma2,
            gamma: self.gamma,
            total_mass,
            ac_mass: crate::extreal::sum_ext(self.components.iter().map(|c| c.ac_mass())),
            unit_abs_moment,
            unit_second_moment: self.unit_second_moment(),
            variation,
            natural_drift,
            is_zero,
            is_deterministic,
            is_compound_poisson,
            is_subordinator,
            neg_is_subordinator,
            spectrally_positive,
            spectrally_negative,
            jump_support,
            zero_in_supp_nu,
            supp_nu_inf,
            supp_nu_sup,
            mass_pos,
            mass_neg,
            small_scales: self.components.iter().map(|c| c.small_scale()).collect(),
        }
    }
}

impl StructuralProfile {
    /// No jumps at all.
    pub fn has_no_jumps(&self) -> bool {
        self.total_mass == ExtReal::Finite(0.0)
    }

    pub fn has_positive_jumps(&self) -> bool {
        self.mass_pos != ExtReal::Finite(0.0)
    }

    pub fn has_negative_jumps(&self) -> bool {
        self.mass_neg != ExtReal::Finite(0.0)
    }

    pub fn infinite_activity(&self) -> bool {
        !self.total_mass.is_finite()
    }

    /// σ² = 0 and ν finite: piecewise-linear paths (drift between jumps).
    pub fn is_finite_activity(&self) -> bool {
        self.sigma2 == 0.0 && self.total_mass.is_finite()
    }
}
