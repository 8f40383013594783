//! Deterministic integrands for time integrals against a Lévy process.
//!
//! An integrand is piecewise constant or exponential on finitely many
//! disjoint intervals of [0, ∞) and zero elsewhere. That family is closed
//! under the measure-image calculus in [`crate::transform`] and rich enough
//! to exercise every branch of the deterministic-integrand classifier: the
//! regularity of ∫ f dη depends only on σ_η²∫f², the time mass of {f ≠ 0},
//! and whether the nonzero part of f crushes sets of positive measure onto
//! single values (constant pieces do, exponential pieces with nonzero rate
//! do not).

use crate::error::{KefError, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntegrandForm {
    Constant { level: f64 },
    /// coeff · e^(rate · s)
    Exponential { coeff: f64, rate: f64 },
}

impl IntegrandForm {
    fn value(&self, s: f64) -> f64 {
        match self {
            IntegrandForm::Constant { level } => *level,
            IntegrandForm::Exponential { coeff, rate } => coeff * (rate * s).exp(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            IntegrandForm::Constant { level } => *level == 0.0,
            IntegrandForm::Exponential { coeff, .. } => *coeff == 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrandPiece {
    pub start: f64,
    pub end: f64,
    pub form: IntegrandForm,
}

/// Piecewise integrand; zero outside its pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<IntegrandPiece>", into = "Vec<IntegrandPiece>")]
pub struct Integrand {
    pieces: Vec<IntegrandPiece>,
}

impl TryFrom<Vec<IntegrandPiece>> for Integrand {
    type Error = KefError;
    fn try_from(pieces: Vec<IntegrandPiece>) -> Result<Self> {
        Integrand::new(pieces)
    }
}

impl From<Integrand> for Vec<IntegrandPiece> {
    fn from(f: Integrand) -> Self {
        f.pieces
    }
}

impl Integrand {
    /// Builds an integrand from pieces. Pieces may come in any order and
    /// must not overlap; only the final piece may have `end = ∞`.
    pub fn new(mut pieces: Vec<IntegrandPiece>) -> Result<Self> {
        pieces.retain(|p| !p.form.is_zero());
        pieces.sort_by(|a, b| a.start.total_cmp(&b.start));
        let n = pieces.len();
        for (i, p) in pieces.iter().enumerate() {
            if !(p.start >= 0.0 && p.start.is_finite() && p.end > p.start) {
                return Err(KefError::Parameter(
                    "integrand piece needs 0 <= start < end".into(),
                ));
            }
            if p.end == f64::INFINITY && i + 1 != n {
                return Err(KefError::Parameter(
                    "only the final integrand piece may extend to infinity".into(),
                ));
            }
            if let IntegrandForm::Exponential { coeff, rate } = p.form {
                if !coeff.is_finite() || !rate.is_finite() {
                    return Err(KefError::Parameter(
                        "integrand coefficients must be finite".into(),
                    ));
                }
            }
            if let IntegrandForm::Constant { level } = p.form {
                if !level.is_finite() {
                    return Err(KefError::Parameter(
                        "integrand level must be finite".into(),
                    ));
                }
            }
        }
        for w in pieces.windows(2) {
            if w[1].start < w[0].end {
                return Err(KefError::Parameter(
                    "integrand pieces must not overlap".into(),
                ));
            }
        }
        Ok(Integrand { pieces })
    }

    pub fn constant_on(level: f64, start: f64, end: f64) -> Result<Self> {
        Integrand::new(vec![IntegrandPiece {
            start,
            end,
            form: IntegrandForm::Constant { level },
        }])
    }

    pub fn zero() -> Self {
        Integrand { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[IntegrandPiece] {
        &self.pieces
    }

    pub fn is_identically_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn value(&self, s: f64) -> f64 {
        for p in &self.pieces {
            if s >= p.start && s < p.end {
                return p.form.value(s);
            }
        }
        0.0
    }

    /// End of the last piece (0 for the zero integrand).
    pub fn support_end(&self) -> f64 {
        self.pieces.last().map(|p| p.end).unwrap_or(0.0)
    }

    /// Start of the first piece; the integrand vanishes on [0, this).
    pub fn first_active_time(&self) -> f64 {
        self.pieces.first().map(|p| p.start).unwrap_or(0.0)
    }

    /// Lebesgue measure of {s ≤ t : f(s) ≠ 0}.
    pub fn active_measure(&self, t: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| (p.end.min(t) - p.start.min(t)).max(0.0))
            .sum()
    }

    /// ∫₀^t f(s) ds, closed form.
    pub fn integral(&self, t: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let (a, b) = (p.start.min(t), p.end.min(t));
                if b <= a {
                    return 0.0;
                }
                match p.form {
                    IntegrandForm::Constant { level } => level * (b - a),
                    IntegrandForm::Exponential { coeff, rate } => {
                        if rate == 0.0 {
                            coeff * (b - a)
                        } else {
                            coeff * ((rate * b).exp() - (rate * a).exp()) / rate
                        }
                    }
                }
            })
            .sum()
    }

    /// ∫₀^t f(s)² ds, closed form.
    pub fn square_integral(&self, t: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let (a, b) = (p.start.min(t), p.end.min(t));
                if b <= a {
                    return 0.0;
                }
                match p.form {
                    IntegrandForm::Constant { level } => level * level * (b - a),
                    IntegrandForm::Exponential { coeff, rate } => {
                        if rate == 0.0 {
                            coeff * coeff * (b - a)
                        } else {
                            coeff * coeff * ((2.0 * rate * b).exp() - (2.0 * rate * a).exp())
                                / (2.0 * rate)
                        }
                    }
                }
            })
            .sum()
    }

    /// True when the restriction of f to {f ≠ 0} pulls Lebesgue-null sets
    /// back to null sets. Exponential pieces with nonzero rate are strictly
    /// monotone, so they qualify; a constant nonzero piece maps an interval
    /// onto one point and does not.
    pub fn null_preimage_property(&self) -> bool {
        self.pieces.iter().all(|p| {
            matches!(p.form, IntegrandForm::Exponential { rate, .. } if rate != 0.0)
        })
    }

    /// Piece boundaries within [0, t], for use as quadrature or scheme
    /// breakpoints. Always contains 0 and t; requires a finite horizon.
    pub fn breakpoints(&self, t: f64) -> Vec<f64> {
        debug_assert!(t.is_finite());
        let mut pts = vec![0.0];
        for p in &self.pieces {
            if p.start < t {
                pts.push(p.start);
            }
            if p.end < t {
                pts.push(p.end);
            }
        }
        pts.push(t);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

/// When the integral ∫ f dη is stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StopRule {
    /// Run to a deterministic horizon.
    FixedHorizon { t: f64 },
    /// Stop at an independent exponential time with the given rate.
    ExponentialTime { rate: f64 },
    /// Stop at an independent time with an absolutely continuous law on
    /// (0, ∞); the classifier only uses that qualitative fact.
    IndependentAcTime,
}
