//! Jump-measure catalog.
//!
//! A Lévy measure is described as a finite list of components from a closed
//! catalog. Keeping the catalog closed is what makes every structural
//! predicate used by the classifiers (finite variation, total mass, support
//! geometry, small-scale activity) decidable in closed form:
//!
//! * [`AtomList`] — finitely many weighted atoms at nonzero locations;
//! * [`DensityPiece`] — a constant or power density `c·|x|^p` on an interval
//!   not straddling zero (zero may sit on the boundary);
//! * [`StablePiece`] — a two-sided stable-like density `c±·|x|^(−1−α)` cut
//!   off at radius `r`;
//! * [`AtomCascade`] — the countable atom family at locations `2^(−c^n)` with
//!   masses `2^(α·c^n)`, an infinite-mass purely atomic measure whose every
//!   truncated moment is still computable. This is the one family that the
//!   three parametric components above cannot express: infinite total mass
//!   with no absolutely continuous part.

use crate::exact::ExactValue;
use crate::error::{KefError, Result};
use crate::extreal::ExtReal;
use serde::{Deserialize, Serialize};

/// ∫_l^h u^q du for 0 ≤ l ≤ h, with the divergence at l = 0 made explicit.
pub(crate) fn power_integral(l: f64, h: f64, q: f64) -> ExtReal {
    debug_assert!(l >= 0.0 && h >= l);
    if h <= l {
        return ExtReal::Finite(0.0);
    }
    if q == -1.0 {
        if l == 0.0 {
            return ExtReal::PosInf;
        }
        return ExtReal::Finite((h / l).ln());
    }
    let qp = q + 1.0;
    if l == 0.0 {
        if qp <= 0.0 {
            return ExtReal::PosInf;
        }
        return ExtReal::Finite(h.powf(qp) / qp);
    }
    ExtReal::Finite((h.powf(qp) - l.powf(qp)) / qp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityForm {
    /// Density equal to `level` on the whole interval.
    Constant { level: f64 },
    /// Density `coeff · |x|^exponent`.
    Power { coeff: f64, exponent: f64 },
}

impl DensityForm {
    pub(crate) fn coeff(&self) -> f64 {
        match self {
            DensityForm::Constant { level } => *level,
            DensityForm::Power { coeff, .. } => *coeff,
        }
    }

    pub(crate) fn exponent(&self) -> f64 {
        match self {
            DensityForm::Constant { .. } => 0.0,
            DensityForm::Power { exponent, .. } => *exponent,
        }
    }
}

/// Weighted atoms at nonzero locations; the list is finite by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomList {
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: ExactValue,
    pub mass: f64,
}

/// Absolutely continuous piece on `[lo, hi]` with `0 ∉ (lo, hi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityPiece {
    pub lo: f64,
    pub hi: f64,
    pub form: DensityForm,
}

/// Density `c₊ x^(−1−α)` on `(0, r)` plus `c₋ |x|^(−1−α)` on `(−r, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StablePiece {
    pub alpha: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub radius: f64,
}

/// Atoms at `a_n = 2^(−base^n)` with masses `a_n^(−α)`, n = 1, 2, ….
///
/// Requires `base > 1/(1−α)`, which makes the total mass infinite while all
/// truncated moments of order ≥ 1 stay finite, and pushes the small-scale
/// activity ratio to liminf zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomCascade {
    pub alpha: f64,
    pub base: u32,
}

/// Largest exponent `base^n` kept explicit; locations below `2^(−1000)` are
/// dropped from enumerations (their total mass-weighted moments are below
/// any representable tolerance for moments of order ≥ 1).
const CASCADE_EXP_CAP: f64 = 1000.0;

impl AtomCascade {
    pub fn level_count(&self) -> u32 {
        let mut n = 0u32;
        let mut e = 1.0f64;
        loop {
            e *= self.base as f64;
            if e > CASCADE_EXP_CAP {
                return n;
            }
            n += 1;
        }
    }

    /// Explicit atoms `(location, mass)` down to the representability cap.
    pub fn explicit_atoms(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut e = 1.0f64;
        for _ in 0..self.level_count() {
            e *= self.base as f64;
            out.push(((-e).exp2(), (self.alpha * e).exp2()));
        }
        out
    }

    /// Σ over atoms with location ≤ eps of location^(order−α); finite for
    /// order ≥ 1.
    fn tail_moment(&self, eps: f64, order: f64) -> f64 {
        debug_assert!(order >= 1.0);
        let mut sum = 0.0;
        let mut e = 1.0f64;
        for _ in 0..self.level_count() {
            e *= self.base as f64;
            let loc = (-e).exp2();
            if loc <= eps {
                sum += ((self.alpha - order) * e).exp2();
            }
        }
        sum
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevyMeasureComponent {
    Atoms(AtomList),
    Density(DensityPiece),
    Stable(StablePiece),
    Cascade(AtomCascade),
}

/// Small-scale behaviour of the truncated second moment S(ε) = ∫_{|x|≤ε} x² ν(dx).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmallScale {
    /// S vanishes for small ε (mass bounded away from zero).
    Vanishes,
    /// S(ε) ~ C ε^kappa with the given exponent.
    Power { kappa: f64 },
    /// S oscillates between scales: the activity ratio ε^(−2)|ln ε|^(−1) S(ε)
    /// has liminf 0 and limsup ∞.
    Oscillating,
}

/// Closure of the set where the measure puts mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSupport {
    pub atoms: Vec<ExactValue>,
    pub intervals: Vec<(f64, f64)>,
    pub accumulates_at_zero: bool,
}

impl MeasureSupport {
    pub fn empty() -> Self {
        MeasureSupport {
            atoms: Vec::new(),
            intervals: Vec::new(),
            accumulates_at_zero: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.intervals.is_empty() && !self.accumulates_at_zero
    }

    pub fn contains_zero_in_closure(&self) -> bool {
        self.accumulates_at_zero
            || self
                .intervals
                .iter()
                .any(|&(a, b)| a <= 0.0 && b >= 0.0)
    }

    pub fn inf(&self) -> ExtReal {
        let mut best = f64::INFINITY;
        for a in &self.atoms {
            best = best.min(a.as_f64());
        }
        for &(a, _) in &self.intervals {
            best = best.min(a);
        }
        if self.accumulates_at_zero {
            best = best.min(0.0);
        }
        if best == f64::INFINITY {
            ExtReal::PosInf
        } else {
            ExtReal::Finite(best)
        }
    }

    pub fn sup(&self) -> ExtReal {
        let mut best = f64::NEG_INFINITY;
        for a in &self.atoms {
            best = best.max(a.as_f64());
        }
        for &(_, b) in &self.intervals {
            best = best.max(b);
        }
        if self.accumulates_at_zero {
            best = best.max(0.0);
        }
        if best == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(best)
        }
    }

    /// Smallest strictly positive support point (ExtReal::PosInf if none).
    pub fn min_positive(&self) -> ExtReal {
        let mut best = f64::INFINITY;
        for a in &self.atoms {
            let v = a.as_f64();
            if v > 0.0 {
                best = best.min(v);
            }
        }
        for &(a, b) in &self.intervals {
            if b > 0.0 {
                best = best.min(a.max(0.0).max(f64::MIN_POSITIVE));
                if a > 0.0 {
                    best = best.min(a);
                }
            }
        }
        if self.accumulates_at_zero {
            // positive points arbitrarily close to zero
            best = 0.0;
        }
        if best == f64::INFINITY {
            ExtReal::PosInf
        } else {
            ExtReal::Finite(best)
        }
    }

    /// Largest strictly negative support point (ExtReal::NegInf if none).
    pub fn max_negative(&self) -> ExtReal {
        let mut best = f64::NEG_INFINITY;
        for a in &self.atoms {
            let v = a.as_f64();
            if v < 0.0 {
                best = best.max(v);
            }
        }
        for &(a, b) in &self.intervals {
            if a < 0.0 {
                best = best.max(b.min(0.0).min(-f64::MIN_POSITIVE));
                if b < 0.0 {
                    best = best.max(b);
                }
            }
        }
        if best == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(best)
        }
    }

    /// A nondegenerate closed interval of support contained in (0, ∞).
    pub fn interval_in_positives(&self) -> Option<(f64, f64)> {
        self.intervals
            .iter()
            .filter(|&&(a, b)| a > 0.0 && b > a)
            .map(|&(a, b)| (a, b))
            .next()
    }

    /// A nondegenerate closed interval of support contained in (−∞, 0).
    pub fn interval_in_negatives(&self) -> Option<(f64, f64)> {
        self.intervals
            .iter()
            .filter(|&&(a, b)| b < 0.0 && b > a)
            .map(|&(a, b)| (a, b))
            .next()
    }

    fn merge(&mut self, other: MeasureSupport) {
        self.atoms.extend(other.atoms);
        self.intervals.extend(other.intervals);
        self.accumulates_at_zero |= other.accumulates_at_zero;
    }
}

impl LevyMeasureComponent {
    pub fn validate(&self) -> Result<()> {
        match self {
            LevyMeasureComponent::Atoms(list) => {
                for a in &list.atoms {
                    if a.x.is_zero() || !a.x.as_f64().is_finite() {
                        return Err(KefError::Parameter(
                            "atom location must be finite and nonzero".into(),
                        ));
                    }
                    if a.mass <= 0.0 || !a.mass.is_finite() {
                        return Err(KefError::Parameter("atom mass must be positive".into()));
                    }
                }
                let mut locs: Vec<f64> = list.atoms.iter().map(|a| a.x.as_f64()).collect();
                locs.sort_by(f64::total_cmp);
                if locs.windows(2).any(|w| w[0] == w[1]) {
                    return Err(KefError::Parameter(
                        "atom locations must be distinct".into(),
                    ));
                }
                Ok(())
            }
            LevyMeasureComponent::Density(p) => {
                if p.lo >= p.hi || !p.lo.is_finite() || !p.hi.is_finite() {
                    return Err(KefError::Parameter(
                        "density piece needs finite lo < hi".into(),
                    ));
                }
                if p.lo < 0.0 && p.hi > 0.0 {
                    return Err(KefError::Parameter(
                        "density piece must not straddle zero".into(),
                    ));
                }
                if !p.form.coeff().is_finite() || p.form.coeff() <= 0.0 {
                    return Err(KefError::Parameter(
                        "density coefficient must be positive".into(),
                    ));
                }
                let touches_zero = p.lo == 0.0 || p.hi == 0.0;
                if touches_zero && p.form.exponent() <= -3.0 {
                    return Err(KefError::Parameter(
                        "density exponent must exceed -3 when the piece touches zero"
                            .into(),
                    ));
                }
                Ok(())
            }
            LevyMeasureComponent::Stable(s) => {
                if !(s.alpha > 0.0 && s.alpha < 2.0) {
                    return Err(KefError::Parameter("stable index must lie in (0,2)".into()));
                }
                if s.c_plus < 0.0 || s.c_minus < 0.0 || s.c_plus + s.c_minus <= 0.0 {
                    return Err(KefError::Parameter(
                        "stable weights must be nonnegative with positive sum".into(),
                    ));
                }
                if s.radius <= 0.0 || !s.radius.is_finite() {
                    return Err(KefError::Parameter("stable cutoff must be positive".into()));
                }
                Ok(())
            }
            LevyMeasureComponent::Cascade(c) => {
                if !(c.alpha > 0.0 && c.alpha < 1.0) {
                    return Err(KefError::Parameter("cascade index must lie in (0,1)".into()));
                }
                if (c.base as f64) <= 1.0 / (1.0 - c.alpha) {
                    return Err(KefError::Parameter(
                        "cascade base must exceed 1/(1-alpha)".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn total_mass(&self) -> ExtReal {
        match self {
            LevyMeasureComponent::Atoms(l) => {
                ExtReal::Finite(l.atoms.iter().map(|a| a.mass).sum())
            }
            LevyMeasureComponent::Density(p) => {
                let (a0, b0) = p.abs_range();
                power_integral(a0, b0, p.form.exponent()).scale(p.form.coeff())
            }
            LevyMeasureComponent::Stable(_) => ExtReal::PosInf,
            LevyMeasureComponent::Cascade(_) => ExtReal::PosInf,
        }
    }

    /// Mass on the closed interval [lo, hi].
    pub fn mass_on(&self, lo: f64, hi: f64) -> ExtReal {
        if hi < lo {
            return ExtReal::Finite(0.0);
        }
        match self {
            LevyMeasureComponent::Atoms(l) => ExtReal::Finite(
                l.atoms
                    .iter()
                    .filter(|a| {
                        let v = a.x.as_f64();
                        v >= lo && v <= hi
                    })
                    .map(|a| a.mass)
                    .sum(),
            ),
            LevyMeasureComponent::Density(p) => {
                let c = p.form.coeff();
                let q = p.form.exponent();
                let (a0, b0) = p.abs_range();
                let (s, t) = if p.sign() > 0 {
                    (lo.max(a0), hi.min(b0))
                } else {
                    ((-hi).max(a0), (-lo).min(b0))
                };
                if t <= s {
                    ExtReal::Finite(0.0)
                } else {
                    power_integral(s, t, q).scale(c)
                }
            }
            LevyMeasureComponent::Stable(st) => {
                let mut total = ExtReal::Finite(0.0);
                if st.c_plus > 0.0 {
                    let s = lo.max(0.0);
                    let t = hi.min(st.radius);
                    if t > s {
                        total = total + power_integral(s, t, -1.0 - st.alpha).scale(st.c_plus);
                    }
                }
                if st.c_minus > 0.0 {
                    let s = (-hi).max(0.0);
                    let t = (-lo).min(st.radius);
                    if t > s {
                        total = total + power_integral(s, t, -1.0 - st.alpha).scale(st.c_minus);
                    }
                }
                total
            }
            LevyMeasureComponent::Cascade(c) => {
                let atoms = c.explicit_atoms();
                let smallest = atoms.last().map(|&(l, _)| l).unwrap_or(0.0);
                if lo < smallest && hi > 0.0 {
                    // interval reaches below the representability cap where
                    // infinitely many atoms live
                    return ExtReal::PosInf;
                }
                ExtReal::Finite(
                    atoms
                        .iter()
                        .filter(|&&(l, _)| l >= lo && l <= hi)
                        .map(|&(_, m)| m)
                        .sum(),
                )
            }
        }
    }

    /// ∫_{|x| ≤ eps} |x| ν(dx).
    pub fn abs_moment(&self, eps: f64) -> ExtReal {
        match self {
            LevyMeasureComponent::Atoms(l) => ExtReal::Finite(
                l.atoms
                    .iter()
                    .filter(|a| a.x.as_f64().abs() <= eps)
                    .map(|a| a.x.as_f64().abs() * a.mass)
                    .sum(),
            ),
            LevyMeasureComponent::Density(p) => {
                let (a0, b0) = p.abs_range();
                let t = b0.min(eps);
                if t <= a0 {
                    ExtReal::Finite(0.0)
                } else {
                    power_integral(a0, t, p.form.exponent() + 1.0).scale(p.form.coeff())
                }
            }
            LevyMeasureComponent::Stable(s) => {
                let t = s.radius.min(eps);
                if t <= 0.0 {
                    ExtReal::Finite(0.0)
                } else {
                    power_integral(0.0, t, -s.alpha).scale(s.c_plus + s.c_minus)
                }
            }
            LevyMeasureComponent::Cascade(c) => ExtReal::Finite(c.tail_moment(eps, 1.0)),
        }
    }

    /// One side of [`abs_moment`](Self::abs_moment): ∫_{0 < x ≤ eps} x ν(dx)
    /// for the positive side, ∫_{−eps ≤ x < 0} |x| ν(dx) for the negative.
    pub fn abs_moment_side(&self, eps: f64, positive: bool) -> ExtReal {
        match self {
            LevyMeasureComponent::Atoms(l) => ExtReal::Finite(
                l.atoms
                    .iter()
                    .filter(|a| {
                        let x = a.x.as_f64();
                        x.abs() <= eps && ((x > 0.0) == positive)
                    })
                    .map(|a| a.x.as_f64().abs() * a.mass)
                    .sum(),
            ),
            LevyMeasureComponent::Density(p) => {
                if (p.sign() > 0) != positive {
                    return ExtReal::Finite(0.0);
                }
                let (a0, b0) = p.abs_range();
                let t = b0.min(eps);
                if t <= a0 {
                    ExtReal::Finite(0.0)
                } else {
                    power_integral(a0, t, p.form.exponent() + 1.0).scale(p.form.coeff())
                }
            }
            LevyMeasureComponent::Stable(s) => {
                let c = if positive { s.c_plus } else { s.c_minus };
                let t = s.radius.min(eps);
                if t <= 0.0 || c == 0.0 {
                    ExtReal::Finite(0.0)
                } else {
                    power_integral(0.0, t, -s.alpha).scale(c)
                }
            }
            // cascade atoms all sit on the positive axis
            LevyMeasureComponent::Cascade(c) => {
                if positive {
                    ExtReal::Finite(c.tail_moment(eps, 1.0))
                } else {
                    ExtReal::Finite(0.0)
                }
            }
        }
    }

    /// ∫_{|x| ≤ eps} x² ν(dx); always finite for a valid component.
    pub fn second_moment(&self, eps: f64) -> f64 {
        match self {
            LevyMeasureComponent::Atoms(l) => l
                .atoms
                .iter()
                .filter(|a| a.x.as_f64().abs() <= eps)
                .map(|a| a.x.as_f64().powi(2) * a.mass)
                .sum(),
            LevyMeasureComponent::Density(p) => {
                let (a0, b0) = p.abs_range();
                let t = b0.min(eps);
                if t <= a0 {
                    0.0
                } else {
                    power_integral(a0, t, p.form.exponent() + 2.0)
                        .scale(p.form.coeff())
                        .finite()
                        .expect("second moment finite for valid component")
                }
            }
            LevyMeasureComponent::Stable(s) => {
                let t = s.radius.min(eps);
                if t <= 0.0 {
                    0.0
                } else {
                    (s.c_plus + s.c_minus) * t.powf(2.0 - s.alpha) / (2.0 - s.alpha)
                }
            }
            LevyMeasureComponent::Cascade(c) => c.tail_moment(eps, 2.0),
        }
    }

    /// ∫_{lo ≤ |x| ≤ hi} x ν(dx) for 0 < lo ≤ hi; always finite.
    pub fn signed_moment_annulus(&self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo > 0.0 && hi >= lo);
        match self {
            LevyMeasureComponent::Atoms(l) => l
                .atoms
                .iter()
                .filter(|a| {
                    let v = a.x.as_f64().abs();
                    v >= lo && v <= hi
                })
                .map(|a| a.x.as_f64() * a.mass)
                .sum(),
            LevyMeasureComponent::Density(p) => {
                let (a0, b0) = p.abs_range();
                let (s, t) = (a0.max(lo), b0.min(hi));
                if t <= s {
                    0.0
                } else {
                    let v = power_integral(s, t, p.form.exponent() + 1.0)
                        .scale(p.form.coeff())
                        .finite()
                        .expect("annulus moment finite");
                    p.sign() as f64 * v
                }
            }
            LevyMeasureComponent::Stable(st) => {
                let t = st.radius.min(hi);
                if t <= lo {
                    0.0
                } else {
                    let v = power_integral(lo, t, -st.alpha)
                        .finite()
                        .expect("annulus moment finite");
                    (st.c_plus - st.c_minus) * v
                }
            }
            LevyMeasureComponent::Cascade(c) => c
                .explicit_atoms()
                .iter()
                .filter(|&&(l, _)| l >= lo && l <= hi)
                .map(|&(l, m)| l * m)
                .sum(),
        }
    }

    /// ∫_{|x| ≤ 1} x ν(dx); defined (finite) exactly when the component has
    /// finite absolute moment near zero.
    pub fn signed_moment_unit(&self) -> Option<f64> {
        if !self.abs_moment(1.0).is_finite() {
            return None;
        }
        match self {
            LevyMeasureComponent::Stable(s) => {
                let t = s.radius.min(1.0);
                Some(
                    (s.c_plus - s.c_minus)
                        * power_integral(0.0, t, -s.alpha).finite()?,
                )
            }
            LevyMeasureComponent::Density(p) => {
                let (a0, b0) = p.abs_range();
                let t = b0.min(1.0);
                if t <= a0 {
                    Some(0.0)
                } else {
                    Some(
                        p.sign() as f64
                            * power_integral(a0, t, p.form.exponent() + 1.0)
                                .scale(p.form.coeff())
                                .finite()?,
                    )
                }
            }
            LevyMeasureComponent::Atoms(_) => Some(self.signed_moment_annulus(f64::MIN_POSITIVE, 1.0)),
            LevyMeasureComponent::Cascade(c) => Some(c.tail_moment(1.0, 1.0)),
        }
    }

    /// Mass of the absolutely continuous part.
    pub fn ac_mass(&self) -> ExtReal {
        match self {
            LevyMeasureComponent::Atoms(_) | LevyMeasureComponent::Cascade(_) => {
                ExtReal::Finite(0.0)
            }
            LevyMeasureComponent::Density(_) | LevyMeasureComponent::Stable(_) => {
                self.total_mass()
            }
        }
    }

    pub fn mass_positive_side(&self) -> ExtReal {
        self.mass_on(f64::MIN_POSITIVE, f64::MAX)
    }

    pub fn mass_negative_side(&self) -> ExtReal {
        self.mass_on(f64::MIN, -f64::MIN_POSITIVE)
    }

    pub fn support(&self) -> MeasureSupport {
        match self {
            LevyMeasureComponent::Atoms(l) => MeasureSupport {
                atoms: l.atoms.iter().map(|a| a.x).collect(),
                intervals: Vec::new(),
                accumulates_at_zero: false,
            },
            LevyMeasureComponent::Density(p) => MeasureSupport {
                atoms: Vec::new(),
                intervals: vec![(p.lo, p.hi)],
                accumulates_at_zero: p.lo == 0.0 || p.hi == 0.0,
            },
            LevyMeasureComponent::Stable(s) => {
                let mut intervals = Vec::new();
                if s.c_plus > 0.0 {
                    intervals.push((0.0, s.radius));
                }
                if s.c_minus > 0.0 {
                    intervals.push((-s.radius, 0.0));
                }
                MeasureSupport {
                    atoms: Vec::new(),
                    intervals,
                    accumulates_at_zero: true,
                }
            }
            LevyMeasureComponent::Cascade(c) => MeasureSupport {
                atoms: c
                    .explicit_atoms()
                    .iter()
                    .map(|&(l, _)| ExactValue::untagged(l))
                    .collect(),
                intervals: Vec::new(),
                accumulates_at_zero: true,
            },
        }
    }

    pub fn small_scale(&self) -> SmallScale {
        match self {
            LevyMeasureComponent::Atoms(_) => SmallScale::Vanishes,
            LevyMeasureComponent::Density(p) => {
                let (a0, _) = p.abs_range();
                if a0 > 0.0 {
                    SmallScale::Vanishes
                } else {
                    SmallScale::Power {
                        kappa: p.form.exponent() + 3.0,
                    }
                }
            }
            LevyMeasureComponent::Stable(s) => SmallScale::Power {
                kappa: 2.0 - s.alpha,
            },
            LevyMeasureComponent::Cascade(_) => SmallScale::Oscillating,
        }
    }
}

impl DensityPiece {
    /// (min |x|, max |x|) over the piece.
    pub(crate) fn abs_range(&self) -> (f64, f64) {
        if self.lo >= 0.0 {
            (self.lo, self.hi)
        } else {
            (-self.hi, -self.lo)
        }
    }

    /// +1 for a piece in [0, ∞), −1 for a piece in (−∞, 0].
    pub(crate) fn sign(&self) -> i32 {
        if self.lo >= 0.0 {
            1
        } else {
            -1
        }
    }
}

/// Union of component supports.
pub fn combined_support(components: &[LevyMeasureComponent]) -> MeasureSupport {
    let mut s = MeasureSupport::empty();
    for c in components {
        s.merge(c.support());
    }
    s
}
