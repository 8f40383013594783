//! Scalars tagged with exact symbolic form.
//!
//! Jump locations may be tagged as a rational multiple of a named constant
//! (1, √2, π, e). Tags make rationality of ratios decidable: two tagged
//! values with the same base constant have rational ratio; across different
//! bases the ratio is irrational, except for π/e whose status is an open
//! problem and is reported as unknown. Untagged values never decide.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseConstant {
    One,
    Sqrt2,
    Pi,
    E,
}

impl BaseConstant {
    pub fn value(self) -> f64 {
        match self {
            BaseConstant::One => 1.0,
            BaseConstant::Sqrt2 => std::f64::consts::SQRT_2,
            BaseConstant::Pi => std::f64::consts::PI,
            BaseConstant::E => std::f64::consts::E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactValue {
    /// coeff × base, with coeff a reduced rational.
    Tagged { coeff: Ratio<i64>, base: BaseConstant },
    Untagged(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rationality {
    Rational,
    Irrational,
    Unknown,
}

impl ExactValue {
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactValue::Tagged {
            coeff: Ratio::new(num, den),
            base: BaseConstant::One,
        }
    }

    pub fn tagged(num: i64, den: i64, base: BaseConstant) -> Self {
        assert!(den != 0, "zero denominator");
        ExactValue::Tagged {
            coeff: Ratio::new(num, den),
            base,
        }
    }

    pub fn untagged(x: f64) -> Self {
        ExactValue::Untagged(x)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            ExactValue::Tagged { coeff, base } => {
                (*coeff.numer() as f64) / (*coeff.denom() as f64) * base.value()
            }
            ExactValue::Untagged(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Tagged { coeff, .. } => *coeff.numer() == 0,
            ExactValue::Untagged(x) => *x == 0.0,
        }
    }

    /// Negation; tags survive, so exact locations stay exact.
    pub fn negated(&self) -> ExactValue {
        match self {
            ExactValue::Tagged { coeff, base } => ExactValue::Tagged {
                coeff: -*coeff,
                base: *base,
            },
            ExactValue::Untagged(x) => ExactValue::Untagged(-x),
        }
    }

    /// Rationality of the ratio a/b. Decided only when both carry tags.
    pub fn ratio_rationality(a: &ExactValue, b: &ExactValue) -> Rationality {
        match (a, b) {
            (
                ExactValue::Tagged { base: ba, .. },
                ExactValue::Tagged { base: bb, .. },
            ) => {
                if ba == bb {
                    Rationality::Rational
                } else {
                    use BaseConstant::*;
                    match (ba, bb) {
                        // π/e and e/π are not known to be irrational.
                        (Pi, E) | (E, Pi) => Rationality::Unknown,
                        // Every other cross pair divides a transcendental by an
                        // algebraic number (or is √2 times a rational), hence
                        // is irrational.
                        _ => Rationality::Irrational,
                    }
                }
            }
            _ => Rationality::Unknown,
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExactValue::Untagged(x) => s.serialize_f64(*x),
            ExactValue::Tagged { coeff, base } => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("rational", &[*coeff.numer(), *coeff.denom()])?;
                m.serialize_entry("times", base)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Plain(f64),
            Tagged {
                rational: [i64; 2],
                #[serde(default)]
                times: Option<BaseConstant>,
            },
        }
        match Repr::deserialize(d)? {
            Repr::Plain(x) => Ok(ExactValue::Untagged(x)),
            Repr::Tagged { rational, times } => {
                if rational[1] == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(ExactValue::Tagged {
                    coeff: Ratio::new(rational[0], rational[1]),
                    base: times.unwrap_or(BaseConstant::One),
                })
            }
        }
    }
}
