//! Extended real line with explicit infinities.
//!
//! Quantities such as total jump-measure mass or truncated absolute moments
//! are either finite numbers or genuinely infinite; carrying that distinction
//! in the type keeps decision logic free of sentinel floats.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        matches!(self, ExtReal::PosInf)
    }

    /// Numeric value with infinities mapped to IEEE infinities.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtReal::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(x)
        }
    }

    /// Multiplication by a finite nonnegative scalar (`0 * inf = 0`).
    pub fn scale(self, c: f64) -> ExtReal {
        assert!(c >= 0.0 && c.is_finite());
        if c == 0.0 {
            return ExtReal::Finite(0.0);
        }
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(c * x),
            other => other,
        }
    }

    pub fn ge(self, other: ExtReal) -> bool {
        self.as_f64() >= other.as_f64()
    }

    pub fn gt(self, other: ExtReal) -> bool {
        self.as_f64() > other.as_f64()
    }
}

/// `NegInf + PosInf` is a programming error and panics.
impl std::ops::Add for ExtReal {
    type Output = ExtReal;

    fn add(self, other: ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => {
                panic!("ExtReal: adding opposite infinities")
            }
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => write!(f, "+inf"),
        }
    }
}

pub fn sum_ext<I: IntoIterator<Item = ExtReal>>(items: I) -> ExtReal {
    items
        .into_iter()
        .fold(ExtReal::Finite(0.0), |acc, x| acc + x)
}
