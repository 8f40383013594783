//! Three-valued verdicts about the law of the functional.
//!
//! Classifiers answer three questions: is there an atom at zero, is the law
//! continuous, is it absolutely continuous. Answers are three-valued since
//! several regimes have no known converse. The builder maintains the logical
//! implications between the three fields so a classifier can never emit an
//! incoherent verdict (AC implies continuous implies no atom at zero).

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }

    pub fn negate(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawVerdict {
    pub atom_at_zero: Tri,
    pub continuous: Tri,
    pub absolutely_continuous: Tri,
    /// Rule identifiers in the order they fired.
    #[serde(default)]
    pub trail: Vec<String>,
}

impl LawVerdict {
    pub fn coherent(&self) -> bool {
        let a = self.atom_at_zero;
        let c = self.continuous;
        let ac = self.absolutely_continuous;
        if ac == Tri::Yes && c != Tri::Yes {
            return false;
        }
        if c == Tri::Yes && a != Tri::No {
            return false;
        }
        if a == Tri::Yes && c != Tri::No {
            return false;
        }
        if c == Tri::No && ac == Tri::Yes {
            return false;
        }
        true
    }
}

/// Incremental verdict assembly. Setters propagate implications; a rule that
/// contradicts an earlier one panics, because the rule trees are supposed to
/// be internally consistent and a conflict is a logic bug, not bad input.
#[derive(Debug, Clone)]
pub struct VerdictBuilder {
    verdict: LawVerdict,
}

impl VerdictBuilder {
    pub fn new() -> Self {
        VerdictBuilder {
            verdict: LawVerdict {
                atom_at_zero: Tri::Unknown,
                continuous: Tri::Unknown,
                absolutely_continuous: Tri::Unknown,
                trail: Vec::new(),
            },
        }
    }

    pub fn note(&mut self, rule: &str) -> &mut Self {
        self.verdict.trail.push(rule.to_string());
        self
    }

    fn put(field: &mut Tri, value: Tri, what: &str) {
        match (*field, value) {
            (Tri::Unknown, v) => *field = v,
            (a, b) if a == b => {}
            (a, b) => panic!("verdict conflict on {what}: {a} vs {b}"),
        }
    }

    pub fn atom_at_zero(&mut self, value: Tri, rule: &str) -> &mut Self {
        self.note(rule);
        Self::put(&mut self.verdict.atom_at_zero, value, "atom_at_zero");
        if value == Tri::Yes {
            Self::put(&mut self.verdict.continuous, Tri::No, "continuous");
            Self::put(
                &mut self.verdict.absolutely_continuous,
                Tri::No,
                "absolutely_continuous",
            );
        }
        self
    }

    pub fn continuous(&mut self, value: Tri, rule: &str) -> &mut Self {
        self.note(rule);
        Self::put(&mut self.verdict.continuous, value, "continuous");
        match value {
            Tri::Yes => {
                Self::put(&mut self.verdict.atom_at_zero, Tri::No, "atom_at_zero");
            }
            Tri::No => {
                Self::put(
                    &mut self.verdict.absolutely_continuous,
                    Tri::No,
                    "absolutely_continuous",
                );
            }
            Tri::Unknown => {}
        }
        self
    }

    pub fn absolutely_continuous(&mut self, value: Tri, rule: &str) -> &mut Self {
        self.note(rule);
        Self::put(
            &mut self.verdict.absolutely_continuous,
            value,
            "absolutely_continuous",
        );
        if value == Tri::Yes {
            Self::put(&mut self.verdict.continuous, Tri::Yes, "continuous");
            Self::put(&mut self.verdict.atom_at_zero, Tri::No, "atom_at_zero");
        }
        self
    }

    pub fn finish(self) -> LawVerdict {
        debug_assert!(self.verdict.coherent());
        self.verdict
    }
}

impl Default for VerdictBuilder {
    fn default() -> Self {
        Self::new()
    }
}
