//! Scenario files: the JSON contract shared by the command-line tools and
//! the regression suites.
//!
//! A file holds either one scenario object or an array of them. Every
//! malformed input is reported as a schema error carrying the path of the
//! offending field, both for shape violations (wrong type, unknown field)
//! and for semantic ones (a killed scenario with q = 0).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{KefError, Result};
use crate::functional::UnkilledParams;
use crate::integrand::{Integrand, StopRule};
use crate::path::SimParams;
use crate::process::{AssertedFlag, ProcessSpec};
use crate::support::{SupportRelation, SupportShape};
use crate::verdict::Tri;

/// Which functional of the pair (ξ, η) the scenario is about.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// ∫_0^τ e^(−ξ) dη with τ ~ Exp(q).
    Killed,
    /// ∫_0^∞ e^(−ξ) dη; requires the convergence flag and q = 0.
    Unkilled,
    /// ∫_0^t e^(−ξ) dη at a deterministic horizon.
    FixedT { t: f64 },
    /// ∫ f dη for a deterministic integrand, stopped per the rule; ξ is
    /// ignored and conventionally zero.
    DeterministicIntegrand { f: Integrand, stop: StopRule },
}

/// Reference laws simple enough to test against analytically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnownLaw {
    Exponential { rate: f64 },
    Uniform { lo: f64, hi: f64 },
    Normal { mean: f64, var: f64 },
    /// All mass at one point.
    Point { at: f64 },
}

impl KnownLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            KnownLaw::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            KnownLaw::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            KnownLaw::Normal { mean, var } => {
                0.5 * libm::erfc(-(x - mean) / (2.0 * var).sqrt())
            }
            KnownLaw::Point { at } => {
                if x >= at {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Golden expectations attached to a scenario. Everything is optional;
/// absent fields are simply not checked.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Expected {
    pub atom_at_zero: Option<Tri>,
    pub continuous: Option<Tri>,
    pub absolutely_continuous: Option<Tri>,
    /// Rule identifiers that must appear in the combined trail.
    pub rules: Vec<String>,
    pub support: Option<SupportShape>,
    pub support_relation: Option<SupportRelation>,
    /// Analytic mass of the atom at zero, when known.
    pub atom_mass: Option<f64>,
    /// Analytic law of the functional, when known.
    pub law: Option<KnownLaw>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        *self == Expected::default()
    }
}

/// One experiment: a pair of processes, a functional mode, scheme
/// parameters, and optional golden expectations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub xi: ProcessSpec,
    pub eta: ProcessSpec,
    /// Killing rate; 0 means no killing and is only valid outside killed
    /// mode.
    #[serde(default)]
    pub q: f64,
    pub mode: Mode,
    #[serde(default)]
    pub sim: SimParams,
    /// Horizon policy for unkilled scenarios.
    #[serde(default)]
    pub horizon: UnkilledParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

fn schema(path: &str, msg: &str) -> KefError {
    KefError::Schema(format!("{path}: {msg}"))
}

impl Scenario {
    /// Semantic validation; `at` prefixes every reported field path.
    pub fn validate(&self, at: &str) -> Result<()> {
        if self.id.is_empty() {
            return Err(schema(&format!("{at}.id"), "scenario id must be nonempty"));
        }
        self.xi
            .validate()
            .map_err(|e| schema(&format!("{at}.xi"), &e.to_string()))?;
        self.eta
            .validate()
            .map_err(|e| schema(&format!("{at}.eta"), &e.to_string()))?;
        if !self.q.is_finite() || self.q < 0.0 {
            return Err(schema(
                &format!("{at}.q"),
                "killing rate must be finite and nonnegative",
            ));
        }
        match &self.mode {
            Mode::Killed => {
                if self.q == 0.0 {
                    return Err(schema(
                        &format!("{at}.q"),
                        "killed mode needs q > 0; use unkilled mode for q = 0",
                    ));
                }
            }
            Mode::Unkilled => {
                if self.q != 0.0 {
                    return Err(schema(&format!("{at}.q"), "unkilled mode needs q = 0"));
                }
                if !self.xi.has_flag(AssertedFlag::UnkilledIntegralConverges)
                    && !self.eta.has_flag(AssertedFlag::UnkilledIntegralConverges)
                {
                    return Err(schema(
                        &format!("{at}.mode"),
                        "q = 0 needs the unkilled_integral_converges flag on xi or eta",
                    ));
                }
            }
            Mode::FixedT { t } => {
                if self.q != 0.0 {
                    return Err(schema(
                        &format!("{at}.q"),
                        "fixed-horizon mode ignores killing; set q = 0",
                    ));
                }
                if !(*t > 0.0 && t.is_finite()) {
                    return Err(schema(
                        &format!("{at}.mode.t"),
                        "horizon must be positive and finite",
                    ));
                }
            }
            Mode::DeterministicIntegrand { f, stop } => {
                if self.q != 0.0 {
                    return Err(schema(
                        &format!("{at}.q"),
                        "deterministic-integrand mode carries its stop rule; set q = 0",
                    ));
                }
                if f.is_identically_zero() {
                    return Err(schema(
                        &format!("{at}.mode.f"),
                        "integrand must not vanish identically",
                    ));
                }
                if let StopRule::ExponentialTime { rate } = stop {
                    if !(*rate > 0.0 && rate.is_finite()) {
                        return Err(schema(
                            &format!("{at}.mode.stop.rate"),
                            "stop rate must be positive and finite",
                        ));
                    }
                }
                if let StopRule::FixedHorizon { t } = stop {
                    if !(*t > 0.0 && t.is_finite()) {
                        return Err(schema(
                            &format!("{at}.mode.stop.t"),
                            "stop horizon must be positive and finite",
                        ));
                    }
                }
            }
        }
        if let Some(e) = &self.expected {
            if let Some(m) = e.atom_mass {
                if !(0.0..=1.0).contains(&m) {
                    return Err(schema(
                        &format!("{at}.expected.atom_mass"),
                        "atom mass must lie in [0, 1]",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Parse a scenario file body: one object or an array. Shape errors carry
/// serde field paths; semantic errors carry `scenarios[i].field` paths.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let is_list = text.trim_start().starts_with('[');
    let scenarios: Vec<Scenario> = if is_list {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de)
            .map_err(|e| KefError::Schema(format!("{}: {}", e.path(), e.inner())))?
    } else {
        let de = &mut serde_json::Deserializer::from_str(text);
        let one: Scenario = serde_path_to_error::deserialize(de)
            .map_err(|e| KefError::Schema(format!("{}: {}", e.path(), e.inner())))?;
        vec![one]
    };
    for (i, sc) in scenarios.iter().enumerate() {
        let at = if is_list {
            format!("scenarios[{i}]")
        } else {
            "scenario".to_string()
        };
        sc.validate(&at)?;
    }
    let mut ids: Vec<&str> = scenarios.iter().map(|s| s.id.as_str()).collect();
    ids.sort_unstable();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            return Err(KefError::Schema(format!("duplicate scenario id '{}'", w[0])));
        }
    }
    Ok(scenarios)
}

/// Read and parse a scenario file.
pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    let text = fs::read_to_string(path)?;
    parse_scenarios(&text).map_err(|e| match e {
        KefError::Schema(msg) => KefError::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}
