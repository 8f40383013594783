//! Killed exponential functionals of Lévy processes.
//!
//! The crate models the random variable obtained by integrating the
//! exponential of one Lévy process against another, stopped at an
//! independent exponential clock (or run forever, or to a fixed horizon).
//! It provides three cooperating layers:
//!
//! * a symbolic layer ([`measure`], [`triplet`], [`process`], [`conditions`],
//!   [`classify`], [`support`], [`verdict`]) that decides support geometry
//!   and law regularity from the characteristic triplets;
//! * a numeric layer ([`quad`], [`charexp`], [`transform`]) for the
//!   characteristic-exponent calculus that some decisions need;
//! * a Monte Carlo layer ([`rng`], [`path`], [`functional`], [`stats`])
//!   that samples the functional and checks the symbolic predictions
//!   against empirical law ([`scenario`], [`verify`]).

pub mod charexp;
pub mod classify;
pub mod conditions;
pub mod error;
pub mod exact;
pub mod extreal;
pub mod functional;
pub mod integrand;
pub mod measure;
pub mod path;
pub mod process;
pub mod quad;
pub mod rng;
pub mod scenario;
pub mod stats;
pub mod support;
pub mod transform;
pub mod triplet;
pub mod verdict;
pub mod verify;

pub use classify::{
    classify_ac_unkilled, classify_continuity_killed, classify_deterministic_integrand,
    classify_fixed_t,
};
pub use conditions::{ConditionResult, ConditionStatus};
pub use error::{KefError, Result};
pub use extreal::ExtReal;
pub use functional::{
    fixed_point_residual, fixed_t_functional_sample, gou_step, killed_functional_sample,
    sample_batch, unkilled_functional_sample, SampleBatch, UnkilledParams,
};
pub use path::{simulate_path, JumpEvent, JumpSource, PathRealization, SimParams, SmallJumpPolicy};
pub use rng::RngStream;
pub use stats::{EmpiricalReport, TestOutcome};
pub use process::{AssertedFlag, ProcessSpec};
pub use support::{SupportDescriptor, SupportRelation, SupportShape};
pub use triplet::LevyTriplet;
pub use verdict::{LawVerdict, Tri};
