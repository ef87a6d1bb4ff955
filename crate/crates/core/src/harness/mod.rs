//! Experiment orchestration: specs, rate fits, reports, CSV artifacts.
//!
//! Reports are deterministic — re-running a spec reproduces every CSV byte
//! (fixed quadrature budgets, fixed dt policy, fixed seeds, no map
//! iteration in any output path).

mod fit;
mod runner;
mod sha1;
mod spec;

pub use fit::{fit_rate, RateFit};
pub use runner::{
    compare_to_budget, run, Assertion, Report, SweepRecord, CANTOR_BALL_ENVELOPE_C,
    CIRCLE_BALL_LINEAR_C, CIRCLE_SQRT_BAND, DELORT_ENVELOPE_BAND, LOGDATUM_CLAIM_SUP,
    LOGDATUM_DECAY_C,
};
pub use sha1::git_blob_hash;
pub use spec::{bundled_specs, ExperimentKind, ExperimentSpec};
