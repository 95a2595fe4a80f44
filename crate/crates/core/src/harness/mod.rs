//! Exponent fitting, experiment orchestration, persistence and verification.

pub mod experiment;
pub mod fit;
pub mod verify;

pub use experiment::{run_experiment, write_artifacts, ExperimentConfig, ExperimentReport};
pub use verify::{rs_verify, verify, Suite, VerifySummary};
