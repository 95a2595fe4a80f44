//! Additive energy and metric discrepancy of integer sequences.
//!
//! For a strictly increasing integer sequence `(a_n)` this crate computes
//!
//! * the additive energy `E(A_N)` of its prefixes (three independent backends),
//! * the exact star-discrepancy of the fractional parts `{a_n x}` for `x` on a
//!   2^-128 grid, and median profiles over random `x`,
//! * L1 and L4 norms of the exponential sum `sum e(a_n x)` by uniform quadrature,
//! * the Rudin-Shapiro signs, integers and polynomials together with the
//!   identities and bounds that tie them to the above,
//!
//! and runs seeded experiments that fit the energy exponent and the
//! discrepancy exponent on log-log scale.

pub mod discrepancy;
pub mod energy;
mod error;
pub mod expsum;
pub mod harness;
pub mod poly;
pub mod rudinshapiro;
pub mod sequences;
mod sum;

pub use discrepancy::{AlphaValue, DiscrepancyProfile, MedianProfile};
pub use energy::{DifferenceHistogram, EnergyBackend, EnergyProfile, EnergyResult};
pub use error::{Error, Result};
pub use expsum::ExpSumEstimate;
pub use harness::fit::{fit_loglog, ExponentFit};
pub use sequences::{IntegerSequence, SequenceSpec};
