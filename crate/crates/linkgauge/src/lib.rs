// `!(x > 0.0)` is used instead of `x <= 0.0` throughout so that NaN
// inputs are rejected too; oracle constants keep every frozen digit.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

//! linkgauge — analytic performance models for short- and medium-range
//! wireless links.
//!
//! The library bundles six protocol profiles (Bluetooth, UWB, ZigBee,
//! Wi-Fi, Wi-Max, GPRS) with the models needed to compare them:
//!
//! - [`registry`]: protocol profiles (rates, frame overheads, chipset
//!   electrical data) and a JSON loader for user-supplied profiles;
//! - [`linkmodels`]: transmission time, coding efficiency, Friis
//!   free-space propagation and the two-ray ground-reflection model;
//! - [`energymodels`]: the first-order radio energy model and chipset
//!   power / normalized-energy figures;
//! - [`ber`]: bit-error-rate curves over AWGN for the profiles'
//!   modulations, a threshold solver, and a seeded Monte Carlo
//!   cross-check;
//! - [`advisor`]: feasibility filtering and weighted ranking of
//!   profiles against application requirements.

pub mod advisor;
pub mod ber;
pub mod energymodels;
pub mod error;
pub mod linkmodels;
pub mod registry;

pub use error::DomainError;
