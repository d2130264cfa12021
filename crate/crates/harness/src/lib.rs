//! Scenario configuration, batch execution and report emission for the
//! HFB simulator.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod selftest;

pub use config::{LinearConfig, ScenarioConfig};
pub use error::HarnessError;
