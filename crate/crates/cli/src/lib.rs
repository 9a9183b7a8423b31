//! Verification harness for the `z22susy` engine.

pub mod commands;
pub mod criteria;
pub mod report;

pub use report::{Check, Report, Status};
