//! Superspace actions, their component reduction and invariance certificates.

pub mod catalog;
pub mod invariance;
pub mod lagrangian;

pub use catalog::{
    component_table, coupling, printed_case_ii_obstruction, printed_lagrangian, run_action, ActionName, ActionReport,
    SUPERPOTENTIAL_EXPONENTS,
};
pub use invariance::{check_invariance, top_variation_certificates, total_derivative, vary_lagrangian, vary_with, TotalDerivativeCertificate};
pub use lagrangian::{kinetic_integrand, reduce_action, superpotential, Lagrangian, Template};
