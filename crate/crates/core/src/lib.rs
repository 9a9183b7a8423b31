//! Exact symbolic calculus on the Z2^2-graded superspace with coordinates
//! t (0,0), z (1,1), θ10 (1,0), θ01 (0,1).

pub mod actions;
pub mod algebra;
pub mod error;
pub mod multiplets;
pub mod properties;
pub mod representations;
pub mod superspace;

pub use algebra::*;
pub use error::{Error, Result};
