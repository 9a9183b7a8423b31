//! Matrix representations of the Z2^2-SUSY algebra over parameter rings.

pub mod builders;
pub mod construct;
pub mod induce;
pub mod irreducible;
pub mod matrix;
pub mod param;
pub mod rep;

pub use builders::*;
pub use construct::{dress, invariant_subspace, quotient_four_dim};
pub use induce::{induce_from_nu_e, induce_from_nu_e_lambda};
pub use irreducible::{cyclic_span, decide, irreducible, Candidate, Certificate, CrossCheck, IrreducibilityReport};
pub use matrix::{rank, row_basis, Mat, Span};
pub use param::{parse_param_poly, parse_param_scalar, ParamPoly, ParamRing, ParamScalar, Relation, Var};
pub use rep::{block_structure_ok, check_algebra, AlgebraReport, Casimir, Mismatch, RelationCheck, RepGen, RepSpec};
