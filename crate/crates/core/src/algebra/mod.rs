//! Z2^2-graded commutative polynomials over the Gaussian rationals.

pub mod atom;
pub mod coeff;
pub mod degree;
pub mod poly;
pub mod text;

pub use atom::{atom_order, with_atom_order, Atom, AtomKind, AtomOrder};
pub use coeff::Coefficient;
pub use degree::{koszul_sign, Degree};
pub use poly::{atoms_degree, normalize, GradedPoly, Homogeneity, Monomial};
pub use text::{parse_poly, AtomEntry, AtomTable, Pretty};
