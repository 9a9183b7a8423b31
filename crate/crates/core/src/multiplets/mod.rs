//! Constrained superfields and the multiplets they carry.

pub mod constraint;
pub mod multiplet;

pub use constraint::{ConstraintSystem, Derived};
pub use multiplet::{
    check_f011_closed_forms, extract_matrices, f011_closed_form, impose_f011_constraint, impose_z_constraint,
    slot_basis, ClosedFormCheck, Constrained, Multiplet, SlotAtom, SLOTS, SLOT_DEGREES,
};
