//! Superfields on the superspace with coordinates (t, z, θ10, θ01).

pub mod field;
pub mod ops;
pub mod variation;

pub use field::{
    berezin_integrate, component_name, coordinate_atoms, flatten, generic_super_field, mul_super_fields, unflatten,
    BerezinResult, CompKey, SuperField,
};
pub use ops::{
    algebra_relations, apply_generator, apply_prim, apply_with, check_operator_identity,
    check_operator_identity_with, covariant_relations, DeltaCheck, Generator, GeneratorTable, IdentityReport, Prim,
    Relation, SuperOp,
};
pub use variation::{full_variation_with, supertranslate, susy_variation, susy_variation_with, Charge, Translation};
