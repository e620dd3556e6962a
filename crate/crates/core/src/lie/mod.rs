//! Centreless Lie tori of types A_1 (TKK), A_r (sl_{r+1}) and C_r (ssp_{2r}),
//! their grading-shift isotopes and graded isomorphisms between them.

mod axioms;
mod element;
mod maps;
mod model;

pub use axioms::{check_axioms, AxiomOptions};
pub use element::{LieElement, MatrixElement, TkkElement};
pub use maps::{
    diag_conjugation_iso, dimension_match, identity_map, opposite_iso, ssp_isotope_iso, tkk_isotope_iso, verify_graded_map, GradedMap,
    MapRule,
};
pub use model::{ComponentDim, Homogeneous, LieTorus, ModelKind, DEFAULT_PROBE};
