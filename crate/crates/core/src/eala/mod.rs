//! E(L, SCDer(L), 0) = D ⊕ L ⊕ C for sl Lie tori, its checks, and the
//! isomorphism χ : E(L) → E(L^(s)) between the algebras of a torus and its isotope.

mod algebra;
mod checks;
mod chi;

pub use algebra::{pair_theta, DerBasis, Eala, EalaElement, EalaHomogeneous, Graded, Part};
pub use checks::{check_construction, root_space_dims, EalaOptions, RootSpaceDim};
pub use chi::{chi_iso, ChiMap};
