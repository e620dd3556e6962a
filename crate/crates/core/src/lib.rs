//! Exact coordinate tori, the centreless Lie tori coordinatized by them,
//! grading-shift isotopes, and the extended affine Lie algebras built on top.

pub mod eala;
pub mod error;
pub mod lattice;
pub mod lie;
pub mod linalg;
pub mod quadform;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod scenario;
pub mod spec;
pub mod torus;

pub use error::{Error, Result};
pub use lattice::{LatticeVec, RootDatum, ShiftHom, Sublattice};
pub use scalar::CycScalar;
pub use torus::{Flavor, StructuredTorus, TorusElement};
