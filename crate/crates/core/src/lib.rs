//! Tetrahedral (generalized 6j) symbols for representations of SO3 over local
//! fields: exact unramified duality, real-field hypergeometric evaluation,
//! W(D6) symmetry checks and classical compact 6j cross-checks.

pub mod archimedean;
pub mod bigcomplex;
pub mod compact;
pub mod cspecial;
pub mod edge_mc;
pub mod error;
pub mod factors;
pub mod hypergeom;
pub mod lattice;
pub mod scalar;
pub mod special;
pub mod suites;
pub mod unramified;

pub use bigcomplex::BigComplex;
pub use error::{Error, Result};
