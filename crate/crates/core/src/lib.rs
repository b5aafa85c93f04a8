//! Exact computation of primitive idempotents, Frobenius-Schur relations,
//! and decomposition matrices for split finite-dimensional algebras given
//! by structure constants.

pub mod algcore;
pub mod corpus;
pub mod decmap;
pub mod error;
pub mod exact;
pub mod fsavg;
pub mod heckegen;
pub mod jsonio;
pub mod matlin;
pub mod pimkit;
pub mod repmod;
pub mod spoly;

pub use error::{Error, Result};

/// Seed for every internal sampling schedule unless overridden.
pub const DEFAULT_SEED: u64 = 0x66726f62;
