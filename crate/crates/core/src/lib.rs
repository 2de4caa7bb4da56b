//! Idempotent semirings and the algebra built on them.
//!
//! The crate covers the concrete max-plus style semirings and their
//! completions, finite ordered structures and their normal completions,
//! tropical matrices with Bellman-equation solvers, residuation duality on
//! free finite semimodules, and sampled idempotent calculus (Legendre
//! transform, Hopf–Lax propagation and its log-sum-exp deformation).

pub mod calculus;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod order;
pub mod par;
pub mod report;
pub mod semiring;

pub use error::{Error, Result};
pub use semiring::{SemiringDescriptor, SemiringKind, SemiringValue};
