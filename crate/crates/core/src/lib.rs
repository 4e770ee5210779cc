//! Exact verification of the Lefschetz-type operator algebra on the exterior
//! algebra of flat quaternionic space `ℝ^{4q}`.
//!
//! All arithmetic is over `ℚ(i)`: identities are checked as equalities, never
//! up to a tolerance.

pub mod cli;
pub mod error;
pub mod exterior;
pub mod io;
pub mod lefschetz;
pub mod quaternionic;
pub mod replib;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{Form, MultiIndex, SparseOp};
pub use scalar::Scalar;
