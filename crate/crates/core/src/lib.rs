//! Vector-linear differential error-correcting index codes over prime fields
//! and their correspondence with representable discrete polymatroids.
//!
//! - [`linalg`]: GF(q) arithmetic and dense matrices.
//! - [`indexcode`]: problems, code verification, decoding, and search.
//! - [`polymatroid`]: rank tables, subspace representations, contraction.
//! - [`correspondence`]: code to polymatroid and back.
//! - [`sim`]: broadcast simulation with per-receiver errors.
//! - [`io`]: the text and JSON file formats used by the CLI.

pub mod cli;
pub mod correspondence;
mod enumerate;
pub mod error;
pub mod indexcode;
pub mod io;
pub mod linalg;
pub mod polymatroid;
pub mod sim;

pub use enumerate::{Budget, Vectors, BUDGET_ENV};
pub use error::{Error, Result};
