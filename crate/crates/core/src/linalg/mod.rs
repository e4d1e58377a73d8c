//! Prime-field arithmetic and dense matrices over GF(q).
//!
//! Elimination always pivots on the first nonzero entry at or below the
//! current row, so every reduced form (and every `solve` witness) is
//! deterministic.

mod field;
mod index_set;
mod matrix;

pub use field::PrimeField;
pub use index_set::IndexSet;
pub use matrix::FieldMatrix;
