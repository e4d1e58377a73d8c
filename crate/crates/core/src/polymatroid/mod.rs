//! Discrete polymatroids as explicit rank tables and as subspace
//! representations over GF(q).
//!
//! Tables are indexed by bitmask and capped at 20 elements. Representations
//! answer rank queries lazily, so large ground sets (the code-derived
//! polymatroids) never need a table.

mod ingleton;
mod repr;
mod table;

pub use ingleton::{
    ingleton_check, ingleton_check_exhaustive, ingleton_sides, IngletonVerdict, IngletonViolation,
};
pub use repr::{contract_representation, ReprPolymatroid};
pub use table::{
    basis_vectors, check_axioms, contract, contract_commutes_check, membership, Axiom,
    AxiomVerdict, BasisVector, RankTable, ENUMERATION_CAP, TABLE_CAP,
};
