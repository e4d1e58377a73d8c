use crate::enumerate::{saturating_pow, Budget, Vectors};
use crate::error::Result;
use crate::linalg::FieldMatrix;

use super::{verify_differential_ecic, IndexCode, IndexCodingProblem};

/// Smallest length found by [`search_min_length`] and the first valid matrix
/// of that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub length: usize,
    pub code: IndexCode,
}

/// Tries every `mn x c` matrix for `c = 0, 1, ..., c_max`, in lexicographic
/// order of the row-major entries, and returns the first valid one.
///
/// The budget caps the cumulative number of candidate matrices; it is
/// checked before each length is started.
pub fn search_min_length(
    problem: &IndexCodingProblem,
    c_max: usize,
    budget: Budget,
) -> Result<Option<SearchResult>> {
    let field = problem.field();
    let rows = problem.message_len();
    let mut spent: u64 = 0;
    for c in 0..=c_max {
        spent = spent.saturating_add(saturating_pow(field.order() as u64, rows * c));
        budget.check(spent)?;
        for entries in Vectors::new(field.order(), rows * c) {
            let data = entries.into_iter().map(u32::from).collect();
            let matrix = FieldMatrix::from_vec(field, rows, c, data)?;
            let code = IndexCode::new(problem.clone(), matrix)?;
            if verify_differential_ecic(&code).is_valid() {
                return Ok(Some(SearchResult { length: c, code }));
            }
        }
    }
    Ok(None)
}
