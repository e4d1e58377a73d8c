use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, IndexSet};

use super::IndexCode;

/// Support set of an error vector, 0-based positions in `0..c`.
pub type ErrorPattern = IndexSet;

/// First failing (receiver, pattern) pair in receiver order, then
/// lexicographic pattern order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub receiver: usize,
    pub pattern: ErrorPattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Witness),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(w) => Some(w),
        }
    }
}

/// All `k`-subsets of `0..c` in lexicographic order.
pub fn error_patterns(c: usize, k: usize) -> impl Iterator<Item = ErrorPattern> {
    (0..c).combinations(k).map(IndexSet::from_sorted_unchecked)
}

/// Patterns beyond this count are checked in parallel.
const PARALLEL_PATTERNS: usize = 64;

/// Decodability of receiver `i` under one error pattern: every column of the
/// demand indicator must lie in the column span of
/// `[L restricted to non-side rows ; rows of I_c indexed by the pattern]`.
pub fn check_receiver_pattern(code: &IndexCode, i: usize, pattern: &ErrorPattern) -> Result<bool> {
    let problem = code.problem();
    let receiver = problem.receiver(i)?;
    let c = code.len();
    let expected = receiver.pattern_size(c);
    if pattern.len() != expected {
        return Err(Error::PatternSize {
            got: pattern.len(),
            expected,
        });
    }
    if let Some(&index) = pattern.iter().find(|&&p| p >= c) {
        return Err(Error::IndexOutOfRange { index, universe: c });
    }
    let hats = problem.hat_sets(i)?;
    let field = problem.field();
    let spanning = code
        .matrix()
        .submatrix_rows(&hats.free_rows)?
        .vconcat(&FieldMatrix::identity(field, c).submatrix_rows(pattern)?)?;

    // demand rows sit at these positions inside the free rows
    let rows = spanning.rows();
    let targets: Vec<Vec<u8>> = hats
        .demand_rows
        .iter()
        .map(|d| {
            let pos = hats
                .free_rows
                .binary_search(d)
                .expect("demand rows are never side rows");
            let mut v = vec![0u8; rows];
            v[pos] = 1;
            v
        })
        .collect();
    let indicator = FieldMatrix::from_columns(field, rows, &targets)?;
    Ok(spanning.hconcat(&indicator)?.rank() == spanning.rank())
}

/// Lexicographically first pattern under which receiver `i` fails to decode.
pub fn first_failing_pattern(code: &IndexCode, i: usize) -> Result<Option<ErrorPattern>> {
    let c = code.len();
    let k = code.problem().receiver(i)?.pattern_size(c);
    let patterns: Vec<ErrorPattern> = error_patterns(c, k).collect();
    let fails =
        |p: &ErrorPattern| !check_receiver_pattern(code, i, p).expect("pattern is well-formed");
    let found = if patterns.len() >= PARALLEL_PATTERNS {
        patterns.par_iter().position_first(fails)
    } else {
        patterns.iter().position(fails)
    };
    Ok(found.map(|idx| patterns[idx].clone()))
}

/// Span-test verification of a differential error-correcting index code:
/// every receiver must decode under every error pattern of its size.
pub fn verify_differential_ecic(code: &IndexCode) -> Verdict {
    for i in 0..code.problem().receivers().len() {
        if let Some(pattern) = first_failing_pattern(code, i).expect("receiver index in range") {
            return Verdict::Invalid(Witness {
                receiver: i,
                pattern,
            });
        }
    }
    Verdict::Valid
}
