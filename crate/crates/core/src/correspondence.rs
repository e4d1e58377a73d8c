//! Codes and their representable discrete polymatroids.
//!
//! A length-`c` code for `m` messages of length `n` maps to a polymatroid on
//! `m + 2c` elements represented in GF(q)^(mn + c):
//!
//! - element `k < m`: the `n` unit vectors of message block `k`;
//! - element `m + i`, `i < c`: the unit vector `e_(mn + i)`;
//! - element `m + c + i`: column `i` of `[L ; I_c]`.
//!
//! The code is valid exactly when the polymatroid meets conditions (A), (B)
//! and (C) below, and any representation meeting them yields a valid code.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::indexcode::{
    error_patterns, ErrorPattern, IndexCode, IndexCodingProblem, Verdict, Witness,
};
use crate::linalg::{FieldMatrix, IndexSet};
use crate::polymatroid::ReprPolymatroid;

/// A problem paired with a representable polymatroid on `m + 2c` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentedProblem {
    problem: IndexCodingProblem,
    code_len: usize,
    repr: ReprPolymatroid,
}

impl RepresentedProblem {
    /// Derives `c` from the ground size, which must be `m + 2c`.
    pub fn new(problem: IndexCodingProblem, repr: ReprPolymatroid) -> Result<Self> {
        let m = problem.messages();
        let g = repr.ground_size();
        if g < m || !(g - m).is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "ground set of size {g} is not m + 2c for m = {m}"
            )));
        }
        if repr.field() != problem.field() {
            return Err(Error::FieldMismatch(
                problem.field().order(),
                repr.field().order(),
            ));
        }
        Ok(RepresentedProblem {
            code_len: (g - m) / 2,
            problem,
            repr,
        })
    }

    pub fn problem(&self) -> &IndexCodingProblem {
        &self.problem
    }

    pub fn code_len(&self) -> usize {
        self.code_len
    }

    pub fn repr(&self) -> &ReprPolymatroid {
        &self.repr
    }

    /// The last `c` elements, standing for the transmitted symbols.
    pub fn transmissions(&self) -> IndexSet {
        let start = self.problem.messages() + self.code_len;
        IndexSet::range(start..start + self.code_len)
    }

    fn rank(&self, set: &[usize]) -> usize {
        self.repr
            .rank_query(set)
            .expect("elements within ground set")
    }
}

/// Builds the `m + 2c` element representation of a code.
pub fn build_polymatroid(code: &IndexCode) -> RepresentedProblem {
    let problem = code.problem();
    let f = problem.field();
    let (m, n, c) = (problem.messages(), problem.block_len(), code.len());
    let mn = m * n;
    let dim = mn + c;
    let mut matrices = Vec::with_capacity(m + 2 * c);
    for k in 0..m {
        let cols: Vec<Vec<u8>> = (0..n)
            .map(|t| {
                let mut v = vec![0u8; dim];
                v[k * n + t] = 1;
                v
            })
            .collect();
        matrices.push(FieldMatrix::from_columns(f, dim, &cols).expect("unit columns"));
    }
    for i in 0..c {
        matrices.push(FieldMatrix::unit_column(f, dim, mn + i));
    }
    let zeta = code
        .matrix()
        .vconcat(&FieldMatrix::identity(f, c))
        .expect("L has c columns");
    for i in 0..c {
        matrices.push(zeta.submatrix_cols(&[i]).expect("column in range"));
    }
    let repr = ReprPolymatroid::new(f, dim, matrices).expect("all blocks have mn + c rows");
    RepresentedProblem {
        problem: problem.clone(),
        code_len: c,
        repr,
    }
}

fn condition_a_violation(inst: &RepresentedProblem) -> Option<String> {
    let (m, n, c) = (
        inst.problem.messages(),
        inst.problem.block_len(),
        inst.code_len,
    );
    let target = m * n + c;
    for k in 0..m {
        let r = inst.rank(&[k]);
        if r != n {
            return Some(format!("r({{{}}}) = {r}, expected {n}", k + 1));
        }
    }
    let head: Vec<usize> = (0..m + c).collect();
    let r = inst.rank(&head);
    if r != target {
        return Some(format!("r([m + c]) = {r}, expected {target}"));
    }
    for i in 0..2 * c {
        let r = inst.rank(&[m + i]);
        if r != 1 {
            return Some(format!("r({{{}}}) = {r}, expected 1", m + i + 1));
        }
    }
    let all: Vec<usize> = (0..m + 2 * c).collect();
    let r = inst.rank(&all);
    if r != target {
        return Some(format!("total rank {r}, expected {target}"));
    }
    None
}

fn condition_b_violation(inst: &RepresentedProblem) -> Option<String> {
    let (m, c) = (inst.problem.messages(), inst.code_len);
    for i in 0..c {
        let with = |extra: &[usize]| {
            let mut s: Vec<usize> = (0..m).collect();
            s.extend_from_slice(extra);
            inst.rank(&s)
        };
        let both = with(&[m + i, m + c + i]);
        let unit = with(&[m + i]);
        let column = with(&[m + c + i]);
        if both != unit || unit != column {
            return Some(format!(
                "transmission {}: ranks {both}, {unit}, {column} are not all equal",
                i + 1
            ));
        }
    }
    None
}

/// (A): `r({k}) = n` for messages, `r([m + c]) = mn + c`, and every other
/// element has rank 1. Total rank `mn + c` is checked as well.
pub fn check_condition_a(inst: &RepresentedProblem) -> bool {
    condition_a_violation(inst).is_none()
}

/// (B): for every transmission `i`,
/// `r([m] ∪ {m+i, m+c+i}) = r([m] ∪ {m+i}) = r([m] ∪ {m+c+i})`.
pub fn check_condition_b(inst: &RepresentedProblem) -> bool {
    condition_b_violation(inst).is_none()
}

/// (C) for one receiver and pattern. With
/// `T = [m + c] - (messages outside the side information) - {m + j : j ∈ pattern}`,
/// the contraction `D / T` must satisfy `r'({demand} ∪ S) = r'(S)` where `S`
/// is the transmission set. Evaluated as `r(X ∪ T) - r(T)` on the lazy oracle.
pub fn condition_c_holds(
    inst: &RepresentedProblem,
    receiver: usize,
    pattern: &ErrorPattern,
) -> Result<bool> {
    let problem = &inst.problem;
    let r = problem.receiver(receiver)?;
    let (m, c) = (problem.messages(), inst.code_len);
    let expected = r.pattern_size(c);
    if pattern.len() != expected {
        return Err(Error::PatternSize {
            got: pattern.len(),
            expected,
        });
    }
    if let Some(&index) = pattern.iter().find(|&&p| p >= c) {
        return Err(Error::IndexOutOfRange { index, universe: c });
    }
    let mut contracted: Vec<usize> = r.side_info.to_vec();
    contracted.extend((0..c).filter(|j| !pattern.contains(*j)).map(|j| m + j));
    let base = inst.rank(&contracted);

    let mut with_s = contracted.clone();
    with_s.extend(inst.transmissions().iter());
    let rank_s = inst.rank(&with_s) - base;
    with_s.push(r.demand);
    let rank_fs = inst.rank(&with_s) - base;
    Ok(rank_fs == rank_s)
}

/// (C) over every receiver and every pattern of size `min(2 delta, c)`;
/// returns the first failure in the same order as code verification.
pub fn check_condition_c(inst: &RepresentedProblem) -> Verdict {
    let c = inst.code_len;
    for (i, r) in inst.problem.receivers().iter().enumerate() {
        let patterns: Vec<ErrorPattern> = error_patterns(c, r.pattern_size(c)).collect();
        let found = patterns
            .par_iter()
            .position_first(|p| !condition_c_holds(inst, i, p).expect("pattern is well-formed"));
        if let Some(idx) = found {
            return Verdict::Invalid(Witness {
                receiver: i,
                pattern: patterns[idx].clone(),
            });
        }
    }
    Verdict::Valid
}

/// Recovers a code matrix from a representation satisfying (A) and (B).
///
/// The columns representing elements `1..m+c` form a basis; every element
/// `m + c + i` is rewritten in that basis as `(L_i ; d_i e_i)` with `d_i != 0`.
/// Scaling row `mn + i` by `d_i^-1` and the unit column of element `m + i`
/// by `d_i` normalizes the lower block to `I_c`, leaving `L` as read off.
/// If (C) also holds the code is valid.
pub fn extract_code(inst: &RepresentedProblem) -> Result<IndexCode> {
    if let Some(detail) = condition_a_violation(inst) {
        return Err(Error::ConditionViolated {
            condition: 'A',
            detail,
        });
    }
    if let Some(detail) = condition_b_violation(inst) {
        return Err(Error::ConditionViolated {
            condition: 'B',
            detail,
        });
    }
    let problem = &inst.problem;
    let f = problem.field();
    let (m, c) = (problem.messages(), inst.code_len);
    let mn = problem.message_len();
    let repr = &inst.repr;

    let mut basis_cols: Vec<Vec<u8>> = Vec::with_capacity(mn + c);
    for k in 0..m {
        let a = repr.matrix(k);
        basis_cols.extend(a.independent_columns().iter().map(|&j| a.column(j)));
    }
    for i in 0..c {
        basis_cols.push(first_nonzero_column(repr.matrix(m + i)));
    }
    let basis = FieldMatrix::from_columns(f, repr.dim(), &basis_cols)?;

    let mut l_cols = Vec::with_capacity(c);
    for i in 0..c {
        let v = first_nonzero_column(repr.matrix(m + c + i));
        let coords = basis.solve(&v)?.ok_or_else(|| Error::ConditionViolated {
            condition: 'A',
            detail: format!("element {} lies outside the span of [m + c]", m + c + i + 1),
        })?;
        let lower = &coords[mn..];
        if lower[i] == 0 || lower.iter().enumerate().any(|(j, &x)| j != i && x != 0) {
            return Err(Error::ConditionViolated {
                condition: 'B',
                detail: format!(
                    "transmission {} does not have a diagonal identity part",
                    i + 1
                ),
            });
        }
        l_cols.push(coords[..mn].to_vec());
    }
    let l = FieldMatrix::from_columns(f, mn, &l_cols)?;
    IndexCode::new(problem.clone(), l)
}

fn first_nonzero_column(a: &FieldMatrix) -> Vec<u8> {
    a.columns()
        .find(|col| col.iter().any(|&x| x != 0))
        .unwrap_or_else(|| vec![0; a.rows()])
}
