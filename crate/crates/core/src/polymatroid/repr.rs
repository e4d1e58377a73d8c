use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, IndexSet, PrimeField};

use super::table::{RankTable, TABLE_CAP};

/// Discrete polymatroid given by subspaces `V_i = colspan(A_i)` of GF(q)^dim.
/// `r(X)` is the rank of the horizontal concatenation of `A_i, i ∈ X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprPolymatroid {
    field: PrimeField,
    dim: usize,
    matrices: Vec<FieldMatrix>,
}

impl ReprPolymatroid {
    pub fn new(field: PrimeField, dim: usize, matrices: Vec<FieldMatrix>) -> Result<Self> {
        for (i, a) in matrices.iter().enumerate() {
            if a.field() != field {
                return Err(Error::FieldMismatch(field.order(), a.field().order()));
            }
            if a.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "element {} has {} rows, expected {dim}",
                    i + 1,
                    a.rows()
                )));
            }
        }
        Ok(ReprPolymatroid {
            field,
            dim,
            matrices,
        })
    }

    /// Infers `dim` from the first matrix; an empty list has `dim = 0`.
    pub fn from_matrices(field: PrimeField, matrices: Vec<FieldMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, FieldMatrix::rows);
        Self::new(field, dim, matrices)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Row count shared by every `A_i`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ground_size(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, element: usize) -> &FieldMatrix {
        &self.matrices[element]
    }

    pub fn matrices(&self) -> &[FieldMatrix] {
        &self.matrices
    }

    /// Lazy rank oracle; `r(∅) = 0`.
    pub fn rank_query(&self, set: &[usize]) -> Result<usize> {
        if let Some(&index) = set.iter().find(|&&i| i >= self.matrices.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                universe: self.matrices.len(),
            });
        }
        if set.is_empty() {
            return Ok(0);
        }
        let concat =
            FieldMatrix::hconcat_all(self.field, self.dim, set.iter().map(|&i| &self.matrices[i]))?;
        Ok(concat.rank())
    }

    pub(crate) fn rank_of_mask(&self, mask: u64) -> usize {
        let set: Vec<usize> = (0..self.matrices.len())
            .filter(|i| mask >> i & 1 == 1)
            .collect();
        self.rank_query(&set).expect("mask within ground set")
    }

    /// Materializes the rank function over every subset.
    pub fn to_table(&self, cap: usize) -> Result<RankTable> {
        let m = self.matrices.len();
        let cap = cap.min(TABLE_CAP);
        if m > cap {
            return Err(Error::CapExceeded { size: m, cap });
        }
        let ranks: Vec<u32> = (0..1u64 << m)
            .into_par_iter()
            .map(|mask| self.rank_of_mask(mask) as u32)
            .collect();
        RankTable::new(m, ranks)
    }

    /// `[A_1 A_2 ... A_m]`.
    pub fn concatenation(&self) -> FieldMatrix {
        FieldMatrix::hconcat_all(self.field, self.dim, &self.matrices).expect("blocks share dim")
    }

    /// Splits `concat` back into blocks with the current column widths. The
    /// row count may differ (row deletion is a valid operation).
    pub fn with_concatenation(&self, concat: &FieldMatrix) -> Result<ReprPolymatroid> {
        let total: usize = self.matrices.iter().map(FieldMatrix::cols).sum();
        if concat.cols() != total {
            return Err(Error::DimensionMismatch(format!(
                "concatenation has {} columns, representation has {total}",
                concat.cols()
            )));
        }
        let mut offset = 0;
        let mut blocks = Vec::with_capacity(self.matrices.len());
        for a in &self.matrices {
            let cols: Vec<usize> = (offset..offset + a.cols()).collect();
            blocks.push(concat.submatrix_cols(&cols)?);
            offset += a.cols();
        }
        ReprPolymatroid::new(self.field, concat.rows(), blocks)
    }

    /// Same polymatroid without `element`.
    pub fn delete(&self, element: usize) -> Result<ReprPolymatroid> {
        if element >= self.matrices.len() {
            return Err(Error::IndexOutOfRange {
                index: element,
                universe: self.matrices.len(),
            });
        }
        let mut matrices = self.matrices.clone();
        matrices.remove(element);
        ReprPolymatroid::new(self.field, self.dim, matrices)
    }
}

/// Representation of `D / e`.
///
/// Row operations on the whole concatenation turn `A_e` into distinct unit
/// columns: each column of `A_e` pivots on the first row that is nonzero and
/// not yet a pivot row (rows stay in place), and columns without such a row
/// are dependent and dropped. The pivot rows are then deleted from every
/// other `A_i`.
pub fn contract_representation(repr: &ReprPolymatroid, element: usize) -> Result<ReprPolymatroid> {
    let m = repr.ground_size();
    if element >= m {
        return Err(Error::IndexOutOfRange {
            index: element,
            universe: m,
        });
    }
    let f = repr.field();
    let offset: usize = repr.matrices()[..element]
        .iter()
        .map(FieldMatrix::cols)
        .sum();
    let width = repr.matrix(element).cols();
    let mut concat = repr.concatenation();
    let mut pivot_rows: Vec<usize> = Vec::new();

    for col in offset..offset + width {
        let Some(pivot) =
            (0..concat.rows()).find(|r| !pivot_rows.contains(r) && concat.get(*r, col) != 0)
        else {
            continue;
        };
        let inv = f.inv(concat.get(pivot, col)).expect("pivot is nonzero");
        concat = concat.scale_row(pivot, inv)?;
        for r in 0..concat.rows() {
            let lead = concat.get(r, col);
            if r != pivot && lead != 0 {
                concat = concat.add_scaled_row(r, pivot, f.neg(lead))?;
            }
        }
        pivot_rows.push(pivot);
    }

    let normalized = repr.with_concatenation(&concat)?;
    let keep = IndexSet::from_unsorted(pivot_rows, repr.dim())?.complement(repr.dim());
    let matrices = normalized
        .matrices()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != element)
        .map(|(_, a)| a.submatrix_rows(&keep))
        .collect::<Result<Vec<_>>>()?;
    ReprPolymatroid::new(f, keep.len(), matrices)
}
