use std::fmt;

use crate::error::{Error, Result};

use super::{IndexSet, PrimeField};

/// Dense row-major matrix over a prime field.
///
/// Every operation is non-mutating: elementary operations return a modified
/// copy so representations can be compared before and after.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting entries outside `0..q`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let mut out = Vec::with_capacity(data.len());
        for (k, &value) in data.iter().enumerate() {
            if !field.contains(value) {
                return Err(Error::EntryOutOfField {
                    row: k / cols.max(1),
                    col: k % cols.max(1),
                    value,
                    q: field.order(),
                });
            }
            out.push(value as u8);
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            data: out,
        })
    }

    /// Convenience for literals: `rows` must all have the same length.
    pub fn from_rows(field: PrimeField, rows: &[&[u32]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// One column per entry of `columns`, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u8>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, &v) in col.iter().enumerate() {
                if !field.contains(v as u32) {
                    return Err(Error::EntryOutOfField {
                        row: i,
                        col: j,
                        value: v as u32,
                        q: field.order(),
                    });
                }
                m.data[i * cols + j] = v;
            }
        }
        Ok(m)
    }

    /// Column vector `e_index` of length `len`.
    pub fn unit_column(field: PrimeField, len: usize, index: usize) -> Self {
        let mut m = Self::zeros(field, len, 1);
        m.data[index] = 1;
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.cols).map(|c| self.column(c))
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Ordinary product `self * rhs`.
    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.mul_add(a, rhs.get(k, j), out.data[idx]);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `y * self`.
    pub fn left_mul_vec(&self, y: &[u8]) -> Result<Vec<u8>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a matrix with {} rows",
                y.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut out = vec![0u8; self.cols];
        for (r, &a) in y.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(a, v, *o);
            }
        }
        Ok(out)
    }

    /// Dimension of the column span.
    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        forward_eliminate(self.field, &mut data, self.rows, self.cols)
    }

    /// Reduced row-echelon form with first-nonzero pivoting, plus the pivot
    /// columns in increasing order.
    pub fn rref(&self) -> (FieldMatrix, IndexSet) {
        let mut out = self.clone();
        let pivots = reduce(self.field, &mut out.data, self.rows, self.cols);
        (out, IndexSet::from_sorted_unchecked(pivots))
    }

    /// Whether `v` lies in the column span.
    pub fn in_span(&self, v: &[u8]) -> Result<bool> {
        let aug = self.with_column(v)?;
        Ok(aug.rank() == self.rank())
    }

    /// Some `x` with `self * x = v`, free variables fixed to zero; `None` if
    /// `v` is outside the column span.
    pub fn solve(&self, v: &[u8]) -> Result<Option<Vec<u8>>> {
        let aug = self.with_column(v)?;
        let (reduced, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = reduced.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> Result<FieldMatrix> {
        check_indices(rows, self.rows)?;
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Ok(FieldMatrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Result<FieldMatrix> {
        check_indices(cols, self.cols)?;
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: cols.len(),
            data,
        })
    }

    /// `[self | rhs]`.
    pub fn hconcat(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {} rows with {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(rhs.row(r));
        }
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `self` stacked on top of `rhs`.
    pub fn vconcat(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "vconcat of {} columns with {} columns",
                self.cols, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Horizontal concatenation of any number of blocks sharing `rows`.
    pub fn hconcat_all<'a>(
        field: PrimeField,
        rows: usize,
        blocks: impl IntoIterator<Item = &'a FieldMatrix>,
    ) -> Result<FieldMatrix> {
        let blocks: Vec<&FieldMatrix> = blocks.into_iter().collect();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field.order(), b.field.order()));
            }
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "block with {} rows in a {rows}-row concatenation",
                    b.rows
                )));
            }
            for r in 0..rows {
                out.data[r * cols + offset..r * cols + offset + b.cols].copy_from_slice(b.row(r));
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Result<FieldMatrix> {
        check_indices(&[a], self.rows)?;
        check_indices(&[b], self.rows)?;
        let mut out = self.clone();
        if a != b {
            for c in 0..self.cols {
                out.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
        Ok(out)
    }

    pub fn scale_row(&self, row: usize, factor: u8) -> Result<FieldMatrix> {
        check_indices(&[row], self.rows)?;
        self.check_scale(factor)?;
        let mut out = self.clone();
        for c in 0..self.cols {
            let idx = row * self.cols + c;
            out.data[idx] = self.field.mul(out.data[idx], factor);
        }
        Ok(out)
    }

    pub fn scale_col(&self, col: usize, factor: u8) -> Result<FieldMatrix> {
        check_indices(&[col], self.cols)?;
        self.check_scale(factor)?;
        let mut out = self.clone();
        for r in 0..self.rows {
            let idx = r * self.cols + col;
            out.data[idx] = self.field.mul(out.data[idx], factor);
        }
        Ok(out)
    }

    /// Replaces row `target` by `target + source`.
    pub fn add_row(&self, target: usize, source: usize) -> Result<FieldMatrix> {
        self.add_scaled_row(target, source, 1)
    }

    /// Replaces row `target` by `target + factor * source`.
    pub fn add_scaled_row(&self, target: usize, source: usize, factor: u8) -> Result<FieldMatrix> {
        check_indices(&[target], self.rows)?;
        check_indices(&[source], self.rows)?;
        if target == source {
            return Err(Error::DimensionMismatch(
                "row cannot be added to itself".into(),
            ));
        }
        if !self.field.contains(factor as u32) {
            return Err(Error::EntryOutOfField {
                row: source,
                col: 0,
                value: factor as u32,
                q: self.field.order(),
            });
        }
        let mut out = self.clone();
        for c in 0..self.cols {
            let idx = target * self.cols + c;
            out.data[idx] = self
                .field
                .mul_add(factor, self.get(source, c), out.data[idx]);
        }
        Ok(out)
    }

    /// Deletes a zero row, refusing nonzero rows and the last remaining row.
    pub fn delete_zero_row(&self, row: usize) -> Result<FieldMatrix> {
        check_indices(&[row], self.rows)?;
        if self.row(row).iter().any(|&v| v != 0) {
            return Err(Error::RowNotDeletable(row, "row is nonzero"));
        }
        if self.rows == 1 {
            return Err(Error::RowNotDeletable(row, "it is the only row"));
        }
        let keep: Vec<usize> = (0..self.rows).filter(|&r| r != row).collect();
        self.submatrix_rows(&keep)
    }

    /// Columns in order, keeping each only if it raises the rank. The result
    /// has full column rank and the same span.
    pub fn independent_columns(&self) -> IndexSet {
        let (_, pivots) = self.rref();
        pivots
    }

    fn with_column(&self, v: &[u8]) -> Result<FieldMatrix> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a matrix with {} rows",
                v.len(),
                self.rows
            )));
        }
        let col = FieldMatrix::from_columns(self.field, self.rows, &[v.to_vec()])?;
        self.hconcat(&col)
    }

    fn same_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        Ok(())
    }

    fn check_scale(&self, factor: u8) -> Result<()> {
        if factor == 0 {
            return Err(Error::ZeroScale);
        }
        if !self.field.contains(factor as u32) {
            return Err(Error::EntryOutOfField {
                row: 0,
                col: 0,
                value: factor as u32,
                q: self.field.order(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FieldMatrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

fn check_indices(indices: &[usize], universe: usize) -> Result<()> {
    match indices.iter().find(|&&i| i >= universe) {
        Some(&index) => Err(Error::IndexOutOfRange { index, universe }),
        None => Ok(()),
    }
}

/// Forward elimination only; returns the rank.
pub(crate) fn forward_eliminate(f: PrimeField, data: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        swap_row_slices(data, cols, found, pivot_row);
        let inv = f
            .inv(data[pivot_row * cols + col])
            .expect("pivot is nonzero");
        for r in pivot_row + 1..rows {
            let lead = data[r * cols + col];
            if lead != 0 {
                let factor = f.neg(f.mul(lead, inv));
                eliminate(f, data, cols, r, pivot_row, factor, col);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Full reduction to RREF; returns pivot columns.
fn reduce(f: PrimeField, data: &mut [u8], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        swap_row_slices(data, cols, found, pivot_row);
        let inv = f
            .inv(data[pivot_row * cols + col])
            .expect("pivot is nonzero");
        for c in col..cols {
            let idx = pivot_row * cols + c;
            data[idx] = f.mul(data[idx], inv);
        }
        for r in 0..rows {
            let lead = data[r * cols + col];
            if r != pivot_row && lead != 0 {
                eliminate(f, data, cols, r, pivot_row, f.neg(lead), col);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

fn swap_row_slices(data: &mut [u8], cols: usize, a: usize, b: usize) {
    if a != b {
        for c in 0..cols {
            data.swap(a * cols + c, b * cols + c);
        }
    }
}

/// `row[target] += factor * row[source]`, from column `start` on.
#[inline]
fn eliminate(
    f: PrimeField,
    data: &mut [u8],
    cols: usize,
    target: usize,
    source: usize,
    factor: u8,
    start: usize,
) {
    for c in start..cols {
        let s = data[source * cols + c];
        if s != 0 {
            let idx = target * cols + c;
            data[idx] = f.mul_add(factor, s, data[idx]);
        }
    }
}
