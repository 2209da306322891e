//! Dense min-plus matrices and their basic algebra.

use std::fmt;

use crate::error::{Result, TropError};
use crate::scalar::TropScalar;

/// A `d × n` matrix of exact rationals under `(min, +)` semantics.
///
/// Rows and columns are 0-indexed. Values are immutable after construction;
/// every operation returns a new matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TropScalar>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<TropScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(TropError::shape(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(TropError::shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(TropMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(TropError::shape(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        TropMatrix::new(d, n, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        TropMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| TropScalar::from(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> TropScalar,
    ) -> Result<Self> {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        TropMatrix::new(rows, cols, data)
    }

    /// A single column `d × 1`.
    pub fn column_vector(v: &[TropScalar]) -> Result<Self> {
        TropMatrix::new(v.len(), 1, v.to_vec())
    }

    /// A single row `1 × n`.
    pub fn row_vector(v: &[TropScalar]) -> Result<Self> {
        TropMatrix::new(1, v.len(), v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[TropScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<TropScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<TropScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> TropMatrix {
        TropMatrix {
            rows: self.cols,
            cols: self.rows,
            data: (0..self.cols)
                .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j).clone())
                .collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<TropMatrix> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(TropError::shape("submatrix index out of range"));
        }
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        TropMatrix::new(rows.len(), cols.len(), data)
    }

    pub fn map(&self, f: impl Fn(&TropScalar) -> TropScalar) -> TropMatrix {
        TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn negate(&self) -> TropMatrix {
        self.map(|x| -x)
    }

    /// Tropically multiplies row `i` by `c`, i.e. adds `c` to every entry.
    pub fn add_to_row(&self, i: usize, c: &TropScalar) -> TropMatrix {
        let mut out = self.clone();
        for j in 0..self.cols {
            out.data[i * self.cols + j] += c;
        }
        out
    }

    pub fn add_to_col(&self, j: usize, c: &TropScalar) -> TropMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i * self.cols + j] += c;
        }
        out
    }

    /// Appends the columns of `other` to the right of `self`.
    pub fn hconcat(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.rows != other.rows {
            return Err(TropError::shape("hconcat needs equal row counts"));
        }
        TropMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_zero_one(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.is_zero() || *x == TropScalar::from(1))
    }

    pub fn min_entry(&self) -> &TropScalar {
        self.data.iter().min().expect("matrix is nonempty")
    }

    pub fn max_entry(&self) -> &TropScalar {
        self.data.iter().max().expect("matrix is nonempty")
    }

    /// `M ⊙ x` for a column vector `x` given as a slice.
    pub fn apply(&self, x: &[TropScalar]) -> Result<Vec<TropScalar>> {
        if x.len() != self.cols {
            return Err(TropError::shape(format!(
                "vector of length {} cannot multiply a {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(m, xj)| m + xj)
                    .min()
                    .expect("cols >= 1")
            })
            .collect())
    }
}

impl fmt::Debug for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TropMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Tropical matrix product: `(A ⊙ B)_ij = min_k (A_ik + B_kj)`.
pub fn trop_matmul(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    if a.cols != b.rows {
        return Err(TropError::shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    TropMatrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols)
            .map(|k| a.get(i, k) + b.get(k, j))
            .min()
            .expect("inner dimension >= 1")
    })
}

/// Tropical matrix sum: entrywise minimum.
pub fn trop_add(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    if a.shape() != b.shape() {
        return Err(TropError::shape(format!(
            "cannot add {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    TropMatrix::new(
        a.rows,
        a.cols,
        a.data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| x.oplus(y))
            .collect(),
    )
}

/// Canonical representative in `TP^{d-1}`: shift so that the minimum
/// coordinate is zero.
pub fn normalize_projective(v: &[TropScalar]) -> Vec<TropScalar> {
    match v.iter().min() {
        None => Vec::new(),
        Some(m) => {
            let m = m.clone();
            v.iter().map(|x| x - &m).collect()
        }
    }
}

/// Factors `M = X ⊙ Y` with `X` a column and `Y` a row, if possible.
///
/// The factorization is normalized by `y_1 = 0`, so `X` is the first
/// column of `M`. Returns `None` when `M` is not tropically rank one.
pub fn rank_one_factor(m: &TropMatrix) -> Option<(Vec<TropScalar>, Vec<TropScalar>)> {
    let x = m.col(0);
    let y: Vec<TropScalar> = m.row(0).iter().map(|v| v - m.get(0, 0)).collect();
    let ok = (0..m.rows).all(|i| (0..m.cols).all(|j| &x[i] + &y[j] == *m.get(i, j)));
    ok.then_some((x, y))
}

/// The classical identity `C_n`: ones on the diagonal, zeros elsewhere.
pub fn classical_identity(n: usize) -> Result<TropMatrix> {
    if n == 0 {
        return Err(TropError::domain("classical identity needs n >= 1"));
    }
    TropMatrix::from_fn(n, n, |i, j| TropScalar::from(i64::from(i == j)))
}

/// Outer tropical product `X ⊙ Yᵀ` of a column and a row.
pub fn outer(x: &[TropScalar], y: &[TropScalar]) -> Result<TropMatrix> {
    TropMatrix::from_fn(x.len(), y.len(), |i, j| &x[i] + &y[j])
}
