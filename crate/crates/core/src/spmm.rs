//! Software SpMM built from sorted-stream index matching.
//!
//! A dot product of two sparse vectors advances through both index streams
//! one comparison per cycle: equal indices fire a multiply-accumulate and
//! consume both operands, otherwise only the smaller-index operand is
//! consumed. The row-by-column multiply gathers each column of the second
//! operand once and reuses it across every row of the first.

use crate::access::AccessCounter;
use crate::coo::CooMatrix;
use crate::csr::{coo_to_csr, CsrMatrix};
use crate::error::{Error, Result};
use crate::incrs::InCrsMatrix;

/// Sparse vector as parallel index/value arrays with strictly increasing
/// indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl SparseVector {
    pub fn new(indices: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(Error::InvalidStructure(
                "index and value arrays differ in length".to_string(),
            ));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStructure(
                "indices must be strictly increasing".to_string(),
            ));
        }
        Ok(SparseVector { indices, values })
    }

    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<Self> {
        SparseVector::new(
            pairs.iter().map(|&(i, _)| i).collect(),
            pairs.iter().map(|&(_, v)| v).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn dot(&self, other: &SparseVector) -> DotResult {
        sparse_dot(&self.indices, &self.values, &other.indices, &other.values)
    }
}

/// Outcome of one index-matching dot product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotResult {
    pub value: f64,
    /// Comparison iterations; one per cycle at a mesh node.
    pub cycles: u64,
    pub a_consumed: usize,
    pub b_consumed: usize,
}

/// Merges two sorted index streams, accumulating products of matching
/// indices. Terminates when either stream is exhausted: the remaining
/// elements of the other stream can no longer match.
pub fn sparse_dot(
    a_idx: &[usize],
    a_val: &[f64],
    b_idx: &[usize],
    b_val: &[f64],
) -> DotResult {
    debug_assert_eq!(a_idx.len(), a_val.len());
    debug_assert_eq!(b_idx.len(), b_val.len());
    let mut value = 0.0;
    let mut cycles = 0u64;
    let mut i = 0usize;
    let mut j = 0usize;
    while i < a_idx.len() && j < b_idx.len() {
        cycles += 1;
        if a_idx[i] == b_idx[j] {
            value += a_val[i] * b_val[j];
            i += 1;
            j += 1;
        } else if a_idx[i] > b_idx[j] {
            j += 1;
        } else {
            i += 1;
        }
    }
    DotResult {
        value,
        cycles,
        a_consumed: i,
        b_consumed: j,
    }
}

/// Column access for the second SpMM operand; implemented by both storage
/// formats so the multiply is generic over them.
pub trait ColumnSource {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn gather_column(&self, j: usize, ctr: &mut AccessCounter) -> Result<Vec<(usize, f64)>>;
}

impl ColumnSource for CsrMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn gather_column(&self, j: usize, ctr: &mut AccessCounter) -> Result<Vec<(usize, f64)>> {
        CsrMatrix::gather_column(self, j, ctr)
    }
}

impl ColumnSource for InCrsMatrix {
    fn rows(&self) -> usize {
        self.base.rows
    }
    fn cols(&self) -> usize {
        self.base.cols
    }
    fn gather_column(&self, j: usize, ctr: &mut AccessCounter) -> Result<Vec<(usize, f64)>> {
        InCrsMatrix::gather_column(self, j, ctr)
    }
}

/// Row-by-column sparse product. The counter records the column-side
/// accesses of `b`; each column is gathered once and shared across all rows
/// of `a`, so the counter total does not depend on `a.rows`. Products that
/// cancel to exact zero are dropped from the output.
pub fn spmm<B: ColumnSource>(
    a: &CsrMatrix,
    b: &B,
    ctr: &mut AccessCounter,
) -> Result<CsrMatrix> {
    if a.cols != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let mut out = CooMatrix::new(a.rows, b.cols());
    for j in 0..b.cols() {
        let col = b.gather_column(j, ctr)?;
        let col_idx: Vec<usize> = col.iter().map(|&(r, _)| r).collect();
        let col_val: Vec<f64> = col.iter().map(|&(_, v)| v).collect();
        for i in 0..a.rows {
            let (row_idx, row_val) = a.row(i);
            let d = sparse_dot(row_idx, row_val, &col_idx, &col_val);
            if d.value != 0.0 {
                out.triplets.push((i, j, d.value));
            }
        }
    }
    coo_to_csr(&out)
}

/// `A * A^T`, reading columns of the transpose as rows of `a`.
pub fn spmm_a_at(a: &CsrMatrix) -> Result<CsrMatrix> {
    let mut out = CooMatrix::new(a.rows, a.rows);
    for j in 0..a.rows {
        let (col_idx, col_val) = a.row(j);
        for i in 0..a.rows {
            let (row_idx, row_val) = a.row(i);
            let d = sparse_dot(row_idx, row_val, col_idx, col_val);
            if d.value != 0.0 {
                out.triplets.push((i, j, d.value));
            }
        }
    }
    coo_to_csr(&out)
}
