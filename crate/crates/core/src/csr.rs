//! Compressed row storage and its column-ordered twin.
//!
//! Layout for an M x N matrix with `nnz` nonzeros:
//! - `values`:       nnz values in row-major order
//! - `col_indices`:  column index of each value, strictly increasing per row
//! - `row_ptr`:      M+1 offsets; row i occupies `row_ptr[i]..row_ptr[i+1]`

use crate::access::AccessCounter;
use crate::coo::CooMatrix;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsrMatrix {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub col_indices: Vec<usize>,
    pub row_ptr: Vec<usize>,
}

/// Compressed column storage: the transpose layout of [`CsrMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct CcsMatrix {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub row_indices: Vec<usize>,
    pub col_ptr: Vec<usize>,
}

impl CsrMatrix {
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
        }
    }

    /// Number of nonzeros in row `i`.
    #[inline]
    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// Column indices and values of row `i` as parallel slices.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_indices[span.clone()], &self.values[span])
    }

    pub fn validate(&self) -> Result<()> {
        if self.row_ptr.len() != self.rows + 1 {
            return Err(Error::InvalidStructure(format!(
                "row_ptr has {} entries, expected {}",
                self.row_ptr.len(),
                self.rows + 1
            )));
        }
        if self.row_ptr[0] != 0 || self.row_ptr[self.rows] != self.nnz() {
            return Err(Error::InvalidStructure(
                "row_ptr must start at 0 and end at nnz".to_string(),
            ));
        }
        if self.values.len() != self.col_indices.len() {
            return Err(Error::InvalidStructure(
                "values and col_indices differ in length".to_string(),
            ));
        }
        for i in 0..self.rows {
            if self.row_ptr[i] > self.row_ptr[i + 1] {
                return Err(Error::InvalidStructure(format!(
                    "row_ptr decreases at row {i}"
                )));
            }
            let (cols, _) = self.row(i);
            for w in cols.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidStructure(format!(
                        "column indices not strictly increasing in row {i}"
                    )));
                }
            }
            if let Some(&last) = cols.last() {
                if last >= self.cols {
                    return Err(Error::IndexOutOfBounds {
                        row: i,
                        col: last,
                        rows: self.rows,
                        cols: self.cols,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                d.set(i, c, v);
            }
        }
        d
    }

    /// Instrumented point lookup: linear scan of row `i` from its start.
    ///
    /// Charges 2 pointer-word reads (both row bounds) plus one index-word
    /// read per scanned element and one value-word read on a hit. The scan
    /// stops at the first index >= `j` since columns are sorted.
    pub fn get_counted(&self, i: usize, j: usize, ctr: &mut AccessCounter) -> Result<f64> {
        Ok(self.probe(i, j, ctr)?.unwrap_or(0.0))
    }

    /// Like [`get_counted`](Self::get_counted) but distinguishes a stored
    /// entry from an absent one.
    pub fn probe(&self, i: usize, j: usize, ctr: &mut AccessCounter) -> Result<Option<f64>> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfBounds {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        ctr.pointer_reads += 2;
        let (start, end) = (self.row_ptr[i], self.row_ptr[i + 1]);
        for p in start..end {
            ctr.element_reads += 1;
            let c = self.col_indices[p];
            if c == j {
                ctr.element_reads += 1;
                return Ok(Some(self.values[p]));
            }
            if c > j {
                break;
            }
        }
        Ok(None)
    }

    /// All stored entries of column `j` in ascending row order, probing each
    /// row with the instrumented linear scan.
    pub fn gather_column(&self, j: usize, ctr: &mut AccessCounter) -> Result<Vec<(usize, f64)>> {
        if j >= self.cols {
            return Err(Error::IndexOutOfBounds {
                row: 0,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for i in 0..self.rows {
            if let Some(v) = self.probe(i, j, ctr)? {
                out.push((i, v));
            }
        }
        Ok(out)
    }
}

impl CcsMatrix {
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row indices and values of column `j`.
    #[inline]
    pub fn col(&self, j: usize) -> (&[usize], &[f64]) {
        let span = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.row_indices[span.clone()], &self.values[span])
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            let (rows, vals) = self.col(j);
            for (&r, &v) in rows.iter().zip(vals) {
                d.set(r, j, v);
            }
        }
        d
    }
}

/// Builds a CSR matrix from triplets, sorting rows and columns.
pub fn coo_to_csr(m: &CooMatrix) -> Result<CsrMatrix> {
    m.validate()?;
    let mut sorted = m.sorted_triplets();
    let nnz = sorted.len();
    let mut row_ptr = vec![0usize; m.rows + 1];
    for &(r, _, _) in &sorted {
        row_ptr[r + 1] += 1;
    }
    for i in 0..m.rows {
        row_ptr[i + 1] += row_ptr[i];
    }
    let mut values = Vec::with_capacity(nnz);
    let mut col_indices = Vec::with_capacity(nnz);
    for (_, c, v) in sorted.drain(..) {
        col_indices.push(c);
        values.push(v);
    }
    Ok(CsrMatrix {
        rows: m.rows,
        cols: m.cols,
        values,
        col_indices,
        row_ptr,
    })
}

pub fn csr_to_coo(m: &CsrMatrix) -> CooMatrix {
    let mut out = CooMatrix::new(m.rows, m.cols);
    for i in 0..m.rows {
        let (cols, vals) = m.row(i);
        for (&c, &v) in cols.iter().zip(vals) {
            out.triplets.push((i, c, v));
        }
    }
    out
}

/// Re-expresses the same logical matrix in column order.
pub fn csr_to_ccs(m: &CsrMatrix) -> Result<CcsMatrix> {
    m.validate()?;
    let nnz = m.nnz();
    let mut col_ptr = vec![0usize; m.cols + 1];
    for &c in &m.col_indices {
        col_ptr[c + 1] += 1;
    }
    for j in 0..m.cols {
        col_ptr[j + 1] += col_ptr[j];
    }
    let mut cursor = col_ptr.clone();
    let mut row_indices = vec![0usize; nnz];
    let mut values = vec![0.0f64; nnz];
    for i in 0..m.rows {
        let (cols, vals) = m.row(i);
        for (&c, &v) in cols.iter().zip(vals) {
            let p = cursor[c];
            row_indices[p] = i;
            values[p] = v;
            cursor[c] += 1;
        }
    }
    Ok(CcsMatrix {
        rows: m.rows,
        cols: m.cols,
        values,
        row_indices,
        col_ptr,
    })
}

/// Transpose, reusing the column-order conversion.
pub fn transpose(m: &CsrMatrix) -> Result<CsrMatrix> {
    let ccs = csr_to_ccs(m)?;
    Ok(CsrMatrix {
        rows: ccs.cols,
        cols: ccs.rows,
        values: ccs.values,
        col_indices: ccs.row_indices,
        row_ptr: ccs.col_ptr,
    })
}

/// Shape, sparsity, and per-row occupancy summary.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixStats {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub density: f64,
    pub row_nnz_min: usize,
    pub row_nnz_mean: f64,
    pub row_nnz_max: usize,
}

pub fn matrix_stats(m: &CsrMatrix) -> MatrixStats {
    let mut min = usize::MAX;
    let mut max = 0usize;
    for i in 0..m.rows {
        let n = m.row_nnz(i);
        min = min.min(n);
        max = max.max(n);
    }
    if m.rows == 0 {
        min = 0;
    }
    MatrixStats {
        rows: m.rows,
        cols: m.cols,
        nnz: m.nnz(),
        density: m.density(),
        row_nnz_min: min,
        row_nnz_mean: if m.rows == 0 {
            0.0
        } else {
            m.nnz() as f64 / m.rows as f64
        },
        row_nnz_max: max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_matrix_row_ptr() {
        let coo = CooMatrix::new(2, 2);
        let csr = coo_to_csr(&coo).unwrap();
        assert_eq!(csr.row_ptr, vec![0, 0, 0]);
        assert_eq!(csr.nnz(), 0);
    }

    #[test]
    fn two_triplets_forced_layout() {
        let coo =
            CooMatrix::from_triplets(2, 2, vec![(0, 1, 5.0), (1, 0, 3.0)]).unwrap();
        let csr = coo_to_csr(&coo).unwrap();
        assert_eq!(csr.values, vec![5.0, 3.0]);
        assert_eq!(csr.col_indices, vec![1, 0]);
        assert_eq!(csr.row_ptr, vec![0, 1, 2]);
    }

    #[test]
    fn duplicate_triplet_names_the_coordinate() {
        let coo =
            CooMatrix::from_triplets(2, 2, vec![(0, 1, 5.0), (0, 1, 3.0)]);
        match coo {
            Err(Error::DuplicateEntry { row: 0, col: 1 }) => {}
            other => panic!("expected duplicate rejection, got {other:?}"),
        }
    }

    #[test]
    fn ccs_of_identity() {
        let coo = CooMatrix::from_triplets(
            3,
            3,
            vec![(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0)],
        )
        .unwrap();
        let ccs = csr_to_ccs(&coo_to_csr(&coo).unwrap()).unwrap();
        assert_eq!(ccs.col_ptr, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ccs_single_element() {
        let coo = CooMatrix::from_triplets(2, 3, vec![(0, 2, 7.0)]).unwrap();
        let ccs = csr_to_ccs(&coo_to_csr(&coo).unwrap()).unwrap();
        assert_eq!(ccs.col_ptr, vec![0, 0, 0, 1]);
        assert_eq!(ccs.row_indices, vec![0]);
        assert_eq!(ccs.values, vec![7.0]);
    }

    #[test]
    fn stats_of_empty_and_identity() {
        let empty = coo_to_csr(&CooMatrix::new(5, 5)).unwrap();
        let s = matrix_stats(&empty);
        assert_eq!(s.density, 0.0);
        assert_eq!((s.row_nnz_min, s.row_nnz_max), (0, 0));
        assert_eq!(s.row_nnz_mean, 0.0);

        let eye = coo_to_csr(
            &CooMatrix::from_triplets(
                4,
                4,
                (0..4).map(|i| (i, i, 1.0)).collect(),
            )
            .unwrap(),
        )
        .unwrap();
        let s = matrix_stats(&eye);
        assert_eq!(s.density, 0.25);
        assert_eq!((s.row_nnz_min, s.row_nnz_max), (1, 1));
        assert_eq!(s.row_nnz_mean, 1.0);
    }

    #[test]
    fn first_column_probe_reads_at_most_one_index() {
        let coo = CooMatrix::from_triplets(2, 4, vec![(0, 2, 3.0), (1, 0, 4.0)]).unwrap();
        let csr = coo_to_csr(&coo).unwrap();
        let mut ctr = AccessCounter::default();
        assert_eq!(csr.get_counted(0, 0, &mut ctr).unwrap(), 0.0);
        assert_eq!(ctr.element_reads, 1);
        let mut ctr = AccessCounter::default();
        assert_eq!(csr.get_counted(1, 0, &mut ctr).unwrap(), 4.0);
        // one index read plus the value read for the hit
        assert_eq!(ctr.element_reads, 2);
    }

    #[test]
    fn scan_cost_tracks_half_row_population() {
        // wide uniform rows at 4% density: a random probe scans about half
        // of the ~480 nonzeros per row
        use crate::synth::{generate_synthetic, SynthProfile};
        let p = SynthProfile::uniform(40, 12_000, 0.04, 13);
        let m = coo_to_csr(&generate_synthetic(&p).unwrap()).unwrap();
        let mut ctr = AccessCounter::default();
        let mut probes = 0u64;
        let mut state = 0x12345678u64;
        for _ in 0..4000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let i = (state >> 33) as usize % m.rows;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let j = (state >> 33) as usize % m.cols;
            m.get_counted(i, j, &mut ctr).unwrap();
            probes += 1;
        }
        let mean = ctr.element_reads as f64 / probes as f64;
        assert!(
            (192.0..=288.0).contains(&mean),
            "mean element reads {mean} outside [192, 288]"
        );
    }

    #[test]
    fn gather_rejects_out_of_range_column() {
        let m = coo_to_csr(&CooMatrix::new(3, 4)).unwrap();
        let mut ctr = AccessCounter::default();
        assert!(matches!(
            m.gather_column(4, &mut ctr),
            Err(Error::IndexOutOfBounds { .. })
        ));
        assert!(matches!(
            m.get_counted(3, 0, &mut ctr),
            Err(Error::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn transpose_round_trips() {
        let coo = CooMatrix::from_triplets(
            3,
            5,
            vec![(0, 4, 1.0), (1, 0, -2.0), (2, 2, 3.0), (2, 3, 4.0)],
        )
        .unwrap();
        let m = coo_to_csr(&coo).unwrap();
        let t = transpose(&m).unwrap();
        assert_eq!((t.rows, t.cols), (5, 3));
        assert_eq!(transpose(&t).unwrap(), m);
    }

    fn arb_coo(max_dim: usize) -> impl Strategy<Value = CooMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::btree_set((0..r, 0..c), 0..=(r * c).min(60)).prop_map(
                move |keys| {
                    let triplets = keys
                        .into_iter()
                        .enumerate()
                        .map(|(n, (i, j))| (i, j, (n % 15) as f64 - 7.0))
                        .collect();
                    CooMatrix {
                        rows: r,
                        cols: c,
                        triplets,
                    }
                },
            )
        })
    }

    proptest! {
        #[test]
        fn coo_csr_round_trip_preserves_multiset(coo in arb_coo(12)) {
            let csr = coo_to_csr(&coo).unwrap();
            csr.validate().unwrap();
            let back = csr_to_coo(&csr);
            prop_assert_eq!(back.sorted_triplets(), coo.sorted_triplets());
        }

        #[test]
        fn ccs_matches_csr_elementwise(coo in arb_coo(10)) {
            let csr = coo_to_csr(&coo).unwrap();
            let ccs = csr_to_ccs(&csr).unwrap();
            prop_assert_eq!(csr.to_dense(), ccs.to_dense());
        }
    }
}
