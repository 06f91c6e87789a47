//! Coordinate-list matrices: the interchange and build format.

use crate::error::{Error, Result};

/// Sparse matrix as a list of (row, col, value) triplets.
///
/// Duplicate positions are rejected rather than summed; silent summation
/// hides generator bugs upstream.
#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(usize, usize, f64)>,
}

impl CooMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        CooMatrix {
            rows,
            cols,
            triplets: Vec::new(),
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        let m = CooMatrix {
            rows,
            cols,
            triplets,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::IndexOutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.triplets.push((row, col, value));
        Ok(())
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    /// Checks bounds and uniqueness of every position.
    pub fn validate(&self) -> Result<()> {
        for &(r, c, _) in &self.triplets {
            if r >= self.rows || c >= self.cols {
                return Err(Error::IndexOutOfBounds {
                    row: r,
                    col: c,
                    rows: self.rows,
                    cols: self.cols,
                });
            }
        }
        let mut keys: Vec<(usize, usize)> = self.triplets.iter().map(|&(r, c, _)| (r, c)).collect();
        keys.sort_unstable();
        for w in keys.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEntry {
                    row: w[0].0,
                    col: w[0].1,
                });
            }
        }
        Ok(())
    }

    /// Triplets sorted by (row, col); handy for multiset comparisons.
    pub fn sorted_triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut t = self.triplets.clone();
        t.sort_by_key(|&(r, c, _)| (r, c));
        t
    }
}
