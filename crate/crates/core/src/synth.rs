//! Deterministic synthetic sparse matrix generation.
//!
//! Profiles mirror how public sparse datasets are usually summarized:
//! dimensions, density, and per-row nonzero counts (min, mean, max). Row
//! populations are drawn binomially around the mean and clamped to the
//! stated range; column positions are uniform without replacement. Values
//! are small nonzero integers so downstream oracle comparisons stay exact
//! in 64-bit floats.

use crate::coo::CooMatrix;
use crate::error::{Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

/// Target shape for a generated matrix. Pure data; the same profile always
/// produces the same matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthProfile {
    pub rows: usize,
    pub cols: usize,
    /// Target nnz / (rows * cols), in (0, 1].
    pub target_density: f64,
    pub nz_per_row_min: usize,
    pub nz_per_row_mean: f64,
    pub nz_per_row_max: usize,
    pub seed: u64,
}

impl SynthProfile {
    /// Profile with the per-row range left open: mean = cols * density,
    /// min = 0, max = cols.
    pub fn uniform(rows: usize, cols: usize, density: f64, seed: u64) -> Self {
        SynthProfile {
            rows,
            cols,
            target_density: density,
            nz_per_row_min: 0,
            nz_per_row_mean: cols as f64 * density,
            nz_per_row_max: cols,
            seed,
        }
    }

    pub fn with_row_range(mut self, min: usize, mean: f64, max: usize) -> Self {
        self.nz_per_row_min = min;
        self.nz_per_row_mean = mean;
        self.nz_per_row_max = max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InfeasibleProfile("empty dimensions".to_string()));
        }
        if !(self.target_density > 0.0 && self.target_density <= 1.0) {
            return Err(Error::InfeasibleProfile(format!(
                "density {} outside (0, 1]",
                self.target_density
            )));
        }
        if self.nz_per_row_mean > self.cols as f64 {
            return Err(Error::InfeasibleProfile(format!(
                "mean {} nonzeros per row exceeds {} columns",
                self.nz_per_row_mean, self.cols
            )));
        }
        if (self.nz_per_row_min as f64) > self.nz_per_row_mean
            || self.nz_per_row_mean > self.nz_per_row_max as f64
            || self.nz_per_row_max > self.cols
        {
            return Err(Error::InfeasibleProfile(format!(
                "row range ({}, {}, {}) not ordered within 0..={}",
                self.nz_per_row_min, self.nz_per_row_mean, self.nz_per_row_max, self.cols
            )));
        }
        let implied = self.cols as f64 * self.target_density;
        if implied > 0.0 && (self.nz_per_row_mean - implied).abs() > 0.1 * implied {
            return Err(Error::InfeasibleProfile(format!(
                "mean {} is more than 10% away from cols*density = {}",
                self.nz_per_row_mean, implied
            )));
        }
        Ok(())
    }
}

/// Generates the matrix described by `profile`. Deterministic: the seed
/// fully fixes the output.
pub fn generate_synthetic(profile: &SynthProfile) -> Result<CooMatrix> {
    profile.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(profile.seed);
    let p = (profile.nz_per_row_mean / profile.cols as f64).min(1.0);
    let binom = Binomial::new(profile.cols as u64, p)
        .map_err(|e| Error::InfeasibleProfile(e.to_string()))?;

    let mut m = CooMatrix::new(profile.rows, profile.cols);
    for i in 0..profile.rows {
        let drawn = binom.sample(&mut rng) as usize;
        let k = drawn.clamp(profile.nz_per_row_min, profile.nz_per_row_max);
        let mut cols: Vec<usize> = sample(&mut rng, profile.cols, k).into_vec();
        cols.sort_unstable();
        for c in cols {
            let mag: f64 = rng.gen_range(1..=8) as f64;
            let v = if rng.gen_bool(0.5) { mag } else { -mag };
            m.triplets.push((i, c, v));
        }
    }
    Ok(m)
}
