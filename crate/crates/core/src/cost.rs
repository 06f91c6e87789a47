//! Analytical access-cost models for sparse formats, and the measured
//! counterpart that replays identical column gathers under CSR and
//! indexed-CSR storage.

use crate::access::AccessCounter;
use crate::csr::CsrMatrix;
use crate::error::Result;
use crate::incrs::{build_incrs, InCrsConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Format families that share a point-lookup cost law. Only CSR and
/// indexed-CSR exist as data structures here; the others are covered by the
/// model alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatCostModel {
    /// Row storage scanned from the row start: ELLPACK, list-of-lists, CSR.
    EllpackLilCrs,
    /// Jagged-diagonal storage, where a row's nonzeros are strided and each
    /// one is located through the diagonal pointer vector.
    Jad,
    /// Pointerless sequential storage: coordinate list, single linear list.
    CooSll,
    /// CSR with per-section counter words; cost depends on the block size.
    InCrs { block_size: usize },
}

/// Expected word reads to locate one arbitrary element of an M x N matrix
/// with density `d`.
pub fn expected_locate_cost(family: FormatCostModel, rows: usize, cols: usize, d: f64) -> f64 {
    let n = cols as f64;
    let m = rows as f64;
    match family {
        FormatCostModel::EllpackLilCrs => 0.5 * n * d,
        FormatCostModel::Jad => n * d,
        FormatCostModel::CooSll => 0.5 * m * n * d,
        FormatCostModel::InCrs { block_size } => block_size as f64 / 2.0 + 1.0,
    }
}

/// Predicted CSR-to-indexed-CSR access reduction for one column read:
/// `N*D / (b + 2)`.
pub fn ma_ratio_estimate(cols: usize, d: f64, block_size: usize) -> f64 {
    cols as f64 * d / (block_size as f64 + 2.0)
}

/// Predicted CSR-to-indexed-CSR storage ratio: `2*D*S / (2*D*S + 1)`.
/// Values below 1 are the price of the counter words.
pub fn storage_ratio_estimate(d: f64, section_size: usize) -> f64 {
    let x = 2.0 * d * section_size as f64;
    x / (x + 1.0)
}

/// Outcome of replaying one probe sequence under both formats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredMaRatio {
    pub probes: usize,
    pub crs: AccessCounter,
    pub incrs: AccessCounter,
    /// Total CSR word reads divided by total indexed-CSR word reads.
    pub ratio: f64,
}

/// Gathers `probes` randomly chosen columns (seeded, with replacement) under
/// both formats and reports the total access ratio.
pub fn measured_ma_ratio(
    m: &CsrMatrix,
    cfg: InCrsConfig,
    probes: usize,
    seed: u64,
) -> Result<MeasuredMaRatio> {
    let inc = build_incrs(m, cfg)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut crs = AccessCounter::default();
    let mut incrs = AccessCounter::default();
    for _ in 0..probes {
        let j = rng.gen_range(0..m.cols);
        let a = m.gather_column(j, &mut crs)?;
        let b = inc.gather_column(j, &mut incrs)?;
        debug_assert_eq!(a, b);
    }
    let ratio = if incrs.total() == 0 {
        f64::NAN
    } else {
        crs.total() as f64 / incrs.total() as f64
    };
    Ok(MeasuredMaRatio {
        probes,
        crs,
        incrs,
        ratio,
    })
}
