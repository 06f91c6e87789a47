//! Conventional dense systolic mesh.
//!
//! Every node consumes two operands per cycle, zero or not, so a tile over
//! inner dimension K costs K cycles of streaming plus 2*mesh_dim - 2 cycles
//! of wavefront fill and drain. Sparsity buys nothing; the mesh's appeal is
//! that it needs no comparators or operand buffers.

use super::{check_dims, resource_account, result_checksum, Arch, ArchConfig, SimReport};
use crate::coo::CooMatrix;
use crate::csr::{coo_to_csr, CsrMatrix};
use crate::error::{Error, Result};

/// Cycles for one tile: streaming plus pipeline fill/drain.
pub fn conventional_tile_cycles(inner: usize, mesh_dim: usize) -> u64 {
    (inner + 2 * mesh_dim - 2) as u64
}

pub fn run_conventional(a: &CsrMatrix, b: &CsrMatrix, cfg: &ArchConfig) -> Result<SimReport> {
    if cfg.arch != Arch::Conventional {
        return Err(Error::InvalidConfig(format!(
            "expected a conventional config, got {}",
            cfg.arch
        )));
    }
    cfg.validate()?;
    check_dims(a, b)?;

    let n = cfg.mesh_dim;
    let inner = a.cols;
    let ad = a.to_dense();
    let bd = b.to_dense();

    let mut per_tile_cycles = Vec::new();
    let mut triplets = Vec::new();
    let mut mac_ops = 0u64;

    for row_lo in (0..a.rows).step_by(n) {
        let row_hi = (row_lo + n).min(a.rows);
        for col_lo in (0..b.cols).step_by(n) {
            let col_hi = (col_lo + n).min(b.cols);
            for r in row_lo..row_hi {
                for c in col_lo..col_hi {
                    let mut acc = 0.0;
                    for k in 0..inner {
                        acc += ad.get(r, k) * bd.get(k, c);
                    }
                    if acc != 0.0 {
                        triplets.push((r, c, acc));
                    }
                }
            }
            mac_ops += ((row_hi - row_lo) * (col_hi - col_lo) * inner) as u64;
            per_tile_cycles.push(conventional_tile_cycles(inner, n));
        }
    }

    let result = coo_to_csr(&CooMatrix {
        rows: a.rows,
        cols: b.cols,
        triplets,
    })?;
    let single: u64 = per_tile_cycles.iter().sum();
    Ok(SimReport {
        arch: Arch::Conventional,
        total_cycles: single as f64 / cfg.unit_count as f64,
        per_round_cycles: per_tile_cycles,
        buffer_high_water: 0,
        mac_ops,
        pairs_consumed: 0,
        searches: 0,
        max_search_comparisons: 0,
        resources: resource_account(cfg),
        result_checksum: result_checksum(&result),
        result,
    })
}
