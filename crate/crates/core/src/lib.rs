//! Sparse matrix-to-matrix multiplication workbench.
//!
//! Three layers:
//!
//! 1. **Formats**: coordinate lists, compressed row/column storage, an
//!    indexed row format whose packed per-section counter words give cheap
//!    column-order access to row-stored data, plus Matrix Market I/O and a
//!    deterministic synthetic generator.
//! 2. **Kernels**: merge-based sparse dot products and a row-by-column
//!    SpMM, instrumented with word-level memory access counters.
//! 3. **Simulators**: cycle-accurate models of three systolic multiply
//!    architectures with parity sizing and resource accounting.
//!
//! Everything is checked against an exact dense oracle; tests use small
//! integer values so floating-point comparisons are exact.

pub mod access;
pub mod coo;
pub mod cost;
pub mod csr;
pub mod dense;
pub mod error;
pub mod incrs;
pub mod market;
pub mod mesh;
pub mod spmm;
pub mod synth;

pub use access::AccessCounter;
pub use coo::CooMatrix;
pub use cost::{
    expected_locate_cost, ma_ratio_estimate, measured_ma_ratio, storage_ratio_estimate,
    FormatCostModel, MeasuredMaRatio,
};
pub use csr::{
    coo_to_csr, csr_to_ccs, csr_to_coo, matrix_stats, transpose, CcsMatrix, CsrMatrix, MatrixStats,
};
pub use dense::{dense_matmul, DenseMatrix};
pub use error::{Error, Result};
pub use incrs::{build_incrs, load_incrs, save_incrs, CounterVector, InCrsConfig, InCrsMatrix};
pub use market::{load_matrix_market, save_matrix_market};
pub use mesh::{
    parity_sizing, parse_arch_config, resource_account, result_checksum, run_conventional,
    run_fpic, run_sim, run_sync_mesh, Arch, ArchConfig, ParitySizing, Resources, SimReport,
};
pub use spmm::{sparse_dot, spmm, spmm_a_at, ColumnSource, DotResult, SparseVector};
pub use synth::{generate_synthetic, SynthProfile};
