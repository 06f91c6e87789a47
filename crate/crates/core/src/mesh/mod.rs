//! Cycle-accurate simulation of three systolic matrix-multiply designs:
//!
//! - a conventional dense mesh that consumes zeros like nonzeros,
//! - independent-node units that merge their operand streams in place,
//! - a synchronized comparator mesh that shares each operand along a full
//!   row or column and barriers the feeders at fixed index windows.
//!
//! All operations cost one cycle: multiply-accumulate, comparison, and
//! buffer search alike. Memory is assumed able to deliver operands every
//! cycle, so the reports measure compute latency only.

mod conventional;
mod fpic;
mod sync;

pub use conventional::run_conventional;
pub use fpic::run_fpic;
pub use sync::run_sync_mesh;

use crate::csr::CsrMatrix;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arch {
    Conventional,
    Fpic,
    SyncMesh,
}

impl std::fmt::Display for Arch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Arch::Conventional => "conventional",
            Arch::Fpic => "fpic",
            Arch::SyncMesh => "sync-mesh",
        };
        f.write_str(s)
    }
}

/// Mesh geometry, unit count, round length, buffer depth, and element
/// widths. Widths affect resource accounting only; the simulated arithmetic
/// stays in 64-bit floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchConfig {
    pub arch: Arch,
    /// Edge length of one square unit.
    pub mesh_dim: usize,
    /// Parallel units; latency is single-unit latency divided by this.
    pub unit_count: usize,
    /// Index-window width of one synchronization round.
    pub round_len: usize,
    /// Operand buffer capacity per node.
    pub buffer_depth: usize,
    pub index_bits: u32,
    pub value_bits: u32,
}

/// Independent-node units are fixed at 8x8; scaling adds units.
pub const FPIC_MESH_DIM: usize = 8;
/// Element count of one independent-node stream buffer.
pub const FPIC_BUFFER_DEPTH: usize = 32;
pub const DEFAULT_ROUND_LEN: usize = 32;
pub const DEFAULT_INDEX_BITS: u32 = 16;
pub const DEFAULT_VALUE_BITS: u32 = 32;

impl ArchConfig {
    pub fn sync_mesh(mesh_dim: usize, round_len: usize) -> Self {
        ArchConfig {
            arch: Arch::SyncMesh,
            mesh_dim,
            unit_count: 1,
            round_len,
            buffer_depth: round_len,
            index_bits: DEFAULT_INDEX_BITS,
            value_bits: DEFAULT_VALUE_BITS,
        }
    }

    pub fn fpic(unit_count: usize) -> Self {
        ArchConfig {
            arch: Arch::Fpic,
            mesh_dim: FPIC_MESH_DIM,
            unit_count,
            round_len: DEFAULT_ROUND_LEN,
            buffer_depth: FPIC_BUFFER_DEPTH,
            index_bits: DEFAULT_INDEX_BITS,
            value_bits: DEFAULT_VALUE_BITS,
        }
    }

    pub fn conventional(mesh_dim: usize) -> Self {
        ArchConfig {
            arch: Arch::Conventional,
            mesh_dim,
            unit_count: 1,
            round_len: DEFAULT_ROUND_LEN,
            buffer_depth: 0,
            index_bits: DEFAULT_INDEX_BITS,
            value_bits: DEFAULT_VALUE_BITS,
        }
    }

    #[inline]
    pub fn total_bits(&self) -> u32 {
        self.index_bits + self.value_bits
    }

    pub fn validate(&self) -> Result<()> {
        if self.mesh_dim == 0 || self.unit_count == 0 {
            return Err(Error::InvalidConfig(
                "mesh dimension and unit count must be positive".to_string(),
            ));
        }
        if self.index_bits == 0 || self.value_bits == 0 {
            return Err(Error::InvalidConfig(
                "element widths must be positive".to_string(),
            ));
        }
        match self.arch {
            Arch::Fpic => {
                if self.mesh_dim != FPIC_MESH_DIM {
                    return Err(Error::InvalidConfig(format!(
                        "independent-node units are fixed at {FPIC_MESH_DIM}x{FPIC_MESH_DIM}; scale with unit_count"
                    )));
                }
            }
            Arch::SyncMesh => {
                if self.round_len == 0 {
                    return Err(Error::InvalidConfig(
                        "round length must be positive".to_string(),
                    ));
                }
                if self.buffer_depth != self.round_len {
                    return Err(Error::InvalidConfig(format!(
                        "operand buffers must hold one full round: depth {} vs round {}",
                        self.buffer_depth, self.round_len
                    )));
                }
            }
            Arch::Conventional => {}
        }
        Ok(())
    }
}

/// Hardware budget of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resources {
    pub mac_units: u64,
    /// Total operand buffer storage in kilobytes (1024 bytes).
    #[serde(rename = "buffer_kB")]
    pub buffer_kb: f64,
    /// Input bandwidth in kilobits (1024 bits) per cycle.
    pub bandwidth_kb_per_cycle: f64,
}

/// MAC count, buffer storage, and input bandwidth implied by a config.
///
/// The synchronized mesh feeds 2 * mesh_dim lanes of full (index, value)
/// elements; independent-node units feed 16 such lanes each. The
/// conventional mesh streams dense values with no indices, so its lanes are
/// value-width only and it buffers nothing.
pub fn resource_account(cfg: &ArchConfig) -> Resources {
    let w_tot = cfg.total_bits() as u64;
    let n = cfg.mesh_dim as u64;
    let k = cfg.unit_count as u64;
    match cfg.arch {
        Arch::SyncMesh => Resources {
            mac_units: k * n * n,
            buffer_kb: bits_to_kb(k * n * n * cfg.buffer_depth as u64 * w_tot),
            bandwidth_kb_per_cycle: 2.0 * (k * n * w_tot) as f64 / 1024.0,
        },
        Arch::Fpic => Resources {
            mac_units: k * n * n,
            buffer_kb: bits_to_kb(k * 2 * n * n * FPIC_BUFFER_DEPTH as u64 * w_tot),
            bandwidth_kb_per_cycle: 2.0 * (k * n * w_tot) as f64 / 1024.0,
        },
        Arch::Conventional => Resources {
            mac_units: k * n * n,
            buffer_kb: 0.0,
            bandwidth_kb_per_cycle: 2.0 * (k * n * cfg.value_bits as u64) as f64 / 1024.0,
        },
    }
}

fn bits_to_kb(bits: u64) -> f64 {
    bits as f64 / 8.0 / 1024.0
}

/// Unit counts and mesh edges that equalize budgets against a synchronized
/// mesh of edge `n_synch`: independent-node unit counts matching its input
/// bandwidth and its total buffer storage, and the conventional mesh edge
/// matching its bandwidth. Fields are `None` when the matching count is not
/// integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParitySizing {
    pub k_fpic_same_bw: usize,
    pub k_fpic_same_buffer: Option<usize>,
    pub n_conv: Option<usize>,
}

/// Bandwidth parity: `2 * n_synch * W_tot = 2 * 8 * k * W_tot` gives
/// `k = n_synch / 8`. Buffer parity: `n_synch^2 = 2 * 8^2 * k` gives
/// `k = n_synch^2 / 128`. The dense mesh carries values only, so
/// `n_conv = (W_tot / W_val) * n_synch` matches its bandwidth.
pub fn parity_sizing(n_synch: usize, w_idx: u32, w_val: u32) -> Result<ParitySizing> {
    if n_synch == 0 || n_synch % FPIC_MESH_DIM != 0 {
        return Err(Error::NonIntegralSizing(format!(
            "mesh edge {n_synch} is not a positive multiple of {FPIC_MESH_DIM}"
        )));
    }
    if w_idx == 0 || w_val == 0 {
        return Err(Error::NonIntegralSizing(
            "element widths must be positive".to_string(),
        ));
    }
    let sq = n_synch * n_synch;
    let k_fpic_same_buffer = (sq % 128 == 0).then_some(sq / 128);
    let w_tot = (w_idx + w_val) as usize;
    let n_conv = (n_synch * w_tot % w_val as usize == 0).then_some(n_synch * w_tot / w_val as usize);
    Ok(ParitySizing {
        k_fpic_same_bw: n_synch / FPIC_MESH_DIM,
        k_fpic_same_buffer,
        n_conv,
    })
}

/// One simulation outcome. `total_cycles` is the single-unit cycle count
/// divided by `unit_count` under the perfect-load-balance idealization, so
/// it is fractional for multi-unit runs. `per_round_cycles` holds the
/// undivided per-round (synchronized mesh) or per-tile (others) counts in
/// processing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub arch: Arch,
    pub total_cycles: f64,
    pub per_round_cycles: Vec<u64>,
    pub buffer_high_water: usize,
    pub mac_ops: u64,
    /// Operand pairs consumed by synchronized-mesh nodes, sentinels included.
    pub pairs_consumed: u64,
    pub searches: u64,
    pub max_search_comparisons: u32,
    pub resources: Resources,
    pub result_checksum: String,
    #[serde(skip)]
    pub result: CsrMatrix,
}

impl SimReport {
    /// Single-unit cycle count before the unit division.
    pub fn single_unit_cycles(&self) -> u64 {
        self.per_round_cycles.iter().sum()
    }
}

/// Runs the simulator selected by `cfg.arch`.
pub fn run_sim(a: &CsrMatrix, b: &CsrMatrix, cfg: &ArchConfig) -> Result<SimReport> {
    match cfg.arch {
        Arch::Conventional => run_conventional(a, b, cfg),
        Arch::Fpic => run_fpic(a, b, cfg),
        Arch::SyncMesh => run_sync_mesh(a, b, cfg),
    }
}

/// FNV-1a digest over the matrix shape and arrays; architectures that
/// compute the same product produce identical digests.
pub fn result_checksum(m: &CsrMatrix) -> String {
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |w: u64| {
        for byte in w.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(m.rows as u64);
    eat(m.cols as u64);
    eat(m.nnz() as u64);
    for &p in &m.row_ptr {
        eat(p as u64);
    }
    for &c in &m.col_indices {
        eat(c as u64);
    }
    for &v in &m.values {
        eat(v.to_bits());
    }
    format!("{h:016x}")
}

fn check_dims(a: &CsrMatrix, b: &CsrMatrix) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    Ok(())
}

/// Parses a plain-text key/value architecture description. Lines are
/// `key = value`; blank lines and `#` comments are skipped.
///
/// Keys: `arch` (conventional | fpic | sync-mesh), `mesh_dim`, `unit_count`,
/// `round_len`, `buffer_depth`, `index_bits`, `value_bits`.
pub fn parse_arch_config(text: &str) -> Result<ArchConfig> {
    let mut arch = None;
    let mut mesh_dim = None;
    let mut unit_count = None;
    let mut round_len = None;
    let mut buffer_depth = None;
    let mut index_bits = None;
    let mut value_bits = None;

    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("line {}: expected 'key = value'", n + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let parse_num = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|_| Error::InvalidConfig(format!("line {}: bad number '{v}'", n + 1)))
        };
        match key {
            "arch" => {
                arch = Some(match value {
                    "conventional" => Arch::Conventional,
                    "fpic" => Arch::Fpic,
                    "sync-mesh" | "sync" => Arch::SyncMesh,
                    other => {
                        return Err(Error::InvalidConfig(format!(
                            "unknown arch '{other}'"
                        )))
                    }
                })
            }
            "mesh_dim" => mesh_dim = Some(parse_num(value)?),
            "unit_count" => unit_count = Some(parse_num(value)?),
            "round_len" => round_len = Some(parse_num(value)?),
            "buffer_depth" => buffer_depth = Some(parse_num(value)?),
            "index_bits" => index_bits = Some(parse_num(value)? as u32),
            "value_bits" => value_bits = Some(parse_num(value)? as u32),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown key '{other}'"
                )))
            }
        }
    }

    let arch = arch.ok_or_else(|| Error::InvalidConfig("missing 'arch'".to_string()))?;
    let mut cfg = match arch {
        Arch::SyncMesh => ArchConfig::sync_mesh(
            mesh_dim.ok_or_else(|| Error::InvalidConfig("missing 'mesh_dim'".to_string()))?,
            round_len.unwrap_or(DEFAULT_ROUND_LEN),
        ),
        Arch::Fpic => ArchConfig::fpic(unit_count.unwrap_or(1)),
        Arch::Conventional => ArchConfig::conventional(
            mesh_dim.ok_or_else(|| Error::InvalidConfig("missing 'mesh_dim'".to_string()))?,
        ),
    };
    if let Some(k) = unit_count {
        cfg.unit_count = k;
    }
    if let Some(m) = mesh_dim {
        cfg.mesh_dim = m;
    }
    if let Some(r) = round_len {
        cfg.round_len = r;
        if cfg.arch == Arch::SyncMesh {
            cfg.buffer_depth = r;
        }
    }
    if let Some(d) = buffer_depth {
        cfg.buffer_depth = d;
    }
    if let Some(w) = index_bits {
        cfg.index_bits = w;
    }
    if let Some(w) = value_bits {
        cfg.value_bits = w;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_at_64_with_16_32_bit_elements() {
        let p = parity_sizing(64, 16, 32).unwrap();
        assert_eq!(p.k_fpic_same_bw, 8);
        assert_eq!(p.k_fpic_same_buffer, Some(32));
        assert_eq!(p.n_conv, Some(96));
    }

    #[test]
    fn parity_small_meshes() {
        assert_eq!(parity_sizing(8, 16, 32).unwrap().k_fpic_same_bw, 1);
        assert_eq!(parity_sizing(16, 16, 32).unwrap().k_fpic_same_buffer, Some(2));
        // 8^2 = 64 buffers cannot split into 128-buffer units
        assert_eq!(parity_sizing(8, 16, 32).unwrap().k_fpic_same_buffer, None);
        assert!(parity_sizing(12, 16, 32).is_err());
        assert!(parity_sizing(0, 16, 32).is_err());
    }

    #[test]
    fn design_point_resources() {
        let sync = resource_account(&ArchConfig::sync_mesh(64, 32));
        assert_eq!(sync.mac_units, 4096);
        assert_eq!(sync.buffer_kb, 768.0);
        assert_eq!(sync.bandwidth_kb_per_cycle, 6.0);

        let fpic8 = resource_account(&ArchConfig::fpic(8));
        assert_eq!(fpic8.mac_units, 512);
        assert_eq!(fpic8.buffer_kb, 192.0);
        assert_eq!(fpic8.bandwidth_kb_per_cycle, 6.0);

        let fpic32 = resource_account(&ArchConfig::fpic(32));
        assert_eq!(fpic32.mac_units, 2048);
        assert_eq!(fpic32.buffer_kb, 768.0);
        assert_eq!(fpic32.bandwidth_kb_per_cycle, 24.0);

        let conv = resource_account(&ArchConfig::conventional(96));
        assert_eq!(conv.mac_units, 9216);
        assert_eq!(conv.buffer_kb, 0.0);
        assert_eq!(conv.bandwidth_kb_per_cycle, 6.0);
    }

    #[test]
    fn config_invariants_enforced() {
        let mut bad = ArchConfig::fpic(2);
        bad.mesh_dim = 16;
        assert!(bad.validate().is_err());

        let mut bad = ArchConfig::sync_mesh(16, 32);
        bad.buffer_depth = 8;
        assert!(bad.validate().is_err());

        assert!(ArchConfig::sync_mesh(0, 32).validate().is_err());
    }

    #[test]
    fn config_text_round_trip() {
        let cfg = parse_arch_config(
            "# design point\narch = sync-mesh\nmesh_dim = 64\nround_len = 32\n",
        )
        .unwrap();
        assert_eq!(cfg, ArchConfig::sync_mesh(64, 32));

        let cfg = parse_arch_config("arch = fpic\nunit_count = 8\n").unwrap();
        assert_eq!(cfg, ArchConfig::fpic(8));

        let cfg = parse_arch_config(
            "arch = conventional\nmesh_dim = 96\nvalue_bits = 32\nindex_bits = 16\n",
        )
        .unwrap();
        assert_eq!(cfg, ArchConfig::conventional(96));

        assert!(parse_arch_config("mesh_dim = 4\n").is_err());
        assert!(parse_arch_config("arch = sync-mesh\nmesh_dim = 4\nwhat = 1\n").is_err());
        assert!(parse_arch_config("arch = warp\nmesh_dim = 4\n").is_err());
    }

    #[test]
    fn checksum_distinguishes_value_and_structure() {
        use crate::coo::CooMatrix;
        use crate::csr::coo_to_csr;
        let a = coo_to_csr(
            &CooMatrix::from_triplets(2, 2, vec![(0, 0, 1.0), (1, 1, 2.0)]).unwrap(),
        )
        .unwrap();
        let b = coo_to_csr(
            &CooMatrix::from_triplets(2, 2, vec![(0, 0, 1.0), (1, 1, 3.0)]).unwrap(),
        )
        .unwrap();
        assert_ne!(result_checksum(&a), result_checksum(&b));
        assert_eq!(result_checksum(&a), result_checksum(&a.clone()));
    }
}
