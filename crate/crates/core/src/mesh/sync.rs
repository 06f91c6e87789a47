//! Synchronized comparator mesh.
//!
//! Operands are shared along full rows and columns of the mesh, and every
//! node consumes one (row, column) operand pair per cycle. On matching
//! indices a node multiplies and accumulates; on a mismatch it buffers the
//! larger-index operand, tags the buffer with the stream it came from, and
//! searches that buffer when the other stream later reaches the same index.
//!
//! Feeders advance through fixed index windows of `round_len` and barrier at
//! each window boundary; all operand buffers reset there, which caps every
//! buffer at one round of operands. An exhausted stream feeds sentinels that
//! compare greater than any real index, so nodes keep consuming a pair per
//! cycle until the round's slowest feeder finishes.

use super::{check_dims, resource_account, result_checksum, Arch, ArchConfig, SimReport};
use crate::coo::CooMatrix;
use crate::csr::{coo_to_csr, csr_to_ccs, CsrMatrix};
use crate::error::{Error, Result};

type Operand = Option<(usize, f64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flag {
    Unset,
    A,
    B,
}

/// Per-node comparator state: accumulator, operand buffer, and the flag
/// naming which stream the buffer holds.
#[derive(Debug, Clone)]
struct NodeState {
    acc: f64,
    buffer: Vec<(usize, f64)>,
    flag: Flag,
}

impl NodeState {
    fn new(depth: usize) -> Self {
        NodeState {
            acc: 0.0,
            buffer: Vec::with_capacity(depth),
            flag: Flag::Unset,
        }
    }

    fn reset_buffer(&mut self) {
        self.buffer.clear();
        self.flag = Flag::Unset;
    }

    fn reset_all(&mut self) {
        self.acc = 0.0;
        self.reset_buffer();
    }
}

#[derive(Debug, Default)]
struct MeshStats {
    mac_ops: u64,
    pairs_consumed: u64,
    searches: u64,
    max_search_comparisons: u32,
    buffer_high_water: usize,
}

/// Sorted-buffer lookup, counting one comparator use per probe. Each probe
/// halves the candidate range or terminates on equality, so a buffer of n
/// entries costs at most floor(log2 n) + 1 comparisons.
fn search_buffer(buffer: &[(usize, f64)], index: usize, stats: &mut MeshStats) -> Option<f64> {
    stats.searches += 1;
    let mut comparisons = 0u32;
    let mut hit = None;
    let (mut lo, mut hi) = (0isize, buffer.len() as isize - 1);
    while lo <= hi {
        comparisons += 1;
        let mid = ((lo + hi) / 2) as usize;
        let (bi, bv) = buffer[mid];
        if bi == index {
            hit = Some(bv);
            break;
        } else if bi < index {
            lo = mid as isize + 1;
        } else {
            hi = mid as isize - 1;
        }
    }
    stats.max_search_comparisons = stats.max_search_comparisons.max(comparisons);
    hit
}

/// One cycle of index matching at a node. `None` operands are sentinels from
/// an exhausted stream; they compare greater than everything, buffer
/// nothing, and only drive searches from the live side.
fn node_step(
    node: &mut NodeState,
    a: Operand,
    b: Operand,
    depth: usize,
    stats: &mut MeshStats,
) -> Result<()> {
    stats.pairs_consumed += 1;
    match (a, b) {
        (Some((ai, av)), Some((bi, bv))) => {
            if ai == bi {
                node.acc += av * bv;
                stats.mac_ops += 1;
                node.reset_buffer();
            } else if ai > bi {
                if node.flag == Flag::A {
                    if let Some(v) = search_buffer(&node.buffer, bi, stats) {
                        node.acc += v * bv;
                        stats.mac_ops += 1;
                    }
                } else {
                    node.buffer.clear();
                    node.flag = Flag::A;
                }
                push_operand(node, ai, av, depth, stats)?;
            } else {
                if node.flag == Flag::B {
                    if let Some(v) = search_buffer(&node.buffer, ai, stats) {
                        node.acc += v * av;
                        stats.mac_ops += 1;
                    }
                } else {
                    node.buffer.clear();
                    node.flag = Flag::B;
                }
                push_operand(node, bi, bv, depth, stats)?;
            }
        }
        // Exhausted column stream: the sentinel is "greater", so the live
        // row operand is consumed, matching against buffered column operands.
        (Some((ai, av)), None) => {
            if node.flag == Flag::B {
                if let Some(v) = search_buffer(&node.buffer, ai, stats) {
                    node.acc += v * av;
                    stats.mac_ops += 1;
                }
            }
        }
        (None, Some((bi, bv))) => {
            if node.flag == Flag::A {
                if let Some(v) = search_buffer(&node.buffer, bi, stats) {
                    node.acc += v * bv;
                    stats.mac_ops += 1;
                }
            }
        }
        (None, None) => {}
    }
    debug_assert_eq!(node.flag == Flag::Unset, node.buffer.is_empty());
    Ok(())
}

fn push_operand(
    node: &mut NodeState,
    idx: usize,
    val: f64,
    depth: usize,
    stats: &mut MeshStats,
) -> Result<()> {
    if node.buffer.len() >= depth {
        return Err(Error::BufferOverflow {
            occupancy: node.buffer.len() + 1,
            depth,
        });
    }
    debug_assert!(node.buffer.last().is_none_or(|&(last, _)| last < idx));
    node.buffer.push((idx, val));
    stats.buffer_high_water = stats.buffer_high_water.max(node.buffer.len());
    Ok(())
}

/// Runs `a * b` on the synchronized mesh, tiling the output into
/// mesh-sized blocks processed sequentially. Within a tile, round k streams
/// the operands whose inner indices fall in `[k*R, (k+1)*R)`; the round
/// costs as many cycles as its slowest feeder has operands.
pub fn run_sync_mesh(a: &CsrMatrix, b: &CsrMatrix, cfg: &ArchConfig) -> Result<SimReport> {
    if cfg.arch != Arch::SyncMesh {
        return Err(Error::InvalidConfig(format!(
            "expected a sync-mesh config, got {}",
            cfg.arch
        )));
    }
    cfg.validate()?;
    check_dims(a, b)?;

    let n = cfg.mesh_dim;
    let depth = cfg.buffer_depth;
    let inner = a.cols;
    let rounds = inner.div_ceil(cfg.round_len);
    let bc = csr_to_ccs(b)?;

    let mut stats = MeshStats::default();
    let mut per_round_cycles = Vec::new();
    let mut triplets = Vec::new();
    let mut nodes: Vec<NodeState> = (0..n * n).map(|_| NodeState::new(depth)).collect();

    let tiles_i = a.rows.div_ceil(n);
    let tiles_j = b.cols.div_ceil(n);

    // reusable per-round window table: (cursor range) per feeder
    let mut a_win: Vec<(usize, usize)> = Vec::new();
    let mut b_win: Vec<(usize, usize)> = Vec::new();

    for ti in 0..tiles_i {
        let row_lo = ti * n;
        let row_hi = ((ti + 1) * n).min(a.rows);
        let live_rows = row_hi - row_lo;
        for tj in 0..tiles_j {
            let col_lo = tj * n;
            let col_hi = ((tj + 1) * n).min(b.cols);
            let live_cols = col_hi - col_lo;

            for node in nodes.iter_mut().take(live_rows * live_cols) {
                node.reset_all();
            }
            // feeder cursors start at each stream's beginning
            a_win.clear();
            b_win.clear();
            for r in row_lo..row_hi {
                a_win.push((a.row_ptr[r], a.row_ptr[r]));
            }
            for c in col_lo..col_hi {
                b_win.push((bc.col_ptr[c], bc.col_ptr[c]));
            }

            for k in 0..rounds {
                let window_end = (k + 1) * cfg.round_len;
                let mut cycles = 0usize;
                for (ri, w) in a_win.iter_mut().enumerate() {
                    let row_end = a.row_ptr[row_lo + ri + 1];
                    w.0 = w.1;
                    while w.1 < row_end && a.col_indices[w.1] < window_end {
                        w.1 += 1;
                    }
                    cycles = cycles.max(w.1 - w.0);
                }
                for (ci, w) in b_win.iter_mut().enumerate() {
                    let col_end = bc.col_ptr[col_lo + ci + 1];
                    w.0 = w.1;
                    while w.1 < col_end && bc.row_indices[w.1] < window_end {
                        w.1 += 1;
                    }
                    cycles = cycles.max(w.1 - w.0);
                }

                for t in 0..cycles {
                    for ri in 0..live_rows {
                        let (s, e) = a_win[ri];
                        let a_op: Operand = if s + t < e {
                            Some((a.col_indices[s + t], a.values[s + t]))
                        } else {
                            None
                        };
                        for ci in 0..live_cols {
                            let (bs, be) = b_win[ci];
                            let b_op: Operand = if bs + t < be {
                                Some((bc.row_indices[bs + t], bc.values[bs + t]))
                            } else {
                                None
                            };
                            node_step(
                                &mut nodes[ri * live_cols + ci],
                                a_op,
                                b_op,
                                depth,
                                &mut stats,
                            )?;
                        }
                    }
                }
                per_round_cycles.push(cycles as u64);
                // round barrier: leftover buffered operands can no longer match
                for node in nodes.iter_mut().take(live_rows * live_cols) {
                    node.reset_buffer();
                }
            }

            for ri in 0..live_rows {
                for ci in 0..live_cols {
                    let acc = nodes[ri * live_cols + ci].acc;
                    #[cfg(debug_assertions)]
                    {
                        let (ridx, rval) = a.row(row_lo + ri);
                        let (cidx, cval) = bc.col(col_lo + ci);
                        let expect = crate::spmm::sparse_dot(ridx, rval, cidx, cval).value;
                        debug_assert_eq!(
                            acc,
                            expect,
                            "node ({}, {}) accumulated a wrong dot product",
                            row_lo + ri,
                            col_lo + ci
                        );
                    }
                    if acc != 0.0 {
                        triplets.push((row_lo + ri, col_lo + ci, acc));
                    }
                }
            }
        }
    }

    let result = coo_to_csr(&CooMatrix {
        rows: a.rows,
        cols: b.cols,
        triplets,
    })?;
    let single: u64 = per_round_cycles.iter().sum();
    Ok(SimReport {
        arch: Arch::SyncMesh,
        total_cycles: single as f64 / cfg.unit_count as f64,
        per_round_cycles,
        buffer_high_water: stats.buffer_high_water,
        mac_ops: stats.mac_ops,
        pairs_consumed: stats.pairs_consumed,
        searches: stats.searches,
        max_search_comparisons: stats.max_search_comparisons,
        resources: resource_account(cfg),
        result_checksum: result_checksum(&result),
        result,
    })
}
