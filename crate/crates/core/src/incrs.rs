//! Indexed compressed row storage: CSR plus one packed 64-bit counter word
//! per (row, section).
//!
//! Each row's column range is divided into sections of `S` columns, and each
//! section into blocks of `b` columns. The counter word for a section stores
//!
//! - a prefix field: how many of the row's nonzeros fall in earlier sections,
//! - one small field per block: how many nonzeros fall inside that block.
//!
//! A point lookup reads one counter word, adds the prefix to the counts of
//! the blocks preceding the target block, and lands directly on the target
//! block's slice of the CSR arrays. The search is then confined to at most
//! `b` stored elements instead of the whole row.
//!
//! Field layout within the 64-bit word (normative for serialization): the
//! prefix occupies the low `section_prefix_bits` bits; block k occupies bits
//! `[prefix_bits + k*w, prefix_bits + (k+1)*w)` with `w = block_count_bits`.

use crate::access::AccessCounter;
use crate::csr::CsrMatrix;
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Section/block geometry and counter field widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InCrsConfig {
    /// Columns per section.
    pub section_size: usize,
    /// Columns per block.
    pub block_size: usize,
    /// Bits of the per-section prefix count.
    pub section_prefix_bits: u32,
    /// Bits of each per-block count.
    pub block_count_bits: u32,
}

impl Default for InCrsConfig {
    /// 256-column sections split into 32-column blocks: a 16-bit prefix plus
    /// eight 6-bit block counts, filling one 64-bit word.
    fn default() -> Self {
        InCrsConfig::new(256, 32).unwrap()
    }
}

impl InCrsConfig {
    /// Derives field widths from the geometry: block counts get
    /// `ceil(log2(b+1))` bits and the prefix takes the rest of the word.
    pub fn new(section_size: usize, block_size: usize) -> Result<Self> {
        let block_count_bits = bits_for(block_size);
        if section_size == 0 || block_size == 0 || section_size % block_size != 0 {
            return Err(Error::InvalidConfig(format!(
                "section size {section_size} must be a positive multiple of block size {block_size}"
            )));
        }
        let blocks = (section_size / block_size) as u32;
        let used = blocks * block_count_bits;
        if used >= 64 {
            return Err(Error::InvalidConfig(format!(
                "{blocks} blocks x {block_count_bits} bits leave no room for the prefix"
            )));
        }
        InCrsConfig {
            section_size,
            block_size,
            section_prefix_bits: 64 - used,
            block_count_bits,
        }
        .validated()
    }

    /// Explicit field widths; rejects layouts that do not fit one word.
    pub fn with_field_widths(
        section_size: usize,
        block_size: usize,
        section_prefix_bits: u32,
        block_count_bits: u32,
    ) -> Result<Self> {
        InCrsConfig {
            section_size,
            block_size,
            section_prefix_bits,
            block_count_bits,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if self.section_size == 0
            || self.block_size == 0
            || self.section_size % self.block_size != 0
        {
            return Err(Error::InvalidConfig(format!(
                "section size {} must be a positive multiple of block size {}",
                self.section_size, self.block_size
            )));
        }
        if self.block_count_bits < bits_for(self.block_size) {
            return Err(Error::InvalidConfig(format!(
                "{} bits cannot count 0..={} nonzeros per block",
                self.block_count_bits, self.block_size
            )));
        }
        let total =
            self.section_prefix_bits as usize + self.blocks_per_section() * self.block_count_bits as usize;
        if self.section_prefix_bits == 0 || total > 64 {
            return Err(Error::InvalidConfig(format!(
                "{} prefix bits + {} blocks x {} bits exceed one 64-bit word",
                self.section_prefix_bits,
                self.blocks_per_section(),
                self.block_count_bits
            )));
        }
        Ok(self)
    }

    #[inline]
    pub fn blocks_per_section(&self) -> usize {
        self.section_size / self.block_size
    }

    #[inline]
    pub fn sections_for(&self, cols: usize) -> usize {
        cols.div_ceil(self.section_size)
    }

    /// Largest per-row nonzero count the prefix field can represent.
    #[inline]
    pub fn max_row_nnz(&self) -> usize {
        if self.section_prefix_bits >= 64 {
            usize::MAX
        } else {
            (1usize << self.section_prefix_bits) - 1
        }
    }

    /// Section and in-section block holding column `j`.
    #[inline]
    pub fn locate(&self, j: usize) -> (usize, usize) {
        (j / self.section_size, (j % self.section_size) / self.block_size)
    }
}

/// Smallest width that can hold counts 0..=n.
fn bits_for(n: usize) -> u32 {
    (usize::BITS - n.leading_zeros()).max(1)
}

/// One packed counter word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CounterVector(pub u64);

impl CounterVector {
    pub fn pack(cfg: &InCrsConfig, prefix: usize, block_counts: &[usize]) -> Self {
        debug_assert!(block_counts.len() <= cfg.blocks_per_section());
        let mut w = prefix as u64;
        for (k, &c) in block_counts.iter().enumerate() {
            debug_assert!(c <= cfg.block_size);
            w |= (c as u64) << (cfg.section_prefix_bits + k as u32 * cfg.block_count_bits);
        }
        CounterVector(w)
    }

    /// Nonzeros of this row in earlier sections.
    #[inline]
    pub fn prefix_nnz(&self, cfg: &InCrsConfig) -> usize {
        (self.0 & field_mask(cfg.section_prefix_bits)) as usize
    }

    /// Nonzeros inside block `k` of this section.
    #[inline]
    pub fn block_count(&self, cfg: &InCrsConfig, k: usize) -> usize {
        let shift = cfg.section_prefix_bits + k as u32 * cfg.block_count_bits;
        ((self.0 >> shift) & field_mask(cfg.block_count_bits)) as usize
    }

    /// Nonzeros inside this section, summed over its blocks.
    pub fn section_nnz(&self, cfg: &InCrsConfig) -> usize {
        (0..cfg.blocks_per_section())
            .map(|k| self.block_count(cfg, k))
            .sum()
    }
}

#[inline]
fn field_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// CSR with counter words attached; the base matrix is stored unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct InCrsMatrix {
    pub base: CsrMatrix,
    pub config: InCrsConfig,
    /// One word per (row, section), row-major.
    pub counters: Vec<CounterVector>,
}

/// Attaches counter words to an existing CSR matrix.
pub fn build_incrs(m: &CsrMatrix, cfg: InCrsConfig) -> Result<InCrsMatrix> {
    m.validate()?;
    let limit = cfg.max_row_nnz();
    for i in 0..m.rows {
        if m.row_nnz(i) > limit {
            return Err(Error::RowNnzOverflow {
                row: i,
                nnz: m.row_nnz(i),
                limit,
            });
        }
    }
    let counters = derive_counters(m, &cfg);
    Ok(InCrsMatrix {
        base: m.clone(),
        config: cfg,
        counters,
    })
}

fn derive_counters(m: &CsrMatrix, cfg: &InCrsConfig) -> Vec<CounterVector> {
    let sections = cfg.sections_for(m.cols);
    let blocks = cfg.blocks_per_section();
    let mut counters = Vec::with_capacity(m.rows * sections);
    let mut block_counts = vec![0usize; blocks];
    for i in 0..m.rows {
        let (cols, _) = m.row(i);
        let mut cursor = 0usize;
        let mut prefix = 0usize;
        for s in 0..sections {
            block_counts.fill(0);
            let section_end = (s + 1) * cfg.section_size;
            let mut in_section = 0usize;
            while cursor < cols.len() && cols[cursor] < section_end {
                let (_, blk) = cfg.locate(cols[cursor]);
                block_counts[blk] += 1;
                in_section += 1;
                cursor += 1;
            }
            counters.push(CounterVector::pack(cfg, prefix, &block_counts));
            prefix += in_section;
        }
    }
    counters
}

impl InCrsMatrix {
    pub fn rows(&self) -> usize {
        self.base.rows
    }

    pub fn cols(&self) -> usize {
        self.base.cols
    }

    #[inline]
    pub fn sections_per_row(&self) -> usize {
        self.config.sections_for(self.base.cols)
    }

    #[inline]
    pub fn counter(&self, row: usize, section: usize) -> CounterVector {
        self.counters[row * self.sections_per_row() + section]
    }

    /// Instrumented point lookup. Reads exactly one counter word and one row
    /// pointer word, then scans only the target block's stored elements
    /// (index word each, plus the value word on a hit), stopping early once
    /// a scanned index passes `j`.
    pub fn get_counted(&self, i: usize, j: usize, ctr: &mut AccessCounter) -> Result<f64> {
        Ok(self.probe(i, j, ctr)?.unwrap_or(0.0))
    }

    /// Like [`get_counted`](Self::get_counted) but distinguishes a stored
    /// entry from an absent position.
    pub fn probe(&self, i: usize, j: usize, ctr: &mut AccessCounter) -> Result<Option<f64>> {
        let m = &self.base;
        if i >= m.rows || j >= m.cols {
            return Err(Error::IndexOutOfBounds {
                row: i,
                col: j,
                rows: m.rows,
                cols: m.cols,
            });
        }
        let cfg = &self.config;
        let (section, block) = cfg.locate(j);

        ctr.counter_reads += 1;
        let word = self.counter(i, section);
        let mut offset = word.prefix_nnz(cfg);
        for k in 0..block {
            offset += word.block_count(cfg, k);
        }
        let in_block = word.block_count(cfg, block);

        ctr.pointer_reads += 1;
        let start = m.row_ptr[i] + offset;
        debug_assert!(start + in_block <= m.row_ptr[i + 1]);
        for p in start..start + in_block {
            ctr.element_reads += 1;
            let c = m.col_indices[p];
            if c == j {
                ctr.element_reads += 1;
                return Ok(Some(m.values[p]));
            }
            if c > j {
                break;
            }
        }
        Ok(None)
    }

    /// All stored entries of column `j` in ascending row order.
    pub fn gather_column(&self, j: usize, ctr: &mut AccessCounter) -> Result<Vec<(usize, f64)>> {
        if j >= self.base.cols {
            return Err(Error::IndexOutOfBounds {
                row: 0,
                col: j,
                rows: self.base.rows,
                cols: self.base.cols,
            });
        }
        let mut out = Vec::new();
        for i in 0..self.base.rows {
            if let Some(v) = self.probe(i, j, ctr)? {
                out.push((i, v));
            }
        }
        Ok(out)
    }

    /// Rebuilds every counter word from a scan of the base matrix and
    /// compares bit-exactly.
    pub fn verify(&self) -> Result<()> {
        let expected = derive_counters(&self.base, &self.config);
        if expected.len() != self.counters.len() {
            return Err(Error::InvalidStructure(format!(
                "counter array has {} words, expected {}",
                self.counters.len(),
                expected.len()
            )));
        }
        for (idx, (got, want)) in self.counters.iter().zip(&expected).enumerate() {
            if got != want {
                let sections = self.sections_per_row();
                return Err(Error::InvalidStructure(format!(
                    "counter word mismatch at row {}, section {}: {:#018x} vs {:#018x}",
                    idx / sections,
                    idx % sections,
                    got.0,
                    want.0
                )));
            }
        }
        Ok(())
    }
}

const MAGIC: u64 = u64::from_le_bytes(*b"INCRSBIN");
const VERSION: u64 = 1;

/// Writes the binary form: a header of little-endian 64-bit words
/// (magic, version, rows, cols, nnz, section size, block size) followed by
/// row_ptr, col_indices, values (f64 bits), and counter words.
pub fn write_incrs(mut w: impl Write, m: &InCrsMatrix) -> Result<()> {
    let base = &m.base;
    let header = [
        MAGIC,
        VERSION,
        base.rows as u64,
        base.cols as u64,
        base.nnz() as u64,
        m.config.section_size as u64,
        m.config.block_size as u64,
    ];
    for word in header {
        w.write_all(&word.to_le_bytes())?;
    }
    for &p in &base.row_ptr {
        w.write_all(&(p as u64).to_le_bytes())?;
    }
    for &c in &base.col_indices {
        w.write_all(&(c as u64).to_le_bytes())?;
    }
    for &v in &base.values {
        w.write_all(&v.to_bits().to_le_bytes())?;
    }
    for ctr in &m.counters {
        w.write_all(&ctr.0.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_incrs(mut r: impl Read) -> Result<InCrsMatrix> {
    let word = |r: &mut dyn Read| -> Result<u64> {
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        Ok(u64::from_le_bytes(buf))
    };
    if word(&mut r)? != MAGIC {
        return Err(Error::InvalidSerialization("bad magic".to_string()));
    }
    let version = word(&mut r)?;
    if version != VERSION {
        return Err(Error::InvalidSerialization(format!(
            "unsupported version {version}"
        )));
    }
    let rows = word(&mut r)? as usize;
    let cols = word(&mut r)? as usize;
    let nnz = word(&mut r)? as usize;
    let section_size = word(&mut r)? as usize;
    let block_size = word(&mut r)? as usize;
    let config = InCrsConfig::new(section_size, block_size)?;

    let mut row_ptr = Vec::with_capacity(rows + 1);
    for _ in 0..rows + 1 {
        row_ptr.push(word(&mut r)? as usize);
    }
    let mut col_indices = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        col_indices.push(word(&mut r)? as usize);
    }
    let mut values = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        values.push(f64::from_bits(word(&mut r)?));
    }
    let n_counters = rows * config.sections_for(cols);
    let mut counters = Vec::with_capacity(n_counters);
    for _ in 0..n_counters {
        counters.push(CounterVector(word(&mut r)?));
    }

    let base = CsrMatrix {
        rows,
        cols,
        values,
        col_indices,
        row_ptr,
    };
    base.validate()
        .map_err(|e| Error::InvalidSerialization(e.to_string()))?;
    Ok(InCrsMatrix {
        base,
        config,
        counters,
    })
}

pub fn save_incrs(path: impl AsRef<Path>, m: &InCrsMatrix) -> Result<()> {
    write_incrs(BufWriter::new(File::create(path.as_ref())?), m)
}

pub fn load_incrs(path: impl AsRef<Path>) -> Result<InCrsMatrix> {
    read_incrs(BufReader::new(File::open(path.as_ref())?))
}
