//! Word-level memory access accounting.
//!
//! One unit is one word read from any backing array of a sparse format:
//! values, column indices, row pointers, or counter words. Reading an
//! (index, value) pair therefore costs two element reads.

/// Caller-owned access tally passed into every instrumented operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AccessCounter {
    /// Reads of value/index array words.
    pub element_reads: u64,
    /// Reads of row pointer words.
    pub pointer_reads: u64,
    /// Reads of packed counter words.
    pub counter_reads: u64,
}

impl AccessCounter {
    pub fn total(&self) -> u64 {
        self.element_reads + self.pointer_reads + self.counter_reads
    }

    pub fn merge(&mut self, other: &AccessCounter) {
        self.element_reads += other.element_reads;
        self.pointer_reads += other.pointer_reads;
        self.counter_reads += other.counter_reads;
    }
}
