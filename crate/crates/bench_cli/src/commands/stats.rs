use crate::cli::StatsArgs;
use crate::common::{load_dataset, CmdResult};
use spmm_core::matrix_stats;

pub fn run(args: StatsArgs) -> CmdResult<()> {
    let ds = load_dataset(&args.dataset)?;
    let s = matrix_stats(&ds.csr);
    println!("dataset:      {}", ds.name);
    println!("shape:        {} x {}", s.rows, s.cols);
    println!("nonzeros:     {}", s.nnz);
    println!("density:      {:.6}", s.density);
    println!(
        "nz per row:   min {}, mean {:.2}, max {}",
        s.row_nnz_min, s.row_nnz_mean, s.row_nnz_max
    );
    if let Some(indexed) = &ds.indexed {
        println!(
            "index layout: S={}, b={}, {} sections/row, {} counter words",
            indexed.config.section_size,
            indexed.config.block_size,
            indexed.sections_per_row(),
            indexed.counters.len()
        );
    }
    Ok(())
}
