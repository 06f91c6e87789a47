use crate::cli::{ConvertArgs, FormatArg};
use crate::common::{indexed_form, load_dataset, CmdResult};
use spmm_core::{matrix_stats, save_incrs, save_matrix_market, storage_ratio_estimate, InCrsConfig};

pub fn run(args: ConvertArgs) -> CmdResult<()> {
    let ds = load_dataset(&args.dataset)?;
    let stats = matrix_stats(&ds.csr);
    println!(
        "{}: {} x {}, {} nonzeros, density {:.6}, nz/row (min {}, mean {:.1}, max {})",
        ds.name,
        stats.rows,
        stats.cols,
        stats.nnz,
        stats.density,
        stats.row_nnz_min,
        stats.row_nnz_mean,
        stats.row_nnz_max
    );
    match args.format {
        FormatArg::Crs => {
            save_matrix_market(&args.out, &ds.csr)?;
            println!("wrote CSR as Matrix Market: {}", args.out.display());
        }
        FormatArg::Incrs => {
            let cfg = InCrsConfig::new(args.geometry.section_size, args.geometry.block_size)?;
            let indexed = indexed_form(&ds, cfg)?;
            save_incrs(&args.out, &indexed)?;
            println!(
                "wrote indexed CSR (S={}, b={}, {} counter words): {}",
                cfg.section_size,
                cfg.block_size,
                indexed.counters.len(),
                args.out.display()
            );
            println!(
                "storage ratio (plain/indexed estimate): {:.2}",
                storage_ratio_estimate(stats.density, cfg.section_size)
            );
        }
    }
    Ok(())
}
