use crate::cli::AccessBenchArgs;
use crate::common::{emit, load_dataset, spec_echo, CmdResult};
use spmm_core::{
    ma_ratio_estimate, matrix_stats, measured_ma_ratio, storage_ratio_estimate, InCrsConfig,
};
use std::fmt::Write as _;

pub const SCHEMA: &str = "access-bench/1";
pub const HEADER: &str = "schema,dataset,rows,cols,density,nz_row_min,nz_row_mean,nz_row_max,\
format,probes,element_reads,pointer_reads,counter_reads,measured_ratio,predicted_ratio,storage_ratio";

pub fn run(args: AccessBenchArgs) -> CmdResult<()> {
    let ds = load_dataset(&args.dataset)?;
    let cfg = InCrsConfig::new(args.geometry.section_size, args.geometry.block_size)?;
    let stats = matrix_stats(&ds.csr);

    let mut out = String::new();
    writeln!(out, "# spec: {}", spec_echo()).unwrap();
    writeln!(out, "{HEADER}").unwrap();

    if args.probes > 0 {
        let measured = measured_ma_ratio(&ds.csr, cfg, args.probes, args.probe_seed)?;
        let predicted = ma_ratio_estimate(stats.cols, stats.density, cfg.block_size);
        let storage = storage_ratio_estimate(stats.density, cfg.section_size);
        let common = format!(
            "{SCHEMA},{},{},{},{:.6},{},{:.2},{}",
            ds.name,
            stats.rows,
            stats.cols,
            stats.density,
            stats.row_nnz_min,
            stats.row_nnz_mean,
            stats.row_nnz_max
        );
        writeln!(
            out,
            "{common},crs,{},{},{},{},{:.4},{:.4},{:.4}",
            measured.probes,
            measured.crs.element_reads,
            measured.crs.pointer_reads,
            measured.crs.counter_reads,
            measured.ratio,
            predicted,
            storage
        )
        .unwrap();
        writeln!(
            out,
            "{common},incrs,{},{},{},{},{:.4},{:.4},{:.4}",
            measured.probes,
            measured.incrs.element_reads,
            measured.incrs.pointer_reads,
            measured.incrs.counter_reads,
            measured.ratio,
            predicted,
            storage
        )
        .unwrap();
    }
    emit(&args.out, &out)
}
