use crate::cli::ReportArgs;
use crate::common::{emit, parse_csv, spec_echo, CliError, CmdResult};
use spmm_core::{parity_sizing, resource_account, ArchConfig};
use std::fmt::Write as _;
use std::fs;

const DESIGN_HEADER: &str =
    "schema,design,units,mesh_dim,bandwidth_kb_per_cycle,mac_units,buffer_kB";
const COST_BENEFIT_HEADER: &str = "schema,dataset,rows,cols,density,nz_row_min,nz_row_mean,\
nz_row_max,measured_ma_ratio,predicted_ma_ratio,storage_ratio";

pub fn run(args: ReportArgs) -> CmdResult<()> {
    let modes = [
        args.design_params.is_some(),
        !args.access_bench.is_empty(),
        !args.sim.is_empty(),
    ]
    .iter()
    .filter(|&&m| m)
    .count();
    if modes != 1 {
        return Err(CliError::Usage(
            "pick exactly one of --design-params, --access-bench, --sim".to_string(),
        ));
    }

    let mut out = String::new();
    writeln!(out, "# spec: {}", spec_echo()).unwrap();
    if let Some(n_synch) = args.design_params {
        design_params_table(&mut out, n_synch)?;
    } else if !args.access_bench.is_empty() {
        cost_benefit_table(&mut out, &args.access_bench)?;
    } else {
        merged_sim_table(&mut out, &args.sim)?;
    }
    emit(&args.out, &out)
}

/// Side-by-side budgets of the synchronized mesh, its two parity-matched
/// independent-node companions, and the bandwidth-matched dense mesh.
fn design_params_table(out: &mut String, n_synch: usize) -> CmdResult<()> {
    let sizing = parity_sizing(n_synch, 16, 32)?;
    writeln!(out, "{DESIGN_HEADER}").unwrap();
    let mut row = |design: &str, units: usize, cfg: &ArchConfig| {
        let r = resource_account(cfg);
        writeln!(
            out,
            "design-params/1,{design},{units},{},{},{},{}",
            cfg.mesh_dim, r.bandwidth_kb_per_cycle, r.mac_units, r.buffer_kb
        )
        .unwrap();
    };
    row("sync-mesh", 1, &ArchConfig::sync_mesh(n_synch, 32));
    row(
        "fpic-same-bw",
        sizing.k_fpic_same_bw,
        &ArchConfig::fpic(sizing.k_fpic_same_bw),
    );
    if let Some(k) = sizing.k_fpic_same_buffer {
        row("fpic-same-buffer", k, &ArchConfig::fpic(k));
    }
    if let Some(n) = sizing.n_conv {
        row("conventional", 1, &ArchConfig::conventional(n));
    }
    Ok(())
}

/// Consolidates access-bench CSVs: one row per dataset with the measured
/// and predicted ratios side by side.
fn cost_benefit_table(out: &mut String, inputs: &[std::path::PathBuf]) -> CmdResult<()> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for path in inputs {
        let text = fs::read_to_string(path)?;
        let (_, data) = parse_csv(&text)?;
        for line in data {
            let fields: Vec<String> = line.split(',').map(|s| s.to_string()).collect();
            if fields.len() != 16 || fields[0] != super::access_bench::SCHEMA {
                return Err(CliError::Data(format!(
                    "{} is not an access-bench/1 CSV (row '{line}')",
                    path.display()
                )));
            }
            // indexed-format rows carry the shared ratio columns
            if fields[8] == "incrs" {
                rows.push(vec![
                    fields[1].clone(),  // dataset
                    fields[2].clone(),  // rows
                    fields[3].clone(),  // cols
                    fields[4].clone(),  // density
                    fields[5].clone(),  // nz min
                    fields[6].clone(),  // nz mean
                    fields[7].clone(),  // nz max
                    fields[13].clone(), // measured ratio
                    fields[14].clone(), // predicted ratio
                    fields[15].clone(), // storage ratio
                ]);
            }
        }
    }
    rows.sort();
    rows.dedup();
    writeln!(out, "{COST_BENEFIT_HEADER}").unwrap();
    for row in rows {
        writeln!(out, "cost-benefit/1,{}", row.join(",")).unwrap();
    }
    Ok(())
}

/// Merges sim summary CSVs into one deterministic table.
fn merged_sim_table(out: &mut String, inputs: &[std::path::PathBuf]) -> CmdResult<()> {
    let mut rows = Vec::new();
    for path in inputs {
        let text = fs::read_to_string(path)?;
        let (_, data) = parse_csv(&text)?;
        for line in data {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 || fields[0] != super::sim::SCHEMA {
                return Err(CliError::Data(format!(
                    "{} is not a sim/1 CSV (row '{line}')",
                    path.display()
                )));
            }
            // sort key: dataset, then architecture
            rows.push((fields[2].to_string(), fields[1].to_string(), line.clone()));
        }
    }
    rows.sort();
    rows.dedup();
    writeln!(out, "{}", super::sim::HEADER).unwrap();
    for (_, _, line) in rows {
        writeln!(out, "{line}").unwrap();
    }
    Ok(())
}
