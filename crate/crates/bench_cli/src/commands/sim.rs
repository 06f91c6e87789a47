use crate::cli::SimArgs;
use crate::common::{emit, load_dataset, load_path, load_profile, spec_echo, CliError, CmdResult};
use serde::Serialize;
use spmm_core::{
    parity_sizing, parse_arch_config, run_sim, transpose, Arch, ArchConfig, CsrMatrix, SimReport,
};
use std::fmt::Write as _;
use std::fs;

pub const SCHEMA: &str = "sim/1";
pub const HEADER: &str = "schema,arch,dataset,density,total_cycles,normalized_latency";

/// A requested run: display label plus the resolved config.
struct Request {
    label: String,
    cfg: ArchConfig,
}

fn resolve_requests(args: &SimArgs) -> CmdResult<Vec<Request>> {
    if let Some(path) = &args.config {
        if !args.arch.is_empty() {
            return Err(CliError::Usage(
                "--config and --arch are mutually exclusive".to_string(),
            ));
        }
        let text = fs::read_to_string(path)?;
        let cfg = parse_arch_config(&text)?;
        return Ok(vec![Request {
            label: cfg.arch.to_string(),
            cfg,
        }]);
    }
    if args.arch.is_empty() {
        return Err(CliError::Usage(
            "request at least one architecture with --arch or --config".to_string(),
        ));
    }
    let sizing = parity_sizing(args.mesh, 16, 32).ok();
    let mut requests = Vec::new();
    for token in &args.arch {
        let req = match token.as_str() {
            "sync" | "sync-mesh" => Request {
                label: "sync-mesh".to_string(),
                cfg: ArchConfig::sync_mesh(args.mesh, args.round),
            },
            "fpic" => Request {
                label: "fpic".to_string(),
                cfg: ArchConfig::fpic(args.units),
            },
            "fpic-same-bw" => {
                let s = sizing.as_ref().ok_or_else(|| {
                    CliError::Usage(format!("mesh {} has no bandwidth-parity sizing", args.mesh))
                })?;
                Request {
                    label: "fpic-same-bw".to_string(),
                    cfg: ArchConfig::fpic(s.k_fpic_same_bw),
                }
            }
            "fpic-same-buffer" => {
                let s = sizing.as_ref().and_then(|s| s.k_fpic_same_buffer).ok_or
                    (CliError::Usage(format!(
                        "mesh {} has no integral buffer-parity sizing",
                        args.mesh
                    )))?;
                Request {
                    label: "fpic-same-buffer".to_string(),
                    cfg: ArchConfig::fpic(s),
                }
            }
            "conventional" | "conv" => {
                let n = sizing.as_ref().and_then(|s| s.n_conv).ok_or(CliError::Usage(
                    format!("mesh {} has no integral conventional sizing", args.mesh),
                ))?;
                Request {
                    label: "conventional".to_string(),
                    cfg: ArchConfig::conventional(n),
                }
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown architecture '{other}'"
                )))
            }
        };
        requests.push(req);
    }
    Ok(requests)
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    spec: Vec<String>,
    dataset: &'a str,
    reports: Vec<LabeledReport<'a>>,
}

#[derive(Serialize)]
struct LabeledReport<'a> {
    label: &'a str,
    #[serde(flatten)]
    report: &'a SimReport,
}

pub fn run(args: SimArgs) -> CmdResult<()> {
    let a = load_dataset(&args.dataset)?;
    let (b, b_name): (CsrMatrix, String) = if args.aat {
        (transpose(&a.csr)?, format!("transpose({})", a.name))
    } else {
        match (&args.b_input, &args.b_profile) {
            (Some(path), None) => {
                let d = load_path(path)?;
                (d.csr, d.name)
            }
            (None, Some(profile)) => {
                let d = load_profile(profile, args.dataset.seed.wrapping_add(1))?;
                (d.csr, d.name)
            }
            (None, None) => {
                return Err(CliError::Usage(
                    "supply a second operand with --b-input/--b-profile, or pass --aat".to_string(),
                ))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--b-input and --b-profile are mutually exclusive".to_string(),
                ))
            }
        }
    };
    let requests = resolve_requests(&args)?;
    let dataset_label = format!("{}*{}", a.name, b_name);
    let density = a.csr.density();

    let mut reports: Vec<(String, SimReport)> = Vec::new();
    for req in requests {
        let report = run_sim(&a.csr, &b, &req.cfg)?;
        eprintln!(
            "{}: {:.1} cycles ({} MACs, {} single-unit cycles)",
            req.label,
            report.total_cycles,
            report.mac_ops,
            report.single_unit_cycles()
        );
        reports.push((req.label, report));
    }

    // all architectures must agree on the product before latencies compare
    let reference = &reports[0].1.result_checksum;
    for (label, report) in &reports {
        if &report.result_checksum != reference {
            return Err(CliError::Correctness(format!(
                "result checksum mismatch: {} produced {} but {} produced {}",
                reports[0].0, reference, label, report.result_checksum
            )));
        }
    }

    let baseline = reports
        .iter()
        .find(|(_, r)| r.arch == Arch::SyncMesh)
        .map(|(_, r)| r.total_cycles)
        .unwrap_or(reports[0].1.total_cycles);

    let mut out = String::new();
    writeln!(out, "# spec: {}", spec_echo()).unwrap();
    writeln!(out, "{HEADER}").unwrap();
    for (label, report) in &reports {
        writeln!(
            out,
            "{SCHEMA},{label},{dataset_label},{:.6},{:.3},{:.4}",
            density,
            report.total_cycles,
            report.total_cycles / baseline
        )
        .unwrap();
    }
    emit(&args.out, &out)?;

    if let Some(path) = &args.json {
        let doc = JsonDocument {
            spec: std::env::args().skip(1).collect(),
            dataset: &dataset_label,
            reports: reports
                .iter()
                .map(|(label, report)| LabeledReport { label, report })
                .collect(),
        };
        fs::write(path, serde_json::to_string_pretty(&doc).unwrap())?;
    }
    Ok(())
}
