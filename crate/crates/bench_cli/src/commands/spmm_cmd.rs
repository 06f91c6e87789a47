use crate::cli::{FormatArg, SpmmArgs};
use crate::common::{indexed_form, load_dataset, load_path, load_profile, CmdResult, CliError, Dataset};
use spmm_core::{matrix_stats, save_matrix_market, spmm, spmm_a_at, AccessCounter, InCrsConfig};

pub fn run(args: SpmmArgs) -> CmdResult<()> {
    let a = load_dataset(&args.dataset)?;

    let (product, ctr) = if args.aat {
        if args.b_input.is_some() || args.b_profile.is_some() {
            return Err(CliError::Usage(
                "--aat excludes --b-input/--b-profile".to_string(),
            ));
        }
        println!("computing {} x transpose({0})", a.name);
        (spmm_a_at(&a.csr)?, None)
    } else {
        let b: Dataset = match (&args.b_input, &args.b_profile) {
            (Some(path), None) => load_path(path)?,
            (None, Some(profile)) => load_profile(profile, args.dataset.seed.wrapping_add(1))?,
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
        };
        println!("computing {} x {}", a.name, b.name);
        let mut ctr = AccessCounter::default();
        let product = match args.format {
            FormatArg::Crs => spmm(&a.csr, &b.csr, &mut ctr)?,
            FormatArg::Incrs => {
                let cfg =
                    InCrsConfig::new(args.geometry.section_size, args.geometry.block_size)?;
                let indexed = indexed_form(&b, cfg)?;
                spmm(&a.csr, &indexed, &mut ctr)?
            }
        };
        (product, Some(ctr))
    };

    let s = matrix_stats(&product);
    println!(
        "product: {} x {}, {} nonzeros, density {:.6}",
        s.rows, s.cols, s.nnz, s.density
    );
    if let Some(ctr) = ctr {
        println!(
            "column-side accesses: {} element, {} pointer, {} counter ({} words total)",
            ctr.element_reads,
            ctr.pointer_reads,
            ctr.counter_reads,
            ctr.total()
        );
    }
    if let Some(out) = &args.out {
        save_matrix_market(out, &product)?;
        println!("wrote product: {}", out.display());
    }
    Ok(())
}
