use crate::cli::VerifyArgs;
use crate::common::CmdResult;
use spmm_core::load_incrs;

pub fn run(args: VerifyArgs) -> CmdResult<()> {
    let indexed = load_incrs(&args.input)?;
    indexed.verify()?;
    println!(
        "{}: structure valid, {} counter words match a full rescan",
        args.input.display(),
        indexed.counters.len()
    );
    Ok(())
}
