mod access_bench;
mod convert;
mod report;
mod sim;
mod spmm_cmd;
mod stats;
mod verify;

use crate::cli::Command;
use crate::common::CmdResult;

pub fn dispatch(command: Command) -> CmdResult<()> {
    match command {
        Command::Convert(args) => convert::run(args),
        Command::Stats(args) => stats::run(args),
        Command::Verify(args) => verify::run(args),
        Command::AccessBench(args) => access_bench::run(args),
        Command::Spmm(args) => spmm_cmd::run(args),
        Command::Sim(args) => sim::run(args),
        Command::Report(args) => report::run(args),
    }
}
