use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "spmm-bench",
    version,
    about = "Sparse format builds, access benchmarks, SpMM runs, and systolic mesh simulations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert a dataset to CSR (.mtx) or indexed-CSR (.incrs) storage
    Convert(ConvertArgs),
    /// Print shape, sparsity, and per-row statistics of a dataset
    Stats(StatsArgs),
    /// Check the counter words of an .incrs file against a full rescan
    Verify(VerifyArgs),
    /// Replay random column gathers under both formats and report access counts
    AccessBench(AccessBenchArgs),
    /// Multiply two sparse matrices with the instrumented reference kernel
    Spmm(SpmmArgs),
    /// Run cycle-accurate architecture simulations and compare latencies
    Sim(SimArgs),
    /// Consolidate benchmark CSVs or print design-parameter tables
    Report(ReportArgs),
}

/// Dataset source: a file or an inline synthetic profile.
#[derive(Args, Debug)]
pub struct DatasetArgs {
    /// Matrix Market (.mtx) or binary indexed (.incrs) file
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Synthetic profile "ROWS,COLS,DENSITY[,SEED]"
    #[arg(long)]
    pub profile: Option<String>,
    /// Seed for profiles that do not carry one
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Crs,
    Incrs,
}

/// Section/block geometry for indexed-CSR builds.
#[derive(Args, Debug)]
pub struct GeometryArgs {
    /// Columns per section
    #[arg(long, default_value_t = 256)]
    pub section_size: usize,
    /// Columns per block
    #[arg(long, default_value_t = 32)]
    pub block_size: usize,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    #[arg(long, value_enum, default_value_t = FormatArg::Incrs)]
    pub format: FormatArg,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Output path (.mtx for crs, .incrs for incrs)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// .incrs file to check
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct AccessBenchArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Number of random column gathers
    #[arg(long, default_value_t = 100)]
    pub probes: usize,
    /// Probe sequence seed
    #[arg(long, default_value_t = 7)]
    pub probe_seed: u64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpmmArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Second operand file
    #[arg(long)]
    pub b_input: Option<PathBuf>,
    /// Second operand profile "ROWS,COLS,DENSITY[,SEED]"
    #[arg(long)]
    pub b_profile: Option<String>,
    /// Multiply by the first operand's transpose instead of a second operand
    #[arg(long)]
    pub aat: bool,
    /// Storage format used for column access to the second operand
    #[arg(long, value_enum, default_value_t = FormatArg::Crs)]
    pub format: FormatArg,
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Write the product as Matrix Market
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    #[arg(long)]
    pub b_input: Option<PathBuf>,
    #[arg(long)]
    pub b_profile: Option<String>,
    /// Multiply by the first operand's transpose
    #[arg(long)]
    pub aat: bool,
    /// Architectures: sync, fpic, conventional, fpic-same-bw,
    /// fpic-same-buffer (parity variants are sized against --mesh)
    #[arg(long, value_delimiter = ',')]
    pub arch: Vec<String>,
    /// Key/value architecture description file (alternative to --arch)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Synchronized mesh edge; parity variants derive from it
    #[arg(long, default_value_t = 64)]
    pub mesh: usize,
    /// Unit count for plain fpic runs
    #[arg(long, default_value_t = 1)]
    pub units: usize,
    /// Synchronization round length
    #[arg(long, default_value_t = 32)]
    pub round: usize,
    /// CSV summary output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Full simulation reports as JSON
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// access-bench CSVs to consolidate into a cost/benefit table
    #[arg(long, value_delimiter = ',')]
    pub access_bench: Vec<PathBuf>,
    /// sim CSVs to merge
    #[arg(long, value_delimiter = ',')]
    pub sim: Vec<PathBuf>,
    /// Print the design-parameter table for this synchronized mesh edge
    #[arg(long)]
    pub design_params: Option<usize>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}
