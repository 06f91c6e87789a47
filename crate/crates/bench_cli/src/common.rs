use crate::cli::DatasetArgs;
use spmm_core::{
    build_incrs, coo_to_csr, generate_synthetic, load_incrs, load_matrix_market, CsrMatrix,
    InCrsConfig, InCrsMatrix, SynthProfile,
};
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

/// Errors sorted by exit code: usage 1, data 2, correctness 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Correctness(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Correctness(m) => write!(f, "correctness failure: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Correctness(_) => 3,
        }
    }
}

impl From<spmm_core::Error> for CliError {
    fn from(e: spmm_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CmdResult<T> = Result<T, CliError>;

/// A resolved input matrix. `indexed` is populated when the source was an
/// .incrs file, so its geometry can be reused.
pub struct Dataset {
    pub name: String,
    pub csr: CsrMatrix,
    pub indexed: Option<InCrsMatrix>,
}

pub fn load_dataset(args: &DatasetArgs) -> CmdResult<Dataset> {
    match (&args.input, &args.profile) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--input and --profile are mutually exclusive".to_string(),
        )),
        (Some(path), None) => load_path(path),
        (None, Some(profile)) => load_profile(profile, args.seed),
        (None, None) => Err(CliError::Usage(
            "supply a dataset with --input or --profile".to_string(),
        )),
    }
}

pub fn load_path(path: &Path) -> CmdResult<Dataset> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let mut head = [0u8; 8];
    let n = File::open(path)?.read(&mut head)?;
    if n == 8 && &head == b"INCRSBIN" {
        let indexed = load_incrs(path)?;
        return Ok(Dataset {
            name,
            csr: indexed.base.clone(),
            indexed: Some(indexed),
        });
    }
    let coo = load_matrix_market(path)?;
    Ok(Dataset {
        name,
        csr: coo_to_csr(&coo)?,
        indexed: None,
    })
}

/// Parses "ROWS,COLS,DENSITY[,SEED]" and generates the matrix.
pub fn load_profile(spec: &str, default_seed: u64) -> CmdResult<Dataset> {
    let fields: Vec<&str> = spec.split(',').map(|s| s.trim()).collect();
    if fields.len() != 3 && fields.len() != 4 {
        return Err(CliError::Usage(format!(
            "profile '{spec}' must be ROWS,COLS,DENSITY[,SEED]"
        )));
    }
    let parse = |s: &str, what: &str| -> CmdResult<u64> {
        s.parse()
            .map_err(|_| CliError::Usage(format!("bad {what} '{s}' in profile")))
    };
    let rows = parse(fields[0], "row count")? as usize;
    let cols = parse(fields[1], "column count")? as usize;
    let density: f64 = fields[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad density '{}' in profile", fields[2])))?;
    let seed = if fields.len() == 4 {
        parse(fields[3], "seed")?
    } else {
        default_seed
    };
    let profile = SynthProfile::uniform(rows, cols, density, seed);
    let csr = coo_to_csr(&generate_synthetic(&profile)?)?;
    Ok(Dataset {
        name: format!("synthetic-{rows}x{cols}-d{density}-s{seed}"),
        csr,
        indexed: None,
    })
}

/// Reuses the indexed form loaded from file when its geometry matches,
/// otherwise builds one.
pub fn indexed_form(ds: &Dataset, cfg: InCrsConfig) -> CmdResult<InCrsMatrix> {
    if let Some(indexed) = &ds.indexed {
        if indexed.config == cfg {
            return Ok(indexed.clone());
        }
    }
    Ok(build_incrs(&ds.csr, cfg)?)
}

/// The invoked command line, JSON-encoded; embedded in every report so any
/// row can be regenerated.
pub fn spec_echo() -> String {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    serde_json::to_string(&argv).unwrap_or_else(|_| "[]".to_string())
}

/// Writes to the path or stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> CmdResult<()> {
    match out {
        Some(path) => {
            File::create(path)?.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Splits a CSV document into (comment lines, header, data rows).
pub fn parse_csv(text: &str) -> CmdResult<(Vec<String>, Vec<String>)> {
    let mut header = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            header = Some(line.to_string());
        } else {
            rows.push(line.to_string());
        }
    }
    let header = header.ok_or_else(|| CliError::Data("CSV input has no header".to_string()))?;
    Ok((vec![header], rows))
}
