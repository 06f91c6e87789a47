//! Matrix Market coordinate-format I/O (ASCII, 1-based indices).
//!
//! Accepts `real` and `integer` fields with `general` or `symmetric`
//! symmetry. Symmetric storage is expanded eagerly; pattern files carry no
//! values and are rejected.

use crate::coo::CooMatrix;
use crate::csr::CsrMatrix;
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<CooMatrix> {
    let file = File::open(path.as_ref())?;
    read_matrix_market(BufReader::new(file))
}

pub fn read_matrix_market(reader: impl Read) -> Result<CooMatrix> {
    let reader = BufReader::new(reader);
    let mut lines = reader.lines().enumerate();

    let (lineno, header) = match lines.next() {
        Some((n, l)) => (n + 1, l?),
        None => {
            return Err(Error::MarketFormat {
                line: 1,
                msg: "empty file".to_string(),
            })
        }
    };
    let symmetric = parse_header(&header, lineno)?;

    // size line: first non-comment, non-blank line after the header
    let mut size: Option<(usize, usize, usize)> = None;
    let mut matrix: Option<CooMatrix> = None;
    let mut seen = 0usize;
    for (n, line) in lines {
        let lineno = n + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(Error::MarketFormat {
                        line: lineno,
                        msg: format!("size line needs 3 fields, got {}", fields.len()),
                    });
                }
                let rows = parse_usize(fields[0], lineno)?;
                let cols = parse_usize(fields[1], lineno)?;
                let nnz = parse_usize(fields[2], lineno)?;
                size = Some((rows, cols, nnz));
                matrix = Some(CooMatrix::new(rows, cols));
            }
            Some((rows, cols, nnz)) => {
                if seen == nnz {
                    return Err(Error::MarketFormat {
                        line: lineno,
                        msg: format!("more than the declared {nnz} entries"),
                    });
                }
                if fields.len() != 3 {
                    return Err(Error::MarketFormat {
                        line: lineno,
                        msg: format!("entry needs 3 fields, got {}", fields.len()),
                    });
                }
                let i = parse_usize(fields[0], lineno)?;
                let j = parse_usize(fields[1], lineno)?;
                let v: f64 = fields[2].parse().map_err(|_| Error::MarketFormat {
                    line: lineno,
                    msg: format!("bad value '{}'", fields[2]),
                })?;
                if i < 1 || i > rows || j < 1 || j > cols {
                    return Err(Error::MarketFormat {
                        line: lineno,
                        msg: format!("index ({i}, {j}) outside 1..={rows} x 1..={cols}"),
                    });
                }
                let m = matrix.as_mut().unwrap();
                m.triplets.push((i - 1, j - 1, v));
                if symmetric && i != j {
                    m.triplets.push((j - 1, i - 1, v));
                }
                seen += 1;
            }
        }
    }

    let (_, _, nnz) = size.ok_or(Error::MarketFormat {
        line: 0,
        msg: "missing size line".to_string(),
    })?;
    if seen != nnz {
        return Err(Error::MarketFormat {
            line: 0,
            msg: format!("declared {nnz} entries but found {seen}"),
        });
    }
    let m = matrix.unwrap();
    m.validate()?;
    Ok(m)
}

fn parse_header(line: &str, lineno: usize) -> Result<bool> {
    let fields: Vec<String> = line.split_whitespace().map(|s| s.to_lowercase()).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" {
        return Err(Error::MarketFormat {
            line: lineno,
            msg: "header must be '%%MatrixMarket matrix coordinate <field> <symmetry>'"
                .to_string(),
        });
    }
    if fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(Error::MarketUnsupported(format!(
            "only 'matrix coordinate' objects are supported, got '{} {}'",
            fields[1], fields[2]
        )));
    }
    match fields[3].as_str() {
        "real" | "integer" => {}
        "pattern" => {
            return Err(Error::MarketUnsupported(
                "pattern files carry no values; supply a real or integer file".to_string(),
            ))
        }
        other => {
            return Err(Error::MarketUnsupported(format!(
                "unsupported field type '{other}'"
            )))
        }
    }
    match fields[4].as_str() {
        "general" => Ok(false),
        "symmetric" => Ok(true),
        other => Err(Error::MarketUnsupported(format!(
            "unsupported symmetry '{other}'"
        ))),
    }
}

fn parse_usize(s: &str, lineno: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::MarketFormat {
        line: lineno,
        msg: format!("bad integer '{s}'"),
    })
}

pub fn save_matrix_market(path: impl AsRef<Path>, m: &CsrMatrix) -> Result<()> {
    let file = File::create(path.as_ref())?;
    write_matrix_market(BufWriter::new(file), m)
}

/// Writes general-symmetry coordinate format with 1-based indices.
pub fn write_matrix_market(mut w: impl Write, m: &CsrMatrix) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", m.rows, m.cols, m.nnz())?;
    for i in 0..m.rows {
        let (cols, vals) = m.row(i);
        for (&c, &v) in cols.iter().zip(vals) {
            writeln!(w, "{} {} {}", i + 1, c + 1, fmt_value(v))?;
        }
    }
    Ok(())
}

fn fmt_value(v: f64) -> String {
    // shortest round-trippable representation
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}
