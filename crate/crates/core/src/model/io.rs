//! Matrix and report file formats.
//!
//! Matrices travel as MatrixMarket (array and coordinate, real,
//! general/symmetric) or headerless CSV; reports as JSON or a single CSV
//! row. Serialized indices are 1-based, floats are printed with Rust's
//! shortest round-trip formatting so save/load preserves every bit.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::model::SolveReport;
use crate::scalar::Scalar;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    MatrixMarket,
    Csv,
}

impl MatrixFormat {
    /// Infer the format from a file extension (`.mtx`/`.mm` vs `.csv`).
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") | Some("mm") => Ok(Self::MatrixMarket),
            Some("csv") => Ok(Self::Csv),
            other => Err(Error::Invalid(format!(
                "cannot infer matrix format from extension {other:?}; use .mtx, .mm or .csv"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub fn load_matrix<T: Scalar>(path: &Path, format: MatrixFormat) -> Result<DenseMatrix<T>> {
    let text = fs::read_to_string(path)?;
    match format {
        MatrixFormat::MatrixMarket => parse_matrix_market(&text),
        MatrixFormat::Csv => parse_csv(&text),
    }
}

pub fn save_matrix<T: Scalar>(m: &DenseMatrix<T>, path: &Path, format: MatrixFormat) -> Result<()> {
    let text = match format {
        MatrixFormat::MatrixMarket => format_matrix_market(m),
        MatrixFormat::Csv => format_csv(m),
    };
    fs::write(path, text)?;
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_value<T: Scalar>(tok: &str, line: usize) -> Result<T> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("cannot parse number {tok:?}")))?;
    Ok(T::cast(v))
}

/// Parse MatrixMarket text: array or coordinate, real, general or
/// symmetric. Coordinate entries not listed default to zero; symmetric
/// storage is expanded to full dense form.
pub fn parse_matrix_market<T: Scalar>(text: &str) -> Result<DenseMatrix<T>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 5 || !tokens[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(parse_err(hline, "header must be '%%MatrixMarket matrix <format> real <symmetry>'"));
    }
    if !tokens[1].eq_ignore_ascii_case("matrix") {
        return Err(parse_err(hline, "only 'matrix' objects are supported"));
    }
    let coordinate = match tokens[2].to_ascii_lowercase().as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(parse_err(hline, format!("unsupported format {other:?}"))),
    };
    match tokens[3].to_ascii_lowercase().as_str() {
        "real" | "integer" => {}
        other => return Err(parse_err(hline, format!("unsupported field type {other:?}"))),
    }
    let symmetric = match tokens[4].to_ascii_lowercase().as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(hline, format!("unsupported symmetry {other:?}"))),
    };

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (sline, size) = data.next().ok_or_else(|| parse_err(hline, "missing size line"))?;
    let stok: Vec<&str> = size.split_whitespace().collect();
    let want = if coordinate { 3 } else { 2 };
    if stok.len() != want {
        return Err(parse_err(sline, format!("size line needs {want} fields")));
    }
    let m: usize = stok[0].parse().map_err(|_| parse_err(sline, "cannot parse row count"))?;
    let n: usize = stok[1].parse().map_err(|_| parse_err(sline, "cannot parse column count"))?;
    if m == 0 || n == 0 {
        return Err(parse_err(sline, "dimensions must be positive"));
    }
    if symmetric && m != n {
        return Err(parse_err(sline, "symmetric matrices must be square"));
    }
    let mut out = DenseMatrix::<T>::zeros(m, n);

    if coordinate {
        let nnz: usize = stok[2].parse().map_err(|_| parse_err(sline, "cannot parse entry count"))?;
        let mut seen = 0usize;
        for (ln, l) in data {
            let tok: Vec<&str> = l.split_whitespace().collect();
            if tok.len() != 3 {
                return Err(parse_err(ln, "coordinate entries need 'i j value'"));
            }
            let i: usize = tok[0].parse().map_err(|_| parse_err(ln, "cannot parse row index"))?;
            let j: usize = tok[1].parse().map_err(|_| parse_err(ln, "cannot parse column index"))?;
            if i == 0 || i > m || j == 0 || j > n {
                return Err(parse_err(ln, format!("index ({i}, {j}) out of range for {m}x{n}")));
            }
            let v = parse_value::<T>(tok[2], ln)?;
            out.set(i - 1, j - 1, v);
            if symmetric {
                out.set(j - 1, i - 1, v);
            }
            seen += 1;
        }
        if seen != nnz {
            return Err(parse_err(sline, format!("declared {nnz} entries, found {seen}")));
        }
    } else {
        // Array values are column-major; symmetric array storage holds the
        // lower triangle only.
        let mut values = Vec::new();
        let mut last_line = sline;
        for (ln, l) in data {
            for tok in l.split_whitespace() {
                values.push((ln, tok));
            }
            last_line = ln;
        }
        let expect = if symmetric { n * (n + 1) / 2 } else { m * n };
        if values.len() != expect {
            return Err(parse_err(last_line, format!("expected {expect} array values, found {}", values.len())));
        }
        let mut it = values.into_iter();
        if symmetric {
            for j in 0..n {
                for i in j..n {
                    let (ln, tok) = it.next().expect("length checked");
                    let v = parse_value::<T>(tok, ln)?;
                    out.set(i, j, v);
                    out.set(j, i, v);
                }
            }
        } else {
            for j in 0..n {
                for i in 0..m {
                    let (ln, tok) = it.next().expect("length checked");
                    out.set(i, j, parse_value::<T>(tok, ln)?);
                }
            }
        }
    }

    // Reject files that smuggle in non-finite values.
    DenseMatrix::new(m, n, out.entries().to_vec())
}

/// Headerless CSV: rows of decimal numbers.
pub fn parse_csv<T: Scalar>(text: &str) -> Result<DenseMatrix<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut width = None;
    for (ln0, line) in text.lines().enumerate() {
        let ln = ln0 + 1;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<T> = line
            .split(',')
            .map(|tok| parse_value::<T>(tok.trim(), ln))
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_err(ln, format!("row has {} fields, expected {w}", row.len())));
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no data rows"));
    }
    DenseMatrix::from_rows(&rows)
}

pub fn format_matrix_market<T: Scalar>(m: &DenseMatrix<T>) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let _ = writeln!(out, "{}", m.get(i, j));
        }
    }
    out
}

pub fn format_csv<T: Scalar>(m: &DenseMatrix<T>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn report_to_json(report: &SolveReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

pub fn load_report_json(path: &Path) -> Result<SolveReport> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

fn fmt_indices(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub const REPORT_CSV_HEADER: &str =
    "algorithm,objective,rows,cols,upper_bound,gap_percent,nodes,cuts,iterations,wall_seconds,converged";

pub fn report_to_csv(report: &SolveReport) -> String {
    format!(
        "{}\n{},{},{},{},{},{},{},{},{},{},{}\n",
        REPORT_CSV_HEADER,
        report.algorithm,
        report.objective,
        fmt_indices(report.selection.rows()),
        fmt_indices(report.selection.cols()),
        fmt_opt(report.upper_bound),
        fmt_opt(report.gap_percent),
        report.nodes,
        report.cuts,
        report.iterations,
        report.wall_seconds,
        report.converged,
    )
}

pub fn save_report(report: &SolveReport, path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Json => report_to_json(report),
        ReportFormat::Csv => report_to_csv(report),
    };
    fs::write(path, text)?;
    Ok(())
}
