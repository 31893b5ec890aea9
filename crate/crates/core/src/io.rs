//! Text formats: arrays, bound sweeps and defect reports.
//!
//! Array files look like
//!
//! ```text
//! pca-forge v1
//! 2 3 2 0
//! 0 1 1
//! 1 0 1
//! ```
//!
//! Line 2 is `N k v base`, optionally followed by the claimed `t m eps`.
//! With base 1 the symbols are written as `1..=v`. Lines end in LF and
//! carry no trailing whitespace.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::array::{Array, Symbol};

use crate::bounds::{BoundSweep, Outcome};
use crate::coverage::Defect;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAGIC: &str = "pca-forge v1";

/// Properties an array file says its array has.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Claims {
    pub t: usize,
    pub m: u64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WriteOptions {
    /// First symbol, 0 or 1.
    pub base: u8,
    pub claims: Option<Claims>,
}

/// A parsed array file. The array is always held base 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayFile {
    pub array: Array,
    pub base: u8,
    pub claims: Option<Claims>,
}

pub fn format_array(a: &Array, opts: &WriteOptions) -> Result<String> {
    if opts.base > 1 {
        return Err(Error::Domain(format!("symbol base {} (expected 0 or 1)", opts.base)));
    }
    let mut out = String::with_capacity(a.cells().len() * 3 + 64);
    out.push_str(MAGIC);
    out.push('\n');
    let _ = write!(out, "{} {} {} {}", a.rows(), a.cols(), a.v(), opts.base);
    if let Some(c) = opts.claims {
        let _ = write!(out, " {} {} {}", c.t, c.m, c.epsilon);
    }
    out.push('\n');
    let base = u64::from(opts.base);
    for row in a.iter_rows() {
        for (j, &s) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", u64::from(s) + base);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_array(a: &Array, path: impl AsRef<Path>, opts: &WriteOptions) -> Result<()> {
    write_text(path.as_ref(), &format_array(a, opts)?)
}

pub fn parse_array(text: &str) -> Result<ArrayFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim_end() == MAGIC => {}
        _ => return Err(parse_err(1, format!("expected {MAGIC:?}"))),
    }
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(2, "missing size line".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 && tokens.len() != 7 {
        return Err(parse_err(
            2,
            format!("expected `N k v base [t m eps]`, found {} fields", tokens.len()),
        ));
    }
    let rows: usize = field(&tokens, 0, 2)?;
    let cols: usize = field(&tokens, 1, 2)?;
    let v: u64 = field(&tokens, 2, 2)?;
    let base: u8 = field(&tokens, 3, 2)?;
    if base > 1 {
        return Err(parse_err(2, format!("symbol base {base} (expected 0 or 1)")));
    }
    let claims = if tokens.len() == 7 {
        Some(Claims {
            t: field(&tokens, 4, 2)?,
            m: field(&tokens, 5, 2)?,
            epsilon: field(&tokens, 6, 2)?,
        })
    } else {
        None
    };
    let mut cells: Vec<Symbol> = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 24));
    let mut body_rows = 0usize;
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        body_rows += 1;
        if body_rows > rows {
            return Err(Error::DimensionMismatch(format!(
                "header declares {rows} rows, found more at line {line_no}"
            )));
        }
        let before = cells.len();
        for tok in line.split_whitespace() {
            let x: u64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad symbol {tok:?}")))?;
            let s = x
                .checked_sub(u64::from(base))
                .filter(|&s| s < v)
                .ok_or(Error::SymbolOutOfRange { symbol: x, v })?;
            cells.push(s as Symbol);
        }
        let width = cells.len() - before;
        if width != cols {
            return Err(Error::DimensionMismatch(format!(
                "line {line_no} has {width} columns, header declares {cols}"
            )));
        }
    }
    if body_rows != rows {
        return Err(Error::DimensionMismatch(format!(
            "header declares {rows} rows, body has {body_rows}"
        )));
    }
    let array = Array::from_cells(rows, cols, v, cells)?;
    Ok(ArrayFile { array, base, claims })
}

pub fn read_array_file(path: impl AsRef<Path>) -> Result<ArrayFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_array(&text)
}

pub fn read_array(path: impl AsRef<Path>) -> Result<Array> {
    read_array_file(path).map(|f| f.array)
}

pub const SWEEP_HEADER: &str = "axis,formula,real_bound,n_rows,feasible";
pub const DEFECTS_HEADER: &str = "tset_indices,count,missing";

/// One row per (point, formula) in point order, formulas in sweep order.
/// The first column holds the axis value. Gaps leave the numbers empty.
pub fn sweep_csv<F: Real>(sweep: &BoundSweep<F>) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for point in &sweep.points {
        for (formula, outcome) in &point.results {
            let _ = match outcome {
                Outcome::Feasible(b) => writeln!(
                    out,
                    "{},{},{},{},true",
                    point.value,
                    formula.label(),
                    format_g6(b.real_bound.as_f64()),
                    b.n_rows
                ),
                Outcome::Gap(_) => writeln!(out, "{},{},,,false", point.value, formula.label()),
            };
        }
    }
    out
}

pub fn write_sweep_csv<F: Real>(sweep: &BoundSweep<F>, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &sweep_csv(sweep))
}

pub fn defects_csv(defects: &[Defect]) -> String {
    let mut out = String::from(DEFECTS_HEADER);
    out.push('\n');
    for d in defects {
        let cols: Vec<String> = d.tset.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{},{},{}", cols.join(" "), d.count, d.missing);
    }
    out
}

pub fn write_defects_csv(defects: &[Defect], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &defects_csv(defects))
}

/// Six significant digits, `%g` style: fixed notation for exponents in
/// `-4..6`, scientific otherwise, trailing zeros dropped.
pub fn format_g6(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn field<T: std::str::FromStr>(tokens: &[&str], i: usize, line: usize) -> Result<T> {
    tokens[i]
        .parse()
        .map_err(|_| parse_err(line, format!("bad field {:?}", tokens[i])))
}
