//! Dense N × k arrays over `0..v`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Cell type. Alphabets are limited to `v ≤ 65536`.
pub type Symbol = u16;

/// Row-major N × k grid of symbols in `0..v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Array {
    rows: usize,
    cols: usize,
    v: u64,
    cells: Vec<Symbol>,
}

impl Array {
    /// Builds an array from row-major cells, checking shape and symbol range.
    pub fn from_cells(rows: usize, cols: usize, v: u64, cells: Vec<Symbol>) -> Result<Self> {
        check_alphabet(v)?;
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {rows} x {cols} array",
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&s| u64::from(s) >= v) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad.into(),
                v,
            });
        }
        Ok(Array {
            rows,
            cols,
            v,
            cells,
        })
    }

    pub fn from_rows<R: AsRef<[u64]>>(v: u64, cols: usize, rows: &[R]) -> Result<Self> {
        let mut cells = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for &s in row {
                if s >= v {
                    return Err(Error::SymbolOutOfRange { symbol: s, v });
                }
                cells.push(s as Symbol);
            }
        }
        Self::from_cells(rows.len(), cols, v, cells)
    }

    /// An array with zero rows.
    pub fn empty(cols: usize, v: u64) -> Result<Self> {
        Self::from_cells(0, cols, v, Vec::new())
    }

    /// Every cell drawn independently and uniformly from `0..v`.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, v: u64, rng: &mut R) -> Result<Self> {
        check_alphabet(v)?;
        let cells = (0..rows * cols)
            .map(|_| rng.gen_range(0..v) as Symbol)
            .collect();
        Ok(Array {
            rows,
            cols,
            v,
            cells,
        })
    }

    /// All `v^cols` rows in rank order.
    pub fn full_factorial(cols: usize, v: u64) -> Result<Self> {
        let n = crate::params::full_count(v, cols)?;
        let n = usize::try_from(n)
            .ok()
            .filter(|&n| n.saturating_mul(cols) <= 1 << 28)
            .ok_or_else(|| Error::CapacityExceeded(format!("{v}^{cols} rows")))?;
        let mut cells = vec![0 as Symbol; n * cols];
        for (r, row) in cells.chunks_mut(cols.max(1)).enumerate().take(n) {
            crate::tuple::unrank_into(r as u64, v, row);
        }
        Self::from_cells(n, cols, v, cells)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Symbol {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Symbol] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        // chunks_exact panics on 0; a zero-column array has no visible cells
        let width = self.cols.max(1);
        self.cells.chunks_exact(width).take(self.rows)
    }

    /// Redraws every entry of column `col` uniformly at random.
    pub(crate) fn resample_column<R: Rng + ?Sized>(&mut self, col: usize, rng: &mut R) {
        let v = self.v;
        for i in 0..self.rows {
            self.cells[i * self.cols + col] = rng.gen_range(0..v) as Symbol;
        }
    }

    /// `N × |C|` projection onto the strictly increasing column list `C`.
    pub fn project(&self, columns: &[usize]) -> Result<Array> {
        check_columns(columns, self.cols)?;
        let mut cells = Vec::with_capacity(self.rows * columns.len());
        for row in self.iter_rows() {
            cells.extend(columns.iter().map(|&c| row[c]));
        }
        Ok(Array {
            rows: self.rows,
            cols: columns.len(),
            v: self.v,
            cells,
        })
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Array) -> Result<Array> {
        if self.cols != other.cols || self.v != other.v {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {}x{} (v={}) over {}x{} (v={})",
                self.rows, self.cols, self.v, other.rows, other.cols, other.v
            )));
        }
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        Ok(Array {
            rows: self.rows + other.rows,
            cols: self.cols,
            v: self.v,
            cells,
        })
    }
}

impl fmt::Debug for Array {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Array {}x{} v={}", self.rows, self.cols, self.v)?;
        for row in self.iter_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

fn check_alphabet(v: u64) -> Result<()> {
    if v < 2 {
        return Err(Error::AlphabetTooSmall { v });
    }
    if v > u64::from(Symbol::MAX) + 1 {
        return Err(Error::CapacityExceeded(format!("alphabet size {v}")));
    }
    Ok(())
}

pub(crate) fn check_columns(columns: &[usize], k: usize) -> Result<()> {
    for w in columns.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::UnsortedColumnSet);
        }
    }
    if let Some(&c) = columns.iter().find(|&&c| c >= k) {
        return Err(Error::ColumnOutOfRange { col: c, k });
    }
    Ok(())
}
