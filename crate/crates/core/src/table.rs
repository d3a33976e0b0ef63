//! Sparse graded Betti tables and their text, JSON and CSV forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `β_{i,i+j}` indexed by homological degree `i` and strand `j`, for a
/// quotient of a polynomial ring in `n` variables.
///
/// Only nonzero entries are stored and `(0, 0) ↦ 1` is always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    /// Table with only `β_{0,0} = 1`.
    pub fn new(n: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((0, 0), 1);
        BettiTable { n, entries }
    }

    /// Builds a table from `(i, j, value)` triples. Zero values are dropped.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j, v) in entries {
            if v == 0 {
                continue;
            }
            if i + j > n {
                return Err(Error::CellOutOfRange { i, j, n });
            }
            if map.insert((i, j), v).is_some() {
                return Err(Error::Parse(format!("duplicate entry ({i}, {j})")));
            }
        }
        if map.get(&(0, 0)) != Some(&1) {
            return Err(Error::Parse("β_{0,0} must be 1".into()));
        }
        Ok(BettiTable { n, entries: map })
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            debug_assert!(i + j <= self.n);
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    /// `β_{i,i+j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, value)`, ordered by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> BTreeSet<(usize, usize)> {
        self.entries.keys().copied().collect()
    }

    /// Largest strand `j` with a nonzero entry.
    pub fn max_strand(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Largest homological degree `i` with a nonzero entry.
    pub fn max_degree(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Coefficients of `Σ (-1)^i β_{i,i+j} t^{i+j}`, indexed by degree.
    pub fn alternating_sum(&self) -> Vec<i128> {
        let mut coeffs = vec![0i128; self.n + 1];
        for (i, j, v) in self.entries() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            coeffs[i + j] += sign * v as i128;
        }
        trim(&mut coeffs);
        coeffs
    }

    /// Grid with rows `j = 0..=reg`, columns `i = 0..=projdim`, `.` for
    /// zero, right-aligned columns separated by one space.
    pub fn render_grid(&self) -> String {
        let rows = self.max_strand() + 1;
        let cols = self.max_degree() + 1;
        let cells: Vec<Vec<String>> = (0..rows)
            .map(|j| {
                (0..cols)
                    .map(|i| match self.get(i, j) {
                        0 => ".".to_owned(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..cols)
            .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let wire = TableJson {
            n: self.n,
            entries: self.entries().map(|(i, j, v)| [i as u64, j as u64, v]).collect(),
        };
        serde_json::to_string(&wire).expect("table serializes")
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let wire: TableJson = serde_json::from_str(input)?;
        BettiTable::from_entries(
            wire.n,
            wire.entries.into_iter().map(|[i, j, v]| (i as usize, j as usize, v)),
        )
    }

    /// CSV with header `i,j,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,value\n");
        for (i, j, v) in self.entries() {
            writeln!(out, "{i},{j},{v}").unwrap();
        }
        out
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Grid => self.render_grid(),
            TableFormat::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
            TableFormat::Csv => self.to_csv(),
        }
    }
}

fn trim(coeffs: &mut Vec<i128>) {
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

pub(crate) fn trim_poly(mut coeffs: Vec<i128>) -> Vec<i128> {
    trim(&mut coeffs);
    coeffs
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    entries: Vec<[u64; 3]>,
}

/// Output form of a rendered table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Grid,
    Json,
    Csv,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" | "text" => Ok(TableFormat::Grid),
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> BettiTable {
        BettiTable::from_entries(3, [(0, 0, 1), (1, 1, 3), (2, 1, 2)]).unwrap()
    }

    #[test]
    fn grid_rendering() {
        let k2 = BettiTable::from_entries(2, [(0, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(k2.render_grid(), "1 .\n. 1\n");
        assert_eq!(triangle().render_grid(), "1 . .\n. 3 2\n");
        assert_eq!(BettiTable::new(0).render_grid(), "1\n");
    }

    #[test]
    fn wide_columns_right_align() {
        let t = BettiTable::from_entries(4, [(0, 0, 1), (1, 1, 24), (2, 1, 7), (2, 2, 100)]).unwrap();
        assert_eq!(t.render_grid(), "1  .   .\n. 24   7\n.  . 100\n");
    }

    #[test]
    fn json_and_csv() {
        let t = triangle();
        assert_eq!(t.to_json(), r#"{"n":3,"entries":[[0,0,1],[1,1,3],[2,1,2]]}"#);
        assert_eq!(BettiTable::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(t.to_csv(), "i,j,value\n0,0,1\n1,1,3\n2,1,2\n");
        assert!(BettiTable::from_json(r#"{"n":1,"entries":[[0,0,1],[1,1,1]]}"#).is_err());
        assert!(BettiTable::from_json(r#"{"n":2,"entries":[[1,1,1]]}"#).is_err());
    }

    #[test]
    fn alternating_sum_of_triangle() {
        assert_eq!(triangle().alternating_sum(), vec![1, 0, -3, 2]);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<TableFormat>().unwrap(), TableFormat::Csv);
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
