//! Tableaux as values: standardness, inversion pairs, standardization,
//! split detection and the maximum-inversion construction.
//!
//! Text format: rows separated by `/` or newlines, entries by whitespace,
//! e.g. `"1 2 8 / 4 5 6 / 3 7 9"`. The shape is read off the row lengths.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A shape together with a bijective filling by `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let shape = Partition::new(lens).map_err(|e| match e {
            Error::InvalidPartition(msg) => Error::InvalidTableau(format!("bad row lengths: {msg}")),
            other => other,
        })?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > n {
                return Err(Error::InvalidTableau(format!(
                    "entry {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTableau(format!("entry {v} appears twice")));
            }
        }
        Ok(Tableau { shape, rows })
    }

    pub(crate) fn from_parts_unchecked(shape: Partition, rows: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(
            rows.iter().map(Vec::len).collect::<Vec<_>>(),
            shape.parts().to_vec()
        );
        Tableau { shape, rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entry at 0-based `(row, col)`, if that box exists.
    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row).and_then(|r| r.get(col)).copied()
    }

    /// Column `col` (0-based) read top to bottom.
    pub fn column(&self, col: usize) -> Vec<usize> {
        self.rows
            .iter()
            .take_while(|r| r.len() > col)
            .map(|r| r[col])
            .collect()
    }

    /// 0-based `(row, col)` of an entry.
    pub fn position(&self, value: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(i, row)| {
            row.iter().position(|&v| v == value).map(|j| (i, j))
        })
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_column_standard(&self) -> bool {
        self.rows
            .windows(2)
            .all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard() && self.is_column_standard()
    }

    /// Multi-line rendering, one row per line.
    pub fn to_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['/', '\n'])
            .map(str::trim)
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| {
                            Error::InvalidTableau(format!("cannot parse entry {t:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(deserializer)?;
        Tableau::new(rows).map_err(serde::de::Error::custom)
    }
}

/// A row-standard tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct InvertedTableau(Tableau);

impl InvertedTableau {
    pub fn new(t: Tableau) -> Result<Self> {
        if !t.is_row_standard() {
            return Err(Error::InvalidTableau(format!("{t} is not row-standard")));
        }
        Ok(InvertedTableau(t))
    }

    pub fn into_inner(self) -> Tableau {
        self.0
    }

    /// Every inversion pair, sorted by `(column, small, large)`.
    ///
    /// Two entries `a < b` of one column form an inversion when either
    /// (1) one of them has no right neighbour and `a` sits below `b`, or
    /// (2) both have right neighbours `a′`, `b′` and `a′ > b′`.
    pub fn inversions(&self) -> Vec<InversionPair> {
        let t = &self.0;
        let mut out = Vec::new();
        for col in 0..t.shape.cols() {
            let height = t.column(col).len();
            for upper in 0..height {
                for lower in (upper + 1)..height {
                    let (x, y) = (t.rows[upper][col], t.rows[lower][col]);
                    let (small_row, large_row) = if x < y { (upper, lower) } else { (lower, upper) };
                    let small_right = t.get(small_row, col + 1);
                    let large_right = t.get(large_row, col + 1);
                    let inverted = match (small_right, large_right) {
                        (Some(sr), Some(lr)) => sr > lr,
                        _ => small_row > large_row,
                    };
                    if inverted {
                        out.push(InversionPair {
                            small: x.min(y),
                            large: x.max(y),
                            column: col + 1,
                        });
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `n_inv`, via the fast counter shared with the enumerator.
    pub fn inversion_count(&self) -> usize {
        let t = &self.0;
        let lens = t.shape.parts();
        count_inversions(lens, |r, c| t.rows[r][c])
    }

    /// Sorts every column increasingly; the result is standard.
    pub fn standardize(&self) -> Tableau {
        let t = &self.0;
        let mut rows = t.rows.clone();
        for col in 0..t.shape.cols() {
            let mut column = t.column(col);
            column.sort_unstable();
            for (row, v) in column.into_iter().enumerate() {
                rows[row][col] = v;
            }
        }
        let out = Tableau::from_parts_unchecked(t.shape.clone(), rows);
        assert!(out.is_standard(), "standardization of {t} is not standard");
        out
    }

    /// 1-based `j < n` such that the first `j` columns hold exactly
    /// `{1, …, j·m}`. Only defined for rectangular shapes.
    pub fn split_points(&self) -> Result<Vec<usize>> {
        let t = &self.0;
        if !t.shape.is_rectangular() {
            return Err(Error::UnsupportedShape(t.shape.to_string()));
        }
        let m = t.shape.rows();
        let n = t.shape.cols();
        let mut out = Vec::new();
        let mut prefix_max = 0;
        for j in 1..n {
            prefix_max = prefix_max.max(t.column(j - 1).into_iter().max().unwrap_or(0));
            // j·m distinct entries all ≤ j·m means they are exactly 1..=j·m.
            if prefix_max == j * m {
                out.push(j);
            }
        }
        Ok(out)
    }
}

impl Deref for InvertedTableau {
    type Target = Tableau;

    fn deref(&self) -> &Tableau {
        &self.0
    }
}

impl TryFrom<Tableau> for InvertedTableau {
    type Error = Error;

    fn try_from(t: Tableau) -> Result<Self> {
        InvertedTableau::new(t)
    }
}

impl FromStr for InvertedTableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InvertedTableau::new(s.parse()?)
    }
}

impl fmt::Display for InvertedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for InvertedTableau {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let t = Tableau::deserialize(deserializer)?;
        InvertedTableau::new(t).map_err(serde::de::Error::custom)
    }
}

/// Two entries `small < large` of one column that are out of order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InversionPair {
    /// 1-based column both entries occupy. First so that sorting is by column.
    pub column: usize,
    pub small: usize,
    pub large: usize,
}

impl fmt::Display for InversionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) col {}", self.small, self.large, self.column)
    }
}

/// Counts inversions of a row-standard filling given by `at(row, col)`.
///
/// Each box gets a key: its right neighbour, or `∞ + row` if it has none.
/// A pair in one column is an inversion exactly when its entries and their
/// keys are ordered differently.
pub(crate) fn count_inversions(lens: &[usize], at: impl Fn(usize, usize) -> usize) -> usize {
    const INF: usize = usize::MAX / 2;
    let key = |r: usize, c: usize| if lens[r] > c + 1 { at(r, c + 1) } else { INF + r };
    let mut total = 0;
    for col in 0..lens[0] {
        let height = lens.iter().take_while(|&&l| l > col).count();
        for upper in 0..height {
            let (x, kx) = (at(upper, col), key(upper, col));
            for lower in (upper + 1)..height {
                let (y, ky) = (at(lower, col), key(lower, col));
                if (x < y) != (kx < ky) {
                    total += 1;
                }
            }
        }
    }
    total
}

/// The unique tableau of `shape` with `M_λ` inversions.
///
/// Columns are filled right to left with the largest remaining values. Each
/// column is ordered opposite to the keys of its right neighbours (missing
/// neighbours count as huge values increasing downward), so every pair in
/// every column is inverted.
pub fn max_inversion_tableau(shape: &Partition) -> InvertedTableau {
    let lens = shape.parts();
    let heights = shape.column_heights();
    let mut rows: Vec<Vec<usize>> = lens.iter().map(|&l| vec![0; l]).collect();
    let mut next_max = shape.size();
    for col in (0..shape.cols()).rev() {
        let height = heights[col];
        let mut order: Vec<usize> = (0..height).collect();
        // Largest key first; it receives the smallest value of this column.
        order.sort_by_key(|&r| {
            std::cmp::Reverse(if lens[r] > col + 1 {
                rows[r][col + 1]
            } else {
                usize::MAX / 2 + r
            })
        });
        let lowest = next_max + 1 - height;
        for (offset, r) in order.into_iter().enumerate() {
            rows[r][col] = lowest + offset;
        }
        next_max -= height;
    }
    let t = InvertedTableau(Tableau::from_parts_unchecked(shape.clone(), rows));
    assert!(t.is_row_standard());
    assert_eq!(t.inversion_count(), shape.max_inversions());
    t
}
