//! Shapes and shape-level arithmetic.
//!
//! Rows and columns are 1-based wherever they appear in the public interface
//! (`StairStepMove` rows, column indices returned by other modules). Internally
//! slices are 0-based as usual.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing sequence of positive integers `λ_1 ≥ … ≥ λ_m`, `m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("a shape needs at least one row".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be non-increasing, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// The `m`-row rectangle `(n, …, n)`.
    pub fn rectangle(rows: usize, cols: usize) -> Result<Self> {
        Partition::new(vec![cols; rows])
    }

    /// The single column `(1, …, 1)` with `m` boxes.
    pub fn column(rows: usize) -> Result<Self> {
        Partition::rectangle(rows, 1)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows `m`.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of the first row, i.e. the number of columns.
    pub fn cols(&self) -> usize {
        self.parts[0]
    }

    /// Total number of boxes `N`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_rectangular(&self) -> bool {
        self.parts.iter().all(|&p| p == self.parts[0])
    }

    /// `h_j = |{i : λ_i ≥ j}|` for `j = 1..=λ_1`.
    pub fn column_heights(&self) -> Vec<usize> {
        (1..=self.cols())
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect()
    }

    /// Hook lengths, one row per row of the diagram.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let heights = self.column_heights();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                (0..len)
                    .map(|j| (len - j - 1) + (heights[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// `M_λ = Σ_j C(h_j, 2)`, the largest inversion number any inverted
    /// tableau of this shape can have.
    pub fn max_inversions(&self) -> usize {
        self.column_heights().into_iter().map(|h| triangular(h.saturating_sub(1))).sum()
    }

    /// Number of standard Young tableaux, `N! / Π h_ij`.
    pub fn standard_count(&self) -> BigUint {
        let numerator = factorial(self.size());
        let denominator: BigUint = self
            .hook_lengths()
            .into_iter()
            .flatten()
            .map(BigUint::from)
            .product();
        assert!(
            (&numerator % &denominator).is_zero(),
            "hook product does not divide N! for {self}"
        );
        numerator / denominator
    }

    /// Number of row-standard fillings:
    /// `C(λ_1+…+λ_m, λ_m) · C(λ_1+…+λ_{m−1}, λ_{m−1}) ⋯ C(λ_1, λ_1)`.
    pub fn total_inverted_count(&self) -> BigUint {
        let mut prefix = 0;
        let mut total = BigUint::one();
        for &part in &self.parts {
            prefix += part;
            total *= binomial(prefix, part);
        }
        total
    }

    /// Gaps between adjacent rows: `d_i = λ_i − λ_{i+1}` (with `d_m = λ_m`)
    /// and `d̃_i = λ_{i−1} − λ_i` (with `d̃_1` unbounded).
    pub fn row_gaps(&self) -> RowGaps {
        let m = self.rows();
        let below = (0..m)
            .map(|i| self.parts[i] - self.parts.get(i + 1).copied().unwrap_or(0))
            .collect();
        let above = (0..m)
            .map(|i| {
                if i == 0 {
                    Gap::Unbounded
                } else {
                    Gap::Finite(self.parts[i - 1] - self.parts[i])
                }
            })
            .collect();
        RowGaps { below, above }
    }

    /// Every shape reachable by moving one lower-right corner (not in the
    /// first row) up to a new corner in a strictly higher row, ordered by
    /// `(target_row, source_row)`.
    pub fn stair_step_shapes(&self) -> Vec<(StairStepMove, Partition)> {
        let gaps = self.row_gaps();
        let m = self.rows();
        let mut out = Vec::new();
        for target in 1..=m {
            if !gaps.above[target - 1].is_positive() {
                continue;
            }
            for source in (target + 1)..=m {
                if gaps.below[source - 1] == 0 {
                    continue;
                }
                let mv = StairStepMove {
                    target_row: target,
                    source_row: source,
                };
                let shape = mv.apply(self).expect("valid move yields a valid shape");
                out.push((mv, shape));
            }
        }
        out
    }

    /// The stair-step companion `(n+1, n, …, n, n−1)` of an `m × n`
    /// rectangle with `m ≥ 2`.
    pub fn rectangle_stair_step(&self) -> Result<Partition> {
        if !self.is_rectangular() {
            return Err(Error::UnsupportedShape(self.to_string()));
        }
        if self.rows() < 2 {
            return Err(Error::Domain(
                "a one-row rectangle has no stair-step shape".into(),
            ));
        }
        let mv = StairStepMove {
            target_row: 1,
            source_row: self.rows(),
        };
        mv.apply(self)
    }

    /// All partitions of `n`, largest first part first (reverse lexicographic).
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for part in (1..=remaining.min(max_part)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All partitions with `1 ≤ N ≤ max_size`, grouped by increasing `N`.
    pub fn all_up_to(max_size: usize) -> Vec<Partition> {
        (1..=max_size).flat_map(Partition::all_of).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// A row gap that may be unbounded (`d̃_1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gap {
    Unbounded,
    Finite(usize),
}

impl Gap {
    pub fn is_positive(self) -> bool {
        match self {
            Gap::Unbounded => true,
            Gap::Finite(g) => g > 0,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Unbounded => f.write_str("inf"),
            Gap::Finite(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowGaps {
    /// `d_i`: how far row `i` sticks out past row `i+1`.
    pub below: Vec<usize>,
    /// `d̃_i`: how far row `i−1` sticks out past row `i`.
    pub above: Vec<Gap>,
}

/// Moves the last box of `source_row` to the end of `target_row`
/// (`target_row < source_row`, both 1-based). Equivalent to the tuple
/// `E` with `+1` at the target and `−1` at the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StairStepMove {
    pub target_row: usize,
    pub source_row: usize,
}

impl StairStepMove {
    /// The tuple `(ε_1, …, ε_m)` for an `m`-row shape.
    pub fn tuple(&self, rows: usize) -> Vec<i8> {
        (1..=rows)
            .map(|i| {
                if i == self.target_row {
                    1
                } else if i == self.source_row {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }

    pub fn apply(&self, shape: &Partition) -> Result<Partition> {
        let m = shape.rows();
        if self.target_row == 0 || self.target_row >= self.source_row || self.source_row > m {
            return Err(Error::Domain(format!(
                "move {}->{} is not valid for {m} rows",
                self.source_row, self.target_row
            )));
        }
        let mut parts = shape.parts().to_vec();
        parts[self.target_row - 1] += 1;
        parts[self.source_row - 1] -= 1;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }
}

/// `T_k = k(k+1)/2`.
pub fn triangular(k: usize) -> usize {
    k * (k + 1) / 2
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
