//! Exhaustive generation of inverted tableaux and the inversion
//! distributions built from it.
//!
//! A row-standard filling is the same thing as an ordered set partition of
//! `{1..N}` into blocks of sizes `λ_1, …, λ_m`: each row holds its block in
//! increasing order. Generation picks the blocks top to bottom, each as a
//! lexicographically ordered combination of the values still unused.
//! Parallel runs split the first-row combinations into contiguous rank
//! ranges, one per worker.

use std::thread;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableau::{count_inversions, InvertedTableau, Tableau};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    pub workers: usize,
    /// Refuse shapes with more inverted tableaux than this.
    pub budget: u64,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl EnumConfig {
    pub fn with_workers(workers: usize) -> Self {
        EnumConfig {
            workers: workers.max(1),
            ..Default::default()
        }
    }

    pub fn check(&self, shape: &Partition) -> Result<()> {
        let required = shape.total_inverted_count();
        if required > BigUint::from(self.budget) {
            return Err(Error::BudgetExceeded {
                shape: shape.to_string(),
                required: required.to_string(),
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Half-open range of first-row combination ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkRange {
    pub start: u64,
    pub end: u64,
}

impl WorkRange {
    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    fn contains(&self, rank: u64) -> bool {
        self.start <= rank && rank < self.end
    }
}

/// Splits the first-row choices of `shape` into `workers` contiguous
/// ranges. Ranges may be empty when there are more workers than choices.
pub fn partition_work(shape: &Partition, workers: usize) -> Vec<WorkRange> {
    let workers = workers.max(1) as u64;
    let choices = first_row_choices(shape);
    (0..workers)
        .map(|w| WorkRange {
            start: w * choices / workers,
            end: (w + 1) * choices / workers,
        })
        .collect()
}

fn first_row_choices(shape: &Partition) -> u64 {
    let c = crate::partition::binomial(shape.size(), shape.parts()[0]);
    u64::try_from(c).expect("first-row choices fit in u64")
}

/// A filling in progress, stored row-major in one buffer.
pub struct Filling<'a> {
    lens: &'a [usize],
    offsets: &'a [usize],
    cells: &'a [usize],
}

impl Filling<'_> {
    pub fn at(&self, row: usize, col: usize) -> usize {
        self.cells[self.offsets[row] + col]
    }

    pub fn inversion_count(&self) -> usize {
        count_inversions(self.lens, |r, c| self.at(r, c))
    }

    pub fn to_tableau(&self, shape: &Partition) -> InvertedTableau {
        let rows = (0..self.lens.len())
            .map(|r| self.cells[self.offsets[r]..self.offsets[r] + self.lens[r]].to_vec())
            .collect();
        InvertedTableau::new(Tableau::from_parts_unchecked(shape.clone(), rows))
            .expect("generated fillings are row-standard")
    }
}

/// Calls `visit` on every row-standard filling whose first row has a
/// combination rank inside `range`, in generation order.
pub fn for_each_in_range(shape: &Partition, range: WorkRange, mut visit: impl FnMut(&Filling)) {
    let lens = shape.parts();
    let mut offsets = Vec::with_capacity(lens.len());
    let mut acc = 0;
    for &l in lens {
        offsets.push(acc);
        acc += l;
    }
    let n = shape.size();
    let mut cells = vec![0usize; n];
    let pool: Vec<usize> = (1..=n).collect();
    let mut rank = 0u64;
    let mut state = Walk {
        lens,
        offsets: &offsets,
        cells: &mut cells,
        range,
        rank: &mut rank,
    };
    state.fill_row(0, &pool, &mut visit);
}

struct Walk<'a> {
    lens: &'a [usize],
    offsets: &'a [usize],
    cells: &'a mut [usize],
    range: WorkRange,
    rank: &'a mut u64,
}

impl Walk<'_> {
    fn fill_row(&mut self, row: usize, pool: &[usize], visit: &mut impl FnMut(&Filling)) {
        let k = self.lens[row];
        let last = row + 1 == self.lens.len();
        if last {
            // The remaining values are forced.
            debug_assert_eq!(pool.len(), k);
            if row == 0 {
                let r = *self.rank;
                *self.rank += 1;
                if !self.range.contains(r) {
                    return;
                }
            }
            let off = self.offsets[row];
            self.cells[off..off + k].copy_from_slice(pool);
            visit(&Filling {
                lens: self.lens,
                offsets: self.offsets,
                cells: self.cells,
            });
            return;
        }
        let n = pool.len();
        let mut idx: Vec<usize> = (0..k).collect();
        let mut rest = Vec::with_capacity(n - k);
        loop {
            let skip = if row == 0 {
                let r = *self.rank;
                *self.rank += 1;
                !self.range.contains(r)
            } else {
                false
            };
            if !skip {
                let off = self.offsets[row];
                for (slot, &i) in idx.iter().enumerate() {
                    self.cells[off + slot] = pool[i];
                }
                rest.clear();
                let mut chosen = idx.iter().peekable();
                for (i, &v) in pool.iter().enumerate() {
                    if chosen.peek() == Some(&&i) {
                        chosen.next();
                    } else {
                        rest.push(v);
                    }
                }
                let rest_now = rest.clone();
                self.fill_row(row + 1, &rest_now, visit);
            } else if row == 0 && *self.rank >= self.range.end {
                return;
            }
            // Next combination in lexicographic order.
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return;
                }
            }
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// Every inverted tableau of `shape`, in generation order.
pub fn enumerate_inverted(shape: &Partition, config: &EnumConfig) -> Result<Vec<InvertedTableau>> {
    config.check(shape)?;
    let mut out = Vec::new();
    let full = WorkRange {
        start: 0,
        end: u64::MAX,
    };
    for_each_in_range(shape, full, |f| out.push(f.to_tableau(shape)));
    Ok(out)
}

/// The inverted tableaux of `shape` with exactly `inversions` inversions,
/// in generation order.
pub fn enumerate_with_inversions(
    shape: &Partition,
    inversions: usize,
    config: &EnumConfig,
) -> Result<Vec<InvertedTableau>> {
    config.check(shape)?;
    let mut out = Vec::new();
    let full = WorkRange {
        start: 0,
        end: u64::MAX,
    };
    for_each_in_range(shape, full, |f| {
        if f.inversion_count() == inversions {
            out.push(f.to_tableau(shape));
        }
    });
    Ok(out)
}

/// Standard Young tableaux of `shape`, found by filtering the enumeration.
pub fn standard_tableaux(shape: &Partition, config: &EnumConfig) -> Result<Vec<Tableau>> {
    Ok(enumerate_with_inversions(shape, 0, config)?
        .into_iter()
        .map(InvertedTableau::into_inner)
        .collect())
}

/// `|S_i(λ)|` for `i = 0..=M_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionDistribution {
    pub shape: Partition,
    pub counts: Vec<u64>,
}

impl InversionDistribution {
    pub fn max_inversions(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `|S_i|`, zero outside `0..=M_λ` (including negative `i`).
    pub fn count(&self, i: i64) -> u64 {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.counts.get(i).copied())
            .unwrap_or(0)
    }

    /// Indices `0 ≤ i ≤ M_λ` with `|S_i| = 0`.
    pub fn gaps(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            shape: &'a Partition,
            max_inversions: usize,
            counts: &'a [u64],
            total: u64,
        }
        serde_json::to_string(&Doc {
            shape: &self.shape,
            max_inversions: self.max_inversions(),
            counts: &self.counts,
            total: self.total(),
        })
        .expect("distribution serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }

    /// Appendix-style listing: one `m=i` row per count, then `TOTAL`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{:<7}{:>10}\n", "", format!("({})", self.shape));
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{:<7}{:>10}\n", format!("m={i}"), c));
        }
        out.push_str(&format!("{:<7}{:>10}\n", "TOTAL", self.total()));
        out
    }
}

/// Counts inversions over every filling in `range`.
pub fn distribution_in_range(shape: &Partition, range: WorkRange) -> Vec<u64> {
    let mut counts = vec![0u64; shape.max_inversions() + 1];
    for_each_in_range(shape, range, |f| counts[f.inversion_count()] += 1);
    counts
}

/// The inversion distribution by full enumeration, split over
/// `config.workers` threads. Each worker owns its counts; results are summed.
pub fn inversion_distribution(shape: &Partition, config: &EnumConfig) -> Result<InversionDistribution> {
    config.check(shape)?;
    let ranges = partition_work(shape, config.workers);
    let partials: Vec<Vec<u64>> = if ranges.len() == 1 {
        vec![distribution_in_range(shape, ranges[0])]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&r| s.spawn(move || distribution_in_range(shape, r)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };
    let mut counts = vec![0u64; shape.max_inversions() + 1];
    for part in partials {
        for (total, c) in counts.iter_mut().zip(part) {
            *total += c;
        }
    }
    Ok(InversionDistribution {
        shape: shape.clone(),
        counts,
    })
}

/// All row-standard tableaux whose standardization is `standard`: every
/// combination of column rearrangements, kept when rows stay increasing.
pub fn fiber(standard: &Tableau) -> Result<Vec<InvertedTableau>> {
    use itertools::Itertools;

    if !standard.is_standard() {
        return Err(Error::NotStandard);
    }
    let shape = standard.shape();
    let columns: Vec<Vec<usize>> = (0..shape.cols()).map(|c| standard.column(c)).collect();
    let mut out = Vec::new();
    for arrangement in columns
        .iter()
        .map(|col| col.iter().copied().permutations(col.len()))
        .multi_cartesian_product()
    {
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| Vec::with_capacity(l)).collect();
        for column in &arrangement {
            for (r, &v) in column.iter().enumerate() {
                rows[r].push(v);
            }
        }
        let t = Tableau::from_parts_unchecked(shape.clone(), rows);
        if t.is_row_standard() {
            out.push(InvertedTableau::new(t)?);
        }
    }
    Ok(out)
}

/// Betti numbers `b_m = |S_{d−m}(λ)|`, taking `d = M_λ`.
///
/// The dimension `d` is read as `M_λ` because `|S_{M_λ}| = 1` is the only
/// choice that makes `b_0 = 1`.
pub fn betti_numbers(shape: &Partition, config: &EnumConfig) -> Result<Vec<u64>> {
    let dist = inversion_distribution(shape, config)?;
    Ok(dist.counts.into_iter().rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn dist(s: &str) -> Vec<u64> {
        inversion_distribution(&p(s), &EnumConfig::default()).unwrap().counts
    }

    #[test]
    fn enumerate_counts() {
        let cfg = EnumConfig::default();
        assert_eq!(enumerate_inverted(&p("2,2,2"), &cfg).unwrap().len(), 90);
        let single = enumerate_inverted(&p("4"), &cfg).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].to_string(), "1 2 3 4");
        let two_two: Vec<String> = enumerate_inverted(&p("2,2"), &cfg)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            two_two,
            vec!["1 2 / 3 4", "1 3 / 2 4", "1 4 / 2 3", "2 3 / 1 4", "2 4 / 1 3", "3 4 / 1 2"]
        );
    }

    #[test]
    fn enumeration_is_exact_cover() {
        let cfg = EnumConfig::default();
        for shape in Partition::all_up_to(7) {
            let all = enumerate_inverted(&shape, &cfg).unwrap();
            let unique: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
            assert_eq!(BigUint::from(all.len()), shape.total_inverted_count());
            assert!(all.windows(2).all(|w| {
                let a: Vec<usize> = w[0].rows().concat();
                let b: Vec<usize> = w[1].rows().concat();
                a < b
            }));
        }
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(dist("2,2,2"), vec![5, 16, 25, 24, 14, 5, 1]);
        assert_eq!(dist("3,3"), vec![5, 9, 5, 1]);
        assert_eq!(dist("1,1,1"), vec![1, 2, 2, 1]);
        assert_eq!(dist("5"), vec![1]);
    }

    #[test]
    fn every_inversion_count_is_attained() {
        for shape in Partition::all_up_to(9) {
            let d = inversion_distribution(&shape, &EnumConfig::with_workers(2)).unwrap();
            assert!(d.gaps().is_empty(), "{shape}: {:?}", d.gaps());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = EnumConfig {
            workers: 1,
            budget: 10,
        };
        let err = inversion_distribution(&p("2,2,2"), &cfg).unwrap_err();
        assert_eq!(err.code(), "budget-exceeded");
        assert!(enumerate_inverted(&p("2,2"), &cfg).is_ok());
    }

    #[test]
    fn fiber_examples() {
        let row: Tableau = "1 2 3 4".parse().unwrap();
        assert_eq!(fiber(&row).unwrap().len(), 1);
        let col: Tableau = "1 / 2 / 3".parse().unwrap();
        assert_eq!(fiber(&col).unwrap().len(), 6);
        let square: Tableau = "1 2 / 3 4".parse().unwrap();
        let got: Vec<String> = fiber(&square).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["1 2 / 3 4", "3 4 / 1 2"]);
        let nonstandard: Tableau = "2 / 1".parse().unwrap();
        assert_eq!(fiber(&nonstandard), Err(Error::NotStandard));
    }

    #[test]
    fn fibers_partition_the_enumeration() {
        use std::collections::HashMap;
        let cfg = EnumConfig::default();
        for shape in Partition::all_up_to(8) {
            let mut groups: HashMap<Tableau, usize> = HashMap::new();
            for t in enumerate_inverted(&shape, &cfg).unwrap() {
                *groups.entry(t.standardize()).or_default() += 1;
            }
            assert_eq!(BigUint::from(groups.len()), shape.standard_count());
            for (std, size) in groups {
                assert_eq!(fiber(&std).unwrap().len(), size, "{std}");
            }
        }
    }

    #[test]
    fn betti_examples() {
        let cfg = EnumConfig::default();
        assert_eq!(betti_numbers(&p("1,1,1"), &cfg).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(betti_numbers(&p("4"), &cfg).unwrap(), vec![1]);
        assert_eq!(
            betti_numbers(&p("2,2,2"), &cfg).unwrap(),
            vec![1, 5, 14, 24, 25, 16, 5]
        );
    }

    #[test]
    fn work_ranges_cover() {
        let shape = p("3,3,3");
        assert_eq!(partition_work(&shape, 1), vec![WorkRange { start: 0, end: 84 }]);
        let ranges = partition_work(&shape, 4);
        assert_eq!(ranges.len(), 4);
        let total: u64 = ranges
            .iter()
            .map(|&r| distribution_in_range(&shape, r).iter().sum::<u64>())
            .sum();
        assert_eq!(total, 1680);
        let many = partition_work(&p("2,1"), 7);
        assert!(many.iter().any(WorkRange::is_empty));
        let total: u64 = many
            .iter()
            .map(|&r| distribution_in_range(&p("2,1"), r).iter().sum::<u64>())
            .sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn worker_count_independence() {
        let shape = p("3,3,3");
        let one = inversion_distribution(&shape, &EnumConfig::with_workers(1)).unwrap();
        for w in [2, 7] {
            assert_eq!(inversion_distribution(&shape, &EnumConfig::with_workers(w)).unwrap(), one);
        }
    }

    #[test]
    fn output_formats() {
        let d = inversion_distribution(&p("1,1,1"), &EnumConfig::default()).unwrap();
        assert_eq!(
            d.to_json(),
            r#"{"shape":[1,1,1],"max_inversions":3,"counts":[1,2,2,1],"total":6}"#
        );
        assert_eq!(d.to_csv(), "i,count\n0,1\n1,2\n2,2\n3,1\n");
        assert!(d.to_text().ends_with("TOTAL           6\n"));
    }
}
