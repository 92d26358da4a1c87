//! Closed-form counts: Catalan and Mahonian numbers, the two-row inversion
//! distribution, and the near-maximal counts for rectangles.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{binomial, triangular};

/// An ordered partition of `target` into positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn target(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// Coefficients of `Π_{j=0}^{m−1} (1 + x + … + x^j)` where `m − 1 = m_minus_1`.
pub fn mahonian_row(m_minus_1: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::one()];
    for j in 1..=m_minus_1 {
        let mut next = vec![BigUint::zero(); poly.len() + j];
        for (d, c) in poly.iter().enumerate() {
            for slot in &mut next[d..=d + j] {
                *slot += c;
            }
        }
        poly = next;
    }
    poly
}

/// Permutations of `m_minus_1 + 1` letters with `i` inversions.
pub fn mahonian(m_minus_1: usize, i: usize) -> BigUint {
    mahonian_row(m_minus_1)
        .into_iter()
        .nth(i)
        .unwrap_or_default()
}

/// Compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Composition> {
    fn extend(left: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if k == 0 {
            if left == 0 {
                out.push(Composition {
                    parts: prefix.clone(),
                });
            }
            return;
        }
        if left < k {
            return;
        }
        for first in 1..=left - (k - 1) {
            prefix.push(first);
            extend(left - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        extend(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn catalan_product_sum(n: usize, k: usize) -> BigUint {
    let table: Vec<BigUint> = (0..=n).map(catalan).collect();
    compositions(n, k)
        .iter()
        .map(|c| c.parts.iter().map(|&p| table[p].clone()).product::<BigUint>())
        .sum()
}

/// `|S_i(n,n)|`: Catalan products over compositions of `n` of length `i`
/// plus those of length `i + 1`.
pub fn two_row_count(n: usize, i: usize) -> BigUint {
    catalan_product_sum(n, i) + catalan_product_sum(n, i + 1)
}

/// `|S_{M−1}(n^m)| = mn − 1`.
pub fn m_minus_1_count(m: usize, n: usize) -> Result<u64> {
    if m < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "near-maximal count needs m >= 2 and n >= 1, got m={m}, n={n}"
        )));
    }
    Ok((m * n - 1) as u64)
}

/// `|S_{M−2}(n^m)| = (mn − 2)(mn + 1)/2`.
pub fn m_minus_2_count(m: usize, n: usize) -> Result<u64> {
    if m < 3 || n < 1 {
        return Err(Error::Domain(format!(
            "second near-maximal count needs m >= 3 and n >= 1, got m={m}, n={n}"
        )));
    }
    let mn = (m * n) as u64;
    Ok((mn - 2) * (mn + 1) / 2)
}

/// `n · T_{m−2}`, the index past which the rectangle `n^m` and its
/// stair-step shape are conjectured to agree.
pub fn tail_end_threshold(m: usize, n: usize) -> Result<usize> {
    if m < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "tail threshold needs m >= 2 and n >= 1, got m={m}, n={n}"
        )));
    }
    Ok(n * triangular(m - 2))
}
