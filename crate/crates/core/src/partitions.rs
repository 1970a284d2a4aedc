//! Integer partitions and the center dimension formula
//! `Σ_{λ ⊢ n} n_λ! / Π_j i_j!`, where `n_λ` counts the even parts of `λ` and
//! `i_j` the parts equal to `2j`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

/// A partition with its even-part statistics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartitionStats {
    /// Weakly decreasing parts.
    pub parts: Vec<usize>,
    /// Number of even parts.
    pub n_even: usize,
    /// `j ↦ i_j`, the multiplicity of the part `2j` (only nonzero entries).
    pub even_multiplicities: BTreeMap<usize, usize>,
}

impl PartitionStats {
    /// Builds the statistics from parts in any order.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut even_multiplicities = BTreeMap::new();
        for &p in parts.iter().filter(|&&p| p % 2 == 0) {
            *even_multiplicities.entry(p / 2).or_insert(0) += 1;
        }
        Self {
            n_even: even_multiplicities.values().sum(),
            parts,
            even_multiplicities,
        }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<PartitionStats> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(PartitionStats::from_parts).collect()
}

/// `n_λ! / Π_j i_j!`: the number of ways to arrange the even components.
pub fn expected_class_count(lambda: &PartitionStats) -> BigUint {
    let denom = lambda
        .even_multiplicities
        .values()
        .fold(BigUint::one(), |acc, &i| acc * factorial(i));
    factorial(lambda.n_even) / denom
}

/// `Σ_{λ ⊢ n} n_λ! / Π_j i_j!`.
pub fn center_dim_formula(n: usize) -> BigUint {
    partitions(n).iter().map(expected_class_count).sum()
}
