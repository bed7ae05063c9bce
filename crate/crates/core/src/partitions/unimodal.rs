//! Exhaustive counts of unimodal sequences with a k-fold peak.
//!
//! A sequence `a_1 ≤ … ≤ a_r ≤ c…c ≥ b_1 ≥ … ≥ b_s` of positive integers
//! (the peak `c` repeated `k` times) has rank `s − r` and weight equal to
//! the sum of all its terms. In the strong case every inequality is strict.
//! Weakly unimodal sequences are counted together with the position of the
//! peak block, so `1 1` counts twice (ranks −1 and +1).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodalCountTable {
    pub max_weight: usize,
    pub fold: usize,
    pub strong: bool,
    /// `(rank, weight) → count`, zero entries omitted.
    pub counts: BTreeMap<(i64, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct CountEntry {
    rank: i64,
    weight: usize,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    strong: bool,
    k: usize,
    max_weight: usize,
    counts: Vec<CountEntry>,
}

impl UnimodalCountTable {
    pub fn get(&self, rank: i64, weight: usize) -> u64 {
        self.counts.get(&(rank, weight)).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = TableJson {
            strong: self.strong,
            k: self.fold,
            max_weight: self.max_weight,
            counts: self
                .counts
                .iter()
                .map(|(&(rank, weight), &count)| CountEntry { rank, weight, count })
                .collect(),
        };
        serde_json::to_value(t).expect("table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let t: TableJson = serde_json::from_value(v.clone()).ok()?;
        Some(UnimodalCountTable {
            max_weight: t.max_weight,
            fold: t.k,
            strong: t.strong,
            counts: t.counts.into_iter().map(|e| ((e.rank, e.weight), e.count)).collect(),
        })
    }
}

/// `side[len][w]`: sequences of `len` parts, total `w`, each part in `1..=bound`,
/// weakly ordered or (when `distinct`) strictly ordered.
fn side_table(bound: usize, distinct: bool, max_weight: usize) -> Vec<Vec<u64>> {
    // add part sizes one at a time; each size used any number of times or at most once
    let max_len = max_weight;
    let mut t = vec![vec![0u64; max_weight + 1]; max_len + 1];
    t[0][0] = 1;
    for p in 1..=bound {
        if distinct {
            for len in (1..=max_len).rev() {
                for w in (p..=max_weight).rev() {
                    t[len][w] += t[len - 1][w - p];
                }
            }
        } else {
            for len in 1..=max_len {
                for w in p..=max_weight {
                    t[len][w] += t[len - 1][w - p];
                }
            }
        }
    }
    t
}

/// Counts by (rank, weight) for all sequences of weight `1..=max_weight`.
///
/// Built peak by peak: both sides are partitions into parts `≤ c` (weak) or
/// distinct parts `< c` (strong), which mirrors the product form of the
/// generating functions. See [`naive_unimodal_counts`] for the brute-force
/// cross-check.
pub fn unimodal_counts(max_weight: usize, k: usize, strong: bool) -> Result<UnimodalCountTable, PartitionError> {
    if k == 0 {
        return Err(PartitionError::InvalidFold);
    }
    let mut counts = BTreeMap::new();
    let mut c = 1;
    while k * c <= max_weight {
        let budget = max_weight - k * c;
        let side = if strong { side_table(c - 1, true, budget) } else { side_table(c, false, budget) };
        for r in 0..side.len() {
            for wl in 0..=budget {
                let left = side[r][wl];
                if left == 0 {
                    continue;
                }
                for s in 0..side.len() {
                    for wr in 0..=budget - wl {
                        let right = side[s][wr];
                        if right == 0 {
                            continue;
                        }
                        let key = (s as i64 - r as i64, k * c + wl + wr);
                        *counts.entry(key).or_insert(0) += left * right;
                    }
                }
            }
        }
        c += 1;
    }
    Ok(UnimodalCountTable { max_weight, fold: k, strong, counts })
}

/// Brute force over every composition of weight `≤ max_weight`, counting
/// each admissible placement of the k-fold peak block.
pub fn naive_unimodal_counts(max_weight: usize, k: usize, strong: bool) -> Result<UnimodalCountTable, PartitionError> {
    if k == 0 {
        return Err(PartitionError::InvalidFold);
    }
    let mut counts = BTreeMap::new();
    let mut seq = Vec::new();
    compositions(max_weight, &mut seq, &mut |s| {
        let weight: usize = s.iter().sum();
        for start in 0..s.len() {
            if start + k > s.len() {
                break;
            }
            if admissible(s, start, k, strong) {
                let rank = (s.len() - start - k) as i64 - start as i64;
                *counts.entry((rank, weight)).or_insert(0u64) += 1;
            }
        }
    });
    Ok(UnimodalCountTable { max_weight, fold: k, strong, counts })
}

fn compositions(budget: usize, seq: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if !seq.is_empty() {
        visit(seq);
    }
    for x in 1..=budget {
        seq.push(x);
        compositions(budget - x, seq, visit);
        seq.pop();
    }
}

fn admissible(s: &[usize], start: usize, k: usize, strong: bool) -> bool {
    let c = s[start];
    if s[start..start + k].iter().any(|&x| x != c) {
        return false;
    }
    let left = &s[..start];
    let right = &s[start + k..];
    if strong {
        left.windows(2).all(|w| w[0] < w[1])
            && right.windows(2).all(|w| w[0] > w[1])
            && left.iter().chain(right).all(|&x| x < c)
    } else {
        left.windows(2).all(|w| w[0] <= w[1])
            && right.windows(2).all(|w| w[0] >= w[1])
            && left.iter().chain(right).all(|&x| x <= c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_weight_two() {
        let t = unimodal_counts(2, 1, false).unwrap();
        let w2: Vec<_> = t.counts.iter().filter(|((_, w), _)| *w == 2).collect();
        assert_eq!(w2, vec![(&(-1, 2), &1), (&(0, 2), &1), (&(1, 2), &1)]);
    }

    #[test]
    fn strong_weight_three() {
        let t = unimodal_counts(3, 1, true).unwrap();
        assert_eq!(t.get(-1, 3), 1);
        assert_eq!(t.get(0, 3), 1);
        assert_eq!(t.get(1, 3), 1);
        assert_eq!(t.get(0, 2), 1);
    }

    #[test]
    fn weight_zero_is_empty() {
        for k in 1..4 {
            assert!(unimodal_counts(0, k, false).unwrap().counts.is_empty());
            assert!(unimodal_counts(0, k, true).unwrap().counts.is_empty());
        }
        assert_eq!(unimodal_counts(3, 0, true), Err(PartitionError::InvalidFold));
    }

    #[test]
    fn structured_matches_naive() {
        for k in 1..=3 {
            for strong in [false, true] {
                assert_eq!(unimodal_counts(10, k, strong), naive_unimodal_counts(10, k, strong));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = unimodal_counts(5, 2, false).unwrap();
        let back = UnimodalCountTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
