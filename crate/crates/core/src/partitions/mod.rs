//! Integer partitions and the statistics built on them: the Andrews–Garvan
//! crank, subpartitions, the partition Möbius function, the coefficients
//! `j_z(λ)` and `c_n(z)`, and exhaustive counts of unimodal sequences.

mod unimodal;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{rat_int, LaurentPoly, PoleLaurent, Rational};
use crate::error::PartitionError;

pub use unimodal::{naive_unimodal_counts, unimodal_counts, UnimodalCountTable};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidParts(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into decreasing order; zeros are rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// `part → multiplicity`, in increasing part order.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    fn from_multiplicities(m: &BTreeMap<u32, usize>) -> Self {
        let mut parts = Vec::new();
        for (&p, &k) in m.iter().rev() {
            parts.extend(std::iter::repeat_n(p, k));
        }
        Partition { parts }
    }

    /// Whether every part of `self` occurs in `other` with at least the same multiplicity.
    pub fn divides(&self, other: &Partition) -> bool {
        let mine = self.multiplicities();
        let theirs = other.multiplicities();
        mine.iter().all(|(p, k)| theirs.get(p).is_some_and(|j| j >= k))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// All partitions of `n`, largest parts first.
pub fn partitions_of(n: i64) -> Result<Vec<Partition>, PartitionError> {
    if n < 0 {
        return Err(PartitionError::NegativeSize(n));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// The Andrews–Garvan crank of a non-empty partition.
pub fn crank(lambda: &Partition) -> Result<i64, PartitionError> {
    let largest = lambda.largest().ok_or(PartitionError::EmptyCrank)?;
    let ones = lambda.multiplicity(1) as i64;
    if ones == 0 {
        return Ok(largest as i64);
    }
    let above = lambda.parts.iter().filter(|&&p| p as i64 > ones).count() as i64;
    Ok(above - ones)
}

/// Every sub-multiset of the parts, each once, from `∅` up to `λ`.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    let mult: Vec<(u32, usize)> = lambda.multiplicities().into_iter().collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; mult.len()];
    loop {
        let m: BTreeMap<u32, usize> =
            mult.iter().zip(&pick).filter(|(_, &k)| k > 0).map(|(&(p, _), &k)| (p, k)).collect();
        out.push(Partition::from_multiplicities(&m));
        // odometer over the multiplicity choices
        let mut i = 0;
        loop {
            if i == mult.len() {
                return out;
            }
            if pick[i] < mult[i].1 {
                pick[i] += 1;
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// `μ(λ)`: zero with a repeated part, otherwise `(−1)^{ℓ(λ)}`.
pub fn partition_mobius(lambda: &Partition) -> i32 {
    if lambda.parts.windows(2).any(|w| w[0] == w[1]) {
        0
    } else if lambda.length() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `β/α`: delete the parts of `α` from `β`. Requires `α | β`.
pub fn deletion(whole: &Partition, sub: &Partition) -> Result<Partition, PartitionError> {
    let mut m = whole.multiplicities();
    for (p, k) in sub.multiplicities() {
        match m.get_mut(&p) {
            Some(j) if *j >= k => *j -= k,
            _ => {
                return Err(PartitionError::NotSubpartition {
                    sub: sub.parts.clone(),
                    whole: whole.parts.clone(),
                })
            }
        }
    }
    m.retain(|_, k| *k > 0);
    Ok(Partition::from_multiplicities(&m))
}

/// `Σ_{λ ⊢ n} z^{crk(λ)}` with the literal crank of Definition 1.
pub fn crank_sum(n: u32) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let terms = partitions_of(n as i64)
        .unwrap()
        .iter()
        .map(|l| (crank(l).unwrap(), Rational::one()))
        .collect::<Vec<_>>();
    LaurentPoly::from_terms(terms)
}

/// The weight attached to a subpartition `ε` in the sums for `j_z` and `c_n`.
///
/// `∅` carries 1 and every partition other than `(1)` carries `z^{crk}`.
/// The single part `(1)` carries `z − 1 + z⁻¹`, the `q¹` coefficient of the
/// crank generating function, instead of the literal `z^{crk((1))} = z⁻¹`.
/// This is the classical repair of the crank at `n = 1`; with the literal
/// value the subpartition formulas disagree with the product already at
/// `n = 1` (see [`literal_crank_weight`]).
pub fn crank_weight(eps: &Partition) -> LaurentPoly {
    if eps.is_empty() {
        LaurentPoly::one()
    } else if eps.parts == [1] {
        LaurentPoly::from_ints(-1, &[1, -1, 1])
    } else {
        LaurentPoly::monomial(Rational::one(), crank(eps).unwrap())
    }
}

/// `z^{crk(ε)}` with `crk(∅) := 0` and no correction at `(1)`.
pub fn literal_crank_weight(eps: &Partition) -> LaurentPoly {
    if eps.is_empty() {
        LaurentPoly::one()
    } else {
        LaurentPoly::monomial(Rational::one(), crank(eps).unwrap())
    }
}

/// Subpartition sums `Σ_{φ | ε} w(φ)` shared across nested sums.
struct InnerSums<F: Fn(&Partition) -> LaurentPoly> {
    weight: F,
    cache: HashMap<Partition, LaurentPoly>,
}

impl<F: Fn(&Partition) -> LaurentPoly> InnerSums<F> {
    fn new(weight: F) -> Self {
        InnerSums { weight, cache: HashMap::new() }
    }

    /// `Σ_{φ | ε} w(φ)`
    fn single(&mut self, eps: &Partition) -> LaurentPoly {
        if let Some(v) = self.cache.get(eps) {
            return v.clone();
        }
        let v = subpartitions(eps).iter().fold(LaurentPoly::zero(), |acc, phi| acc + (self.weight)(phi));
        self.cache.insert(eps.clone(), v.clone());
        v
    }

    /// `Σ_{ε | δ} Σ_{φ | ε} w(φ)`
    fn double(&mut self, delta: &Partition) -> LaurentPoly {
        subpartitions(delta).iter().fold(LaurentPoly::zero(), |acc, eps| acc + self.single(eps))
    }
}

/// `j_z(λ) = (1 − z)^{-1} Σ_{δ|λ} Σ_{ε|δ} w(ε)` with [`crank_weight`].
///
/// The double sum is returned as the numerator over `(1 − z)`; it is not
/// divisible by `1 − z` in general (for `λ = ∅` it is 1), because `1/j(z;q)`
/// itself has a pole at `z = 1`.
pub fn jz_weight(lambda: &Partition) -> PoleLaurent {
    jz_weight_with(lambda, crank_weight)
}

pub fn jz_weight_with<F: Fn(&Partition) -> LaurentPoly>(lambda: &Partition, w: F) -> PoleLaurent {
    let mut sums = InnerSums::new(w);
    // Σ_{δ|λ} Σ_{ε|δ} w(ε) is the single-level sum one level up
    let numer = subpartitions(lambda).iter().fold(LaurentPoly::zero(), |acc, delta| acc + sums.single(delta));
    PoleLaurent::new(numer, 1)
}

/// `c_n(z) = (1 − z)^{-1} Σ_{λ⊢n} Σ_{δ|λ} Σ_{ε|δ} Σ_{φ|ε} μ(λ/δ) w(φ)`.
pub fn cn_coefficient(n: i64) -> Result<PoleLaurent, PartitionError> {
    cn_coefficient_with(n, crank_weight)
}

pub fn cn_coefficient_with<F: Fn(&Partition) -> LaurentPoly>(n: i64, w: F) -> Result<PoleLaurent, PartitionError> {
    let mut sums = InnerSums::new(w);
    let mut numer = LaurentPoly::zero();
    for lambda in partitions_of(n)? {
        for delta in subpartitions(&lambda) {
            let mu = partition_mobius(&deletion(&lambda, &delta)?);
            if mu == 0 {
                continue;
            }
            numer = numer + sums.double(&delta).scale(&rat_int(mu as i64));
        }
    }
    Ok(PoleLaurent::new(numer, 1))
}

/// Number of partitions of `0..=n` by Euler's pentagonal recurrence.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = acc as u64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn small_partition_counts() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).unwrap().len(), 5);
        assert_eq!(partitions_of(-1), Err(PartitionError::NegativeSize(-1)));
        // independent count by a coin-change table
        let mut ways = vec![0u64; 21];
        ways[0] = 1;
        for part in 1..=20 {
            for total in part..=20 {
                ways[total] += ways[total - part];
            }
        }
        assert_eq!(partitions_of(20).unwrap().len() as u64, ways[20]);
        assert_eq!(ways[20], 627);
        assert_eq!(partition_counts(20)[20], 627);
    }

    #[test]
    fn cranks() {
        assert_eq!(crank(&part(&[3, 2])), Ok(3));
        assert_eq!(crank(&part(&[2, 1])), Ok(0));
        assert_eq!(crank(&part(&[1, 1])), Ok(-2));
        assert_eq!(crank(&Partition::empty()), Err(PartitionError::EmptyCrank));
    }

    #[test]
    fn subpartition_lists() {
        let subs = subpartitions(&part(&[2, 1]));
        assert_eq!(subs.len(), 4);
        for s in [vec![], vec![1], vec![2], vec![2, 1]] {
            assert!(subs.contains(&part(&s)));
        }
        assert_eq!(subpartitions(&Partition::empty()), vec![Partition::empty()]);
        assert_eq!(subpartitions(&part(&[2, 2, 1])).len(), 6);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(partition_mobius(&part(&[3, 2, 1])), -1);
        assert_eq!(partition_mobius(&part(&[2, 2])), 0);
        assert_eq!(partition_mobius(&Partition::empty()), 1);
    }

    #[test]
    fn deletion_requires_divisibility() {
        assert_eq!(deletion(&part(&[3, 2, 2, 1]), &part(&[2, 1])), Ok(part(&[3, 2])));
        assert!(deletion(&part(&[2, 1]), &part(&[3])).is_err());
        assert!(part(&[2, 1]).divides(&part(&[2, 2, 1])));
        assert!(!part(&[2, 2]).divides(&part(&[2, 1])));
    }

    #[test]
    fn invalid_parts_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap(), part(&[3, 2, 1]));
    }

    #[test]
    fn empty_partition_weight_has_a_pole() {
        let j = jz_weight(&Partition::empty());
        assert_eq!(j.numer, LaurentPoly::one());
        assert_eq!(j.reduce().pole_exp, 1);
    }
}
