//! Finite Laurent polynomials in two variables `z` and `q`.
//!
//! Only used for identities between finite products, where both sides are
//! genuine Laurent polynomials and can be compared term by term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rational_to_string, Rational};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    /// `(z exponent, q exponent) → coefficient`, zeros never stored.
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BiLaurent {
    pub fn monomial(c: Rational, ez: i64, eq: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ez, eq), c);
        }
        BiLaurent { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.terms
    }

    pub fn coeff(&self, ez: i64, eq: i64) -> Rational {
        self.terms.get(&(ez, eq)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, key: (i64, i64), c: Rational) {
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = BiLaurent::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(BiLaurent::one(), |acc, _| acc * self.clone())
    }

    /// `(c z^a q^b ; q^s)_n = Π_{i<n} (1 − c z^a q^{b + s i})`.
    pub fn pochhammer(c: &Rational, a: i64, b: i64, s: i64, n: usize) -> Self {
        let mut acc = BiLaurent::one();
        for i in 0..n as i64 {
            let factor = BiLaurent::one() - BiLaurent::monomial(c.clone(), a, b + s * i);
            acc = acc * factor;
        }
        acc
    }

    /// The first term (in key order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<((i64, i64), Rational, Rational)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().find_map(|k| {
            let a = self.coeff(k.0, k.1);
            let b = other.coeff(k.0, k.1);
            (a != b).then_some((k, a, b))
        })
    }
}

impl fmt::Debug for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{}*z^{}*q^{}", rational_to_string(c), a, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for BiLaurent {
    type Output = BiLaurent;
    fn add(mut self, o: BiLaurent) -> BiLaurent {
        for (k, v) in o.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, o: BiLaurent) -> BiLaurent {
        self + (-o)
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, o: BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Zero for BiLaurent {
    fn zero() -> Self {
        BiLaurent::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiLaurent {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn difference_of_squares() {
        let z = BiLaurent::monomial(rat_int(1), 1, 0);
        let q = BiLaurent::monomial(rat_int(1), 0, 1);
        let lhs = (z.clone() + q.clone()) * (z.clone() - q.clone());
        let rhs = z.pow(2) - q.pow(2);
        assert_eq!(lhs, rhs);
        assert!(lhs.first_difference(&rhs).is_none());
    }

    #[test]
    fn pochhammer_two_factors() {
        let p = BiLaurent::pochhammer(&rat_int(1), 1, 0, 1, 2);
        let expected = BiLaurent::one() - BiLaurent::monomial(rat_int(1), 1, 0)
            - BiLaurent::monomial(rat_int(1), 1, 1)
            + BiLaurent::monomial(rat_int(1), 2, 1);
        assert_eq!(p, expected);
    }
}
