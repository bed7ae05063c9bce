//! Laurent polynomials in `z` with rational coefficients.
//!
//! Stored densely from the lowest exponent `lo`; both ends are trimmed so
//! that the representation is canonical and the zero polynomial is empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_int, rational_to_string, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    fn normalized(mut lo: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            lo += lead as i64;
        }
        if coeffs.is_empty() {
            lo = 0;
        }
        LaurentPoly { lo, coeffs }
    }

    /// The formal variable `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::normalized(e, vec![c])
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `Σ c_k z^k` from `(k, c_k)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(&map)
    }

    pub fn from_map(map: &BTreeMap<i64, Rational>) -> Self {
        let (Some((&lo, _)), Some((&hi, _))) = (map.first_key_value(), map.last_key_value()) else {
            return Self::zero();
        };
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&e, c) in map {
            coeffs[(e - lo) as usize] = c.clone();
        }
        Self::normalized(lo, coeffs)
    }

    /// Integer-coefficient shorthand: `from_ints(-1, &[1, 1, 1])` is `z⁻¹ + 1 + z`.
    pub fn from_ints(lo: i64, coeffs: &[i64]) -> Self {
        Self::normalized(lo, coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lo {
            return Rational::zero();
        }
        self.coeffs.get((e - self.lo) as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest and highest exponents with a nonzero coefficient.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn to_map(&self) -> BTreeMap<i64, Rational> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.lo, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    /// `P(z) · (1 − z)`.
    pub fn mul_one_minus_z(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + 1] -= c;
        }
        Self::normalized(self.lo, out)
    }

    /// Exact quotient `P(z)/(1 − z)`, or `None` when `P(1) ≠ 0`.
    ///
    /// Dividing by `1 − z` is the running prefix sum of the coefficients.
    pub fn div_one_minus_z(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c;
            out.push(acc.clone());
        }
        if !out.pop().unwrap().is_zero() {
            return None;
        }
        Some(Self::normalized(self.lo, out))
    }

    /// `P(1/z)`.
    pub fn reflect(&self) -> Self {
        let Some((_, hi)) = self.exponent_range() else {
            return self.clone();
        };
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::normalized(-hi, c)
    }

    /// `P(−z)`.
    pub fn negate_z(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| if (self.lo + i as i64).rem_euclid(2) == 1 { -x } else { x.clone() })
            .collect();
        Self::normalized(self.lo, c)
    }

    /// Invariance under `z ↦ 1/z`.
    pub fn is_palindromic(&self) -> bool {
        *self == self.reflect()
    }

    /// `P(1)`.
    pub fn value_at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, c| a + c)
    }

    /// Substitute a ring element for `z`. Negative exponents need `z` to be a unit.
    pub fn eval<R: Ring>(&self, z: &R) -> Option<R> {
        let Some((lo, hi)) = self.exponent_range() else {
            return Some(R::zero());
        };
        // Horner in z, then multiply by z^lo
        let mut acc = R::zero();
        for e in (lo..=hi).rev() {
            acc = acc.mul_ref(z) + R::from_rational(&self.coeff(e));
        }
        Some(acc.mul_ref(&z.powi(lo)?))
    }

    pub fn to_string_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => rational_to_string(c),
                1 => format!("{}*z", rational_to_string(c)),
                _ => format!("{}*z^{}", rational_to_string(c), e),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_pretty())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_pretty())
    }
}

fn add_dense(a: &LaurentPoly, b: &LaurentPoly, sign: i64) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign > 0 { b.clone() } else { -b.clone() };
    }
    let (alo, ahi) = a.exponent_range().unwrap();
    let (blo, bhi) = b.exponent_range().unwrap();
    let lo = alo.min(blo);
    let hi = ahi.max(bhi);
    let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[(alo - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        if sign > 0 {
            out[(blo - lo) as usize + i] += c;
        } else {
            out[(blo - lo) as usize + i] -= c;
        }
    }
    LaurentPoly::normalized(lo, out)
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        add_dense(&self, &o, 1)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        add_dense(&self, &o, -1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&o)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Ring for LaurentPoly {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms().next().unwrap();
        Some(Self::monomial(c.recip(), -e))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::normalized(self.lo + o.lo, out)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let lo = a.lo + b.lo;
        let hi = lo + (a.coeffs.len() + b.coeffs.len() - 2) as i64;
        if self.is_zero() {
            *self = a.mul_ref(b);
            return;
        }
        let (slo, shi) = self.exponent_range().unwrap();
        let new_lo = slo.min(lo);
        let new_hi = shi.max(hi);
        if new_lo < slo || new_hi > shi {
            let mut grown = vec![Rational::zero(); (new_hi - new_lo + 1) as usize];
            for (i, c) in self.coeffs.drain(..).enumerate() {
                grown[(slo - new_lo) as usize + i] = c;
            }
            self.coeffs = grown;
            self.lo = new_lo;
        }
        let off = (lo - self.lo) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[off + i + j] += x * y;
            }
        }
        let norm = Self::normalized(self.lo, std::mem::take(&mut self.coeffs));
        *self = norm;
    }

    fn is_pole_variable(&self) -> bool {
        *self == Self::z()
    }

    fn pole_factor() -> Option<Self> {
        Some(Self::from_ints(0, &[1, -1]))
    }

    fn div_pole_factor(&self) -> Option<Self> {
        self.div_one_minus_z()
    }
}

/// `numer · (1 − z)^{-pole_exp}`: a rational function whose only possible
/// pole sits at `z = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleLaurent {
    pub numer: LaurentPoly,
    pub pole_exp: u32,
}

impl PoleLaurent {
    pub fn new(numer: LaurentPoly, pole_exp: u32) -> Self {
        PoleLaurent { numer, pole_exp }
    }

    /// Cancel common factors of `1 − z`, giving the lowest pole exponent.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        while out.pole_exp > 0 {
            match out.numer.div_one_minus_z() {
                Some(n) => {
                    out.numer = n;
                    out.pole_exp -= 1;
                }
                None => break,
            }
        }
        out
    }

    /// The Laurent polynomial, if the pole cancels completely.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let r = self.reduce();
        (r.pole_exp == 0).then_some(r.numer)
    }

    /// Numerator re-expressed over `(1 − z)^e`, `e ≥ pole_exp`.
    pub fn numerator_at(&self, e: u32) -> LaurentPoly {
        assert!(e >= self.pole_exp);
        let mut n = self.numer.clone();
        for _ in self.pole_exp..e {
            n = n.mul_one_minus_z();
        }
        n
    }

    pub fn eval<R: Ring>(&self, z: &R) -> Option<R> {
        let n = self.numer.eval(z)?;
        let d = (R::one() - z.clone()).pow(self.pole_exp);
        Some(n.mul_ref(&d.try_inv()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn trimming_is_canonical() {
        let p = LaurentPoly::from_ints(-2, &[0, 1, 0, 2, 0]);
        assert_eq!(p.exponent_range(), Some((-1, 1)));
        assert_eq!(LaurentPoly::from_ints(3, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn one_minus_z_division() {
        let p = LaurentPoly::from_ints(-1, &[1, 0, -1]);
        let q = p.div_one_minus_z().unwrap();
        assert_eq!(q, LaurentPoly::from_ints(-1, &[1, 1]));
        assert_eq!(q.mul_one_minus_z(), p);
        assert!(LaurentPoly::from_ints(0, &[1, 1]).div_one_minus_z().is_none());
    }

    #[test]
    fn reflections() {
        let p = LaurentPoly::from_ints(-1, &[2, 3, 5]);
        assert_eq!(p.reflect(), LaurentPoly::from_ints(-1, &[5, 3, 2]));
        assert_eq!(p.negate_z(), LaurentPoly::from_ints(-1, &[-2, 3, -5]));
        assert!(LaurentPoly::from_ints(-1, &[1, 1, 1]).is_palindromic());
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::from_ints(-1, &[1, 1, 1]);
        assert_eq!(p.eval(&rat(2, 1)), Some(rat(7, 2)));
        assert_eq!(p.eval(&Rational::zero()), None);
    }

    #[test]
    fn fused_product() {
        let mut acc = LaurentPoly::from_ints(2, &[1]);
        let a = LaurentPoly::from_ints(-1, &[1, 1]);
        acc.add_product(&a, &a);
        assert_eq!(acc, LaurentPoly::from_ints(-2, &[1, 2, 1, 0, 1]));
    }
}
