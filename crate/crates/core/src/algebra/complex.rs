//! Arbitrary-precision complex numbers over [`BigFloat`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bigfloat::{BigFloat, DEFAULT_PREC};

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn from_rational(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        BigComplex::new(BigFloat::from_rational(re, prec), BigFloat::from_rational(im, prec))
    }

    pub fn real(re: BigFloat) -> Self {
        BigComplex::new(re, BigFloat::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::real(BigFloat::from_i64(n))
    }

    /// `e^{2πik/m}` to `prec` bits.
    pub fn zeta(m: u64, k: i64, prec: u32) -> Self {
        let (c, s) = BigFloat::cos_sin_turn(k, m, prec);
        BigComplex::new(c, s)
    }

    pub fn i() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::one())
    }

    /// Working precision: the larger of the two parts, defaulting to 256.
    pub fn prec(&self) -> u32 {
        let p = self.re.prec().max(self.im.prec());
        if p == 0 {
            DEFAULT_PREC
        } else {
            p
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        let n = self.norm_sqr();
        if n.is_exact() {
            n.with_prec(self.prec()).sqrt()
        } else {
            n.sqrt()
        }
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        BigComplex::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(BigComplex::new(self.re.div(&n), self.im.neg().div(&n)))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|r| self * &r)
    }

    pub fn powi(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigComplex::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Some(acc)
    }

    /// `|a − b| ≤ 2^{−(p−20)} · max(1, |a|, |b|)` at the working precision `p`.
    pub fn close_to(&self, other: &Self) -> bool {
        let p = self.prec().min(other.prec());
        self.close_to_bits(other, p.saturating_sub(20))
    }

    pub fn close_to_bits(&self, other: &Self, bits: u32) -> bool {
        let diff = (self - other).abs();
        if diff.is_zero() {
            return true;
        }
        let scale = [self.abs(), other.abs(), BigFloat::one()]
            .into_iter()
            .max_by(|a, b| a.cmp_value(b))
            .unwrap();
        diff.cmp_value(&scale.ldexp(-(bits as i64))) != std::cmp::Ordering::Greater
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_sci_string(digits);
        let im = self.im.to_sci_string(digits);
        if im.starts_with('-') {
            format!("{re} - {}i", &im[1..])
        } else {
            format!("{re} + {im}i")
        }
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 * 0.30103) as usize;
        write!(f, "{}", self.to_string_digits(digits.clamp(1, 60)))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        BigComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        BigComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        BigComplex::new(re, im)
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        &self + &o
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        &self - &o
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        &self * &o
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(self.re.neg(), self.im.neg())
    }
}

impl Zero for BigComplex {
    fn zero() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::zero())
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
}

impl One for BigComplex {
    fn one() -> Self {
        BigComplex::new(BigFloat::one(), BigFloat::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_powers_cycle() {
        let z = BigComplex::zeta(7, 1, 200);
        let z7 = z.powi(7).unwrap();
        assert!(z7.close_to(&BigComplex::one()));
        let zi = BigComplex::zeta(4, 1, 200);
        assert!(zi.close_to(&BigComplex::i()));
    }

    #[test]
    fn inverse_round_trip() {
        let a = BigComplex::from_f64(3.0, -2.0, 200);
        let b = a.inv().unwrap();
        assert!((&a * &b).close_to(&BigComplex::one()));
        assert!(BigComplex::zero().inv().is_none());
    }

    #[test]
    fn modulus() {
        let a = BigComplex::from_f64(3.0, 4.0, 128);
        assert!((a.abs().to_f64() - 5.0).abs() < 1e-30);
    }
}
