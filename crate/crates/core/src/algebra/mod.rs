//! Exact arithmetic kernels.
//!
//! Everything in the crate is generic over a coefficient [`Ring`]. The
//! implementations shipped here are exact rationals, Laurent polynomials in
//! `z`, cyclotomic field elements, arbitrary-precision complex numbers and,
//! for quick experiments, `f64`.

pub mod bigfloat;
pub mod bilaurent;
pub mod complex;
pub mod cyclo;
pub mod laurent;
pub mod series;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bigfloat::BigFloat;
pub use bilaurent::BiLaurent;
pub use complex::BigComplex;
pub use cyclo::CycloElem;
pub use laurent::{LaurentPoly, PoleLaurent};
pub use series::TruncatedSeries;

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => bigfloat::parse_decimal(s),
    }
}

/// A commutative coefficient ring for truncated q-series.
///
/// `pole_factor` and `is_pole_variable` let generic constructors keep a
/// `(1 − z)^{-e}` factor symbolic when `z` is the formal variable, and
/// invert it directly when `z` is a number.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat_int(n))
    }

    /// Multiplicative inverse, or `None` for non-units.
    fn try_inv(&self) -> Option<Self>;

    /// `self += a · b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        let prev = std::mem::replace(self, Self::zero());
        *self = prev + a.clone() * b.clone();
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// True only for the formal variable `z` of a polynomial ring.
    fn is_pole_variable(&self) -> bool {
        false
    }

    /// `1 − z` for rings that carry the formal variable.
    fn pole_factor() -> Option<Self> {
        None
    }

    /// Exact quotient by `1 − z`, when the ring has the formal variable and
    /// the division leaves no remainder.
    fn div_pole_factor(&self) -> Option<Self> {
        None
    }

    /// Equality used by identity checks: exact for exact rings, relative
    /// tolerance for floating ones.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    fn powi(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            self.try_inv().map(|v| v.pow(n.unsigned_abs() as u32))
        }
    }
}

/// Comparison of `|x|` against 1, needed by the periodic-sum convergence tests.
pub trait AbsCompare {
    /// `None` when the answer cannot be decided at the available precision.
    fn abs_cmp_one(&self) -> Option<Ordering>;
}

impl Ring for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl AbsCompare for Rational {
    fn abs_cmp_one(&self) -> Option<Ordering> {
        Some(self.abs().cmp(&Rational::one()))
    }
}

impl Ring for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12 * self.abs().max(other.abs()).max(1.0)
    }
}

impl AbsCompare for f64 {
    fn abs_cmp_one(&self) -> Option<Ordering> {
        self.abs().partial_cmp(&1.0)
    }
}

impl Ring for BigComplex {
    fn from_rational(r: &Rational) -> Self {
        if r.is_integer() {
            if let Some(n) = r.to_i64() {
                return BigComplex::from_i64(n);
            }
        }
        BigComplex::from_rational(r, &Rational::zero(), bigfloat::DEFAULT_PREC)
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = &*self + &(a * b);
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.close_to(other)
    }
}

impl AbsCompare for BigComplex {
    fn abs_cmp_one(&self) -> Option<Ordering> {
        let p = self.prec();
        let n = self.norm_sqr().sub(&BigFloat::one());
        let band = BigFloat::one().ldexp(-((p / 2) as i64));
        if n.abs().cmp_value(&band) != Ordering::Greater {
            None
        } else if n.signum() > 0 {
            Some(Ordering::Greater)
        } else {
            Some(Ordering::Less)
        }
    }
}
