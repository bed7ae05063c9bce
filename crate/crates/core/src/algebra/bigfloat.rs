//! Binary floating point on top of `num-bigint`.
//!
//! A value is `mant · 2^exp`. `prec` is the number of significant bits kept
//! after each operation; `prec == 0` marks an exact value (small integers,
//! dyadic constants) which is never rounded by addition or multiplication.
//! Mixed operations round to the larger of the two precisions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Precision used when two exact operands are divided.
pub const DEFAULT_PREC: u32 = 256;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_to(mant: BigInt, exp: i64, prec: u32) -> (BigInt, i64) {
    if mant.is_zero() {
        return (mant, 0);
    }
    if prec == 0 {
        let tz = mant.trailing_zeros().unwrap_or(0);
        return (mant >> tz, exp + tz as i64);
    }
    let bits = mant.bits();
    if bits <= prec as u64 {
        return (mant, exp);
    }
    let shift = bits - prec as u64;
    let neg = mant.is_negative();
    let mag = mant.magnitude().clone();
    let q = &mag >> shift;
    let half_bit = (&mag >> (shift - 1)) & num_bigint::BigUint::one();
    let mut q = if half_bit.is_zero() { q } else { q + 1u32 };
    let mut e = exp + shift as i64;
    if q.bits() > prec as u64 {
        q >>= 1;
        e += 1;
    }
    let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
    (m, e)
}

impl BigFloat {
    fn build(mant: BigInt, exp: i64, prec: u32) -> Self {
        let (mant, exp) = round_to(mant, exp, prec);
        BigFloat { mant, exp, prec }
    }

    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec: 0 }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::build(BigInt::from(n), 0, 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::build(n, 0, 0)
    }

    /// `mant · 2^exp`, kept exact.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        Self::build(mant, exp, 0)
    }

    /// Exact binary value of a finite double, tagged with precision `prec`.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return BigFloat { mant: BigInt::zero(), exp: 0, prec };
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if exponent == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), exponent - 1075)
        };
        Self::build(BigInt::from(sign) * BigInt::from(m), e, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let prec = if prec == 0 { DEFAULT_PREC } else { prec };
        let num = r.numer();
        let den = r.denom();
        if num.is_zero() {
            return BigFloat { mant: BigInt::zero(), exp: 0, prec };
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0);
        let q = (num << shift as usize).div_floor(den);
        Self::build(q, -shift, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == 0
    }

    /// Same value re-rounded to `prec` bits (0 keeps it exact).
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::build(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Position of the leading bit: `|x|` lies in `[2^(t-1), 2^t)`.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_prec(prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if prec > 0 {
            let ta = self.top_bit().unwrap();
            let tb = other.top_bit().unwrap();
            let gap = prec as i64 + 4;
            if ta - tb > gap {
                return self.with_prec(prec);
            }
            if tb - ta > gap {
                return other.with_prec(prec);
            }
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self::build(a + b, e, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::build(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self::build(&self.mant * BigInt::from(k), self.exp, self.prec)
    }

    /// Multiply by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    /// Quotient rounded to the working precision. Panics on a zero divisor.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        let mut prec = self.prec.max(other.prec);
        if prec == 0 {
            prec = DEFAULT_PREC;
        }
        if self.is_zero() {
            return BigFloat { mant: BigInt::zero(), exp: 0, prec };
        }
        let shift = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mant << shift as usize;
        let (q, r) = num.div_rem(&other.mant);
        // sticky bit so that exact halves are not rounded the wrong way
        let q = if r.is_zero() { q << 1 } else { (q << 1) + q_sign(&num, &other.mant) };
        Self::build(q, self.exp - other.exp - shift - 1, prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.signum() >= 0, "sqrt of a negative BigFloat");
        let mut prec = self.prec;
        if prec == 0 {
            prec = DEFAULT_PREC;
        }
        if self.is_zero() {
            return BigFloat { mant: BigInt::zero(), exp: 0, prec };
        }
        let want = 2 * prec as i64 + 4;
        let mut s = (want - self.mant.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as usize;
        let r = m.sqrt();
        Self::build(r, (self.exp - s) / 2, prec)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let ta = self.top_bit().unwrap();
        let tb = other.top_bit().unwrap();
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        // scale in two steps to avoid spurious overflow of 2^e
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Scientific decimal string with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() < 0;
        let r = self.to_rational().abs();
        let ten = BigInt::from(10);
        // decimal exponent estimate from the binary one
        let t = self.top_bit().unwrap();
        let mut d = ((t - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scaled = |d: i64| -> BigInt {
            let k = digits as i64 - 1 - d;
            let s = if k >= 0 {
                &r * BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
            } else {
                &r / BigRational::from_integer(num_traits::pow(ten.clone(), (-k) as usize))
            };
            (s + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
        };
        let mut n = scaled(d);
        let lim_hi = num_traits::pow(ten.clone(), digits);
        let lim_lo = num_traits::pow(ten.clone(), digits - 1);
        for _ in 0..4 {
            if n >= lim_hi {
                d += 1;
                n = scaled(d);
            } else if n < lim_lo {
                d -= 1;
                n = scaled(d);
            } else {
                break;
            }
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{d}")
        } else {
            format!("{sign}{head}.{tail}e{d}")
        }
    }

    /// Parse a decimal literal such as `-1.25e-3` at precision `prec`.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        parse_decimal(s).map(|r| Self::from_rational(&r, prec))
    }

    /// π to `prec` bits by Machin's formula in fixed point.
    pub fn pi(prec: u32) -> Self {
        let w = prec as usize + 64;
        let one = BigInt::one() << w;
        let atan_inv = |x: i64| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut power = &one / BigInt::from(x);
            let mut sum = BigInt::zero();
            let mut k = 0i64;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let fixed = atan_inv(5) * 16 - atan_inv(239) * 4;
        Self::build(fixed, -(w as i64), prec)
    }

    /// `(cos 2πk/m, sin 2πk/m)` to `prec` bits.
    pub fn cos_sin_turn(k: i64, m: u64, prec: u32) -> (Self, Self) {
        assert!(m > 0);
        let m_i = m as i64;
        let mut k = k.rem_euclid(m_i);
        // exact values on the axes keep small conductors clean
        if 4 * k % m_i == 0 {
            let quarter = 4 * k / m_i;
            let (c, s) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
            return (
                BigFloat::from_i64(c).with_prec(prec),
                BigFloat::from_i64(s).with_prec(prec),
            );
        }
        if 2 * k > m_i {
            k -= m_i;
        }
        let w = prec as usize + 64;
        let pi = Self::pi(prec + 64);
        // θ = 2πk/m in fixed point
        let theta = {
            let p = pi.mul_i64(2 * k);
            let p = p.with_prec(0);
            let r = p.to_rational() / BigRational::from_integer(BigInt::from(m_i));
            (r * BigRational::from_integer(BigInt::one() << w)).round().to_integer()
        };
        let one = BigInt::one() << w;
        let mut cos = BigInt::zero();
        let mut sin = BigInt::zero();
        let mut term = one.clone();
        let mut n = 0i64;
        // alternate cos and sin terms: θ^n/n!
        while !term.is_zero() {
            if n % 2 == 0 {
                if (n / 2) % 2 == 0 {
                    cos += &term;
                } else {
                    cos -= &term;
                }
            } else if (n / 2) % 2 == 0 {
                sin += &term;
            } else {
                sin -= &term;
            }
            term = ((&term * &theta) >> w) / BigInt::from(n + 1);
            n += 1;
        }
        (Self::build(cos, -(w as i64), prec), Self::build(sin, -(w as i64), prec))
    }
}

fn q_sign(num: &BigInt, den: &BigInt) -> BigInt {
    if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// Parse `[-]digits[.digits][e[-]digits]` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = if self.prec == 0 { 40 } else { (self.prec as f64 * 0.30103) as usize };
        write!(f, "{}", self.to_sci_string(digits.max(1)))
    }
}
