//! Exact arithmetic in the cyclotomic field `ℚ(ζ_m)`.
//!
//! Elements are coordinate vectors in the power basis `1, ζ, …, ζ^{φ(m)−1}`
//! reduced modulo the m-th cyclotomic polynomial. Elements of different
//! conductors combine by lifting both into `ℚ(ζ_lcm)`, so constants such as
//! `zero()` and `one()` live in conductor 1 and mix freely.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat_int, rational_to_string, AbsCompare, BigComplex, BigFloat, Rational, Ring};

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    let m = m as u64;
    let divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for &d in &divisors {
        match mobius(m / d) {
            1 => {
                // multiply by x^d − 1
                let mut out = vec![0i128; num.len() + d as usize];
                for (i, &c) in num.iter().enumerate() {
                    out[i] -= c;
                    out[i + d as usize] += c;
                }
                num = out;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // exact division by x^d − 1: P = Q·x^d − Q gives Q[i] = Q[i−d] − P[i]
        let n = num.len() - 1;
        let mut q = vec![0i128; n - d + 1];
        for i in 0..=n - d {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - num[i];
        }
        num = q;
    }
    num.into_iter().map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow")).collect()
}

/// Classical Möbius function on positive integers.
pub fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

#[derive(Clone)]
pub struct CycloElem {
    m: u32,
    coords: Vec<Rational>,
    modulus: Arc<Vec<i64>>,
}

impl CycloElem {
    fn modulus_for(m: u32) -> Arc<Vec<i64>> {
        Arc::new(cyclotomic_poly(m))
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce a raw polynomial in `ζ_m` (lowest power first) to canonical form.
    pub fn canon(m: u32, raw: &[Rational]) -> Self {
        assert!(m >= 1, "conductor must be positive");
        Self::canon_with(m, Self::modulus_for(m), raw)
    }

    fn canon_with(m: u32, modulus: Arc<Vec<i64>>, raw: &[Rational]) -> Self {
        let deg = modulus.len() - 1;
        // first fold exponents modulo m, then reduce by the monic modulus
        let width = raw.len().min(m as usize).max(deg);
        let mut r = vec![Rational::zero(); width];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                r[k % m as usize] += c;
            }
        }
        for k in (deg..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut r[k], Rational::zero());
            for (j, &p) in modulus.iter().enumerate().take(deg) {
                if p != 0 {
                    r[k - deg + j] -= &c * rat_int(p);
                }
            }
        }
        r.truncate(deg);
        CycloElem { m, coords: r, modulus }
    }

    /// `Σ c_k ζ_m^k` from `(k, c_k)` pairs; `k` may be negative.
    pub fn from_terms(m: u32, terms: &[(i64, Rational)]) -> Self {
        let mut raw = vec![Rational::zero(); m as usize];
        for (k, c) in terms {
            raw[k.rem_euclid(m as i64) as usize] += c;
        }
        Self::canon(m, &raw)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn zeta_pow(m: u32, k: i64) -> Self {
        Self::from_terms(m, &[(k, Rational::one())])
    }

    pub fn from_rational_in(m: u32, r: &Rational) -> Self {
        Self::canon(m, std::slice::from_ref(r))
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Re-express in `ℚ(ζ_l)`; requires `m | l`.
    pub fn lift(&self, l: u32) -> Self {
        assert!(l % self.m == 0, "cannot lift conductor {} into {}", self.m, l);
        if l == self.m {
            return self.clone();
        }
        let step = (l / self.m) as usize;
        let mut raw = vec![Rational::zero(); l as usize];
        for (k, c) in self.coords.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Self::canon(l, &raw)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.lift(l), b.lift(l))
    }

    fn mul_same(&self, o: &Self) -> Self {
        let mut raw = vec![Rational::zero(); (self.coords.len() + o.coords.len()).max(1)];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::canon_with(self.m, self.modulus.clone(), &raw)
    }

    fn times_zeta(&self) -> Self {
        let mut raw = vec![Rational::zero()];
        raw.extend(self.coords.iter().cloned());
        Self::canon_with(self.m, self.modulus.clone(), &raw)
    }

    /// Galois action `ζ ↦ ζ^j`, `gcd(j, m) = 1`.
    pub fn galois(&self, j: i64) -> Self {
        let m = self.m as i64;
        assert!(j.gcd(&m) == 1, "σ_{j} is not an automorphism of ℚ(ζ_{m})");
        let terms: Vec<(i64, Rational)> =
            self.coords.iter().enumerate().map(|(k, c)| (j * k as i64, c.clone())).collect();
        let mut raw = vec![Rational::zero(); self.m as usize];
        for (k, c) in terms {
            raw[k.rem_euclid(m) as usize] += c;
        }
        Self::canon_with(self.m, self.modulus.clone(), &raw)
    }

    /// Complex conjugate, i.e. `σ_{−1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Numerical image under `ζ_m ↦ e^{2πi/m}`.
    pub fn embed(&self, bits: u32) -> BigComplex {
        let mut acc = BigComplex::zero();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = BigComplex::zeta(self.m as u64, k as i64, bits + 16);
            let cf = BigFloat::from_rational(c, bits + 16);
            acc = &acc + &w.scale(&cf);
        }
        acc.with_prec(bits)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.degree();
        // columns are coordinates of self·ζ^j
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = cur.times_zeta();
        }
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        let delta = &f * &a[col][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        let coords = a.into_iter().map(|row| row[n].clone()).collect();
        Some(CycloElem { m: self.m, coords, modulus: self.modulus.clone() })
    }

    pub fn to_string_pretty(&self) -> String {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => rational_to_string(c),
                1 => format!("{}*zeta{}", rational_to_string(c), self.m),
                _ => format!("{}*zeta{}^{}", rational_to_string(c), self.m, k),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_pretty())
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_pretty())
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coords == other.coords;
        }
        let (a, b) = Self::common(self, other);
        a.coords == b.coords
    }
}

impl Add for CycloElem {
    type Output = CycloElem;
    fn add(self, o: CycloElem) -> CycloElem {
        let (a, b) = Self::common(&self, &o);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        CycloElem { m: a.m, coords, modulus: a.modulus }
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;
    fn sub(self, o: CycloElem) -> CycloElem {
        self + (-o)
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { m: self.m, coords: self.coords.into_iter().map(|c| -c).collect(), modulus: self.modulus }
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;
    fn mul(self, o: CycloElem) -> CycloElem {
        self.mul_ref(&o)
    }
}

impl Zero for CycloElem {
    fn zero() -> Self {
        Self::from_rational_in(1, &Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl One for CycloElem {
    fn one() -> Self {
        Self::from_rational_in(1, &Rational::one())
    }
}

impl Ring for CycloElem {
    fn from_rational(r: &Rational) -> Self {
        Self::from_rational_in(1, r)
    }

    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.m == o.m {
            return self.mul_same(o);
        }
        let (a, b) = Self::common(self, o);
        a.mul_same(&b)
    }
}

impl AbsCompare for CycloElem {
    /// `|x|² = x·x̄` is decided exactly when it equals 1; otherwise the
    /// embedding is compared against a guard band of `2^{-128}`.
    fn abs_cmp_one(&self) -> Option<Ordering> {
        let n = self.mul_ref(&self.conj());
        if n.as_rational().is_some_and(|r| r.is_one()) {
            return Some(Ordering::Equal);
        }
        if let Some(r) = n.as_rational() {
            return Some(r.abs().cmp(&Rational::one()));
        }
        n.embed(256).abs_cmp_one()
    }
}
