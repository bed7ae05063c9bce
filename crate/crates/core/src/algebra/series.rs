//! Truncated power series in `q` over a generic coefficient ring.
//!
//! A [`TruncatedSeries`] stores `c_0, …, c_N` together with a pole exponent
//! `e`; the represented object is `(Σ c_n q^n) · (1 − z)^{−e}`. Only rings
//! that carry the formal variable `z` ever hold `e > 0`.

use std::fmt;

use super::{LaurentPoly, Ring};
use crate::error::AlgebraError;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    order: usize,
    coeffs: Vec<R>,
    pole_exp: u32,
}

/// Location and values of the first coefficient where two series differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy<R> {
    pub index: usize,
    pub left: R,
    pub right: R,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { order, coeffs, pole_exp: 0 }
    }

    /// Series with an explicit pole exponent; fails on rings without `z`.
    pub fn with_pole(order: usize, coeffs: Vec<R>, pole_exp: u32) -> Result<Self, AlgebraError> {
        if pole_exp > 0 && R::pole_factor().is_none() {
            return Err(AlgebraError::UnrepresentablePole);
        }
        let mut s = Self::new(order, coeffs);
        s.pole_exp = pole_exp;
        Ok(s)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(order, vec![c])
    }

    /// `c · q^k`, zero if `k > order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn pole_exp(&self) -> u32 {
        self.pole_exp
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    /// Replace one coefficient; used by fault-injection tests.
    pub fn set_coeff(&mut self, n: usize, c: R) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries { order, coeffs: self.coeffs[..=order].to_vec(), pole_exp: self.pole_exp }
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> TruncatedSeries<S> {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect(), pole_exp: self.pole_exp }
    }

    pub fn try_map<S: Ring, E, F: Fn(&R) -> Result<S, E>>(&self, f: F) -> Result<TruncatedSeries<S>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(TruncatedSeries { order: self.order, coeffs, pole_exp: self.pole_exp })
    }

    fn times_pole_factor(&self, k: u32) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Ok(self.clone());
        }
        let f = R::pole_factor().ok_or(AlgebraError::UnrepresentablePole)?;
        let fk = f.pow(k);
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(&fk)).collect(),
            pole_exp: self.pole_exp,
        })
    }

    /// Re-express the same object with pole exponent `e`.
    ///
    /// Raising multiplies the stored coefficients by `(1 − z)^{e − p}`.
    /// Lowering divides by `(1 − z)^{p − e}` and fails with the first
    /// coefficient that is not divisible, which means the pole is genuine.
    pub fn clear_pole(&self, e: u32) -> Result<Self, AlgebraError> {
        let p = self.pole_exp;
        if e >= p {
            let mut out = self.times_pole_factor(e - p)?;
            out.pole_exp = e;
            return Ok(out);
        }
        let mut coeffs = self.coeffs.clone();
        for _ in 0..(p - e) {
            for (index, c) in coeffs.iter_mut().enumerate() {
                *c = c.div_pole_factor().ok_or(AlgebraError::InexactPoleDivision { index })?;
            }
        }
        Ok(TruncatedSeries { order: self.order, coeffs, pole_exp: e })
    }

    /// Bring two series to the larger of their pole exponents.
    pub fn align(a: &Self, b: &Self) -> Result<(Self, Self), AlgebraError> {
        let e = a.pole_exp.max(b.pole_exp);
        Ok((a.clear_pole(e)?, b.clear_pole(e)?))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        let (a, b) = Self::align(self, o)?;
        let order = a.order.min(b.order);
        let coeffs = (0..=order).map(|n| a.coeffs[n].clone() + b.coeffs[n].clone()).collect();
        Ok(TruncatedSeries { order, coeffs, pole_exp: a.pole_exp })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&o.neg())
    }

    /// Addition for series known to share a pole exponent (panics otherwise).
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.pole_exp, o.pole_exp, "pole exponents differ; use try_add");
        self.try_add(o).expect("aligned series")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
            pole_exp: self.pole_exp,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
            pole_exp: self.pole_exp,
        }
    }

    /// Cauchy product truncated to the smaller order; pole exponents add.
    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut coeffs = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j].add_product(a, b);
                }
            }
        }
        TruncatedSeries { order, coeffs, pole_exp: self.pole_exp + o.pole_exp }
    }

    /// Multiplicative inverse.
    ///
    /// If the constant term is not a unit but every coefficient shares a
    /// factor `(1 − z)^k`, that factor is moved into the pole exponent.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let mut stored = self.clone();
        let mut pulled = 0u32;
        let c0inv = loop {
            if let Some(v) = stored.coeffs[0].try_inv() {
                break v;
            }
            if stored.coeffs[0].is_zero() || R::pole_factor().is_none() {
                return Err(AlgebraError::NonUnitConstant);
            }
            let divided: Option<Vec<R>> = stored.coeffs.iter().map(|c| c.div_pole_factor()).collect();
            match divided {
                Some(c) => {
                    stored.coeffs = c;
                    pulled += 1;
                }
                None => return Err(AlgebraError::NonUnitConstant),
            }
        };
        let n = self.order;
        let mut b: Vec<R> = Vec::with_capacity(n + 1);
        b.push(c0inv.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                if !stored.coeffs[j].is_zero() {
                    acc.add_product(&stored.coeffs[j], &b[k - j]);
                }
            }
            b.push(-(acc.mul_ref(&c0inv)));
        }
        let inv = TruncatedSeries { order: n, coeffs: b, pole_exp: 0 };
        // self = Y (1−z)^{pulled − p}, so 1/self = Y^{-1} (1−z)^{p − pulled}
        let p = self.pole_exp;
        if p >= pulled {
            inv.times_pole_factor(p - pulled)
        } else {
            let mut inv = inv;
            inv.pole_exp = pulled - p;
            Ok(inv)
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); self.order + 1];
        for n in k..=self.order {
            coeffs[n] = self.coeffs[n - k].clone();
        }
        TruncatedSeries { order: self.order, coeffs, pole_exp: self.pole_exp }
    }

    /// Multiply by `(1 − c q^k)`.
    pub fn mul_binomial(&self, c: &R, k: usize) -> Self {
        let mut out = self.clone();
        if k == 0 {
            return out.scale(&(R::one() - c.clone()));
        }
        for n in (k..=self.order).rev() {
            let t = self.coeffs[n - k].mul_ref(c);
            out.coeffs[n] = out.coeffs[n].clone() - t;
        }
        out
    }

    /// Divide by `(1 − c q^k)` with `k ≥ 1`: a running geometric recurrence.
    pub fn div_binomial(&self, c: &R, k: usize) -> Self {
        assert!(k >= 1, "use inv for a constant binomial");
        let mut out = self.clone();
        for n in k..=self.order {
            let t = out.coeffs[n - k].mul_ref(c);
            out.coeffs[n] = out.coeffs[n].clone() + t;
        }
        out
    }

    /// Substitute `q ↦ q^d`.
    pub fn subs_q_power(&self, d: usize) -> Self {
        assert!(d >= 1);
        let mut coeffs = vec![R::zero(); self.order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * d > self.order {
                break;
            }
            coeffs[n * d] = c.clone();
        }
        TruncatedSeries { order: self.order, coeffs, pole_exp: self.pole_exp }
    }

    /// Substitute `q ↦ c q`.
    pub fn scale_q(&self, c: &R) -> Self {
        let mut p = R::one();
        let mut coeffs = Vec::with_capacity(self.order + 1);
        for x in &self.coeffs {
            coeffs.push(x.mul_ref(&p));
            p = p.mul_ref(c);
        }
        TruncatedSeries { order: self.order, coeffs, pole_exp: self.pole_exp }
    }

    /// First index where the two series differ after aligning poles, using
    /// the ring's notion of equality.
    pub fn first_difference(&self, o: &Self) -> Result<Option<Discrepancy<R>>, AlgebraError> {
        let (a, b) = Self::align(self, o)?;
        let order = a.order.min(b.order);
        Ok((0..=order).find(|&n| !a.coeffs[n].approx_eq(&b.coeffs[n])).map(|n| Discrepancy {
            index: n,
            left: a.coeffs[n].clone(),
            right: b.coeffs[n].clone(),
        }))
    }

    pub fn is_one(&self) -> bool {
        self.pole_exp == 0 && self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

impl TruncatedSeries<LaurentPoly> {
    /// Apply `z ↦ 1/z` to every coefficient (pole exponents are left alone;
    /// callers reflect only pole-free series).
    pub fn reflect_z(&self) -> Self {
        self.map(|c| c.reflect())
    }

    pub fn negate_z(&self) -> Self {
        assert_eq!(self.pole_exp, 0, "z ↦ −z moves the pole away from z = 1");
        self.map(|c| c.negate_z())
    }

    /// Substitute a value for `z`, dividing out `(1 − z0)^e`.
    pub fn eval_z<R: Ring>(&self, z0: &R) -> Result<TruncatedSeries<R>, AlgebraError> {
        let factor = if self.pole_exp == 0 {
            R::one()
        } else {
            let d = (R::one() - z0.clone()).pow(self.pole_exp);
            d.try_inv().ok_or(AlgebraError::DivisionByZero)?
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(z0).map(|v| v.mul_ref(&factor)).ok_or(AlgebraError::DivisionByZero))
            .collect::<Result<Vec<R>, _>>()?;
        Ok(TruncatedSeries::new(self.order, coeffs))
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " ({:?})q^{}", c, n)?;
            }
        }
        write!(f, " + O(q^{})]", self.order + 1)?;
        if self.pole_exp > 0 {
            write!(f, "·(1−z)^-{}", self.pole_exp)?;
        }
        Ok(())
    }
}
