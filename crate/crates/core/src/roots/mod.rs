//! Evaluation at roots of unity.
//!
//! A sequence built as running products of an `m`-periodic factor sums in
//! closed form, which turns many q-series at `q = ζ_m` into
//! finite sums. This module houses that machinery, the finite formulas for
//! `g_3`, `U_k` and Ramanujan's `f` built on it, and a radial-limit
//! extrapolator used to cross-check them numerically.

mod formulas;
mod radial;

pub use formulas::*;
pub use radial::*;

use std::cmp::Ordering;

use crate::algebra::{AbsCompare, BigComplex, CycloElem, Ring};
use crate::error::RootsError;
use crate::series::numeric::magnitude_bits;

/// A coefficient field that contains the roots of unity we evaluate at.
pub trait RootField: Ring + AbsCompare {
    /// `ζ_m^k`, with the precision of `like` for floating fields.
    fn root_of_unity(m: u32, k: i64, like: &Self) -> Self;

    /// Zero test used for singularity checks: exact for exact fields,
    /// relative to the working precision for floating ones.
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl RootField for CycloElem {
    fn root_of_unity(m: u32, k: i64, _like: &Self) -> Self {
        CycloElem::zeta_pow(m, k)
    }
}

impl RootField for BigComplex {
    fn root_of_unity(m: u32, k: i64, like: &Self) -> Self {
        BigComplex::zeta(m as u64, k, like.prec())
    }

    fn vanishes(&self) -> bool {
        match magnitude_bits(self) {
            None => true,
            Some(b) => b < -(self.prec() as i64 - 20),
        }
    }
}

pub(crate) fn inverse<R: RootField>(x: &R, what: &str) -> Result<R, RootsError> {
    if x.vanishes() {
        return Err(RootsError::Singular(format!("{what} vanishes")));
    }
    x.try_inv().ok_or_else(|| RootsError::Singular(format!("{what} vanishes")))
}

/// One period `φ(1), …, φ(m)` of a periodic factor.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicFactor<R> {
    values: Vec<R>,
}

impl<R: Ring> PeriodicFactor<R> {
    pub fn new(values: Vec<R>) -> Result<Self, RootsError> {
        if values.is_empty() {
            return Err(RootsError::Precondition("period must be at least 1".into()));
        }
        Ok(PeriodicFactor { values })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// `φ(i)` for any `i ≥ 1`.
    pub fn phi(&self, i: usize) -> &R {
        assert!(i >= 1, "φ is indexed from 1");
        &self.values[(i - 1) % self.values.len()]
    }

    /// `f(j) = φ(1)⋯φ(j)`, with `f(0) = 1`.
    pub fn product(&self, j: usize) -> R {
        (1..=j).fold(R::one(), |acc, i| acc.mul_ref(self.phi(i)))
    }

    /// `F(n) = f(1) + ⋯ + f(n)` by direct summation.
    pub fn partial_sum_direct(&self, n: usize) -> R {
        let mut f = R::one();
        let mut sum = R::zero();
        for i in 1..=n {
            f = f.mul_ref(self.phi(i));
            sum = sum + f.clone();
        }
        sum
    }

    /// The factor `t·φ`.
    pub fn scaled(&self, t: &R) -> Self {
        PeriodicFactor { values: self.values.iter().map(|v| v.mul_ref(t)).collect() }
    }
}

/// Result of [`periodic_partial`]; `direct` records the fallback taken when
/// `f(m) = 1` and the closed form would divide by zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSum<R> {
    pub value: R,
    pub direct: bool,
}

/// `F(mk + r) = (1 − f(m)^k)/(1 − f(m)) · F(m) + f(m)^k F(r)` for `0 ≤ r < m`.
pub fn periodic_partial<R: Ring>(pf: &PeriodicFactor<R>, k: usize, r: usize) -> Result<PartialSum<R>, RootsError> {
    let m = pf.period();
    if r >= m {
        return Err(RootsError::Precondition(format!("r = {r} must be below the period {m}")));
    }
    let fm = pf.product(m);
    let denom = R::one() - fm.clone();
    let Some(inv) = denom.try_inv() else {
        return Ok(PartialSum { value: pf.partial_sum_direct(m * k + r), direct: true });
    };
    let fk = fm.pow(k as u32);
    let geometric = (R::one() - fk.clone()).mul_ref(&inv);
    let value = geometric.mul_ref(&pf.partial_sum_direct(m)) + fk.mul_ref(&pf.partial_sum_direct(r));
    Ok(PartialSum { value, direct: false })
}

fn require_contractive<R: Ring + AbsCompare>(fm: &R) -> Result<(), RootsError> {
    match fm.abs_cmp_one() {
        Some(Ordering::Less) => Ok(()),
        Some(_) => Err(RootsError::Divergent),
        None => Err(RootsError::IndeterminateMagnitude),
    }
}

/// `F(∞) = F(m)/(1 − f(m))`, valid when `|f(m)| < 1`.
pub fn periodic_infinite<R: Ring + AbsCompare>(pf: &PeriodicFactor<R>) -> Result<R, RootsError> {
    let m = pf.period();
    let fm = pf.product(m);
    require_contractive(&fm)?;
    let inv = (R::one() - fm).try_inv().ok_or(RootsError::Divergent)?;
    Ok(pf.partial_sum_direct(m).mul_ref(&inv))
}

/// Euler's continued fraction
/// `φ(1)/(1 − φ(2)/(1 + φ(2) − φ(3)/(1 + φ(3) − ⋯ φ(d)/(1 + φ(d)))))`
/// cut at depth `d`; it equals `F(d)`.
pub fn euler_cf<R: Ring>(pf: &PeriodicFactor<R>, depth: usize) -> Result<R, RootsError> {
    if depth == 0 {
        return Err(RootsError::Precondition("depth must be at least 1".into()));
    }
    if depth == 1 {
        return Ok(pf.phi(1).clone());
    }
    // innermost level first
    let mut tail = R::one() + pf.phi(depth).clone();
    for level in (2..depth).rev() {
        let inv = tail.try_inv().ok_or(RootsError::ZeroConvergentDenominator(level + 1))?;
        tail = R::one() + pf.phi(level).clone() - pf.phi(level + 1).mul_ref(&inv);
    }
    let inv = tail.try_inv().ok_or(RootsError::ZeroConvergentDenominator(2))?;
    let outer = R::one() - pf.phi(2).mul_ref(&inv);
    let inv = outer.try_inv().ok_or(RootsError::ZeroConvergentDenominator(1))?;
    Ok(pf.phi(1).mul_ref(&inv))
}

/// The finite form: the `m`-level continued fraction times `1/(1 − f(m))`.
pub fn euler_cf_finite<R: Ring>(pf: &PeriodicFactor<R>) -> Result<R, RootsError> {
    let m = pf.period();
    let inv = (R::one() - pf.product(m)).try_inv().ok_or(RootsError::Divergent)?;
    Ok(euler_cf(pf, m)?.mul_ref(&inv))
}

/// `Σ_{n≥1} f(n) tⁿ = (1/(1 − f(k)t^k)) Σ_{n≤k} f(n) tⁿ` for `φ` of period `k`.
pub fn t_scaled_closed_form<R: Ring>(pf: &PeriodicFactor<R>, t: &R) -> Result<R, RootsError> {
    let k = pf.period();
    let mut sum = R::zero();
    let mut f = R::one();
    let mut tp = R::one();
    for n in 1..=k {
        f = f.mul_ref(pf.phi(n));
        tp = tp.mul_ref(t);
        sum = sum + f.mul_ref(&tp);
    }
    let inv = (R::one() - f.mul_ref(&tp)).try_inv().ok_or(RootsError::Divergent)?;
    Ok(sum.mul_ref(&inv))
}

/// Parameters of `_rF_s(a_1,…,a_r; b_1,…,b_s; t : q)` in the normalisation
/// `φ(i) = t Π(1 − a_j q^{i−1}) / Π(1 − b_j q^{i−1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeoSpec<R> {
    pub numer: Vec<R>,
    pub denom: Vec<R>,
    pub t: R,
}

/// The periodic factor induced at `q = ζ_m`.
pub fn hypergeo_factor<R: RootField>(spec: &HypergeoSpec<R>, m: u32) -> Result<PeriodicFactor<R>, RootsError> {
    let mut values = Vec::with_capacity(m as usize);
    for i in 1..=m as i64 {
        let w = R::root_of_unity(m, i - 1, &spec.t);
        let mut v = spec.t.clone();
        for a in &spec.numer {
            v = v.mul_ref(&(R::one() - a.mul_ref(&w)));
        }
        for b in &spec.denom {
            let d = R::one() - b.mul_ref(&w);
            if d.vanishes() {
                return Err(RootsError::VanishingDenominator { index: (i - 1) as usize });
            }
            v = v.mul_ref(&d.try_inv().ok_or(RootsError::VanishingDenominator { index: (i - 1) as usize })?);
        }
        values.push(v);
    }
    PeriodicFactor::new(values)
}

/// `Σ_{j≥1} f(j)` for the hypergeometric factor at `q = ζ_m`.
pub fn hypergeo_at_root<R: RootField>(spec: &HypergeoSpec<R>, m: u32) -> Result<R, RootsError> {
    periodic_infinite(&hypergeo_factor(spec, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int, Rational};
    use num_traits::{One, Signed};

    fn pf(v: &[Rational]) -> PeriodicFactor<Rational> {
        PeriodicFactor::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partial_sums() {
        let p = pf(&[rat(1, 2), rat(-3, 1), rat(2, 5)]);
        assert_eq!(periodic_partial(&p, 0, 2).unwrap().value, p.partial_sum_direct(2));
        for k in 0..5 {
            for r in 0..3 {
                let s = periodic_partial(&p, k, r).unwrap();
                assert!(!s.direct);
                assert_eq!(s.value, p.partial_sum_direct(3 * k + r));
            }
        }
        // f(m) = 1 falls back
        let q = pf(&[rat_int(2), rat(1, 2)]);
        let s = periodic_partial(&q, 3, 1).unwrap();
        assert!(s.direct);
        assert_eq!(s.value, q.partial_sum_direct(7));
    }

    #[test]
    fn geometric_cases() {
        let t = rat(1, 3);
        let p = pf(&[t.clone()]);
        let s = periodic_partial(&p, 5, 0).unwrap().value;
        assert_eq!(s, &t * (Rational::from_integer(1.into()) - t.pow(5)) / (rat_int(1) - &t));
        assert_eq!(periodic_infinite(&pf(&[rat(1, 2)])).unwrap(), rat_int(1));
        assert_eq!(periodic_infinite(&pf(&[rat_int(1), rat_int(-1)])), Err(RootsError::Divergent));
    }

    #[test]
    fn continued_fraction() {
        let p = pf(&[rat(1, 2)]);
        let v = euler_cf(&p, 60).unwrap();
        assert!((&v - rat_int(1)).abs() < rat(1, 1 << 40));
        let p = pf(&[rat(1, 3), rat(-2, 5), rat(3, 7)]);
        assert_eq!(euler_cf(&p, 3).unwrap(), p.partial_sum_direct(3));
        assert_eq!(euler_cf_finite(&p).unwrap(), periodic_infinite(&p).unwrap());
    }

    #[test]
    fn hypergeometric_reduces_to_geometric() {
        let spec = HypergeoSpec { numer: vec![], denom: vec![], t: CycloElem::from_rational(&rat(1, 4)) };
        assert_eq!(hypergeo_at_root(&spec, 3).unwrap(), CycloElem::from_rational(&rat(1, 3)));
        let bad = HypergeoSpec { numer: vec![], denom: vec![CycloElem::zeta_pow(5, -2)], t: CycloElem::one() };
        assert_eq!(hypergeo_at_root(&bad, 5), Err(RootsError::VanishingDenominator { index: 2 }));
    }
}
