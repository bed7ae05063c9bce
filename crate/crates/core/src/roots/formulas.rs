//! Finite formulas for `g_3`, `U_k` and `f` at roots of unity.

use num_traits::{One, Zero};

use super::{inverse, periodic_infinite, PeriodicFactor, RootField};
use crate::algebra::{rat, BigComplex, BigFloat, CycloElem, Rational, Ring};
use crate::error::RootsError;

/// `(x; w)_n = Π_{i<n} (1 − x wⁱ)`.
pub fn pochhammer_at<R: Ring>(x: &R, w: &R, n: usize) -> R {
    let mut acc = R::one();
    let mut xi = x.clone();
    for _ in 0..n {
        acc = acc.mul_ref(&(R::one() - xi.clone()));
        xi = xi.mul_ref(w);
    }
    acc
}

fn zeta<R: RootField>(m: u32, k: i64, like: &R) -> R {
    R::root_of_unity(m, k, like)
}

/// `1 − z^m − z^{−m}`, the leading denominator shared by the finite formulas.
fn leading<R: RootField>(z: &R, m: u32) -> Result<(R, R), RootsError> {
    let zm = z.pow(m);
    let zmi = inverse(&zm, "z^m")?;
    let d = R::one() - zm.clone() - zmi.clone();
    if d.vanishes() {
        return Err(RootsError::Singular("z^m + z^-m = 1".into()));
    }
    let two_minus = R::from_i64(2) - zm - zmi;
    Ok((d, two_minus))
}

/// Admissibility for the finite `g_3` formula: no Pochhammer factor `1 − zζ^i` or `1 − z⁻¹ζ^i` vanishes.
fn check_admissible<R: RootField>(z: &R, m: u32) -> Result<R, RootsError> {
    if z.vanishes() {
        return Err(RootsError::Singular("z = 0".into()));
    }
    if (R::one() - z.clone()).vanishes() {
        return Err(RootsError::Singular("z = 1 is a pole of g3".into()));
    }
    let zi = inverse(z, "z")?;
    for i in 0..m as i64 {
        let w = zeta(m, i, z);
        if (R::one() - z.mul_ref(&w)).vanishes() || (R::one() - zi.mul_ref(&w)).vanishes() {
            return Err(RootsError::Singular(format!("z is a power of zeta_{m}")));
        }
    }
    Ok(zi)
}

/// `g_3(z, ζ_m)` by three independent finite formulas.
#[derive(Clone, Debug, PartialEq)]
pub struct G3Routes<R> {
    /// `(1 − z^m − z^{−m})⁻¹ Σ_{n<m} ζ^n (z;ζ)_n (z⁻¹ζ;ζ)_n`
    pub theorem: R,
    /// The periodic-sum closed form applied to the defining sum.
    pub direct: R,
    /// The same closed form applied to the inverted sum, then `z ↦ z⁻¹`, `ζ ↦ ζ⁻¹`.
    pub inverted: R,
}

pub fn g3_routes<R: RootField>(z: &R, m: u32) -> Result<G3Routes<R>, RootsError> {
    if m == 0 {
        return Err(RootsError::Precondition("m must be positive".into()));
    }
    let zi = check_admissible(z, m)?;
    let (d, two_minus) = leading(z, m)?;
    let d_inv = inverse(&d, "1 - z^m - z^-m")?;
    let w = zeta(m, 1, z);
    let wi = zeta(m, -1, z);

    let mut theorem = R::zero();
    for n in 0..m as usize {
        let term = zeta(m, n as i64, z)
            .mul_ref(&pochhammer_at(z, &w, n))
            .mul_ref(&pochhammer_at(&zi.mul_ref(&w), &w, n));
        theorem = theorem + term;
    }
    let theorem = theorem.mul_ref(&d_inv);

    let lead = two_minus.mul_ref(&d_inv);
    let mut direct = R::zero();
    let mut inverted = R::zero();
    for n in 1..=m as usize {
        let den = pochhammer_at(z, &w, n).mul_ref(&pochhammer_at(&zi.mul_ref(&w), &w, n));
        let num = zeta(m, (n * (n - 1)) as i64, z);
        direct = direct + num.mul_ref(&inverse(&den, "Pochhammer denominator")?);
        let den = pochhammer_at(&zi, &wi, n).mul_ref(&pochhammer_at(&z.mul_ref(&wi), &wi, n));
        let num = zeta(m, -(n as i64), z);
        inverted = inverted + num.mul_ref(&inverse(&den, "Pochhammer denominator")?);
    }
    Ok(G3Routes { theorem, direct: direct.mul_ref(&lead), inverted: inverted.mul_ref(&lead) })
}

/// `g_3(z, ζ_m)` after checking that all three finite formulas agree.
pub fn g3_at_root<R: RootField>(z: &R, m: u32) -> Result<R, RootsError> {
    let r = g3_routes(z, m)?;
    if !r.theorem.approx_eq(&r.direct) || !r.theorem.approx_eq(&r.inverted) {
        return Err(RootsError::RouteMismatch(format!(
            "g3 at zeta_{m}: {:?} / {:?} / {:?}",
            r.theorem, r.direct, r.inverted
        )));
    }
    Ok(r.theorem)
}

/// A fourth route: the infinite periodic sum on `φ(n) = ζ^{2(n−1)} / ((1 − zζ^{n−1})(1 − z⁻¹ζ^n))`,
/// the ratio of successive summands of the defining series. Needs `|f(m)| < 1`.
pub fn g3_lemma_route<R: RootField>(z: &R, m: u32) -> Result<R, RootsError> {
    let zi = check_admissible(z, m)?;
    let mut values = Vec::with_capacity(m as usize);
    for n in 1..=m as i64 {
        let a = R::one() - z.mul_ref(&zeta(m, n - 1, z));
        let b = R::one() - zi.mul_ref(&zeta(m, n, z));
        let v = zeta(m, 2 * (n - 1), z).mul_ref(&inverse(&a.mul_ref(&b), "Pochhammer factor")?);
        values.push(v);
    }
    periodic_infinite(&PeriodicFactor::new(values)?)
}

/// `U_k(−z, ζ_m) = −(1 − z^m − z^{−m})⁻¹ Σ_{n<m} ζ^{k(n+1)} (zζ;ζ)_n (z⁻¹ζ;ζ)_n`.
pub fn uk_at_root<R: RootField>(k: u32, z: &R, m: u32) -> Result<R, RootsError> {
    if m == 0 || k == 0 {
        return Err(RootsError::Precondition("k and m must be positive".into()));
    }
    let zi = inverse(z, "z")?;
    let (d, _) = leading(z, m)?;
    let w = zeta(m, 1, z);
    let mut sum = R::zero();
    for n in 0..m as usize {
        sum = sum
            + zeta(m, (k as i64) * (n as i64 + 1), z)
                .mul_ref(&pochhammer_at(&z.mul_ref(&w), &w, n))
                .mul_ref(&pochhammer_at(&zi.mul_ref(&w), &w, n));
    }
    Ok(-(sum.mul_ref(&inverse(&d, "1 - z^m - z^-m")?)))
}

/// `U_k(−z, ζ_m)` as `ζ^k (1 + F(∞))` with `φ(i) = ζ^k (1 − zζ^i)(1 − z⁻¹ζ^i)`,
/// so that `f(m) = (1 − z^m)(1 − z^{−m})`. Needs `|f(m)| < 1`.
pub fn uk_lemma_route<R: RootField>(k: u32, z: &R, m: u32) -> Result<R, RootsError> {
    let zi = inverse(z, "z")?;
    let wk = zeta(m, k as i64, z);
    let values = (1..=m as i64)
        .map(|i| {
            let w = zeta(m, i, z);
            wk.mul_ref(&(R::one() - z.mul_ref(&w))).mul_ref(&(R::one() - zi.mul_ref(&w)))
        })
        .collect();
    let tail = periodic_infinite(&PeriodicFactor::new(values)?)?;
    Ok(wk.mul_ref(&(R::one() + tail)))
}

/// Value of the series in the corollary expressing `g_3(z, ζ_m)` through `U_k`.
#[derive(Clone, Debug)]
pub struct Cor2Value {
    pub value: BigComplex,
    pub terms: usize,
}

/// `g_3(z, ζ_m) = (z − 1)/z Σ_{k≥1} U_k(−z, ζ_m) z^k ζ_m^{−k}` for `0 < |z| < 1`,
/// summed until the geometric tail bound drops below `tol`.
pub fn cor2_series(z: &BigComplex, m: u32, tol: f64) -> Result<Cor2Value, RootsError> {
    let r = z.abs().to_f64();
    if !(r > 0.0 && r < 1.0) {
        return Err(RootsError::Precondition("|z| must lie strictly between 0 and 1".into()));
    }
    // U_k(−z, ζ_m) depends only on k mod m
    let period: Vec<BigComplex> = (1..=m).map(|k| uk_at_root(k, z, m)).collect::<Result<_, _>>()?;
    let bound = period.iter().map(|u| u.abs().to_f64()).fold(0.0, f64::max);
    let budget = 64 * (1.0 / (1.0 - r)).ceil() as usize;
    let wi = BigComplex::zeta(m as u64, -1, z.prec());
    let step = z * &wi;
    let mut power = BigComplex::from_i64(1);
    let mut sum = BigComplex::zero();
    for k in 1..=budget {
        power = &power * &step;
        sum = &sum + &(&period[(k - 1) % m as usize] * &power);
        if bound * r.powi(k as i32 + 1) / (1.0 - r) < tol {
            let lead = (z - &BigComplex::from_i64(1)).div(z).ok_or(RootsError::Singular("z = 0".into()))?;
            return Ok(Cor2Value { value: &lead * &sum, terms: k });
        }
    }
    Err(RootsError::NonConvergence(budget))
}

/// Which finite formula to use for `f(ζ_m)`, `m` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FRootForm {
    /// `1 − (2/3) Σ_{n=1}^m (−1)^n ζ^{−(n+1)} (−ζ⁻¹;ζ⁻¹)_n`, as printed.
    Ex1,
    /// `(4/3) Σ_{n=1}^m (−1)^n (−ζ⁻¹;ζ⁻¹)_n`, as printed.
    Ex2,
    /// `4/3 − (2/3) Σ_{n=0}^{m−2} (−1)^n ζ^{−(n+1)} (−ζ⁻¹;ζ⁻¹)_n`
    Ex1Corrected,
    /// `(4/3) Σ_{n=0}^{m−1} (−1)^n (−ζ⁻¹;ζ⁻¹)_n`
    Ex2Corrected,
    /// `1 − (2/3) Σ_{n=1}^m (−1)^n ζ^n / (−ζ;ζ)_n`, the radial limit of the
    /// alternating form of `f` before any reindexing.
    RadialLimit,
}

impl FRootForm {
    pub const ALL: [FRootForm; 5] =
        [FRootForm::Ex1, FRootForm::Ex2, FRootForm::Ex1Corrected, FRootForm::Ex2Corrected, FRootForm::RadialLimit];
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        rat(1, 1)
    } else {
        rat(-1, 1)
    }
}

/// `f(ζ_m)` for odd `m` by the requested formula, exactly.
pub fn f_at_odd_root(m: u32, form: FRootForm) -> Result<CycloElem, RootsError> {
    if m % 2 == 0 || m == 0 {
        return Err(RootsError::Precondition(format!("m = {m} must be odd")));
    }
    let m_us = m as usize;
    let one = CycloElem::one();
    let wi = CycloElem::zeta_pow(m, -1);
    let w = CycloElem::zeta(m);
    let minus_wi = -wi.clone();
    let poch_inv = |n: usize| crate::roots::pochhammer_at(&minus_wi, &wi, n);
    let c = |r: Rational| CycloElem::from_rational(&r);
    let value = match form {
        FRootForm::Ex1 | FRootForm::Ex1Corrected => {
            let (lead, range) = if form == FRootForm::Ex1 { (one.clone(), 1..m_us + 1) } else { (c(rat(4, 3)), 0..m_us.saturating_sub(1)) };
            let sum = range.fold(CycloElem::zero(), |acc, n| {
                acc + c(sign(n)) * CycloElem::zeta_pow(m, -(n as i64 + 1)) * poch_inv(n)
            });
            lead - c(rat(2, 3)) * sum
        }
        FRootForm::Ex2 | FRootForm::Ex2Corrected => {
            let range = if form == FRootForm::Ex2 { 1..m_us + 1 } else { 0..m_us };
            let sum = range.fold(CycloElem::zero(), |acc, n| acc + c(sign(n)) * poch_inv(n));
            c(rat(4, 3)) * sum
        }
        FRootForm::RadialLimit => {
            let mut sum = CycloElem::zero();
            for n in 1..=m_us {
                let den = crate::roots::pochhammer_at(&(-w.clone()), &w, n);
                let den_inv = den.try_inv().ok_or(RootsError::Singular("(-zeta;zeta)_n vanishes".into()))?;
                sum = sum + c(sign(n)) * CycloElem::zeta_pow(m, n as i64) * den_inv;
            }
            one - c(rat(2, 3)) * sum
        }
    };
    Ok(value)
}

/// `f(ζ_m)` for odd `m`, checked across the three formulas that agree with
/// the radial limit.
pub fn f_odd_root_value(m: u32) -> Result<CycloElem, RootsError> {
    let a = f_at_odd_root(m, FRootForm::Ex2Corrected)?;
    let b = f_at_odd_root(m, FRootForm::Ex1Corrected)?;
    let c = f_at_odd_root(m, FRootForm::RadialLimit)?;
    if a != b || a != c {
        return Err(RootsError::RouteMismatch(format!("f at zeta_{m}: {a:?} / {b:?} / {c:?}")));
    }
    Ok(a)
}

/// `f(ζ_m^j)` as the Galois image of `f(ζ_m)`.
pub fn f_at_root_power(m: u32, j: i64) -> Result<CycloElem, RootsError> {
    Ok(f_odd_root_value(m)?.galois(j))
}

/// `1 − 2^{−j}`, exactly.
pub fn dyadic_rho(j: u32) -> BigFloat {
    BigFloat::one().sub(&BigFloat::one().ldexp(-(j as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn q(x: Rational) -> CycloElem {
        CycloElem::from_rational(&x)
    }

    #[test]
    fn g3_trivial_root() {
        assert_eq!(g3_at_root(&q(rat_int(3)), 1).unwrap(), q(rat(-3, 7)));
        assert_eq!(g3_lemma_route(&q(rat_int(3)), 1).unwrap(), q(rat(-3, 7)));
    }

    #[test]
    fn g3_three_routes_agree() {
        for m in 1..=8 {
            for z in [q(rat_int(2)), q(rat(-5, 3)), CycloElem::zeta(m) + q(rat_int(3))] {
                let r = g3_routes(&z, m).unwrap();
                assert_eq!(r.theorem, r.direct, "m={m}");
                assert_eq!(r.theorem, r.inverted, "m={m}");
            }
        }
    }

    #[test]
    fn g3_singular_inputs() {
        assert!(matches!(g3_at_root(&CycloElem::zeta_pow(3, 1), 3), Err(RootsError::Singular(_))));
        assert!(matches!(g3_at_root(&q(rat_int(1)), 3), Err(RootsError::Singular(_))));
        // z^4 + z^-4 = 1 when z^4 = ζ_6
        let z = CycloElem::zeta(24);
        assert!(matches!(g3_at_root(&z, 4), Err(RootsError::Singular(_))));
    }

    #[test]
    fn uk_small_case() {
        assert_eq!(uk_at_root(1, &q(rat_int(1)), 2).unwrap(), q(rat_int(3)));
        assert_eq!(uk_at_root(1, &q(rat_int(-1)), 2).unwrap(), q(rat_int(-1)));
    }

    #[test]
    fn uk_routes_agree() {
        for m in 3..=5 {
            for k in 1..=2 {
                for z in [q(rat(9, 10)), q(rat(11, 10))] {
                    assert_eq!(uk_at_root(k, &z, m).unwrap(), uk_lemma_route(k, &z, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn f_at_small_roots() {
        assert_eq!(f_odd_root_value(1).unwrap(), q(rat(4, 3)));
        assert_eq!(f_at_odd_root(1, FRootForm::Ex2).unwrap(), q(rat(-8, 3)));
        assert_eq!(f_at_odd_root(1, FRootForm::Ex1).unwrap(), q(rat(7, 3)));
        assert!(f_at_odd_root(4, FRootForm::Ex2).is_err());
        let prod = (1..5).fold(CycloElem::one(), |acc, j| acc * f_at_root_power(5, j).unwrap());
        assert_eq!(prod, q(rat(256, 81)));
    }
}
