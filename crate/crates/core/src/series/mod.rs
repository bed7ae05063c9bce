//! Generating functions as truncated q-series.
//!
//! Every constructor comes in two flavours: a generic `*_at(z, …)` form
//! that takes the value of `z` in any [`Ring`], and a symbolic form that
//! fixes `z` to the formal variable of [`LaurentPoly`]. When `z` is the
//! formal variable the simple pole at `z = 1` is kept in the series' pole
//! exponent; when `z` is a number the factor `(1 − z)^{-1}` is inverted.

pub mod numeric;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{
    parse_rational, rational_to_string, BigComplex, BigFloat, CycloElem, LaurentPoly, PoleLaurent, Rational, Ring,
    TruncatedSeries,
};
use crate::error::SeriesError;
use crate::partitions::{partitions_of, Partition};
use crate::ZSeries;

/// Number of factors in a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

/// `(a q^d ; q^s)_n = Π_{i<n} (1 − a q^{d + s i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct PochhammerSpec<R> {
    /// The scalar part `a`, which may itself contain `z`.
    pub scalar: R,
    /// Power of `q` in the base, `d`.
    pub q_offset: usize,
    /// Step `s` of the base `q^s`.
    pub q_step: usize,
    pub count: Count,
}

impl<R: Ring> PochhammerSpec<R> {
    /// `(a q^d ; q)_n`
    pub fn new(scalar: R, q_offset: usize, count: Count) -> Self {
        PochhammerSpec { scalar, q_offset, q_step: 1, count }
    }

    pub fn with_step(mut self, step: usize) -> Self {
        self.q_step = step;
        self
    }
}

/// Expand a q-Pochhammer symbol to order `order`.
pub fn pochhammer<R: Ring>(spec: &PochhammerSpec<R>, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    let mut s = TruncatedSeries::one(order);
    let n = match spec.count {
        Count::Finite(n) => n,
        Count::Infinite => {
            if spec.q_step == 0 {
                return Err(SeriesError::NoQAdicConvergence);
            }
            // factors past this index are 1 + O(q^{order+1})
            order.saturating_sub(spec.q_offset) / spec.q_step + 1
        }
    };
    for i in 0..n {
        let e = spec.q_offset + spec.q_step * i;
        if e > order {
            if spec.q_step == 0 {
                continue;
            }
            break;
        }
        s = s.mul_binomial(&spec.scalar, e);
    }
    Ok(s)
}

fn poch<R: Ring>(a: &R, d: usize, count: Count, order: usize) -> TruncatedSeries<R> {
    pochhammer(&PochhammerSpec::new(a.clone(), d, count), order).expect("step 1 always converges")
}

/// Divide by `(a q^d; q)_∞` for `d ≥ 1`.
fn div_poch_inf<R: Ring>(s: &TruncatedSeries<R>, a: &R, d: usize) -> TruncatedSeries<R> {
    assert!(d >= 1);
    let mut out = s.clone();
    for e in d..=s.order() {
        out = out.div_binomial(a, e);
    }
    out
}

fn inv_z<R: Ring>(z: &R) -> Result<R, SeriesError> {
    if z.is_zero() {
        return Err(SeriesError::ZeroZ);
    }
    z.try_inv().ok_or(SeriesError::ZeroZ)
}

/// Attach the factor `(1 − z)^{-e}` to `stored`.
///
/// Numeric `z` gets the factor inverted; the formal variable keeps it in the
/// pole exponent; anything else that makes `1 − z` a non-unit is an error.
pub fn attach_pole<R: Ring>(z: &R, stored: TruncatedSeries<R>, e: u32) -> Result<TruncatedSeries<R>, SeriesError> {
    if e == 0 {
        return Ok(stored);
    }
    if z.is_pole_variable() {
        let coeffs = stored.coeffs().to_vec();
        return Ok(TruncatedSeries::with_pole(stored.order(), coeffs, e)?);
    }
    let d = (R::one() - z.clone()).pow(e);
    let inv = d.try_inv().ok_or(SeriesError::PoleAtOne(e))?;
    Ok(stored.scale(&inv))
}

/// `j(z;q) = (z;q)_∞ (z⁻¹q;q)_∞ (q;q)_∞`.
pub fn triple_product_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    let zi = inv_z(z)?;
    let a = poch(z, 0, Count::Infinite, order);
    let b = poch(&zi, 1, Count::Infinite, order);
    let c = poch(&R::one(), 1, Count::Infinite, order);
    Ok(a.mul(&b).mul(&c))
}

pub fn triple_product(order: usize) -> ZSeries {
    triple_product_at(&LaurentPoly::z(), order).expect("z is a unit")
}

/// `1/((zq;q)_∞ (z⁻¹q;q)_∞)`, the bracket with its `(1 − z)` cleared.
pub fn jbracket_numerator_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    let zi = inv_z(z)?;
    let one = TruncatedSeries::one(order);
    Ok(div_poch_inf(&div_poch_inf(&one, z, 1), &zi, 1))
}

/// `⟨j_z⟩_q = 1/((z;q)_∞ (z⁻¹q;q)_∞)`.
pub fn jbracket_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    attach_pole(z, jbracket_numerator_at(z, order)?, 1)
}

/// `⟨j_z⟩_q` stored as `(1 − z)⟨j_z⟩_q` with pole exponent 1.
pub fn jbracket_cleared(order: usize) -> ZSeries {
    jbracket_at(&LaurentPoly::z(), order).expect("z is a unit")
}

/// `C(z;q) = (q;q)_∞ / ((zq;q)_∞ (z⁻¹q;q)_∞)`.
pub fn crank_gf_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    let p = poch(&R::one(), 1, Count::Infinite, order);
    Ok(p.mul(&jbracket_numerator_at(z, order)?))
}

pub fn crank_gf(order: usize) -> ZSeries {
    crank_gf_at(&LaurentPoly::z(), order).expect("z is a unit")
}

/// `(1 − z) Σ_{n≥1} q^{e(n)} / ((z;q)_n (z⁻¹q;q)_n)` for increasing `e`.
///
/// The `n`-th summand contributes from `q^{e(n)}` on, so the loop stops at
/// the first `n` with `e(n) > order`.
pub fn quotient_sum_numerator<R: Ring, E: Fn(usize) -> usize>(
    z: &R,
    order: usize,
    e: E,
) -> Result<TruncatedSeries<R>, SeriesError> {
    let zi = inv_z(z)?;
    let mut sum = TruncatedSeries::zero(order);
    let mut p = TruncatedSeries::one(order);
    let mut n = 1;
    loop {
        let en = e(n);
        if en > order {
            break;
        }
        if n >= 2 {
            p = p.div_binomial(z, n - 1);
        }
        p = p.div_binomial(&zi, n);
        sum = sum.add(&p.shift(en));
        n += 1;
    }
    Ok(sum)
}

/// `Σ_{n≥1} q^{e(n)} / ((z;q)_n (z⁻¹q;q)_n)`.
pub fn quotient_sum_at<R: Ring, E: Fn(usize) -> usize>(
    z: &R,
    order: usize,
    e: E,
) -> Result<TruncatedSeries<R>, SeriesError> {
    attach_pole(z, quotient_sum_numerator(z, order, e)?, 1)
}

/// `g_3(z,q) = Σ_{n≥1} q^{n(n−1)} / ((z;q)_n (z⁻¹q;q)_n)`.
pub fn g3_forward_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    quotient_sum_at(z, order, |n| n * (n - 1))
}

pub fn g3_forward(order: usize) -> ZSeries {
    g3_forward_at(&LaurentPoly::z(), order).expect("z is a unit")
}

/// `g_3(z⁻¹,q⁻¹) = Σ_{n≥1} q^n / ((z;q)_n (z⁻¹q;q)_n)`.
pub fn g3_inverted_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    quotient_sum_at(z, order, |n| n)
}

pub fn g3_inverted(order: usize) -> ZSeries {
    g3_inverted_at(&LaurentPoly::z(), order).expect("z is a unit")
}

/// `Σ_{n≥1} q^{2n} / ((z;q)_n (z⁻¹q;q)_n)`.
pub fn second_sum_at<R: Ring>(z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    quotient_sum_at(z, order, |n| 2 * n)
}

/// `Ũ_k(z,q) = Σ_{n≥0} q^{kn} / ((zq;q)_n (z⁻¹q;q)_n)`.
pub fn unimodal_gf_at<R: Ring>(k: usize, z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("fold k must be at least 1".into()));
    }
    let zi = inv_z(z)?;
    let mut sum = TruncatedSeries::one(order);
    let mut p = TruncatedSeries::one(order);
    let mut n = 1;
    while k * n <= order {
        p = p.div_binomial(z, n).div_binomial(&zi, n);
        sum = sum.add(&p.shift(k * n));
        n += 1;
    }
    Ok(sum)
}

pub fn unimodal_gf(k: usize, order: usize) -> Result<ZSeries, SeriesError> {
    unimodal_gf_at(k, &LaurentPoly::z(), order)
}

/// `U_k(z,q) = Σ_{n≥0} q^{k(n+1)} (−zq;q)_n (−z⁻¹q;q)_n`.
pub fn strong_unimodal_gf_at<R: Ring>(k: usize, z: &R, order: usize) -> Result<TruncatedSeries<R>, SeriesError> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("fold k must be at least 1".into()));
    }
    let zi = inv_z(z)?;
    let mz = -z.clone();
    let mzi = -zi;
    let mut sum = TruncatedSeries::zero(order);
    let mut p = TruncatedSeries::one(order);
    let mut n = 0;
    while k * (n + 1) <= order {
        if n >= 1 {
            p = p.mul_binomial(&mz, n).mul_binomial(&mzi, n);
        }
        sum = sum.add(&p.shift(k * (n + 1)));
        n += 1;
    }
    Ok(sum)
}

pub fn strong_unimodal_gf(k: usize, order: usize) -> Result<ZSeries, SeriesError> {
    strong_unimodal_gf_at(k, &LaurentPoly::z(), order)
}

/// Which expansion of Ramanujan's `f(q)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FForm {
    /// `Σ q^{n²} / (−q;q)_n²`
    Eq1,
    /// `1 − Σ_{n≥1} (−1)^n q^n / (−q;q)_n`
    Fine,
}

pub fn f_mock<R: Ring>(order: usize, form: FForm) -> TruncatedSeries<R> {
    let minus_one = -R::one();
    let mut p = TruncatedSeries::one(order);
    match form {
        FForm::Eq1 => {
            let mut sum = TruncatedSeries::one(order);
            let mut n = 1;
            while n * n <= order {
                p = p.div_binomial(&minus_one, n).div_binomial(&minus_one, n);
                sum = sum.add(&p.shift(n * n));
                n += 1;
            }
            sum
        }
        FForm::Fine => {
            let mut sum = TruncatedSeries::one(order);
            for n in 1..=order {
                p = p.div_binomial(&minus_one, n);
                let sign = if n % 2 == 1 { R::one() } else { minus_one.clone() };
                // subtracting (−1)^n q^n/(−q;q)_n
                sum = sum.add(&p.shift(n).scale(&sign));
            }
            sum
        }
    }
}

/// `b(q) = (q;q)_∞ / (−q;q)_∞²`.
pub fn b_modular<R: Ring>(order: usize) -> TruncatedSeries<R> {
    let minus_one = -R::one();
    let p = poch(&R::one(), 1, Count::Infinite, order);
    div_poch_inf(&div_poch_inf(&p, &minus_one, 1), &minus_one, 1)
}

/// `⟨w⟩_q = (q;q)_∞ Σ_λ w(λ) q^{|λ|}`.
pub fn qbracket<F: Fn(&Partition) -> LaurentPoly>(weight: F, order: usize) -> ZSeries {
    let sums: Vec<LaurentPoly> = (0..=order)
        .map(|n| partitions_of(n as i64).unwrap().iter().fold(LaurentPoly::zero(), |a, l| a + weight(l)))
        .collect();
    let p = poch(&LaurentPoly::one(), 1, Count::Infinite, order);
    p.mul(&TruncatedSeries::new(order, sums))
}

/// The q-bracket of a weight with a pole at `z = 1`; the result carries the
/// largest pole exponent among the weights.
pub fn qbracket_pole<F: Fn(&Partition) -> PoleLaurent>(weight: F, order: usize) -> ZSeries {
    let all: Vec<Vec<PoleLaurent>> =
        (0..=order).map(|n| partitions_of(n as i64).unwrap().iter().map(&weight).collect()).collect();
    let e = all.iter().flatten().map(|w| w.pole_exp).max().unwrap_or(0);
    let sums: Vec<LaurentPoly> = all
        .iter()
        .map(|ws| ws.iter().fold(LaurentPoly::zero(), |a, w| a + w.numerator_at(e)))
        .collect();
    let p = poch(&LaurentPoly::one(), 1, Count::Infinite, order);
    let s = TruncatedSeries::with_pole(order, sums, e).expect("Laurent ring carries poles");
    p.mul(&s)
}

/// The closed catalog of named series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesHandle {
    F,
    B,
    G3Forward,
    G3Inverted,
    U(usize),
    UTilde(usize),
    CrankGf,
    JBracket,
    TripleProduct,
}

impl SeriesHandle {
    pub const NAMES: [&'static str; 9] =
        ["f", "b", "g3_forward", "g3_inverted", "u", "utilde", "crank_gf", "jbracket", "triple_product"];

    /// Parse a name, attaching the fold `k` for the unimodal families.
    pub fn parse(name: &str, k: usize) -> Result<Self, SeriesError> {
        let h = match name.to_ascii_lowercase().as_str() {
            "f" => SeriesHandle::F,
            "b" => SeriesHandle::B,
            "g3" | "g3_forward" => SeriesHandle::G3Forward,
            "g3_inverted" | "g3inv" => SeriesHandle::G3Inverted,
            "u" | "u_k" | "strong" => SeriesHandle::U(k),
            "utilde" | "utilde_k" | "weak" => SeriesHandle::UTilde(k),
            "crank" | "crank_gf" => SeriesHandle::CrankGf,
            "jbracket" | "bracket" => SeriesHandle::JBracket,
            "triple" | "triple_product" | "j" => SeriesHandle::TripleProduct,
            other => return Err(SeriesError::InvalidArgument(format!("unknown series `{other}`"))),
        };
        Ok(h)
    }

    /// Symbolic expansion in `z` (rational series become constant polynomials).
    pub fn expand(&self, order: usize) -> Result<ZSeries, SeriesError> {
        let lift = |s: TruncatedSeries<Rational>| s.map(|c| LaurentPoly::constant(c.clone()));
        Ok(match *self {
            SeriesHandle::F => lift(f_mock(order, FForm::Eq1)),
            SeriesHandle::B => lift(b_modular(order)),
            SeriesHandle::G3Forward => g3_forward(order),
            SeriesHandle::G3Inverted => g3_inverted(order),
            SeriesHandle::U(k) => strong_unimodal_gf(k, order)?,
            SeriesHandle::UTilde(k) => unimodal_gf(k, order)?,
            SeriesHandle::CrankGf => crank_gf(order),
            SeriesHandle::JBracket => jbracket_cleared(order),
            SeriesHandle::TripleProduct => triple_product(order),
        })
    }
}

impl fmt::Display for SeriesHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesHandle::F => write!(f, "f"),
            SeriesHandle::B => write!(f, "b"),
            SeriesHandle::G3Forward => write!(f, "g3_forward"),
            SeriesHandle::G3Inverted => write!(f, "g3_inverted"),
            SeriesHandle::U(k) => write!(f, "u(k={k})"),
            SeriesHandle::UTilde(k) => write!(f, "utilde(k={k})"),
            SeriesHandle::CrankGf => write!(f, "crank_gf"),
            SeriesHandle::JBracket => write!(f, "jbracket"),
            SeriesHandle::TripleProduct => write!(f, "triple_product"),
        }
    }
}

impl FromStr for SeriesHandle {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeriesHandle::parse(s, 1)
    }
}

/// A numeric value of a truncated series with a heuristic bound on the
/// omitted tail.
#[derive(Clone, Debug)]
pub struct NumericValue {
    pub value: BigComplex,
    pub tail_estimate: BigFloat,
}

/// Evaluate a symbolic series at numeric `z0`, `q0` with `|q0| < 1`.
///
/// The tail estimate assumes the coefficients stop growing after the
/// truncation order: `max(|t_N|, |t_{N−1}|) · |q0| / (1 − |q0|)`.
pub fn eval_numeric(s: &ZSeries, z0: &BigComplex, q0: &BigComplex) -> Result<NumericValue, SeriesError> {
    if z0.is_zero() {
        return Err(SeriesError::ZeroZ);
    }
    let r = q0.abs();
    if r.cmp_value(&BigFloat::one()) != std::cmp::Ordering::Less {
        return Err(SeriesError::OutsideDisk);
    }
    if s.pole_exp() > 0 && (&BigComplex::one() - z0).is_zero() {
        return Err(SeriesError::PoleAtOne(s.pole_exp()));
    }
    let numeric = s.eval_z(z0)?;
    let mut value = BigComplex::zero();
    let mut power = BigComplex::one();
    let mut last = [BigFloat::zero(), BigFloat::zero()];
    for c in numeric.coeffs() {
        let t = c * &power;
        last = [last[1].clone(), t.abs()];
        value = &value + &t;
        power = &power * q0;
    }
    let biggest = if last[0].cmp_value(&last[1]) == std::cmp::Ordering::Greater { &last[0] } else { &last[1] };
    let tail_estimate = biggest.mul(&r).div(&BigFloat::one().sub(&r));
    Ok(NumericValue { value, tail_estimate })
}

/// [`eval_numeric`] for a catalog series.
pub fn eval_handle(
    h: SeriesHandle,
    z0: &BigComplex,
    q0: &BigComplex,
    order: usize,
) -> Result<NumericValue, SeriesError> {
    eval_numeric(&h.expand(order)?, z0, q0)
}

/// [`eval_numeric`] at a cyclotomic `z0`, embedded at `bits` of precision.
pub fn eval_numeric_cyclo(s: &ZSeries, z0: &CycloElem, q0: &BigComplex, bits: u32) -> Result<NumericValue, SeriesError> {
    eval_numeric(s, &z0.embed(bits), q0)
}

/// JSON form of a symbolic series:
/// `{"order", "pole_exp", "coeffs": [{"n", "poly": {"<exp>": "p/q"}}]}`,
/// listing only nonzero coefficients.
pub fn series_to_json(s: &ZSeries) -> serde_json::Value {
    let coeffs: Vec<serde_json::Value> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| {
            let poly: serde_json::Map<String, serde_json::Value> =
                c.terms().map(|(e, r)| (e.to_string(), rational_to_string(r).into())).collect();
            serde_json::json!({ "n": n, "poly": poly })
        })
        .collect();
    serde_json::json!({ "order": s.order(), "pole_exp": s.pole_exp(), "coeffs": coeffs })
}

/// Inverse of [`series_to_json`].
pub fn series_from_json(v: &serde_json::Value) -> Option<ZSeries> {
    let order = v.get("order")?.as_u64()? as usize;
    let pole = v.get("pole_exp")?.as_u64()? as u32;
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    for entry in v.get("coeffs")?.as_array()? {
        let n = entry.get("n")?.as_u64()? as usize;
        let mut terms = Vec::new();
        for (e, r) in entry.get("poly")?.as_object()? {
            terms.push((e.parse::<i64>().ok()?, parse_rational(r.as_str()?)?));
        }
        *coeffs.get_mut(n)? = LaurentPoly::from_terms(terms);
    }
    TruncatedSeries::with_pole(order, coeffs, pole).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    #[test]
    fn finite_pochhammer() {
        let z = LaurentPoly::z();
        let p0 = pochhammer(&PochhammerSpec::new(z.clone(), 0, Count::Finite(0)), 5).unwrap();
        assert!(p0.is_one());
        let p2 = pochhammer(&PochhammerSpec::new(z.clone(), 0, Count::Finite(2)), 5).unwrap();
        // (1 − z)(1 − zq) = (1 − z) − (z − z²) q
        assert_eq!(p2.coeff(0), &LaurentPoly::from_ints(0, &[1, -1]));
        assert_eq!(p2.coeff(1), &LaurentPoly::from_ints(1, &[-1, 1]));
        assert!(p2.coeff(2).is_zero());
    }

    #[test]
    fn constant_step_diverges() {
        let spec = PochhammerSpec::new(rat_int(2), 1, Count::Infinite).with_step(0);
        assert_eq!(pochhammer(&spec, 4), Err(SeriesError::NoQAdicConvergence));
    }

    #[test]
    fn euler_pentagonal() {
        let p = poch(&rat_int(1), 1, Count::Infinite, 12);
        let expected: Vec<i64> = vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1];
        assert_eq!(p.coeffs().to_vec(), expected.iter().map(|&x| rat_int(x)).collect::<Vec<_>>());
    }

    #[test]
    fn bracket_leading_terms() {
        let j = jbracket_cleared(6);
        assert_eq!(j.pole_exp(), 1);
        assert_eq!(j.coeff(0), &LaurentPoly::one());
        let g = g3_inverted(6);
        assert!(g.coeff(0).is_zero());
        assert_eq!(g.coeff(1), &LaurentPoly::one());
        assert_eq!(g3_forward(6).coeff(0), &LaurentPoly::one());
    }

    #[test]
    fn numeric_z_inverts_the_pole() {
        let two = rat_int(2);
        let g = g3_inverted_at(&two, 4).unwrap();
        // q/((1−2)(1−q/2)) → first coefficient −1
        assert_eq!(g.coeff(1), &rat_int(-1));
        assert_eq!(g3_inverted_at(&rat_int(1), 4), Err(SeriesError::PoleAtOne(1)));
    }

    #[test]
    fn unimodal_small_coefficients() {
        let u = unimodal_gf(1, 4).unwrap();
        assert_eq!(u.coeff(0), &LaurentPoly::one());
        assert_eq!(u.coeff(1), &LaurentPoly::one());
        assert_eq!(u.coeff(2), &LaurentPoly::from_ints(-1, &[1, 1, 1]));
        let s = strong_unimodal_gf(1, 4).unwrap();
        assert_eq!(s.coeff(1), &LaurentPoly::one());
        assert_eq!(s.coeff(3), &LaurentPoly::from_ints(-1, &[1, 1, 1]));
    }

    #[test]
    fn f_forms_agree() {
        let a: TruncatedSeries<Rational> = f_mock(40, FForm::Eq1);
        let b: TruncatedSeries<Rational> = f_mock(40, FForm::Fine);
        assert_eq!(a, b);
        assert_eq!(a.coeff(1), &rat(1, 1));
    }

    #[test]
    fn json_round_trip() {
        let g = g3_forward(8);
        assert_eq!(series_from_json(&series_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn handles_parse() {
        assert_eq!(SeriesHandle::parse("utilde", 2).unwrap(), SeriesHandle::UTilde(2));
        assert!(SeriesHandle::parse("nope", 1).is_err());
        for name in SeriesHandle::NAMES {
            assert!(SeriesHandle::parse(name, 1).is_ok());
        }
    }
}
