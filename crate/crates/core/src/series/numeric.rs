//! Direct high-precision summation of the same functions at numeric points.
//!
//! These evaluators bypass the truncated expansions entirely, which makes
//! them usable near the unit circle (radial limits) and, for the forward
//! `g_3` sum, outside it. A sum stops once three consecutive terms fall below
//! `2^{-(prec+10)} · max(1, |sum|)`.

use num_traits::Zero;

use crate::algebra::{BigComplex, BigFloat};
use crate::error::SeriesError;

/// Precision and term budget for a summation.
#[derive(Clone, Copy, Debug)]
pub struct SumControl {
    pub prec: u32,
    pub max_terms: usize,
}

impl Default for SumControl {
    fn default() -> Self {
        SumControl { prec: 256, max_terms: 2_000_000 }
    }
}

impl SumControl {
    pub fn with_prec(prec: u32) -> Self {
        SumControl { prec, ..Default::default() }
    }
}

/// `⌊log2⌋` of the larger component, or `None` for zero.
pub fn magnitude_bits(x: &BigComplex) -> Option<i64> {
    match (x.re.top_bit(), x.im.top_bit()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(i64::MIN).max(b.unwrap_or(i64::MIN))),
    }
}

fn negligible(term: &BigComplex, sum: &BigComplex, prec: u32) -> bool {
    match magnitude_bits(term) {
        None => true,
        Some(t) => t < magnitude_bits(sum).unwrap_or(0).max(0) - prec as i64 - 10,
    }
}

fn div(a: &BigComplex, b: &BigComplex) -> Result<BigComplex, SeriesError> {
    a.div(b).ok_or_else(|| SeriesError::InvalidArgument("vanishing denominator".into()))
}

fn one() -> BigComplex {
    BigComplex::from_i64(1)
}

/// Sum `init + Σ t_n` where `next` produces successive terms.
fn run_sum<F>(init: BigComplex, ctl: SumControl, mut next: F) -> Result<BigComplex, SeriesError>
where
    F: FnMut(usize) -> Result<BigComplex, SeriesError>,
{
    let mut sum = init.with_prec(ctl.prec);
    let mut quiet = 0;
    for n in 1..=ctl.max_terms {
        let t = next(n)?;
        let small = negligible(&t, &sum, ctl.prec);
        sum = &sum + &t;
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok(sum);
        }
    }
    Err(SeriesError::NonConvergence(ctl.max_terms))
}

/// `Σ_{n≥1} q^{e(n)} / ((z;q)_n (z⁻¹q;q)_n)` with `e(n) − e(n−1) = step(n)`.
fn quotient_sum<S: Fn(usize) -> i64>(
    z: &BigComplex,
    q: &BigComplex,
    e1: i64,
    step: S,
    ctl: SumControl,
) -> Result<BigComplex, SeriesError> {
    let z = z.with_prec(ctl.prec);
    let q = q.with_prec(ctl.prec);
    let zi = z.inv().ok_or(SeriesError::ZeroZ)?;
    let qpow = |k: i64| q.powi(k).ok_or(SeriesError::InvalidArgument("q must be nonzero".into()));
    let mut qn = one(); // q^{n−1}
    let mut t = BigComplex::zero();
    run_sum(BigComplex::zero(), ctl, |n| {
        let qn_next = &qn * &q;
        let den = &(&one() - &(&z * &qn)) * &(&one() - &(&zi * &qn_next));
        t = if n == 1 { div(&qpow(e1)?, &den)? } else { div(&(&t * &qpow(step(n))?), &den)? };
        qn = qn_next;
        Ok(t.clone())
    })
}

/// `g_3(z,q) = Σ_{n≥1} q^{n(n−1)} / ((z;q)_n (z⁻¹q;q)_n)`; also converges for `|q| > 1`.
pub fn g3_forward(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    quotient_sum(z, q, 0, |n| 2 * (n as i64 - 1), ctl)
}

/// `Σ_{n≥1} q^n / ((z;q)_n (z⁻¹q;q)_n)`, which equals `g_3(z⁻¹, q⁻¹)`.
pub fn first_sum(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    quotient_sum(z, q, 1, |_| 1, ctl)
}

/// `Σ_{n≥1} q^{2n} / ((z;q)_n (z⁻¹q;q)_n)`.
pub fn second_sum(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    quotient_sum(z, q, 2, |_| 2, ctl)
}

/// `Ũ_k(z,q) = Σ_{n≥0} q^{kn} / ((zq;q)_n (z⁻¹q;q)_n)`.
pub fn unimodal(k: usize, z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let z = z.with_prec(ctl.prec);
    let q = q.with_prec(ctl.prec);
    let zi = z.inv().ok_or(SeriesError::ZeroZ)?;
    let qk = q.powi(k as i64).unwrap();
    let mut qn = one();
    let mut t = one();
    run_sum(one(), ctl, |_| {
        qn = &qn * &q;
        let den = &(&one() - &(&z * &qn)) * &(&one() - &(&zi * &qn));
        t = div(&(&t * &qk), &den)?;
        Ok(t.clone())
    })
}

/// `U_k(z,q) = Σ_{n≥0} q^{k(n+1)} (−zq;q)_n (−z⁻¹q;q)_n`.
pub fn strong_unimodal(k: usize, z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let z = z.with_prec(ctl.prec);
    let q = q.with_prec(ctl.prec);
    let zi = z.inv().ok_or(SeriesError::ZeroZ)?;
    let qk = q.powi(k as i64).unwrap();
    let mut qn = one();
    let mut t = qk.clone();
    run_sum(qk.clone(), ctl, |_| {
        qn = &qn * &q;
        let f = &(&one() + &(&z * &qn)) * &(&one() + &(&zi * &qn));
        t = &(&t * &qk) * &f;
        Ok(t.clone())
    })
}

/// `f(q) = Σ_{n≥0} q^{n²} / (−q;q)_n²`.
pub fn f_mock(q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let q = q.with_prec(ctl.prec);
    let q2 = &q * &q;
    let mut odd = q.clone(); // q^{2n−1}
    let mut qn = one();
    let mut t = one();
    run_sum(one(), ctl, |n| {
        qn = &qn * &q;
        if n > 1 {
            odd = &odd * &q2;
        }
        let d = &one() + &qn;
        t = div(&(&t * &odd), &(&d * &d))?;
        Ok(t.clone())
    })
}

/// `f(q) = 1 − Σ_{n≥1} (−1)^n q^n / (−q;q)_n`.
pub fn f_mock_fine(q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let q = q.with_prec(ctl.prec);
    let mut qn = one();
    let mut t = one();
    run_sum(one(), ctl, |_| {
        qn = &qn * &q;
        // t_n = (−q)^n / (−q;q)_n, added with a minus sign
        t = div(&(&t * &(-q.clone())), &(&one() + &qn))?;
        Ok(-t.clone())
    })
}

/// `(a;q)_∞` for `|q| < 1`.
pub fn pochhammer_inf(a: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let q = q.with_prec(ctl.prec);
    let mut aq = a.with_prec(ctl.prec);
    let mut prod = one().with_prec(ctl.prec);
    let mut quiet = 0;
    for _ in 0..ctl.max_terms {
        let small = negligible(&aq, &one(), ctl.prec);
        prod = &prod * &(&one() - &aq);
        aq = &aq * &q;
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok(prod);
        }
    }
    Err(SeriesError::NonConvergence(ctl.max_terms))
}

/// `⟨j_z⟩_q = 1/((z;q)_∞ (z⁻¹q;q)_∞)`.
pub fn jbracket(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let zi = z.with_prec(ctl.prec).inv().ok_or(SeriesError::ZeroZ)?;
    let a = pochhammer_inf(z, q, ctl)?;
    let b = pochhammer_inf(&(&zi * &q.with_prec(ctl.prec)), q, ctl)?;
    div(&one(), &(&a * &b))
}

/// `b(q) = (q;q)_∞ / (−q;q)_∞²`.
pub fn b_modular(q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let q = q.with_prec(ctl.prec);
    let num = pochhammer_inf(&q, &q, ctl)?;
    let den = pochhammer_inf(&(-q.clone()), &q, ctl)?;
    div(&num, &(&den * &den))
}

/// The two-term expression in the style of Fine claimed equal to `g_3(z⁻¹, q⁻¹)`:
/// `(z⁻¹q;q)_∞⁻¹ (−z;q)_∞⁻¹ Σ (−1)^n z^{−2n} q^{n(n+1)/2} − Σ z^{1−n} (z⁻¹;q)_n`.
/// The second sum needs `|z| > 1`.
pub fn fine_two_term(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let z = z.with_prec(ctl.prec);
    let q = q.with_prec(ctl.prec);
    let zi = z.inv().ok_or(SeriesError::ZeroZ)?;
    let zi2 = &zi * &zi;
    let mut qn = one();
    let mut t = one();
    let theta = run_sum(one(), ctl, |_| {
        qn = &qn * &q; // q^n, and t_n = t_{n−1} · (−z^{−2}) · q^n
        t = &(&t * &(-zi2.clone())) * &qn;
        Ok(t.clone())
    })?;
    let pre = &pochhammer_inf(&(&zi * &q), &q, ctl)? * &pochhammer_inf(&(-z.clone()), &q, ctl)?;
    let first = div(&theta, &pre)?;
    let mut qn = one();
    let mut t = z.clone();
    let second = run_sum(z.clone(), ctl, |_| {
        t = &(&t * &(&one() - &(&zi * &qn))) * &zi;
        qn = &qn * &q;
        Ok(t.clone())
    })?;
    Ok(&first - &second)
}

/// The outer branch of `g_3` as printed: `Σ_{n≥1} q^{−n} / ((z;q⁻¹)_n (z⁻¹q⁻¹;q⁻¹)_n)`.
pub fn g3_outer_printed(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let p = q.with_prec(ctl.prec).inv().ok_or(SeriesError::InvalidArgument("q must be nonzero".into()))?;
    first_sum(z, &p, ctl)
}

/// The outer branch with `z` and `z⁻¹` exchanged, which agrees with the
/// forward sum continued past the unit circle.
pub fn g3_outer_corrected(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let p = q.with_prec(ctl.prec).inv().ok_or(SeriesError::InvalidArgument("q must be nonzero".into()))?;
    let zi = z.with_prec(ctl.prec).inv().ok_or(SeriesError::ZeroZ)?;
    first_sum(&zi, &p, ctl)
}

/// `z/(1 − z) Σ_{k≥1} Ũ_k(z,q) z^{−k} q^k`, the unimodal expansion of
/// `g_3(z⁻¹, q⁻¹)` for `|q| < 1 < |z|`.
pub fn unimodal_fold_sum(z: &BigComplex, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
    let z = z.with_prec(ctl.prec);
    let q = q.with_prec(ctl.prec);
    let ratio = div(&q, &z)?;
    let mut w = one();
    let sum = run_sum(BigComplex::zero(), ctl, |k| {
        w = &w * &ratio;
        Ok(&unimodal(k, &z, &q, ctl)? * &w)
    })?;
    Ok(&div(&z, &(&one() - &z))? * &sum)
}

/// `ρ · ζ_m^a`, a point on the ray towards a root of unity.
pub fn radial_point(rho: &BigFloat, m: u64, a: i64, prec: u32) -> BigComplex {
    BigComplex::zeta(m, a, prec).scale(rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 200)
    }

    fn close(a: &BigComplex, re: f64, im: f64) -> bool {
        let (x, y) = a.to_f64_pair();
        (x - re).abs() < 1e-12 && (y - im).abs() < 1e-12
    }

    #[test]
    fn reference_values() {
        // independent values from an mpmath session at 50 digits
        let ctl = SumControl::with_prec(200);
        let q = c(0.25, 0.0);
        let z = c(3.0, 0.0);
        assert!(close(&first_sum(&z, &q, ctl).unwrap(), -0.333836937167769, 0.0));
        let (outer, _) = g3_forward(&z, &c(4.0, 0.0), ctl).unwrap().to_f64_pair();
        assert!((outer - 2.18415).abs() < 1e-5);
    }

    #[test]
    fn f_forms_agree_inside() {
        let ctl = SumControl::with_prec(160);
        let q = c(0.3, 0.4);
        assert!(f_mock(&q, ctl).unwrap().close_to_bits(&f_mock_fine(&q, ctl).unwrap(), 140));
    }

    #[test]
    fn lemma_split_of_bracket() {
        // ⟨j_z⟩ = 1 + (z/q + 1/z) S1 − S2/q
        let ctl = SumControl::with_prec(160);
        let z = c(3.0, 0.0);
        let q = c(0.2, 0.0);
        let s1 = first_sum(&z, &q, ctl).unwrap();
        let s2 = second_sum(&z, &q, ctl).unwrap();
        let qi = q.inv().unwrap();
        let zi = z.inv().unwrap();
        let rhs = &(&one() + &(&(&(&z * &qi) + &zi) * &s1)) - &(&s2 * &qi);
        assert!(rhs.close_to_bits(&jbracket(&z, &q, ctl).unwrap(), 140));
    }

    #[test]
    fn outer_branch_matches_continuation() {
        let ctl = SumControl::with_prec(160);
        let z = c(3.0, 0.0);
        let q = c(4.0, 0.0);
        let forward = g3_forward(&z, &q, ctl).unwrap();
        assert!(forward.close_to_bits(&g3_outer_corrected(&z, &q, ctl).unwrap(), 140));
        assert!(!forward.close_to_bits(&g3_outer_printed(&z, &q, ctl).unwrap(), 20));
    }
}
