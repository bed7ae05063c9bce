//! Randomised algebraic invariants.

use num_traits::{One, Zero};
use proptest::prelude::*;
use qlab_core::algebra::rat;
use qlab_core::series::{jbracket_cleared, jbracket_numerator_at};
use qlab_core::{BigComplex, CycloElem, LaurentPoly, QSeries, Rational, Ring, TruncatedSeries, ZSeries};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn unit_series(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(rational(), order).prop_map(move |tail| {
        let mut c = vec![Rational::one()];
        c.extend(tail);
        TruncatedSeries::new(order, c)
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-5i64..=5, 1..5)).prop_map(|(lo, c)| LaurentPoly::from_ints(lo, &c))
}

fn z_series(order: usize) -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(laurent(), order + 1).prop_map(move |c| TruncatedSeries::new(order, c))
}

fn cyclo(m: u32) -> impl Strategy<Value = CycloElem> {
    prop::collection::vec((0..m as i64, rational()), 1..4).prop_map(move |t| CycloElem::from_terms(m, &t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_round_trip(a in unit_series(15)) {
        let inv = a.inv().unwrap();
        prop_assert!(a.mul(&inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in z_series(8), b in z_series(8), c in z_series(8)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn pole_raise_then_lower(a in z_series(6), e in 1u32..3) {
        let raised = a.clear_pole(e).unwrap();
        prop_assert_eq!(raised.pole_exp(), e);
        prop_assert_eq!(raised.clear_pole(0).unwrap(), a);
    }

    #[test]
    fn embedding_is_multiplicative(x in cyclo(12), y in cyclo(12)) {
        let bits = 128;
        let exy = (x.clone() * y.clone()).embed(bits);
        let prod = &x.embed(bits) * &y.embed(bits);
        let scale = prod.abs().to_f64().max(1.0);
        prop_assert!((&exy - &prod).abs().to_f64() / scale < 2f64.powi(-(bits as i32) + 8));
    }

    #[test]
    fn cyclotomic_inverse(x in cyclo(7)) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.clone() * x.try_inv().unwrap(), CycloElem::one());
    }

    #[test]
    fn shift_is_multiplication_by_q(a in z_series(10), k in 0usize..4) {
        let qk = TruncatedSeries::monomial(LaurentPoly::one(), k, 10);
        prop_assert_eq!(a.shift(k), a.mul(&qk));
    }
}

#[test]
fn small_roots_of_unity() {
    assert_eq!(CycloElem::zeta_pow(4, 2), -CycloElem::one());
    for k in -3..=3 {
        assert_eq!(CycloElem::zeta_pow(1, k), CycloElem::one());
    }
    let sum = (0..5).fold(CycloElem::zero(), |acc, k| acc + CycloElem::zeta_pow(5, k));
    assert!(sum.is_zero());
    let embedded = (0..5).fold(BigComplex::zero(), |acc, k| &acc + &CycloElem::zeta_pow(5, k).embed(128));
    assert!(embedded.abs().to_f64() < 1e-30);
    let minus_one = CycloElem::zeta(2).embed(128);
    assert!((&minus_one - &BigComplex::from_i64(-1)).abs().is_zero());
    let i = CycloElem::zeta(4).embed(128);
    assert!((&i - &BigComplex::i()).abs().to_f64() < 2f64.powi(-124));
}

#[test]
fn cleared_bracket_from_the_numerator() {
    // (1 − z)⟨j_z⟩_q carried with pole exponent 2 is ⟨j_z⟩_q twice over the
    // pole; clearing one factor gives the stored cleared bracket
    let n = 10;
    let numer = jbracket_numerator_at(&LaurentPoly::z(), n).unwrap();
    let doubled = TruncatedSeries::with_pole(n, numer.coeffs().iter().map(|c| c.mul_one_minus_z()).collect(), 2).unwrap();
    assert_eq!(doubled.clear_pole(1).unwrap(), jbracket_cleared(n));
}

#[test]
fn difference_of_squares() {
    let one_plus = QSeries::new(4, vec![Rational::one(), Rational::one()]);
    let one_minus = QSeries::new(4, vec![Rational::one(), -Rational::one()]);
    assert_eq!(one_plus.mul(&one_minus), QSeries::new(4, vec![Rational::one(), Rational::zero(), -Rational::one()]));
    let a = QSeries::new(4, vec![rat(3, 2), rat(1, 5)]);
    assert_eq!(a.mul(&QSeries::one(4)), a);
}
