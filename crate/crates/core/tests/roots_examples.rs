//! Root-of-unity evaluation: closed forms, factorizations and radial limits.

use num_traits::{One, Signed, Zero};
use qlab_core::algebra::{rat, rat_int};
use qlab_core::error::RootsError;
use qlab_core::roots::{
    cor2_series, euler_cf, euler_cf_finite, f_at_odd_root, f_at_root_power, g3_at_root, g3_lemma_route, g3_routes,
    hypergeo_at_root, hypergeo_factor, periodic_infinite, periodic_partial, pochhammer_at, radial_limit, radial_target,
    t_scaled_closed_form, uk_at_root, uk_lemma_route, watson_limit_check, FRootForm, HypergeoSpec, PeriodicFactor,
    RadialSchedule, RadialTarget,
};
use qlab_core::{BigComplex, BigFloat, CycloElem, Rational, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cq(n: i64, d: i64) -> CycloElem {
    CycloElem::from_rational(&rat(n, d))
}

fn random_cyclo(rng: &mut ChaCha8Rng, m: u32) -> CycloElem {
    let terms: Vec<(i64, Rational)> =
        (0..3).map(|_| (rng.gen_range(0..m as i64), rat(rng.gen_range(-3..=3), rng.gen_range(1..=4)))).collect();
    CycloElem::from_terms(m, &terms)
}

#[test]
fn periodic_partial_sums() {
    let pf = PeriodicFactor::new(vec![rat(1, 2), rat(-2, 3), rat(3, 1)]).unwrap();
    for r in 0..3 {
        assert_eq!(periodic_partial(&pf, 0, r).unwrap().value, pf.partial_sum_direct(r));
    }
    // a single factor t gives t(1 − t^k)/(1 − t)
    let t = rat(2, 5);
    let single = PeriodicFactor::new(vec![t.clone()]).unwrap();
    for k in 0..6 {
        let expected = &t * (Rational::one() - t.pow(k as i32)) / (Rational::one() - &t);
        assert_eq!(periodic_partial(&single, k, 0).unwrap().value, expected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pf = PeriodicFactor::new((0..3).map(|_| random_cyclo(&mut rng, 5)).collect()).unwrap();
    assert_eq!(periodic_partial(&pf, 4, 2).unwrap().value, pf.partial_sum_direct(14));
}

#[test]
fn periodic_infinite_sums() {
    let half = PeriodicFactor::new(vec![rat(1, 2)]).unwrap();
    assert_eq!(periodic_infinite(&half).unwrap(), rat_int(1));
    let boundary = PeriodicFactor::new(vec![rat_int(1), rat_int(-1)]).unwrap();
    assert!(matches!(periodic_infinite(&boundary), Err(RootsError::Divergent)));
    // contractive random factor: partial sums close in on the closed form
    let pf = PeriodicFactor::new(vec![rat(2, 3), rat(-1, 2), rat(3, 4)]).unwrap();
    let limit = periodic_infinite(&pf).unwrap();
    let gap = (&limit - pf.partial_sum_direct(3 * 60)).abs();
    assert!(BigFloat::from_rational(&gap, 128).to_f64() < 1e-25);
}

#[test]
fn continued_fraction_forms() {
    let half = PeriodicFactor::new(vec![rat(1, 2)]).unwrap();
    let deep = euler_cf(&half, 80).unwrap();
    assert!(BigFloat::from_rational(&(deep - rat_int(1)).abs(), 128).to_f64() < 1e-20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 1..=4usize {
        let pf = PeriodicFactor::new((0..m).map(|_| random_cyclo(&mut rng, 8)).collect()).unwrap();
        let closed = pf.partial_sum_direct(m) * (CycloElem::one() - pf.product(m)).try_inv().unwrap();
        assert_eq!(euler_cf_finite(&pf).unwrap(), closed, "m={m}");
    }
    let pf = PeriodicFactor::new(vec![rat(1, 3), rat(-2, 5)]).unwrap();
    let limit = periodic_infinite(&pf).unwrap();
    let cf = euler_cf(&pf, 120).unwrap();
    assert!(BigFloat::from_rational(&(cf - limit).abs(), 128).to_f64() < 2f64.powi(-40));
}

#[test]
fn t_scaled_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let t = cq(1, 3);
    for k in 1..=4usize {
        let pf = PeriodicFactor::new((0..k).map(|_| random_cyclo(&mut rng, 6) * cq(1, 4)).collect()).unwrap();
        let direct = periodic_infinite(&pf.scaled(&t)).unwrap();
        assert_eq!(t_scaled_closed_form(&pf, &t).unwrap(), direct, "k={k}");
    }
}

#[test]
fn hypergeometric_factors() {
    let spec = HypergeoSpec { numer: vec![], denom: vec![], t: cq(1, 2) };
    assert_eq!(hypergeo_at_root(&spec, 3).unwrap(), cq(1, 1));
    let m = 5;
    let bad = HypergeoSpec { numer: vec![], denom: vec![CycloElem::zeta_pow(m, -2)], t: cq(1, 2) };
    assert!(matches!(hypergeo_factor(&bad, m), Err(RootsError::VanishingDenominator { .. })));
}

#[test]
fn g3_closed_forms() {
    assert_eq!(g3_at_root(&cq(3, 1), 1).unwrap(), cq(-3, 7));
    // z = ζ_24: z⁴ + z⁻⁴ = 2cos(π/3) = 1
    assert!(matches!(g3_at_root(&CycloElem::zeta(24), 4), Err(RootsError::Singular(_))));
    for m in 1..=8 {
        let z = cq(5, 2);
        let r = g3_routes(&z, m).unwrap();
        assert_eq!(r.theorem, r.direct);
        assert_eq!(r.theorem, r.inverted);
        if let Ok(v) = g3_lemma_route(&z, m) {
            assert_eq!(v, r.theorem, "m={m}");
        }
    }
}

#[test]
fn g3_radial_limit_at_cube_root() {
    let exact = g3_at_root(&cq(2, 1), 3).unwrap().embed(256);
    let target = RadialTarget::G3 { z: BigComplex::from_i64(2) };
    let report = radial_target(&target, &RadialSchedule::standard(3)).unwrap();
    assert!(report.reliable);
    assert!(report.within_bound(&exact));
}

#[test]
fn uk_closed_forms() {
    assert_eq!(uk_at_root(1, &cq(1, 1), 2).unwrap(), cq(3, 1));
    for k in 1..=2 {
        for m in 3..=5 {
            for z in [cq(9, 10), cq(11, 10), cq(1, 1) + CycloElem::zeta(7) * cq(1, 10)] {
                if let Ok(v) = uk_lemma_route(k, &z, m) {
                    assert_eq!(uk_at_root(k, &z, m).unwrap(), v, "k={k} m={m}");
                }
            }
        }
    }
}

#[test]
fn strong_unimodal_radial_limits() {
    // U_1(z, q) at z = −2 toward ζ_3: |(1 − 2³)(1 − 2⁻³)| = 49/8 > 1 and the
    // radial values blow up instead of settling on the finite formula
    let sched = RadialSchedule::standard(3);
    let exact = uk_at_root(1, &cq(2, 1), 3).unwrap().embed(256);
    let report = radial_target(&RadialTarget::U { k: 1, z: BigComplex::from_i64(-2) }, &sched).unwrap();
    assert!(report.diverging());
    assert!(!report.within_bound(&exact));
    // inside the region of convergence the two agree
    let z = cq(-9, 10);
    let exact = uk_at_root(1, &-z.clone(), 3).unwrap().embed(256);
    let report = radial_target(&RadialTarget::U { k: 1, z: z.embed(256) }, &sched).unwrap();
    assert!(!report.diverging());
    assert!(report.within_bound(&exact));
}

#[test]
fn cor2_series_values() {
    let third = BigComplex::from_rational(&rat(1, 3), &Rational::zero(), 256);
    let s = cor2_series(&third, 3, 1e-30).unwrap();
    let exact = g3_at_root(&cq(1, 3), 3).unwrap().embed(256);
    assert!((&s.value - &exact).abs().to_f64() < 1e-15);
    let z = CycloElem::zeta(8) * cq(1, 2);
    let s = cor2_series(&z.embed(256), 5, 1e-30).unwrap();
    let exact = g3_at_root(&z, 5).unwrap().embed(256);
    assert!((&s.value - &exact).abs().to_f64() < 1e-12);
    assert!(cor2_series(&BigComplex::from_i64(1), 3, 1e-30).is_err());
}

#[test]
fn f_at_roots() {
    for m in [1, 3, 5, 7, 9] {
        let value = f_at_odd_root(m, FRootForm::Ex2Corrected).unwrap();
        assert_eq!(f_at_odd_root(m, FRootForm::Ex1Corrected).unwrap(), value, "m={m}");
        assert_eq!(f_at_odd_root(m, FRootForm::RadialLimit).unwrap(), value, "m={m}");
    }
    // f(1) = Σ 4^{−n}
    assert_eq!(f_at_odd_root(1, FRootForm::Ex2Corrected).unwrap(), cq(4, 3));
    let product = (1..=4).map(|j| f_at_root_power(5, j).unwrap()).fold(CycloElem::one(), |a, b| a * b);
    assert_eq!(product, cq(256, 81));
    for i in 1..=2 {
        let lhs = CycloElem::zeta_pow(5, i) * f_at_root_power(5, i).unwrap();
        let rhs = CycloElem::zeta_pow(5, -i) * f_at_root_power(5, -i).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn f_radial_limits_match_finite_values() {
    for m in [3u32, 5] {
        let exact = f_at_odd_root(m, FRootForm::Ex2Corrected).unwrap().embed(256);
        let report = radial_target(&RadialTarget::F, &RadialSchedule::standard(m)).unwrap();
        assert!(report.within_bound(&exact), "m={m}");
    }
}

#[test]
fn printed_example_two_is_off_by_four() {
    for m in [1u32, 3, 5, 7, 9] {
        let printed = f_at_odd_root(m, FRootForm::Ex2).unwrap();
        let value = f_at_odd_root(m, FRootForm::Ex2Corrected).unwrap();
        assert_eq!(value - printed, cq(4, 1), "m={m}");
    }
}

#[test]
fn pochhammer_reversal_at_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for m in 1..=10u32 {
        let w = CycloElem::zeta(m);
        let wi = CycloElem::zeta_pow(m, -1);
        let samples = [cq(2, 3), cq(-7, 5), random_cyclo(&mut rng, m.max(3)), random_cyclo(&mut rng, 4)];
        for x in samples {
            let xm = x.pow(m);
            if (CycloElem::one() - xm.clone()).is_zero() {
                continue;
            }
            for n in 0..=m as usize {
                let lhs = pochhammer_at(&x, &wi, n);
                let den = pochhammer_at(&x, &w, m as usize - n + 1);
                let rhs = (CycloElem::one() - x.clone()) * (CycloElem::one() - xm.clone()) * den.try_inv().unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }
    for m in 1..=20u32 {
        let x = cq(3, 2) + CycloElem::zeta(m.max(2));
        assert_eq!(pochhammer_at(&x, &CycloElem::zeta(m), m as usize), CycloElem::one() - x.pow(m), "m={m}");
    }
}

#[test]
fn half_products_at_odd_roots_are_reciprocal() {
    for n_root in [1u32, 3, 5, 7, 9, 11] {
        let w = CycloElem::zeta(n_root);
        let wi = CycloElem::zeta_pow(n_root, -1);
        for n in 0..n_root as usize {
            let left = pochhammer_at(&-w.clone(), &w, n).try_inv().unwrap();
            let right = pochhammer_at(&-wi.clone(), &wi, n_root as usize - n - 1);
            assert_eq!(left, right, "N={n_root} n={n}");
        }
    }
}

#[test]
fn watson_limits() {
    for k in 1..=2 {
        let report = watson_limit_check(k, &RadialSchedule::watson(k)).unwrap();
        assert!(report.lhs.reliable);
        // the limit is −4U(1, ζ_2k); the sign of z in the stated −4U(−1, ζ_2k) is off
        assert!(report.alternative_holds(), "k={k}");
        assert!(!report.printed_holds(), "k={k}");
    }
}

#[test]
fn folded_coefficients_give_the_radial_limit() {
    // Σ_{k≥1} 2^{−k} q^{k²}: fold the coefficients modulo m and sum against ζ_m^n
    let m = 5u32;
    let prec = 256;
    let mut folded = BigComplex::zero();
    for k in 1..=300i64 {
        let c = BigFloat::from_rational(&rat(1, 1), prec).ldexp(-k);
        folded = &folded + &BigComplex::zeta(m as u64, (k * k) % m as i64, prec).scale(&c);
    }
    // the default radii stop at 1 − 2⁻¹⁶, about eight digits here
    let sched = RadialSchedule::dyadic(m, 8..=24, prec);
    let report = radial_limit(
        |q| {
            let mut s = BigComplex::zero();
            let mut qk = BigComplex::from_i64(1);
            let mut qstep = q.clone(); // q^{2k−1}
            let q2 = q * q;
            for k in 1..=300i64 {
                qk = &qk * &qstep;
                qstep = &qstep * &q2;
                s = &s + &qk.scale(&BigFloat::one().ldexp(-k));
            }
            Ok(s)
        },
        &sched,
    )
    .unwrap();
    assert!(report.within_bound(&folded));
    assert!(report.gap_to(&folded).to_f64() < 1e-10);
}
