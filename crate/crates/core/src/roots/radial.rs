//! Radial limits `q = ρ ζ_m^a`, `ρ → 1⁻`, with first-order Richardson extrapolation.

use rayon::prelude::*;
use serde_json::json;

use super::formulas::{dyadic_rho, uk_at_root};
use crate::algebra::{BigComplex, BigFloat};
use crate::error::{RootsError, SeriesError};
use crate::series::numeric::{self, SumControl};

/// The sample points `ρ_j ζ_m^a` of a radial approach.
#[derive(Clone, Debug)]
pub struct RadialSchedule {
    pub target_m: u32,
    /// Power `a` of `ζ_m` approached; 1 unless stated otherwise.
    pub target_power: i64,
    pub rho_values: Vec<BigFloat>,
    pub precision_bits: u32,
}

impl RadialSchedule {
    /// `ρ_j = 1 − 2^{−j}` for `j` in `js`.
    pub fn dyadic(target_m: u32, js: std::ops::RangeInclusive<u32>, precision_bits: u32) -> Self {
        RadialSchedule {
            target_m,
            target_power: 1,
            rho_values: js.map(dyadic_rho).collect(),
            precision_bits,
        }
    }

    /// The default schedule: `j = 4..=16` at 256 bits.
    pub fn standard(target_m: u32) -> Self {
        Self::dyadic(target_m, 4..=16, 256)
    }

    /// The schedule used for the limits of `f(q) ∓ b(q)` at even-order roots,
    /// where heavy cancellation calls for more bits.
    pub fn watson(k: u32) -> Self {
        Self::dyadic(2 * k, 3..=9, 768)
    }

    pub fn with_power(mut self, a: i64) -> Self {
        self.target_power = a;
        self
    }

    fn validate(&self) -> Result<(), RootsError> {
        if self.rho_values.is_empty() {
            return Err(RootsError::Precondition("schedule has no sample points".into()));
        }
        let one = BigFloat::one();
        for w in self.rho_values.windows(2) {
            if w[0].cmp_value(&w[1]) != std::cmp::Ordering::Less {
                return Err(RootsError::Precondition("rho values must increase strictly".into()));
            }
        }
        for r in &self.rho_values {
            if r.signum() <= 0 || r.cmp_value(&one) != std::cmp::Ordering::Less {
                return Err(RootsError::Precondition("rho values must lie in (0, 1)".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RadialSample {
    pub rho: BigFloat,
    pub value: BigComplex,
}

#[derive(Clone, Debug)]
pub struct RadialReport {
    pub target_m: u32,
    pub samples: Vec<RadialSample>,
    pub estimate: BigComplex,
    /// Last successive difference of the extrapolated values.
    pub error_bound: BigFloat,
    /// False when there were too few samples for the bound to mean anything.
    pub reliable: bool,
}

impl RadialReport {
    pub fn to_json(&self) -> serde_json::Value {
        let digits = 30;
        json!({
            "target_m": self.target_m,
            "samples": self.samples.iter().map(|s| json!({
                "rho": s.rho.to_sci_string(digits),
                "value_re": s.value.re.to_sci_string(digits),
                "value_im": s.value.im.to_sci_string(digits),
            })).collect::<Vec<_>>(),
            "estimate": {
                "re": self.estimate.re.to_sci_string(digits),
                "im": self.estimate.im.to_sci_string(digits),
            },
            "error_bound": self.error_bound.to_sci_string(6),
            "reliable": self.reliable,
            "diverging": self.diverging(),
        })
    }

    /// Heuristic divergence flag: each of the last three samples is at least
    /// 1.5 times the previous one in magnitude.
    pub fn diverging(&self) -> bool {
        let n = self.samples.len();
        n >= 3
            && self.samples[n - 3..].windows(2).all(|w| {
                w[1].value.abs().cmp_value(&w[0].value.abs().mul_i64(3).ldexp(-1)) != std::cmp::Ordering::Less
            })
    }

    /// `|estimate − x|`, for comparisons against exact values.
    pub fn gap_to(&self, x: &BigComplex) -> BigFloat {
        (&self.estimate - x).abs()
    }

    /// `gap < error_bound` (a zero gap always passes).
    pub fn within_bound(&self, x: &BigComplex) -> bool {
        let gap = self.gap_to(x);
        gap.is_zero() || gap.cmp_value(&self.error_bound) == std::cmp::Ordering::Less
    }
}

/// Evaluate along the schedule and extrapolate to `ρ = 1`.
///
/// With `h_j = 1 − ρ_j`, successive samples are combined as
/// `(h_{j−1} v_j − h_j v_{j−1}) / (h_{j−1} − h_j)`, which removes the
/// linear term of an expansion in `h`.
pub fn radial_limit<F>(evaluator: F, sched: &RadialSchedule) -> Result<RadialReport, RootsError>
where
    F: Fn(&BigComplex) -> Result<BigComplex, SeriesError> + Sync,
{
    sched.validate()?;
    let prec = sched.precision_bits;
    let dir = BigComplex::zeta(sched.target_m as u64, sched.target_power, prec + 16);
    let values: Vec<BigComplex> = sched
        .rho_values
        .par_iter()
        .map(|rho| evaluator(&dir.scale(rho).with_prec(prec)))
        .collect::<Result<_, _>>()?;
    let samples: Vec<RadialSample> = sched
        .rho_values
        .iter()
        .zip(&values)
        .map(|(rho, v)| RadialSample { rho: rho.clone(), value: v.clone() })
        .collect();
    let one = BigFloat::one();
    let h: Vec<BigFloat> = sched.rho_values.iter().map(|r| one.sub(r).with_prec(prec)).collect();
    let n = values.len();
    let (estimate, error_bound, reliable) = match n {
        1 => (values[0].clone(), values[0].abs(), false),
        2 => (richardson(&h, &values, 1), (&values[1] - &values[0]).abs(), false),
        _ => {
            let last = richardson(&h, &values, n - 1);
            let prev = richardson(&h, &values, n - 2);
            let err = (&last - &prev).abs();
            (last, err, true)
        }
    };
    Ok(RadialReport { target_m: sched.target_m, samples, estimate, error_bound, reliable })
}

fn richardson(h: &[BigFloat], v: &[BigComplex], j: usize) -> BigComplex {
    let num = &v[j].scale(&h[j - 1]) - &v[j - 1].scale(&h[j]);
    let den = h[j - 1].sub(&h[j]);
    num.scale(&BigFloat::one().div(&den))
}

/// Numeric functions the CLI and the checks can approach radially.
#[derive(Clone, Debug)]
pub enum RadialTarget {
    F,
    B,
    G3 { z: BigComplex },
    U { k: usize, z: BigComplex },
    UTilde { k: usize, z: BigComplex },
    /// `f(q) − (−1)^k b(q)`
    Watson { k: u32 },
}

impl RadialTarget {
    pub fn evaluate(&self, q: &BigComplex, ctl: SumControl) -> Result<BigComplex, SeriesError> {
        match self {
            RadialTarget::F => numeric::f_mock(q, ctl),
            RadialTarget::B => numeric::b_modular(q, ctl),
            RadialTarget::G3 { z } => numeric::g3_forward(z, q, ctl),
            RadialTarget::U { k, z } => numeric::strong_unimodal(*k, z, q, ctl),
            RadialTarget::UTilde { k, z } => numeric::unimodal(*k, z, q, ctl),
            RadialTarget::Watson { k } => {
                let f = numeric::f_mock(q, ctl)?;
                let b = numeric::b_modular(q, ctl)?;
                Ok(if k % 2 == 0 { &f - &b } else { &f + &b })
            }
        }
    }
}

/// Radial limit of a catalog target.
pub fn radial_target(target: &RadialTarget, sched: &RadialSchedule) -> Result<RadialReport, RootsError> {
    let ctl = SumControl::with_prec(sched.precision_bits);
    radial_limit(|q| target.evaluate(q, ctl), sched)
}

/// The limit of `f(q) − (−1)^k b(q)` at `ζ_{2k}` against two closed forms.
#[derive(Clone, Debug)]
pub struct WatsonReport {
    pub k: u32,
    pub lhs: RadialReport,
    /// `−4U(−1, ζ_{2k})`, from the finite formula for `U_1(−z, ζ_m)` at `z = 1`.
    pub printed_rhs: BigComplex,
    /// `−4U(1, ζ_{2k})`, the same formula at `z = −1`.
    pub alternative_rhs: BigComplex,
}

impl WatsonReport {
    pub fn printed_holds(&self) -> bool {
        self.lhs.within_bound(&self.printed_rhs)
    }

    pub fn alternative_holds(&self) -> bool {
        self.lhs.within_bound(&self.alternative_rhs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |x: &BigComplex| json!({ "re": x.re.to_sci_string(20), "im": x.im.to_sci_string(20) });
        json!({
            "k": self.k,
            "radial": self.lhs.to_json(),
            "printed_rhs": s(&self.printed_rhs),
            "printed_gap": self.lhs.gap_to(&self.printed_rhs).to_sci_string(6),
            "alternative_rhs": s(&self.alternative_rhs),
            "alternative_gap": self.lhs.gap_to(&self.alternative_rhs).to_sci_string(6),
        })
    }
}

pub fn watson_limit_check(k: u32, sched: &RadialSchedule) -> Result<WatsonReport, RootsError> {
    if k == 0 {
        return Err(RootsError::Precondition("k must be at least 1".into()));
    }
    if sched.target_m != 2 * k {
        return Err(RootsError::Precondition(format!("schedule must target zeta_{}", 2 * k)));
    }
    let lhs = radial_target(&RadialTarget::Watson { k }, sched)?;
    let prec = sched.precision_bits;
    let four = BigComplex::from_i64(-4);
    let printed = uk_at_root(1, &BigComplex::from_i64(1).with_prec(prec), 2 * k)?;
    let alternative = uk_at_root(1, &BigComplex::from_i64(-1).with_prec(prec), 2 * k)?;
    Ok(WatsonReport { k, lhs, printed_rhs: &four * &printed, alternative_rhs: &four * &alternative })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_evaluator() {
        let c = BigComplex::from_f64(1.5, -2.0, 128);
        let r = radial_limit(|_| Ok(c.clone()), &RadialSchedule::dyadic(3, 4..=8, 128)).unwrap();
        assert!(r.error_bound.is_zero());
        assert!(r.estimate.close_to(&c));
        assert!(r.reliable);
    }

    #[test]
    fn geometric_toward_one() {
        // Σ_{n≥1} (q/2)^n = (q/2)/(1 − q/2) → 1
        let sched = RadialSchedule::dyadic(1, 4..=16, 128);
        let r = radial_limit(
            |q| {
                let h = q.scale(&BigFloat::one().ldexp(-1));
                Ok(h.div(&(&BigComplex::from_i64(1) - &h)).unwrap())
            },
            &sched,
        )
        .unwrap();
        assert!(r.within_bound(&BigComplex::from_i64(1)));
        assert!(r.gap_to(&BigComplex::from_i64(1)).to_f64() < 1e-9);
    }

    #[test]
    fn single_sample_is_unreliable() {
        let sched = RadialSchedule { target_m: 3, target_power: 1, rho_values: vec![dyadic_rho(1)], precision_bits: 64 };
        let r = radial_limit(|q| Ok(q.clone()), &sched).unwrap();
        assert!(!r.reliable);
    }

    #[test]
    fn pole_is_flagged_divergent() {
        // 1/(1 − q) along ρ_j = 1 − 2^{−j} doubles at every step
        let sched = RadialSchedule::dyadic(1, 4..=10, 128);
        let r = radial_limit(|q| Ok((&BigComplex::from_i64(1) - q).inv().unwrap()), &sched).unwrap();
        assert!(r.diverging());
        let c = radial_limit(|q| Ok(q.clone()), &sched).unwrap();
        assert!(!c.diverging());
    }

    #[test]
    fn rejects_bad_schedules() {
        let mut s = RadialSchedule::standard(3);
        s.rho_values.reverse();
        assert!(radial_limit(|q| Ok(q.clone()), &s).is_err());
    }
}
