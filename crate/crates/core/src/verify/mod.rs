//! The identity-suite harness.
//!
//! Every catalog entry binds one statement to a comparison: coefficient-wise
//! equality of exact series, equality in a cyclotomic field, agreement of
//! high-precision numbers within a tolerance, strict improvement of a trend,
//! or a radial estimate against its own extrapolation bound. A failed report
//! always names the first place where the two sides part ways.
//!
//! Suites whose id ends in `_CORRECTED` run the repaired form of a statement
//! that fails as printed; they are listed next to the original.

mod suites;

use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rational_to_string, BiLaurent, BigComplex, BigFloat, CycloElem, LaurentPoly, Rational, Ring, TruncatedSeries};
use crate::error::VerifyError;

/// How the two sides of a suite are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    ExactSeries,
    ExactCyclo,
    Numeric,
}

/// What counts as a pass for a numeric suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Exact equality of every compared entry.
    Equality,
    /// Relative gap `|l − r| / max(1, |r|)` below the tolerance.
    Tolerance,
    /// Each metric sequence strictly decreases.
    MonotoneTrend,
    /// Gap between a radial estimate and its target below the reported
    /// extrapolation error.
    ExtrapolationBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub id: &'static str,
    pub strategy: Strategy,
    pub criterion: Criterion,
    /// Order used when the caller gives none; 0 for suites that take no order.
    pub default_order: usize,
    pub min_order: usize,
    pub tolerance: Option<f64>,
    pub statement: &'static str,
}

impl Suite {
    pub fn is_exact(&self) -> bool {
        self.strategy != Strategy::Numeric
    }

    /// Whether the suite's work depends on the order argument.
    pub fn uses_order(&self) -> bool {
        self.default_order > 0
    }
}

const fn exact_series(id: &'static str, min_order: usize, statement: &'static str) -> Suite {
    Suite {
        id,
        strategy: Strategy::ExactSeries,
        criterion: Criterion::Equality,
        default_order: 30,
        min_order,
        tolerance: None,
        statement,
    }
}

const fn exact_cyclo(id: &'static str, default_order: usize, min_order: usize, statement: &'static str) -> Suite {
    Suite {
        id,
        strategy: Strategy::ExactCyclo,
        criterion: Criterion::Equality,
        default_order,
        min_order,
        tolerance: None,
        statement,
    }
}

const fn numeric(id: &'static str, criterion: Criterion, tolerance: Option<f64>, statement: &'static str) -> Suite {
    Suite { id, strategy: Strategy::Numeric, criterion, default_order: 0, min_order: 0, tolerance, statement }
}

pub const NUMERIC_TOLERANCE: f64 = 1e-15;
pub const DEFAULT_PRECISION: u32 = 256;
pub const RUN_ALL_MIN_ORDER: usize = 10;

/// The closed catalog, sorted by id.
///
/// Minimum orders are the smallest truncation at which every summand family
/// in the suite has reached at least its second contributing coefficient.
pub static CATALOG: &[Suite] = &[
    exact_cyclo("CF", 0, 0, "Euler's continued fraction equals the partial sums and gives a finite form at roots of unity"),
    exact_series("CN", 2, "c_n(z) from nested subpartition sums equals the q-bracket coefficients, n <= 8"),
    numeric("COR1_TREND", Criterion::MonotoneTrend, None, "<j_z>_q / (z(1-q) g3(1/z,1/q)) -> 1 as |z| -> oo and <j_z>_q / (q g3(1/z,1/q)/z) -> 1 as |z| -> 0"),
    numeric("COR2", Criterion::Tolerance, Some(NUMERIC_TOLERANCE), "g3(z, zeta_m) = (z-1)/z sum_k U_k(-z, zeta_m) z^k zeta_m^-k for |z| < 1"),
    numeric("COR_UK", Criterion::Tolerance, Some(NUMERIC_TOLERANCE), "g3(1/z, 1/q) = z/(1-z) sum_k U~_k(z,q) z^-k q^k for |q| < 1 < |z|"),
    exact_series("CRANK_GF", 2, "the q^n coefficient of C(z;q) is sum over partitions of n of z^crank, 2 <= n <= 12"),
    exact_series("EQ12", 6, "1/((zq;q)(q/z;q)) = 2 - z - 1/z + (z + 1/z) U~_1 - U~_2"),
    exact_cyclo("EQ13", 30, 8, "2 - U~_2(i,q) = 1/((iq;q)(-iq;q)) = 1/(-q^2;q^2)"),
    exact_series("EQ15", 6, "z q U~(z,q) = z(1-z) S_1 - (1-z) S_2"),
    exact_series("EQ16", 2, "(z;q)_n (q/z;q)_n = q^(n^2) (1/z;1/q)_n (z/q;1/q)_n and (z;q)_n / (1/z;1/q)_n = (-1)^n z^n q^(n(n-1)/2)"),
    numeric("EQ17", Criterion::Tolerance, Some(NUMERIC_TOLERANCE), "the two-term expression equals g3(1/z, 1/q)"),
    exact_series("EQ22", 6, "(zq;q)(q/z;q) = 1 - (z + 1/z) U_1(z,q) + U_2(z,q)"),
    exact_series("EQ22_CORRECTED", 6, "(zq;q)(q/z;q) = 1 - (z + 1/z) U_1(-z,q) + U_2(-z,q)"),
    exact_cyclo("EQ23", 30, 8, "1 + U_2(i,q) = (iq;q)(-iq;q) = (-q^2;q^2)"),
    exact_cyclo("EQ24", 30, 8, "U_2(i,q) (U~_2(i,q) - 2) = 1 - U~_2(i,q) and U~_2(i,q)(1 + U_2(i,q)) = 1 + 2 U_2(i,q)"),
    exact_cyclo("EQ25", 0, 0, "finite formula for U_k(-z, zeta_m) equals the periodic-sum route"),
    exact_cyclo("EX1EX2", 0, 0, "the two printed finite formulas for f(zeta_m), m odd, agree with each other and with the radial-limit form"),
    exact_cyclo("EX1EX2_CORRECTED", 0, 0, "the reindexed finite formulas for f(zeta_m), m odd, agree with the radial-limit form"),
    numeric("GAMMA_TREND", Criterion::MonotoneTrend, None, "gamma_n - gamma_(n-1) ~ c_n / z and the two-branch asymptotic of gamma_n"),
    exact_series("JZ", 2, "sum over partitions of n of j_z(lambda) equals the coefficients of 1/j(z;q), n <= 10"),
    exact_series("LEM4", 6, "<j_z>_q = 1 + (z + q/z) S_1 - q S_2"),
    exact_series("LEM4_CORRECTED", 6, "q <j_z>_q = q + (z + q/z) S_1 - S_2"),
    exact_cyclo("LEM5", 0, 0, "closed form of F(mk + r) for periodic factors equals direct summation"),
    numeric("RENORM", Criterion::Tolerance, Some(NUMERIC_TOLERANCE), "the |q| > 1 branch of g3 as printed matches the inverted first sum and the continued forward sum"),
    numeric("RENORM_CORRECTED", Criterion::Tolerance, Some(NUMERIC_TOLERANCE), "the |q| > 1 branch with z and 1/z exchanged matches the continued forward sum"),
    exact_series("THM1", 6, "<j_z>_q = 1 + [z(1-q) + q/z] S_1 + z q^2/(1-z) U~(z,q)"),
    exact_series("THM1_CORRECTED", 6, "<j_z>_q = 1 + S_1/z + z/(1-z) U~(z,q)"),
    exact_cyclo("THM2", 0, 0, "the finite formula for g3(z, zeta_m) equals the two reindexed forms and the periodic-sum route"),
    exact_series("UNIMODAL_ORACLE", 6, "U~_k and U_k coefficients equal brute-force counts of unimodal sequences, k <= 3, weight <= 12"),
    numeric("WATSON", Criterion::ExtrapolationBound, None, "lim f(q) - (-1)^k b(q) at zeta_2k equals -4 U(-1, zeta_2k)"),
    numeric("WATSON_CORRECTED", Criterion::ExtrapolationBound, None, "lim f(q) - (-1)^k b(q) at zeta_2k equals -4 U(1, zeta_2k)"),
    exact_cyclo("ZETA5", 0, 0, "f(zeta_5) f(zeta_5^2) f(zeta_5^3) f(zeta_5^4) = 256/81 and the relations zeta_5^i f(zeta_5^i) = zeta_5^-i f(zeta_5^-i)"),
];

pub fn find_suite(id: &str) -> Result<&'static Suite, VerifyError> {
    CATALOG.iter().find(|s| s.id.eq_ignore_ascii_case(id)).ok_or_else(|| VerifyError::UnknownSuite(id.to_string()))
}

/// The value compared at one location of an exact suite.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Rational(Rational),
    Laurent(LaurentPoly),
    BiLaurent(BiLaurent),
    Cyclo(CycloElem),
}

impl ExactValue {
    fn bumped(&self) -> Self {
        match self {
            ExactValue::Rational(r) => ExactValue::Rational(r + Rational::one()),
            ExactValue::Laurent(p) => ExactValue::Laurent(p.clone() + LaurentPoly::one()),
            ExactValue::BiLaurent(p) => ExactValue::BiLaurent(p.clone() + BiLaurent::one()),
            ExactValue::Cyclo(c) => ExactValue::Cyclo(c.clone() + CycloElem::one()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ExactValue::Rational(r) => rational_to_string(r),
            ExactValue::Laurent(p) => p.to_string_pretty(),
            ExactValue::BiLaurent(p) => format!("{p:?}"),
            ExactValue::Cyclo(c) => c.to_string_pretty(),
        }
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Rational(r)
    }
}

impl From<LaurentPoly> for ExactValue {
    fn from(p: LaurentPoly) -> Self {
        ExactValue::Laurent(p)
    }
}

impl From<BiLaurent> for ExactValue {
    fn from(p: BiLaurent) -> Self {
        ExactValue::BiLaurent(p)
    }
}

impl From<CycloElem> for ExactValue {
    fn from(c: CycloElem) -> Self {
        ExactValue::Cyclo(c)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ExactEntry {
    pub location: String,
    pub left: ExactValue,
    pub right: ExactValue,
}

#[derive(Clone, Debug)]
pub(crate) struct NumericEntry {
    pub location: String,
    pub left: BigComplex,
    pub right: BigComplex,
}

/// Metric values that should strictly decrease from first to last.
#[derive(Clone, Debug)]
pub(crate) struct Trend {
    pub label: String,
    pub points: Vec<(String, BigFloat)>,
}

#[derive(Clone, Debug)]
pub(crate) struct BoundEntry {
    pub location: String,
    pub estimate: BigComplex,
    pub target: BigComplex,
    pub bound: BigFloat,
}

pub(crate) enum Comparison {
    Exact(Vec<ExactEntry>),
    Numeric(Vec<NumericEntry>),
    Trend(Vec<Trend>),
    Bound(Vec<BoundEntry>),
}

pub(crate) struct Outcome {
    pub comparison: Comparison,
    pub notes: Vec<String>,
}

impl Outcome {
    fn new(comparison: Comparison) -> Self {
        Outcome { comparison, notes: Vec::new() }
    }

    fn with_notes(mut self, notes: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(notes);
        self
    }
}

/// Where and how a deliberate error is planted in an exact suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Add 1 to the left side of the entry with this index.
    Entry(usize),
    /// Pick the entry and side from a seeded generator, never past the first
    /// genuine discrepancy (so the planted error is the one reported).
    Seeded(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub order: Option<usize>,
    pub precision_bits: u32,
    pub fault: Option<Fault>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { order: None, precision_bits: DEFAULT_PRECISION, fault: None }
    }
}

impl RunOptions {
    pub fn order(order: usize) -> Self {
        RunOptions { order: Some(order), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub passed: bool,
    pub strategy: Strategy,
    pub criterion: Criterion,
    pub order: Option<usize>,
    pub tolerance: Option<String>,
    pub precision_bits: Option<u32>,
    /// Number of compared entries (or trend points, or radial targets).
    pub checked: usize,
    /// Largest gap seen, for numeric suites.
    pub max_gap: Option<String>,
    pub discrepancy: Option<Witness>,
    /// Location of a planted fault, when one was requested.
    pub injected: Option<String>,
    /// Set when the suite could not run to completion.
    pub error: Option<String>,
    pub runtime_ms: u64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn run_suite(id: &str, order: Option<usize>) -> Result<SuiteReport, VerifyError> {
    run_suite_with(id, RunOptions { order, ..Default::default() })
}

pub fn run_suite_with(id: &str, opts: RunOptions) -> Result<SuiteReport, VerifyError> {
    let suite = find_suite(id)?;
    let order = if suite.uses_order() { Some(opts.order.unwrap_or(suite.default_order)) } else { None };
    if let Some(n) = order {
        if n < suite.min_order {
            return Err(VerifyError::OrderTooLow { id: suite.id.to_string(), order: n, min: suite.min_order });
        }
    }
    if opts.fault.is_some() && !suite.is_exact() {
        return Err(VerifyError::Execution {
            id: suite.id.to_string(),
            message: "fault injection applies to exact suites only".into(),
        });
    }
    let start = Instant::now();
    let outcome = suites::execute(suite.id, order.unwrap_or(0), opts.precision_bits);
    let mut report = SuiteReport {
        id: suite.id.to_string(),
        passed: false,
        strategy: suite.strategy,
        criterion: suite.criterion,
        order,
        tolerance: suite.tolerance.map(|t| format!("{t:e}")),
        precision_bits: (!suite.is_exact()).then_some(opts.precision_bits),
        checked: 0,
        max_gap: None,
        discrepancy: None,
        injected: None,
        error: None,
        runtime_ms: 0,
        notes: Vec::new(),
    };
    match outcome {
        Ok(outcome) => {
            report.notes = outcome.notes;
            judge(&mut report, outcome.comparison, suite.tolerance, opts.fault);
        }
        Err(message) => {
            report.discrepancy = Some(Witness { location: "execution".into(), left: message.clone(), right: String::new() });
            report.error = Some(message);
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn judge(report: &mut SuiteReport, comparison: Comparison, tol: Option<f64>, fault: Option<Fault>) {
    match comparison {
        Comparison::Exact(mut entries) => {
            report.checked = entries.len();
            if let Some(f) = fault {
                report.injected = plant(&mut entries, f);
            }
            report.discrepancy = entries.iter().find(|e| e.left != e.right).map(|e| Witness {
                location: e.location.clone(),
                left: e.left.render(),
                right: e.right.render(),
            });
            report.passed = report.discrepancy.is_none() && !entries.is_empty();
        }
        Comparison::Numeric(entries) => {
            let tol = tol.expect("numeric identity suites carry a tolerance");
            report.checked = entries.len();
            let mut worst: Option<BigFloat> = None;
            for e in &entries {
                let gap = relative_gap(&e.left, &e.right);
                if report.discrepancy.is_none() && gap.to_f64() >= tol {
                    report.discrepancy = Some(Witness {
                        location: format!("{} (gap {})", e.location, gap.to_sci_string(6)),
                        left: e.left.to_string_digits(25),
                        right: e.right.to_string_digits(25),
                    });
                }
                if worst.as_ref().is_none_or(|w| gap.cmp_value(w).is_gt()) {
                    worst = Some(gap);
                }
            }
            report.max_gap = worst.map(|w| w.to_sci_string(6));
            report.passed = report.discrepancy.is_none() && !entries.is_empty();
        }
        Comparison::Trend(trends) => {
            report.checked = trends.iter().map(|t| t.points.len()).sum();
            for t in &trends {
                let summary = t.points.iter().map(|(at, v)| format!("{at}: {}", v.to_sci_string(6))).collect::<Vec<_>>();
                report.notes.push(format!("{}: {}", t.label, summary.join(", ")));
                if report.discrepancy.is_some() {
                    continue;
                }
                if let Some(w) = t.points.windows(2).find(|w| w[1].1.cmp_value(&w[0].1).is_ge()) {
                    report.discrepancy = Some(Witness {
                        location: format!("{}: {} -> {}", t.label, w[0].0, w[1].0),
                        left: w[0].1.to_sci_string(10),
                        right: w[1].1.to_sci_string(10),
                    });
                }
            }
            report.passed = report.discrepancy.is_none() && trends.iter().all(|t| t.points.len() >= 2);
        }
        Comparison::Bound(entries) => {
            report.checked = entries.len();
            for e in &entries {
                let gap = (&e.estimate - &e.target).abs();
                let ok = gap.is_zero() || gap.cmp_value(&e.bound).is_lt();
                report.notes.push(format!(
                    "{}: gap {} vs bound {}",
                    e.location,
                    gap.to_sci_string(6),
                    e.bound.to_sci_string(6)
                ));
                if !ok && report.discrepancy.is_none() {
                    report.discrepancy = Some(Witness {
                        location: e.location.clone(),
                        left: e.estimate.to_string_digits(20),
                        right: e.target.to_string_digits(20),
                    });
                }
            }
            report.passed = report.discrepancy.is_none() && !entries.is_empty();
        }
    }
}

/// `|l − r| / max(1, |r|)`
pub fn relative_gap(l: &BigComplex, r: &BigComplex) -> BigFloat {
    let scale = r.abs();
    let gap = (l - r).abs();
    if scale.cmp_value(&BigFloat::one()).is_gt() {
        gap.div(&scale)
    } else {
        gap
    }
}

fn plant(entries: &mut [ExactEntry], fault: Fault) -> Option<String> {
    if entries.is_empty() {
        return None;
    }
    let (index, left_side) = match fault {
        Fault::Entry(i) => (i.min(entries.len() - 1), true),
        Fault::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let first_bad = entries.iter().position(|e| e.left != e.right).unwrap_or(entries.len() - 1);
            (rng.gen_range(0..=first_bad), rng.gen_bool(0.5))
        }
    };
    let e = &mut entries[index];
    if left_side {
        e.left = e.left.bumped();
    } else {
        e.right = e.right.bumped();
    }
    Some(e.location.clone())
}

/// Run every suite whose id contains `filter` (all of them for `None`),
/// concurrently, reporting in id order.
pub fn run_all(order: usize, filter: Option<&str>) -> Result<Vec<SuiteReport>, VerifyError> {
    if order < RUN_ALL_MIN_ORDER {
        return Err(VerifyError::OrderTooLow { id: "*".into(), order, min: RUN_ALL_MIN_ORDER });
    }
    let ids: Vec<&str> = CATALOG
        .iter()
        .filter(|s| filter.is_none_or(|f| s.id.to_ascii_uppercase().contains(&f.to_ascii_uppercase())))
        .map(|s| s.id)
        .collect();
    let mut reports = ids
        .par_iter()
        .map(|id| run_suite_with(id, RunOptions::order(order)))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

/// Convenience for comparing aligned exact series coefficient by coefficient.
pub(crate) fn series_entries<R: Ring + Into<ExactValue>>(
    tag: &str,
    left: &TruncatedSeries<R>,
    right: &TruncatedSeries<R>,
) -> Result<Vec<ExactEntry>, String> {
    let (l, r) = TruncatedSeries::align(left, right).map_err(|e| e.to_string())?;
    let n = l.order().min(r.order());
    let prefix = if tag.is_empty() { String::new() } else { format!("{tag} ") };
    Ok((0..=n)
        .map(|k| ExactEntry {
            location: format!("{prefix}q^{k}"),
            left: l.coeff(k).clone().into(),
            right: r.coeff(k).clone().into(),
        })
        .collect())
}
