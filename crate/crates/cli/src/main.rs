//! `qlab`: expansions, evaluations, root-of-unity values, radial limits,
//! enumeration tables and identity checks, all as JSON on stdout.
//!
//! Exit status: 0 on success (or all suites passed), 1 when a check fails or
//! a radial approach diverges, 2 on usage and execution errors.

mod zexpr;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qlab_core::algebra::rational_to_string;
use qlab_core::partitions::{crank, crank_sum, partitions_of, unimodal_counts};
use qlab_core::roots::{
    f_at_odd_root, f_at_root_power, g3_at_root, uk_at_root, FRootForm, RadialReport, RadialSchedule, RadialTarget,
};
use qlab_core::series::{eval_handle, series_to_json, SeriesHandle};
use qlab_core::verify::{run_all, run_suite_with, RunOptions, SuiteReport, CATALOG};
use qlab_core::{BigComplex, BigFloat, CycloElem, LaurentPoly};

#[derive(Parser)]
#[command(name = "qlab", version, about = "Exact q-series laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a catalog series as a truncated q-series with coefficients in z.
    Expand {
        /// f, b, g3_forward, g3_inverted, u, utilde, crank_gf, jbracket, triple_product
        series: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Fold of the peak for u and utilde.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Evaluate a catalog series numerically at a point (z, q) with |q| < 1.
    Eval {
        series: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 60)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
    /// Exact value at q = ζ_m.
    Root(RootArgs),
    /// Radial limit q = ρ ζ_m^a, ρ → 1⁻, with an extrapolation error bound.
    Radial(RadialArgs),
    /// Enumeration tables.
    Enumerate {
        #[command(subcommand)]
        table: Table,
    },
    /// Run identity-checking suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RootSeries {
    G3,
    U,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Ex1,
    Ex2,
    Ex1Corrected,
    Ex2Corrected,
    Radial,
}

impl From<FormArg> for FRootForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Ex1 => FRootForm::Ex1,
            FormArg::Ex2 => FRootForm::Ex2,
            FormArg::Ex1Corrected => FRootForm::Ex1Corrected,
            FormArg::Ex2Corrected => FRootForm::Ex2Corrected,
            FormArg::Radial => FRootForm::RadialLimit,
        }
    }
}

#[derive(Args)]
struct RootArgs {
    #[arg(value_enum)]
    series: RootSeries,
    #[arg(long)]
    m: u32,
    /// Evaluation point: a rational, a+bi, or zeta(m)^k terms.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// For f: evaluate at ζ_m^power.
    #[arg(long, default_value_t = 1)]
    power: i64,
    /// For f: one specific finite formula instead of the checked common value.
    #[arg(long, value_enum)]
    form: Option<FormArg>,
    /// Emit exact cyclotomic coordinates alongside the numeric value.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 128)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum RadialSeries {
    F,
    B,
    G3,
    U,
    Utilde,
    Watson,
}

#[derive(Args)]
struct RadialArgs {
    #[arg(value_enum)]
    series: RadialSeries,
    /// Approach ζ_m.
    #[arg(long)]
    zeta: u32,
    /// Approach ζ_m^power instead.
    #[arg(long, default_value_t = 1)]
    power: i64,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Comma-separated increasing radii in (0, 1); default 1 − 2^{−j}, j = 4..16.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long, default_value_t = 256)]
    precision: u32,
}

#[derive(Subcommand)]
enum Table {
    /// Partitions of n with their cranks.
    Partitions {
        #[arg(long)]
        n: i64,
    },
    /// Σ_{λ⊢n} z^{crank(λ)}.
    Crank {
        #[arg(long)]
        n: u32,
    },
    /// Unimodal sequence counts by rank and weight.
    Unimodal {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        strong: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single suite by id.
    #[arg(long, conflicts_with_all = ["all", "filter"])]
    suite: Option<String>,
    /// Run every suite.
    #[arg(long)]
    all: bool,
    /// Run suites whose id contains this substring.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long)]
    order: Option<usize>,
    /// Perturb the left side of entry N of an exact suite.
    #[arg(long)]
    inject: Option<usize>,
    /// List the catalog instead of running it.
    #[arg(long)]
    list: bool,
}

/// Outcome of a verb: the JSON to print and the exit status.
struct Done {
    out: Value,
    status: u8,
}

impl Done {
    fn ok(out: Value) -> Self {
        Done { out, status: 0 }
    }
}

type CmdResult = Result<Done, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand { series, order, k } => expand(&series, order, k),
        Command::Eval { series, z, q, order, k, precision } => eval(&series, &z, &q, order, k, precision),
        Command::Root(a) => root(&a),
        Command::Radial(a) => radial(&a),
        Command::Enumerate { table } => enumerate(table),
        Command::Verify(a) => verify(&a),
    };
    match result {
        Ok(done) => {
            let text = serde_json::to_string_pretty(&done.out).expect("JSON values serialize");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(done.status)
        }
        Err(e) => {
            eprintln!("qlab: {e}");
            ExitCode::from(2)
        }
    }
}

fn digits_for(bits: u32) -> usize {
    (bits as usize * 3 / 10).max(6)
}

fn complex_json(x: &BigComplex, digits: usize) -> Value {
    json!({ "re": x.re.to_sci_string(digits), "im": x.im.to_sci_string(digits) })
}

fn cyclo_json(x: &CycloElem) -> Value {
    let mut v = json!({
        "conductor": x.conductor(),
        "coords": x.coords().iter().map(rational_to_string).collect::<Vec<_>>(),
        "pretty": x.to_string_pretty(),
    });
    if let Some(r) = x.as_rational() {
        v["rational"] = rational_to_string(&r).into();
    }
    v
}

fn poly_json(p: &LaurentPoly) -> Value {
    p.terms().map(|(e, c)| (e.to_string(), Value::from(rational_to_string(c)))).collect::<serde_json::Map<_, _>>().into()
}

fn parse_z(s: &str) -> Result<CycloElem, String> {
    zexpr::parse_z(s).map_err(|e| format!("cannot parse `{s}`: {e}"))
}

fn expand(name: &str, order: usize, k: usize) -> CmdResult {
    let h = SeriesHandle::parse(name, k).map_err(|e| format!("{e}; known series: {}", SeriesHandle::NAMES.join(", ")))?;
    let s = h.expand(order).map_err(|e| e.to_string())?;
    let mut out = series_to_json(&s);
    out["series"] = h.to_string().into();
    Ok(Done::ok(out))
}

fn eval(name: &str, z: &str, q: &str, order: usize, k: usize, precision: u32) -> CmdResult {
    let h = SeriesHandle::parse(name, k).map_err(|e| e.to_string())?;
    let z0 = parse_z(z)?.embed(precision);
    let q0 = parse_z(q)?.embed(precision);
    let v = eval_handle(h, &z0, &q0, order).map_err(|e| e.to_string())?;
    let digits = digits_for(precision);
    Ok(Done::ok(json!({
        "series": h.to_string(),
        "order": order,
        "value": complex_json(&v.value, digits),
        "tail_estimate": v.tail_estimate.to_sci_string(6),
    })))
}

fn root(a: &RootArgs) -> CmdResult {
    let value = match a.series {
        RootSeries::G3 => {
            let z = parse_z(a.z.as_deref().ok_or("g3 needs --z")?)?;
            g3_at_root(&z, a.m)
        }
        // the finite formula computes U_k(−z, ζ_m)
        RootSeries::U => {
            let z = parse_z(a.z.as_deref().ok_or("u needs --z")?)?;
            uk_at_root(a.k, &-z, a.m)
        }
        RootSeries::F => match a.form {
            Some(form) if a.power == 1 => f_at_odd_root(a.m, form.into()),
            Some(_) => return Err("--form applies to ζ_m itself; drop --power".into()),
            None => f_at_root_power(a.m, a.power),
        },
    }
    .map_err(|e| e.to_string())?;
    let mut out = json!({
        "m": a.m,
        "value": complex_json(&value.embed(a.precision), digits_for(a.precision)),
    });
    if let Some(z) = &a.z {
        out["z"] = z.clone().into();
    }
    if a.exact {
        out["exact"] = cyclo_json(&value);
    }
    Ok(Done::ok(out))
}

fn schedule(a: &RadialArgs) -> Result<RadialSchedule, String> {
    let mut s = match &a.rho {
        None => RadialSchedule::standard(a.zeta),
        Some(list) => {
            let rho_values = list
                .split(',')
                .map(|r| zexpr::parse_rational(r).map(|r| BigFloat::from_rational(&r, a.precision + 16)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("bad --rho: {e}"))?;
            RadialSchedule { target_m: a.zeta, target_power: 1, rho_values, precision_bits: a.precision }
        }
    };
    s.precision_bits = a.precision;
    Ok(s.with_power(a.power))
}

fn radial(a: &RadialArgs) -> CmdResult {
    if a.zeta == 0 {
        return Err("--zeta must be positive".into());
    }
    let sched = schedule(a)?;
    let z = || -> Result<CycloElem, String> { parse_z(a.z.as_deref().ok_or("this series needs --z")?) };
    let bits = a.precision;
    // exact reference values where a finite formula exists
    let (target, reference) = match a.series {
        RadialSeries::F => {
            let r = (a.zeta % 2 == 1).then(|| f_at_root_power(a.zeta, a.power)).transpose().map_err(|e| e.to_string())?;
            (RadialTarget::F, r)
        }
        RadialSeries::B => (RadialTarget::B, None),
        RadialSeries::G3 => {
            let z = z()?;
            let r = (a.power == 1).then(|| g3_at_root(&z, a.zeta)).transpose().map_err(|e| e.to_string())?;
            (RadialTarget::G3 { z: z.embed(bits) }, r)
        }
        RadialSeries::U | RadialSeries::Utilde => {
            let z = z()?;
            let strong = matches!(a.series, RadialSeries::U);
            let r = (strong && a.power == 1)
                .then(|| uk_at_root(a.k as u32, &-z.clone(), a.zeta))
                .transpose()
                .map_err(|e| e.to_string())?;
            let z = z.embed(bits);
            let t = if strong { RadialTarget::U { k: a.k, z } } else { RadialTarget::UTilde { k: a.k, z } };
            (t, r)
        }
        RadialSeries::Watson => {
            if a.zeta % 2 == 1 {
                return Err("the Watson combination approaches even-order roots ζ_2k".into());
            }
            (RadialTarget::Watson { k: a.zeta / 2 }, None)
        }
    };
    let report = qlab_core::roots::radial_target(&target, &sched).map_err(|e| e.to_string())?;
    let mut out = report.to_json();
    if let Some(r) = reference {
        out["reference"] = reference_json(&report, &r.embed(bits), digits_for(bits));
    }
    let status = if report.diverging() { 1 } else { 0 };
    Ok(Done { out, status })
}

fn reference_json(report: &RadialReport, exact: &BigComplex, digits: usize) -> Value {
    json!({
        "value": complex_json(exact, digits),
        "gap": report.gap_to(exact).to_sci_string(6),
        "within_bound": report.within_bound(exact),
    })
}

fn enumerate(table: Table) -> CmdResult {
    let out = match table {
        Table::Partitions { n } => {
            let ps = partitions_of(n).map_err(|e| e.to_string())?;
            let rows = ps
                .iter()
                .map(|p| {
                    let c = crank(p).ok().map(|c| c.to_string());
                    json!({ "parts": p.parts(), "crank": c })
                })
                .collect::<Vec<_>>();
            json!({ "n": n, "count": ps.len().to_string(), "partitions": rows })
        }
        Table::Crank { n } => json!({ "n": n, "crank_sum": poly_json(&crank_sum(n)) }),
        Table::Unimodal { k, weight, strong } => {
            let t = unimodal_counts(weight, k, strong).map_err(|e| e.to_string())?;
            json!({ "k": k, "strong": strong, "table": t.to_json() })
        }
    };
    Ok(Done::ok(out))
}

fn verify(a: &VerifyArgs) -> CmdResult {
    if a.list {
        let rows: Vec<Value> = CATALOG
            .iter()
            .map(|s| json!({ "id": s.id, "strategy": s.strategy, "criterion": s.criterion, "statement": s.statement }))
            .collect();
        return Ok(Done::ok(rows.into()));
    }
    let reports: Vec<SuiteReport> = if let Some(id) = &a.suite {
        let opts = RunOptions { order: a.order, fault: a.inject.map(qlab_core::verify::Fault::Entry), ..RunOptions::default() };
        vec![run_suite_with(id, opts).map_err(|e| e.to_string())?]
    } else if a.all || a.filter.is_some() {
        if a.inject.is_some() {
            return Err("--inject needs --suite".into());
        }
        let filter = a.filter.as_deref();
        if let Some(f) = filter {
            if f.is_empty() || !f.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(format!("malformed filter `{f}`: use letters, digits and underscores"));
            }
        }
        run_all(a.order.unwrap_or(30), filter).map_err(|e| e.to_string())?
    } else {
        return Err("give --suite ID, --filter TEXT, --all or --list".into());
    };
    let status = if reports.iter().any(|r| r.error.is_some()) {
        2
    } else if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    };
    let out: Vec<Value> = reports.iter().map(SuiteReport::to_json).collect();
    Ok(Done { out: out.into(), status })
}
