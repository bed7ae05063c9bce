//! Behaviour of the verification harness itself: catalog shape, order
//! handling, fault injection and report serialisation.

use qlab_core::error::VerifyError;
use qlab_core::verify::{find_suite, run_all, run_suite, run_suite_with, Criterion, Fault, RunOptions, Strategy, CATALOG};

#[test]
fn catalog_is_sorted_and_unique() {
    let ids: Vec<_> = CATALOG.iter().map(|s| s.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
    for s in CATALOG {
        assert_eq!(s.tolerance.is_some(), s.criterion == Criterion::Tolerance, "{}", s.id);
        assert_eq!(s.is_exact(), s.criterion == Criterion::Equality, "{}", s.id);
        assert!(s.min_order <= s.default_order);
    }
    assert_eq!(find_suite("eq16").unwrap().id, "EQ16");
}

#[test]
fn exact_series_outcomes_do_not_depend_on_order() {
    for s in CATALOG.iter().filter(|s| s.strategy == Strategy::ExactSeries) {
        let outcomes: Vec<bool> = [15, 20, 30].iter().map(|&n| run_suite(s.id, Some(n)).unwrap().passed).collect();
        assert!(outcomes.iter().all(|&p| p == outcomes[0]), "{}: {outcomes:?}", s.id);
    }
}

#[test]
fn small_runs() {
    let r = run_suite("EQ16", Some(6)).unwrap();
    assert!(r.passed);
    assert_eq!(r.order, Some(6));
    assert!(r.checked > 0);
    let z = run_suite("ZETA5", None).unwrap();
    assert!(z.passed, "{z:?}");
    assert_eq!(z.order, None);
}

#[test]
fn run_all_matches_individual_runs() {
    let batch = run_all(10, Some("eq1")).unwrap();
    let ids: Vec<_> = batch.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["EQ12", "EQ13", "EQ15", "EQ16", "EQ17"]);
    for r in &batch {
        let single = run_suite(&r.id, Some(10)).unwrap();
        assert_eq!(r.passed, single.passed, "{}", r.id);
        assert_eq!(r.discrepancy, single.discrepancy, "{}", r.id);
    }
    assert!(run_all(10, Some("NO_SUCH_SUITE")).unwrap().is_empty());
}

#[test]
fn argument_errors() {
    assert!(matches!(run_suite("NOPE", None), Err(VerifyError::UnknownSuite(_))));
    assert!(matches!(run_suite("THM1", Some(3)), Err(VerifyError::OrderTooLow { min: 6, .. })));
    assert!(matches!(run_all(5, None), Err(VerifyError::OrderTooLow { .. })));
    let numeric = RunOptions { fault: Some(Fault::Entry(0)), ..Default::default() };
    assert!(matches!(run_suite_with("COR2", numeric), Err(VerifyError::Execution { .. })));
}

#[test]
fn planted_fault_is_the_reported_witness() {
    let clean = run_suite("THM1_CORRECTED", Some(10)).unwrap();
    assert!(clean.passed);
    assert!(clean.injected.is_none());

    let opts = RunOptions { fault: Some(Fault::Entry(4)), ..RunOptions::order(10) };
    let r = run_suite_with("THM1_CORRECTED", opts).unwrap();
    assert!(!r.passed);
    let w = r.discrepancy.unwrap();
    assert_eq!(Some(w.location.clone()), r.injected);
    assert_ne!(w.left, w.right);

    for seed in 0..5 {
        let opts = RunOptions { fault: Some(Fault::Seeded(seed)), ..RunOptions::order(10) };
        let r = run_suite_with("THM1_CORRECTED", opts).unwrap();
        assert!(!r.passed);
        assert_eq!(r.discrepancy.map(|w| w.location), r.injected, "seed {seed}");
    }
}

#[test]
fn seeded_fault_never_lands_after_a_genuine_failure() {
    let genuine = run_suite("THM1", Some(10)).unwrap().discrepancy.unwrap();
    for seed in 0..5 {
        let opts = RunOptions { fault: Some(Fault::Seeded(seed)), ..RunOptions::order(10) };
        let r = run_suite_with("THM1", opts).unwrap();
        let w = r.discrepancy.unwrap();
        // the first reported discrepancy is either the plant or the
        // genuine one, and the plant is never later
        assert!(Some(&w.location) == r.injected.as_ref() || w.location == genuine.location);
    }
}

#[test]
fn report_json_shape() {
    let r = run_suite("EQ16", Some(6)).unwrap();
    let v = r.to_json();
    assert_eq!(v["id"], "EQ16");
    assert_eq!(v["passed"], true);
    assert_eq!(v["strategy"], "EXACT_SERIES");
    assert_eq!(v["criterion"], "equality");
    assert_eq!(v["order"], 6);
    assert!(v["discrepancy"].is_null());

    let failing = run_suite("THM1", Some(6)).unwrap().to_json();
    assert_eq!(failing["passed"], false);
    let w = &failing["discrepancy"];
    assert!(w["location"].as_str().unwrap().starts_with("q^"));
    assert!(w["left"].is_string() && w["right"].is_string());

    let back: qlab_core::verify::SuiteReport = serde_json::from_value(failing).unwrap();
    assert_eq!(back.id, "THM1");
}
