mod common;

use common::*;
use kahler_core::algebra::GradedAlgebra;
use kahler_core::groebner::{Height, Ideal};
use kahler_core::rees::rees_ideal;
use kahler_core::resolution::depth_and_cm;
use kahler_core::verifier::{corpus, corpus_case, run_case, run_cases, CaseFile, Outcome, PipelineOptions, Report};

fn opts(seed: Option<u64>) -> PipelineOptions {
    PipelineOptions { seed, rowops: None, timings: false }
}

fn report(name: &str) -> Report {
    run_case(&corpus_case(name).unwrap(), &opts(None))
}

fn algebra(names: &[&str], rels: &[&str]) -> GradedAlgebra {
    let r = ring(names);
    GradedAlgebra::validate(&r, rels.iter().map(|s| poly(&r, s)).collect()).unwrap()
}

#[test]
fn corpus_passes_every_assertion_and_expectation() {
    let reports = run_cases(&corpus(), &opts(None));
    assert_eq!(reports.len(), corpus().len());
    let names: Vec<&str> = reports.iter().map(|r| r.case.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for r in &reports {
        assert_eq!(r.outcome, Outcome::Ok, "{}", r.to_text());
        assert_eq!(r.failed_assertions().count(), 0, "{}", r.case);
        assert_eq!(r.failed_expectations().count(), 0, "{}", r.case);
        assert!(r.errors.is_empty(), "{}: {:?}", r.case, r.errors);
    }
}

#[test]
fn normal_crossing_verdicts() {
    let r = report("normal_crossing");
    let f1 = r.f1.as_ref().unwrap();
    assert!(!f1.holds);
    let fail = f1.failure.as_ref().unwrap();
    assert_eq!((fail.i, fail.height, fail.required), (1, Height::Finite(1), 2));
    assert!(!r.rees.as_ref().unwrap().linear_type);
    let cm = r.rees_cm.as_ref().unwrap();
    assert_eq!((cm.dim, cm.pd, cm.depth, cm.cohen_macaulay), (2, 3, 1, false));
    assert_eq!(r.spread.as_ref().unwrap().spread, 1);

    let rees = rees_ideal(&algebra(&["X", "Y"], &["X*Y"]), 0).unwrap();
    let expected = Ideal::new(
        &rees.sym.ring,
        ["X*Y", "X*T2", "Y*T1", "T1*T2"].iter().map(|s| poly(&rees.sym.ring, s)).collect(),
    )
    .unwrap();
    assert!(rees.ideal.equals(&expected).unwrap());
    let witness = poly(&rees.sym.ring, "X*T2");
    assert!(rees.ideal.contains(&witness).unwrap());
    assert!(!rees.sym.ideal.contains(&witness).unwrap());
}

#[test]
fn quadric_cone_verdicts() {
    let r = report("quadric_cone");
    assert!(r.f1.as_ref().unwrap().holds);
    assert!(r.rees.as_ref().unwrap().linear_type);
    let cm = r.rees_cm.as_ref().unwrap();
    assert_eq!((cm.variables, cm.dim, cm.pd, cm.depth, cm.cohen_macaulay), (6, 4, 2, 4, true));
    assert_eq!(r.spread.as_ref().unwrap().spread, 3);
    assert_eq!(r.local.as_ref().unwrap().edim, 3);

    let rees = rees_ideal(&algebra(&["X", "Y", "Z"], &["X*Y - Z^2"]), 0).unwrap();
    assert!(rees.ideal.equals(&rees.sym.ideal).unwrap());
    assert_eq!(depth_and_cm(&rees.ideal).unwrap().pd, 2);
}

#[test]
fn curve_cone_verdicts() {
    let r = report("curve_cone");
    assert!(r.hypotheses.as_ref().unwrap().f0_off_irrelevant.holds);
    assert_eq!(r.f1.as_ref().unwrap().failure.as_ref().unwrap().i, 3);
    assert!(!r.rees_cm.as_ref().unwrap().cohen_macaulay);
    let s = r.shortcut.as_ref().unwrap();
    assert!(s.smooth_off_origin && !s.predicts_cm);
    assert_eq!(r.prop31.as_ref().unwrap().violations(), 0);
    assert!(r.euler_minor.as_ref().unwrap().vanishes);
}

#[test]
fn rejection_lists_every_violation() {
    let case = CaseFile::parse("name = bad\nvariables = X, Y\nrelations = X + Y^2, X*Y - 1\n").unwrap();
    let r = run_case(&case, &opts(None));
    let rej = r.rejection.as_ref().unwrap();
    assert!(rej.violations.len() >= 2, "{:?}", rej.violations);
    assert_eq!(rej.hypotheses.len(), rej.violations.len());
    assert_eq!(r.outcome, Outcome::InvalidInput);
    assert!(r.fitting.is_none());

    let expected = report("reject_not_regular");
    assert_eq!(expected.outcome, Outcome::Ok);
    assert!(expected.rejection.is_some());
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for case in corpus() {
        let a = run_case(&case, &opts(Some(5)));
        let json = a.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert_eq!(run_case(&case, &opts(Some(5))).to_json(), json);
        assert!(!json.contains("timings_ms"));
    }
    let timed = run_case(&corpus_case("quadric_cone").unwrap(), &PipelineOptions { seed: None, rowops: None, timings: true });
    assert!(timed.timings_ms.is_some());
}

#[test]
fn verdicts_do_not_depend_on_seed() {
    for name in ["quadric_cone", "normal_crossing", "surface_cone"] {
        let case = corpus_case(name).unwrap();
        let a = run_case(&case, &opts(Some(1)));
        let b = run_case(&case, &opts(Some(99)));
        assert_eq!(a.rees.as_ref().unwrap().linear_type, b.rees.as_ref().unwrap().linear_type);
        assert_eq!(a.rees.as_ref().unwrap().basis, b.rees.as_ref().unwrap().basis, "{}", name);
        assert_eq!(a.rees_cm, b.rees_cm);
    }
}

#[test]
fn failed_expectation_is_an_assertion_failure() {
    let text = "name = wrong\nvariables = X, Y, Z\nrelations = X*Y - Z^2\n[expect]\nlinear_type = false\n";
    let r = run_case(&CaseFile::parse(text).unwrap(), &opts(None));
    assert_eq!(r.failed_expectations().count(), 1);
    assert_eq!(r.outcome, Outcome::AssertionFailed);
    assert_eq!(r.outcome.exit_code(), 2);
}

#[test]
fn non_reduced_input_reports_symmetric_algebra_only() {
    let text = "name = double\nvariables = X, Y\nrelations = X^2\n";
    let r = run_case(&CaseFile::parse(text).unwrap(), &opts(None));
    assert!(!r.hypotheses.as_ref().unwrap().reduced);
    assert!(r.rees.is_none());
    assert!(r.symmetric.is_some());
    assert!(!r.notes.is_empty());
}
