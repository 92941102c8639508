//! Reduced-size runs of every suite through the public entry points.

use qexp_propcheck::{all_passed, run_all, run_suite, CheckError, Config, SuiteConfig, SUB_SUITES, SUITES};

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials: Some(2),
        dim: None,
    }
}

#[test]
fn every_suite_passes_on_a_small_run() {
    for name in SUITES.iter().chain(SUB_SUITES.iter()) {
        let r = run_suite(name, &small(5)).unwrap();
        assert_eq!(&r.suite, name);
        assert!(r.passed, "{name}: {r:?}");
        assert!(r.instances > 0, "{name} ran no instances");
    }
}

#[test]
fn reports_are_reproducible() {
    let a = run_suite("sibson", &small(11)).unwrap();
    let b = run_suite("sibson", &small(11)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn selection_and_overrides() {
    let mut cfg = Config::select("prior-shape, sibson").unwrap();
    cfg.trials = Some(2);
    let reports = run_all(&cfg, 1).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(names, ["prior-shape", "sibson"]);
    assert!(all_passed(&reports));
    assert!(run_all(&Config::select("none").unwrap(), 1).unwrap().is_empty());
    assert_eq!(Config::select("nope"), Err(CheckError::UnknownSuite("nope".into())));
    assert!(run_suite("nope", &small(1)).is_err());
}
