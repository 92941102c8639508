//! Acceptance run: one line per criterion on stderr, then a single verdict.
//!
//! Lines are written straight to the process's stderr so they show up in
//! `cargo test` output even when the test passes.

use std::io::Write;
use std::time::{Duration, Instant};

use qexp_propcheck::{run_all, run_suite, CheckReport, Config, SuiteConfig};

const SEED: u64 = 20_240_617;
const DIVERGENCE_BUDGET: Duration = Duration::from_secs(30);
const CONCAVITY_BUDGET: Duration = Duration::from_secs(5 * 60);
const TOTAL_BUDGET: Duration = Duration::from_secs(10 * 60);

struct Criterion {
    number: usize,
    title: &'static str,
    suites: &'static [&'static str],
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { number: 1, title: "divergence laws", suites: &["divergence-laws"], budget: Some(DIVERGENCE_BUDGET) },
    Criterion { number: 2, title: "classical reduction", suites: &["classical-reduction"], budget: None },
    Criterion { number: 3, title: "Sibson identity", suites: &["sibson"], budget: None },
    Criterion { number: 4, title: "Augustin mean", suites: &["augustin-mean"], budget: None },
    Criterion { number: 5, title: "concavity in s", suites: &["concavity-in-s"], budget: Some(CONCAVITY_BUDGET) },
    Criterion { number: 6, title: "prior shape", suites: &["prior-shape"], budget: None },
    Criterion { number: 7, title: "equicontinuity", suites: &["equicontinuity"], budget: None },
    Criterion { number: 8, title: "interpolation", suites: &["interpolation"], budget: None },
    Criterion { number: 9, title: "minimax identity", suites: &["minimax"], budget: None },
    Criterion { number: 10, title: "entropic and Fenchel duality", suites: &["entropic-duality", "fenchel-duality"], budget: None },
    Criterion { number: 11, title: "auxiliary-function signs and derivatives", suites: &["auxiliary-functions"], budget: None },
];

fn line(text: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{text}");
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn describe(r: &CheckReport) -> String {
    let subs: Vec<String> = r
        .sub_checks
        .iter()
        .map(|s| {
            let tag = if s.record_only { " (recorded)" } else { "" };
            format!("{} {:.2e}/{:.0e}{tag}", s.suite, s.max_violation, s.tolerance)
        })
        .collect();
    format!(
        "{}: max violation {:.3e} (tol {:.0e}), {} instances, {} skipped, {} errors [{}]",
        r.suite,
        r.max_violation,
        r.tolerance,
        r.instances,
        r.skipped,
        r.errors,
        subs.join("; ")
    )
}

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig::new(SEED);
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut all_ok = true;
    line("acceptance criteria (seed 20240617)");
    for c in &CRITERIA {
        let t = Instant::now();
        let rs: Vec<CheckReport> = c
            .suites
            .iter()
            .map(|s| run_suite(s, &cfg).expect("known suite"))
            .collect();
        let elapsed = t.elapsed();
        let within = c.budget.is_none_or(|b| elapsed <= b);
        let ok = within && rs.iter().all(|r| r.passed && r.errors == 0);
        all_ok &= ok;
        let budget = c.budget.map(|b| format!(" (budget {}s)", b.as_secs())).unwrap_or_default();
        let details: Vec<String> = rs.iter().map(describe).collect();
        line(&format!(
            "criterion {:>2} {} {}: {:.1}s{budget}; {}",
            c.number,
            verdict(ok),
            c.title,
            elapsed.as_secs_f64(),
            details.join(" | ")
        ));
        reports.extend(rs);
    }
    let total = start.elapsed();

    let first = serde_json::to_string(&reports).expect("serializable");
    let rerun = run_all(&Config::all(), SEED).expect("all suites");
    let second = serde_json::to_string(&rerun).expect("serializable");
    let deterministic = first == second;
    let ok12 = total <= TOTAL_BUDGET && deterministic;
    all_ok &= ok12;
    line(&format!(
        "criterion 12 {} full run: {:.1}s (budget {}s); rerun with the same seed byte-identical: {}",
        verdict(ok12),
        total.as_secs_f64(),
        TOTAL_BUDGET.as_secs(),
        deterministic
    ));
    assert!(all_ok, "at least one acceptance criterion failed");
}
