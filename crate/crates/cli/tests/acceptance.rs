//! Acceptance suite: one test per criterion, each driving the library
//! through the corresponding suite and asserting its wall-time budget.
//! Every test prints one pass/fail line.

use std::time::{Duration, Instant};

use sct_cli::suites::{run_suite, SuiteOptions};

fn criterion(name: &str, suites: &[&str], budget: Duration, opts: &SuiteOptions) {
    let start = Instant::now();
    let mut all = true;
    let mut details = Vec::new();
    for suite in suites {
        let report = run_suite(suite, opts).expect("suite runs");
        if !report.passed() {
            all = false;
            details.push(report.render(false));
        }
    }
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    println!(
        "criterion {name}: {} ({} ms of {} ms budget)",
        if all && within { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        budget.as_millis()
    );
    for d in details {
        println!("{d}");
    }
    assert!(all, "criterion {name} has failing checks");
    assert!(
        within,
        "criterion {name} exceeded its budget: {} ms",
        elapsed.as_millis()
    );
}

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

#[test]
fn criterion_01_normal_form_uniqueness() {
    criterion("1-ez", &["ez"], Duration::from_secs(5), &opts());
}

#[test]
fn criterion_02_pushout_injectivity() {
    criterion("2-inj", &["inj"], Duration::from_secs(30), &opts());
}

#[test]
fn criterion_03_stage_zero_pushout() {
    criterion("3-lem4", &["lem4"], Duration::from_secs(10), &opts());
}

#[test]
fn criterion_04_filtration_squares() {
    criterion("4-dm-pushout", &["dm-pushout"], Duration::from_secs(60), &opts());
}

#[test]
fn criterion_05_replacement_is_nerve() {
    criterion("5-lem3", &["lem3"], Duration::from_secs(10), &opts());
}

#[test]
fn criterion_06_tables_for_small_posets() {
    criterion(
        "6-li",
        &["li-table", "li-assoc"],
        Duration::from_secs(120),
        &opts(),
    );
}

#[test]
fn criterion_07_cone_consistency_at_a_point() {
    criterion(
        "7-lc-consistency",
        &["lc-consistency"],
        Duration::from_secs(5),
        &opts(),
    );
}

#[test]
fn criterion_08_bounded_hammock_discreteness() {
    criterion(
        "8-hammock-discrete",
        &["hammock-discrete"],
        Duration::from_secs(300),
        &opts(),
    );
}

#[test]
fn criterion_09_split_pure_model() {
    criterion("9-pure-split", &["pure-split"], Duration::from_secs(60), &opts());
}

#[test]
fn criterion_10_subdivision_machinery() {
    criterion("10-ex-sd", &["ex-sd"], Duration::from_secs(10), &opts());
}

#[test]
fn criterion_11_quasicategory_sanity() {
    // Nerve filler uniqueness and the failing horn live in the prop2
    // suite together with the replacement checks.
    criterion("11-qcat-sanity", &["prop2"], Duration::from_secs(10), &opts());
}

#[test]
fn seeded_defect_corpus_fails_cleanly() {
    let mut o = opts();
    o.corpus = "seeded-defect".to_string();
    let report = run_suite("ez", &o).expect("suite runs");
    assert!(!report.passed(), "defective corpus must fail");
    let line = &report.lines[0];
    assert!(
        line.detail.contains("strictly decreasing"),
        "witness names the defect: {}",
        line.detail
    );
}
