//! Acceptance gate: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`). Criteria run
//! against the same suite pipeline the binary uses; reports are
//! shared across criteria through a once-cell so each suite runs once
//! unless a criterion needs its own configuration.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nctv_cli::{run_suite, GroupSelect, Report, Status, SuiteConfig};

fn config(suite: &str, jobs: usize) -> SuiteConfig {
    let mut c = SuiteConfig::new(suite);
    c.groups = GroupSelect::All;
    c.jobs = jobs;
    c
}

fn run_with_pool(cfg: &SuiteConfig) -> (Report, Duration) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("pool");
    let start = Instant::now();
    let report = pool.install(|| run_suite(cfg)).expect("suite runs");
    (report, start.elapsed())
}

fn symbolic_report() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| run_with_pool(&config("symbolic", 2)))
}

fn ktheory_report() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| run_with_pool(&config("ktheory", 2)))
}

fn fiber_report() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| run_with_pool(&config("fiber", 2)))
}

fn walters_single_thread() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| run_with_pool(&config("walters", 1)))
}

fn walters_four_way() -> &'static (Report, Duration) {
    static CELL: OnceLock<(Report, Duration)> = OnceLock::new();
    CELL.get_or_init(|| run_with_pool(&config("walters", 4)))
}

fn assert_all_pass(report: &Report, prefix: &str) -> usize {
    let selected: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.id.starts_with(prefix))
        .collect();
    assert!(!selected.is_empty(), "no checks under '{prefix}'");
    for c in &selected {
        assert!(
            c.status == Status::Pass,
            "check {} failed: measured {} expected {}",
            c.id,
            c.measured,
            c.expected
        );
    }
    selected.len()
}

fn verdict(criterion: &str, pass: bool) {
    println!("criterion {criterion}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass);
}

#[test]
fn criterion_1_symbolic_projection_suite() {
    let (report, elapsed) = symbolic_report();
    // every named projection: idempotent+selfadjoint and exact trace
    let mut idem = 0;
    let mut traces = 0;
    for c in &report.checks {
        if c.id.starts_with("projections/") && c.id.ends_with("-idempotent-selfadjoint") {
            assert!(c.status == Status::Pass, "{} failed", c.id);
            idem += 1;
        }
        if c.id.starts_with("projections/") && c.id.ends_with("-trace") {
            assert!(c.status == Status::Pass, "{} failed", c.id);
            traces += 1;
        }
    }
    // 4 + 6 + 7 + 8 named projections across the four groups
    assert_eq!(idem, 25, "projection count");
    assert_eq!(traces, 25, "trace count");
    let within_budget = *elapsed < Duration::from_secs(5);
    assert!(within_budget, "symbolic suite took {elapsed:?}, budget 5 s");
    verdict("1 (symbolic projection suite, traces exact, < 5 s)", true);
}

#[test]
fn criterion_2_unitary_order_suite() {
    let (symbolic, s_elapsed) = symbolic_report();
    let orders = assert_all_pass(symbolic, "unitaries/");
    assert_eq!(orders, 4 + 3 + 3 + 3, "corrected unitary count");
    // θ=1 evaluation under u ↦ -u, v ↦ -v lands on the group elements
    let (fiber, f_elapsed) = fiber_report();
    let images: Vec<_> = fiber
        .checks
        .iter()
        .filter(|c| c.id.contains("theta-1-image-of"))
        .collect();
    assert_eq!(images.len(), 13, "fiber image count");
    for c in &images {
        assert!(c.status == Status::Pass, "{} failed", c.id);
    }
    assert_all_pass(fiber, "fiber/");
    let within = *s_elapsed + *f_elapsed < Duration::from_secs(5);
    assert!(within, "unitary+fiber took {:?}", *s_elapsed + *f_elapsed);
    verdict("2 (unitary orders and fiber-1 images, < 5 s)", true);
}

#[test]
fn criterion_3_relation_suite() {
    let (report, _) = symbolic_report();
    let relations = assert_all_pass(report, "relations/");
    // per group: t^k = 1, vu = e(θ)uv, two conjugation rows
    assert_eq!(relations, 16, "relation row count");
    let cocycle = assert_all_pass(report, "cocycle/");
    assert_eq!(cocycle, 8, "cocycle sample blocks (identity+invariance per group)");
    // the sampled blocks assert zero failures out of 1000 each
    for c in report.checks.iter().filter(|c| c.id.starts_with("cocycle/")) {
        assert_eq!(c.measured, serde_json::Value::from(0u64), "{}", c.id);
    }
    verdict("3 (relation table, cocycle laws on 1000 samples)", true);
}

#[test]
fn criterion_4_ktheory_suite() {
    let (report, elapsed) = ktheory_report();
    assert_all_pass(report, "ktheory/");
    // spot-read the rank rows to pin the expected values
    let expect = [("z2", 6u64), ("z3", 8), ("z4", 9), ("z6", 10)];
    for (g, rank) in expect {
        let c = report
            .checks
            .iter()
            .find(|c| c.id == format!("ktheory/{g}/k0-rank"))
            .expect("rank check present");
        assert_eq!(c.measured, serde_json::Value::from(rank));
        assert_eq!(c.status, Status::Pass);
    }
    let within = *elapsed < Duration::from_secs(2);
    assert!(within, "ktheory suite took {elapsed:?}, budget 2 s");
    verdict("4 (k-theory ranks, censuses, trace images, highdim, < 2 s)", true);
}

#[test]
fn criterion_5_isomorphism_table() {
    let (report, _) = ktheory_report();
    let cases: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.id.starts_with("ktheory/iso/case-"))
        .collect();
    assert_eq!(cases.len(), 20, "iso table size");
    for c in &cases {
        assert!(c.status == Status::Pass, "{} mismatched", c.id);
    }
    verdict("5 (isomorphism table, 20 cases, zero mismatches)", true);
}

#[test]
fn criterion_6_walters_numeric_suite() {
    let (single, t1) = walters_single_thread();
    assert_all_pass(single, "walters/");
    // the suite runs the four pinned θ by default; every residual
    // family must be present for every θ index
    for t in 0..4 {
        for g in ["z2", "z3", "z4", "z6"] {
            assert!(single
                .checks
                .iter()
                .any(|c| c.id == format!("walters/{g}/theta{t}/order-residual")));
            assert!(single
                .checks
                .iter()
                .any(|c| c.id == format!("walters/{g}/theta{t}/equivariance-window2")));
        }
        assert!(single
            .checks
            .iter()
            .any(|c| c.id == format!("walters/theta{t}/inner-norm")));
        assert!(single
            .checks
            .iter()
            .any(|c| c.id == format!("walters/bimodule/theta{t}/imprimitivity-window6")));
        assert!(single
            .checks
            .iter()
            .any(|c| c.id == format!("walters/squares/theta{t}/cubic-is-hexic-squared")));
    }
    assert!(
        *t1 < Duration::from_secs(180),
        "single-threaded walters took {t1:?}, budget 180 s"
    );
    let (four, t4) = walters_four_way();
    assert_all_pass(four, "walters/");
    assert!(*t4 < Duration::from_secs(60), "4-way walters took {t4:?}, budget 60 s");
    verdict("6 (numeric residual suite at pinned tolerances and runtimes)", true);
}

#[test]
fn criterion_7_determinism() {
    // in-process: identical config twice, byte-identical JSON
    for suite in ["symbolic", "ktheory", "fiber", "walters"] {
        let cfg = config(suite, 4);
        let (a, _) = run_with_pool(&cfg);
        let (b, _) = run_with_pool(&cfg);
        assert_eq!(a.to_json(), b.to_json(), "suite {suite} not deterministic");
    }
    // end-to-end: the binary twice on the same flags
    let exe = env!("CARGO_BIN_EXE_nctv");
    let run = || {
        std::process::Command::new(exe)
            .args(["--suite", "ktheory", "--jobs", "2"])
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "binary output differs between runs");
    verdict("7 (byte-identical reports across runs)", true);
}
