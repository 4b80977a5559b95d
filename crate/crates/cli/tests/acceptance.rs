//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p l0kit-cli --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use l0kit::graph::WitnessedGraph;
use l0kit::suite::{run_suite, suites, SuiteConfig, DEFAULT_SEED};

/// Wall-clock limits per suite, where the criterion pins one.
const TIME_LIMITS: &[(&str, Duration)] =
    &[("gadget-recursion", Duration::from_secs(1)), ("dichotomy", Duration::from_secs(10))];

struct Line {
    passed: bool,
    id: String,
    detail: String,
}

fn suite_lines(config: &SuiteConfig) -> Vec<Line> {
    suites()
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            let start = Instant::now();
            let outcome = run_suite(i, suite, config);
            let elapsed = start.elapsed();
            let limit = TIME_LIMITS.iter().find(|(id, _)| *id == suite.id).map(|&(_, d)| d);
            let in_time = limit.is_none_or(|d| elapsed < d);
            let mut detail = format!("{} checks, {} violations, {:.3}s", outcome.checks, outcome.violation_count, elapsed.as_secs_f64());
            if let Some(d) = limit {
                detail += &format!(" (limit {:.0}s)", d.as_secs_f64());
            }
            if let Some(first) = outcome.violations.first() {
                detail += &format!("; first: {first}");
            }
            Line { passed: outcome.passed && in_time, id: suite.id.to_string(), detail }
        })
        .collect()
}

fn l0kit(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_l0kit")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn determinism_line() -> Line {
    let dir = std::env::temp_dir().join(format!("l0kit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let mut problems = Vec::new();
    let mut runs = 0;
    for (name, g) in [("k3", WitnessedGraph::complete(3)), ("petersen", WitnessedGraph::petersen())] {
        let path: PathBuf = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&g.to_json()).expect("serialise")).expect("write graph");
        let path = path.to_str().expect("utf-8 path");
        let args = ["dichotomy", "--graph", path, "--depth", "4"];
        let (first, second) = (l0kit(&args), l0kit(&args));
        runs += 2;
        if first != second || first.0 != Some(0) {
            problems.push(format!("dichotomy on {name}"));
        }
    }
    let seed = DEFAULT_SEED.to_string();
    for only in ["gadget", "homset", "lc-graph"] {
        let plain = ["check", "--seed", &seed, "--only", only];
        let (first, second) = (l0kit(&plain), l0kit(&plain));
        runs += 2;
        if first != second || first.0 != Some(0) {
            problems.push(format!("check --only {only}"));
        }
    }
    // the oracle flag may add checks but never flips a verdict
    let verdicts = |bytes: &[u8]| -> Vec<(String, bool)> {
        let doc: serde_json::Value = serde_json::from_slice(bytes).expect("check prints JSON");
        doc["suites"]
            .as_array()
            .expect("suites array")
            .iter()
            .map(|s| (s["id"].as_str().unwrap_or_default().to_string(), s["passed"].as_bool().unwrap_or(false)))
            .collect()
    };
    let (_, plain) = l0kit(&["check", "--seed", &seed, "--only", "homset"]);
    let (_, oracle) = l0kit(&["check", "--seed", &seed, "--only", "homset", "--oracle"]);
    runs += 2;
    if verdicts(&plain) != verdicts(&oracle) {
        problems.push("oracle flag changed a verdict".into());
    }
    let _ = std::fs::remove_dir_all(&dir);
    let detail = if problems.is_empty() {
        format!("{runs} runs, repeated pairs byte-identical, oracle verdicts unchanged")
    } else {
        format!("differences: {}", problems.join(", "))
    };
    Line { passed: problems.is_empty(), id: "determinism".into(), detail }
}

fn main() -> ExitCode {
    let config = SuiteConfig { seed: DEFAULT_SEED, oracle: true };
    let mut lines = suite_lines(&config);
    lines.push(determinism_line());
    for line in &lines {
        let verdict = if line.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {:<20} {}", line.id, line.detail);
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!("{} of {} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
