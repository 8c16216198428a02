//! Runs the ten acceptance criteria at default resolution and prints one line per criterion.
//!
//! `LCONVEX_ONLY=4,5` restricts the run; `LCONVEX_REPORT=path` also writes the records as JSONL.

use lconvex::config::RunConfig;
use lconvex::report::write_jsonl;
use lconvex::suite::{criterion_of, run, CRITERIA};
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::var("LCONVEX_ONLY")
        .map(|s| s.split(',').filter_map(|k| k.trim().parse().ok()).collect())
        .unwrap_or_default();
    let cfg = RunConfig { record_timing: true, ..RunConfig::default() };
    let mut failed = 0;
    let mut all = Vec::new();
    for (k, name, _) in CRITERIA.iter().filter(|(k, _, _)| only.is_empty() || only.contains(k)) {
        let start = Instant::now();
        let records = run(&cfg, &[*k]);
        assert!(records.iter().all(|r| criterion_of(r) == Some(*k)));
        let bad: Vec<_> = records.iter().filter(|r| !r.passed()).collect();
        let status = if bad.is_empty() && !records.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {k:>2} {name:<30} {}/{} records  {:.1}s",
            records.len() - bad.len(),
            records.len(),
            start.elapsed().as_secs_f64()
        );
        for r in &bad {
            println!("     {}: value={} expected={}", r.criterion, r.value, r.expected);
        }
        if status == "FAIL" {
            failed += 1;
        }
        all.extend(records);
    }
    if let Ok(path) = std::env::var("LCONVEX_REPORT") {
        let f = std::fs::File::create(&path).expect("report file");
        write_jsonl(std::io::BufWriter::new(f), &all).expect("write report");
    }
    println!("acceptance: {} criteria, {failed} failed", if only.is_empty() { CRITERIA.len() } else { only.len() });
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
