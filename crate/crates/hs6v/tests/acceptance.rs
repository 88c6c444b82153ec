//! Runs the ten acceptance criteria and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hs6v::golden::run_golden;
use hs6v::runner::{run_suite, SuiteRun};
use hs6v_core::verify::{Suite, SuiteOptions};

const SEED: u64 = 1;

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(runs: &[(Suite, u64)], opts: SuiteOptions) -> Outcome {
    let done: Vec<SuiteRun> = runs.iter().map(|&(s, n)| run_suite(s, &opts, SEED, n)).collect();
    let ok = done.iter().all(|r| r.passed() && r.reports.len() as u64 == runs_len(runs, r.suite));
    let detail = done
        .iter()
        .map(|r| {
            let s = r.summary();
            let mut d = format!("{} {}/{} pass", r.suite.id(), s.pass, r.reports.len());
            if s.fail + s.singular > 0 {
                d += &format!(", {} fail, {} singular", s.fail, s.singular);
            }
            if s.exploratory_fail > 0 {
                d += &format!(", {} exploratory fail (reported only)", s.exploratory_fail);
            }
            d
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn runs_len(runs: &[(Suite, u64)], suite: Suite) -> u64 {
    runs.iter().find(|(s, _)| *s == suite).map_or(0, |&(_, n)| n)
}

fn passes(suite: Suite, per_config: u64) -> (Suite, u64) {
    (suite, suite.configs() as u64 * per_config)
}

fn golden() -> Outcome {
    match run_golden() {
        Ok(entries) => {
            let bad = entries.iter().filter(|e| !e.matches()).count();
            let draws = entries.iter().map(|e| e.draw).max().map_or(0, |d| d + 1);
            Outcome {
                ok: bad == 0 && draws >= 5,
                detail: format!("{} entries over {draws} draws, {bad} mismatches", entries.len()),
            }
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let criteria: [Criterion; 10] = [
        ("closed N against tabulated spin-1/spin-2 entries", Duration::from_secs(1), Box::new(golden)),
        (
            "route equality, J = 1..4",
            Duration::from_secs(30),
            Box::new(move || suites(&[passes(Suite::Routes, 10)], opts)),
        ),
        (
            "Yang-Baxter, weights {1,2,3}^3",
            Duration::from_secs(120),
            Box::new(move || suites(&[passes(Suite::Ybe, 5)], opts)),
        ),
        ("reflection", Duration::from_secs(120), Box::new(move || suites(&[passes(Suite::Reflection, 10)], opts))),
        (
            "crossing and unitarity",
            Duration::from_secs(60),
            Box::new(move || suites(&[passes(Suite::Crossing, 10)], opts)),
        ),
        (
            "stochasticity of S and mu = 1 K",
            Duration::MAX,
            Box::new(move || suites(&[passes(Suite::Stochastic, 4)], opts)),
        ),
        (
            "transfer-matrix commutativity",
            Duration::from_secs(120),
            Box::new(move || suites(&[passes(Suite::Dual, 5), passes(Suite::Transfer, 5)], opts)),
        ),
        ("generating function", Duration::from_secs(60), Box::new(move || suites(&[passes(Suite::Genfun, 10)], opts))),
        (
            "Phi identity, indices <= 3",
            Duration::from_secs(60),
            Box::new(move || suites(&[(Suite::PhiIdentity, 5)], opts)),
        ),
        ("q-series identities", Duration::from_secs(30), Box::new(move || suites(&[passes(Suite::Qseries, 50)], opts))),
    ];

    let mut all = true;
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= *budget;
        let ok = out.ok && in_time;
        all &= ok;
        let budget = if *budget == Duration::MAX { String::from("none") } else { format!("{:?}", budget) };
        println!(
            "criterion {}: {} {name} ({}; {:.2?}, budget {budget}{})",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            took,
            if in_time { "" } else { ", over budget" },
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
