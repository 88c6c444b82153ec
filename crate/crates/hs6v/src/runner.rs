//! Parallel, timed execution of the core verification suites.

use std::time::Instant;

use hs6v_core::verify::{run_trial, Report, Status, Suite, SuiteOptions};
use rayon::prelude::*;

/// All reports of one suite run, sorted by trial index.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub suite: Suite,
    pub seed: u64,
    pub reports: Vec<Report>,
    pub millis: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub singular: usize,
    /// Failing or singular trials that are only reported.
    pub exploratory_fail: usize,
    pub rejections: u64,
}

impl SuiteRun {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.reports {
            s.rejections += u64::from(r.draw.rejections);
            match r.status {
                Status::Pass => s.pass += 1,
                _ if r.exploratory => s.exploratory_fail += 1,
                Status::Fail => s.fail += 1,
                Status::Singular => s.singular += 1,
            }
        }
        s
    }

    /// True when no non-exploratory trial failed or stayed singular.
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| !r.is_hard_failure())
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions, seed: u64, trials: u64) -> SuiteRun {
    let start = Instant::now();
    let mut reports: Vec<Report> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let t0 = Instant::now();
            let mut r = run_trial(suite, opts, seed, trial);
            r.millis = t0.elapsed().as_millis() as u64;
            r
        })
        .collect();
    reports.sort_by_key(|r| r.draw.trial);
    SuiteRun { suite, seed, reports, millis: start.elapsed().as_millis() as u64 }
}
