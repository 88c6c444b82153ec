//! Exact verification of the defining identities on random rational draws.

mod checks;
mod draw;
mod report;
mod suites;

pub use checks::*;
pub use draw::{Draw, Sampler, BOUND, RESAMPLE_CAP};
pub use report::{max_abs, Report, Status};
pub use suites::{describe, genfun_max_residual, route_max_residual, run_trial, Suite, SuiteOptions};

use alloc::string::{String, ToString};

use crate::{Result, Scalar};

/// Runs `attempt` on fresh draws from the `(seed, trial)` stream until it
/// returns without a singular error, up to [`RESAMPLE_CAP`] times.
///
/// `attempt` records its parameters into the draw and returns the residual.
/// Non-singular errors are reported as failures carrying the error text.
pub fn resample(
    identity: &str,
    seed: u64,
    trial: u64,
    mut attempt: impl FnMut(&mut Sampler, &mut Draw) -> Result<Scalar>,
) -> Report {
    let mut sampler = Sampler::new(seed, trial);
    let mut draw = Draw::new(seed, trial);
    for _ in 0..RESAMPLE_CAP {
        match attempt(&mut sampler, &mut draw) {
            Ok(residual) => return Report::from_residual(identity, draw, residual),
            Err(e) if e.is_singular() => draw.reject(e.to_string()),
            Err(e) => {
                let mut r = Report::from_residual(identity, draw, Scalar::one());
                r.draw.rejection_reasons.push(String::from("error: ") + &e.to_string());
                return r;
            }
        }
    }
    Report::singular(identity, draw)
}
