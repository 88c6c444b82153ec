use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

/// Numerators and denominators of sampled rationals are drawn from `1..=BOUND`.
pub const BOUND: i64 = 30;

/// Attempts per trial before a trial is reported as singular.
pub const RESAMPLE_CAP: u32 = 100;

/// Seeded source of random rationals.
///
/// Each `(seed, trial)` pair gets its own ChaCha stream, so trials can be
/// run in any order (or in parallel) and still see identical draws.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Sampler { rng }
    }

    /// Nonzero rational `±a/b` with `a, b` uniform in `1..=30`.
    pub fn rational(&mut self) -> Scalar {
        let s = self.positive_rational();
        if self.rng.gen_bool(0.5) {
            -s
        } else {
            s
        }
    }

    pub fn positive_rational(&mut self) -> Scalar {
        let n = self.rng.gen_range(1..=BOUND);
        let d = self.rng.gen_range(1..=BOUND);
        Scalar::new(n, d).expect("denominator is at least 1")
    }

    /// A value for `h = q^{1/2}` avoiding `0` and `±1`.
    pub fn nome(&mut self) -> Scalar {
        loop {
            let h = self.rational();
            if !h.abs().is_one() {
                return h;
            }
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}

/// One parameter assignment, reproducible from `(seed, trial)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    pub seed: u64,
    pub trial: u64,
    pub params: Vec<(String, Scalar)>,
    pub rejections: u32,
    pub rejection_reasons: Vec<String>,
}

impl Draw {
    pub fn new(seed: u64, trial: u64) -> Self {
        Draw { seed, trial, params: Vec::new(), rejections: 0, rejection_reasons: Vec::new() }
    }

    pub fn push(&mut self, name: &str, value: &Scalar) {
        self.params.push((name.into(), value.clone()));
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub(crate) fn reject(&mut self, reason: String) {
        self.rejections += 1;
        self.rejection_reasons.push(reason);
        self.params.clear();
    }
}
