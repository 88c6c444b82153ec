//! Std companion of `hs6v-core`: JSON formats, a parallel timed driver for
//! the verification suites, and the golden comparison against the tabulated
//! spin-1 and spin-2 N-matrices.

pub mod golden;
pub mod json;
pub mod runner;
