//! Exact-arithmetic construction of the higher-spin stochastic six vertex
//! model: R- and S-matrices on `V_I ⊗ V_J`, boundary K-matrices for any
//! integer spin, and a verifier that checks the defining identities
//! (Yang-Baxter, reflection, dual reflection, crossing unitarity,
//! stochasticity, commuting transfer matrices) to exact zero.
//!
//! Everything is evaluated over arbitrary-precision rationals. Half-integer
//! powers of `q` are avoided by taking `h = q^{1/2}` as the input.
//!
//! The crate is `no_std` and only needs `alloc`. IO, JSON and the command
//! line live in the `hs6v` companion crate.

#![no_std]

extern crate alloc;

pub mod boundary;
mod error;
pub mod lattice;
pub mod linalg;
pub mod qseries;
mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Field, ParseScalarError, Scalar};
