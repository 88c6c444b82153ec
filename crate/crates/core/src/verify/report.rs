use alloc::string::String;

use super::Draw;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Singular,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Singular => "singular",
        }
    }
}

/// Outcome of checking one identity on one draw.
///
/// `status` is `Pass` exactly when `max_abs_residual` is zero; a trial that
/// never found a nonsingular draw is `Singular`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub identity: String,
    pub draw: Draw,
    pub max_abs_residual: Scalar,
    pub status: Status,
    /// Checked and reported, but not part of the hard pass criterion.
    pub exploratory: bool,
    /// Wall-clock time; filled in by the driver (the core crate has no clock).
    pub millis: u64,
}

impl Report {
    pub fn from_residual(identity: impl Into<String>, draw: Draw, residual: Scalar) -> Self {
        let status = if residual.is_zero() { Status::Pass } else { Status::Fail };
        Report {
            identity: identity.into(),
            draw,
            max_abs_residual: residual.abs(),
            status,
            exploratory: false,
            millis: 0,
        }
    }

    pub fn singular(identity: impl Into<String>, draw: Draw) -> Self {
        Report {
            identity: identity.into(),
            draw,
            max_abs_residual: Scalar::zero(),
            status: Status::Singular,
            exploratory: false,
            millis: 0,
        }
    }

    pub fn exploratory(mut self, flag: bool) -> Self {
        self.exploratory = flag;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Whether the report counts against the exit status.
    pub fn is_hard_failure(&self) -> bool {
        !self.exploratory && self.status != Status::Pass
    }
}

/// Largest absolute value, zero for an empty iterator.
pub fn max_abs<S: core::borrow::Borrow<Scalar>>(values: impl IntoIterator<Item = S>) -> Scalar {
    values.into_iter().map(|v| v.borrow().abs()).max().unwrap_or_else(Scalar::zero)
}
