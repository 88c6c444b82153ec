use alloc::string::String;

/// Errors raised while building or checking exact objects.
///
/// The singular variants carry a short description of the factor that
/// vanished so that rejected random draws can be logged.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("vanishing denominator: {0}")]
    VanishingDenominator(String),
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("singular draw: {0}")]
    SingularDraw(String),
    #[error("recurrence does not terminate: {0}")]
    NonTerminating(String),
    #[error("invalid weight {0}: weights must be at least 1")]
    InvalidWeight(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for the errors a random draw can trip over; the verification
    /// driver resamples on these.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero
                | Error::VanishingDenominator(_)
                | Error::SingularParameter(_)
                | Error::SingularDraw(_)
                | Error::NonTerminating(_)
        )
    }

    /// Re-tags any singular error as `SingularParameter`, keeping the message.
    pub(crate) fn into_parameter(self) -> Error {
        match self {
            Error::DivisionByZero => Error::SingularParameter("division by zero".into()),
            Error::VanishingDenominator(s) | Error::SingularDraw(s) => Error::SingularParameter(s),
            other => other,
        }
    }

    /// Re-tags any singular error as `SingularDraw`, keeping the message.
    pub(crate) fn into_draw(self) -> Error {
        match self {
            Error::DivisionByZero => Error::SingularDraw("division by zero".into()),
            Error::VanishingDenominator(s) | Error::SingularParameter(s) => Error::SingularDraw(s),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
