use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// There is deliberately no `Div` impl: division goes through
/// [`Scalar::checked_div`] so that a zero divisor surfaces as an error.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn from_integer(value: i64) -> Self {
        Scalar(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.checked_inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = BigRational::one();
        let mut sq = base.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(Scalar(acc))
    }

    /// Sum of bit lengths of numerator and denominator; a rough size measure.
    pub fn bits(&self) -> u64 {
        self.0.numer().bits() + self.0.denom().bits()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed integer in rational literal")]
    Integer,
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `"num/den"` or a plain integer.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let well_formed = |t: &str| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !well_formed(numer) || !well_formed(denom) {
            return Err(ParseScalarError::Integer);
        }
        let numer: BigInt = numer.parse().map_err(|_| ParseScalarError::Integer)?;
        let denom: BigInt = denom.parse().map_err(|_| ParseScalarError::Integer)?;
        if denom.is_zero() {
            return Err(ParseScalarError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_integer(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_integer(v.into())
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident, $op:tt) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                self.0 = &self.0 $op rhs.0;
            }
        }
        impl<'a> $assign_tr<&'a Scalar> for Scalar {
            fn $assign(&mut self, rhs: &'a Scalar) {
                self.0 = &self.0 $op &rhs.0;
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, +);
binop!(Sub, sub, SubAssign, sub_assign, -);
binop!(Mul, mul, MulAssign, mul_assign, *);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// The arithmetic the closed-form constructors need.
///
/// Implemented by [`Scalar`] and by the truncated Laurent series used to
/// take exact limits at removable singularities
/// ([`crate::lattice::limit::Series`]).
pub trait Field:
    Clone + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_scalar(value: Scalar) -> Self;

    /// True only if the value is known to be exactly zero.
    fn is_zero(&self) -> bool;

    /// `None` when the value is zero (or, for series, has no known leading term).
    fn checked_inv(&self) -> Option<Self>;

    fn zero() -> Self {
        Self::from_scalar(Scalar::zero())
    }

    fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    fn from_int(v: i64) -> Self {
        Self::from_scalar(Scalar::from_integer(v))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.checked_inv().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }

    fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.checked_inv().ok_or(Error::DivisionByZero)? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl Field for Scalar {
    fn from_scalar(value: Scalar) -> Self {
        value
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn checked_inv(&self) -> Option<Self> {
        Scalar::checked_inv(self).ok()
    }

    fn powi(&self, exp: i64) -> Result<Self> {
        self.pow(exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        assert_eq!(s(6, -16).to_string(), "-3/8");
        assert_eq!(s(4, 2).to_string(), "2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("-3/8".parse::<Scalar>().unwrap(), s(-3, 8));
        assert_eq!("6/-16".parse::<Scalar>().unwrap(), s(-3, 8));
        assert_eq!(" 7 ".parse::<Scalar>().unwrap(), s(7, 1));
        assert_eq!("1/0".parse::<Scalar>(), Err(ParseScalarError::ZeroDenominator));
        assert_eq!("".parse::<Scalar>(), Err(ParseScalarError::Empty));
        assert_eq!("1.5".parse::<Scalar>(), Err(ParseScalarError::Integer));
        assert_eq!("1/2/3".parse::<Scalar>(), Err(ParseScalarError::Integer));
        assert_eq!("--1".parse::<Scalar>(), Err(ParseScalarError::Integer));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s(1, 2).checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().checked_inv(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().pow(-1), Err(Error::DivisionByZero));
        assert_eq!(Scalar::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(s(2, 3).pow(3).unwrap(), s(8, 27));
        assert_eq!(s(2, 3).pow(-2).unwrap(), s(9, 4));
        assert_eq!(s(-5, 7).pow(0).unwrap(), Scalar::one());
        assert_eq!(Field::powi(&s(2, 3), -3).unwrap(), s(27, 8));
    }
}
