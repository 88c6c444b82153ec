//! Exact limits at removable singularities.
//!
//! Some closed forms are `0/0` at special spectral points (for instance the
//! regularity point `λ = 1`, or `λ = q^{(J-I)/2}`). There the constructors
//! are re-run over truncated Laurent series in `ε`, with the spectral
//! parameter replaced by `λ₀(1 + ε)`; the value of the entry is the `ε⁰`
//! coefficient.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::rmatrix::{gauge_entries, Gauge};
use super::{BlockTensor, Weight};
use crate::{Error, Field, Result, Scalar};

/// Orders of `ε` tracked (absolute).
pub const PRECISION: i64 = 8;

/// Laurent series `Σ_{lo ≤ k < hi} c_k ε^k + O(ε^hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    lo: i64,
    coeffs: Vec<Scalar>,
}

impl Series {
    fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    fn coeff(&self, k: i64) -> Scalar {
        if k < self.lo || k >= self.hi() {
            Scalar::zero()
        } else {
            self.coeffs[(k - self.lo) as usize].clone()
        }
    }

    fn from_range(lo: i64, hi: i64, mut f: impl FnMut(i64) -> Scalar) -> Series {
        let hi = hi.min(PRECISION);
        let coeffs = if hi > lo { (lo..hi).map(&mut f).collect() } else { Vec::new() };
        Series { lo, coeffs }
    }

    /// `x₀(1 + ε)`.
    pub fn perturbed(x0: &Scalar) -> Series {
        Series::from_range(0, PRECISION, |k| if k <= 1 { x0.clone() } else { Scalar::zero() })
    }

    /// Exponent of the first nonzero known coefficient, or `hi` if none.
    fn valuation(&self) -> i64 {
        self.coeffs.iter().position(|c| !c.is_zero()).map_or(self.hi(), |p| self.lo + p as i64)
    }

    /// The `ε⁰` coefficient; fails on a pole or if precision ran out.
    pub fn value_at_zero(&self) -> Result<Scalar> {
        if self.hi() <= 0 {
            return Err(Error::SingularParameter("series precision exhausted before ε⁰".into()));
        }
        if (self.lo..0).any(|k| !self.coeff(k).is_zero()) {
            return Err(Error::SingularParameter("pole at the limit point".into()));
        }
        Ok(self.coeff(0))
    }
}

impl Add for Series {
    type Output = Series;

    fn add(self, rhs: Series) -> Series {
        Series::from_range(self.lo.min(rhs.lo), self.hi().min(rhs.hi()), |k| self.coeff(k) + rhs.coeff(k))
    }
}

impl Sub for Series {
    type Output = Series;

    fn sub(self, rhs: Series) -> Series {
        self + (-rhs)
    }
}

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { lo: self.lo, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Series {
    type Output = Series;

    fn mul(self, rhs: Series) -> Series {
        let (va, vb) = (self.valuation(), rhs.valuation());
        let hi = (self.hi() + vb).min(rhs.hi() + va);
        let lo = va.min(self.hi()) + vb.min(rhs.hi());
        Series::from_range(lo, hi, |k| {
            let mut acc = Scalar::zero();
            for i in va..self.hi() {
                let j = k - i;
                if j < vb {
                    break;
                }
                let a = self.coeff(i);
                if !a.is_zero() {
                    let b = rhs.coeff(j);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            acc
        })
    }
}

impl Field for Series {
    fn from_scalar(value: Scalar) -> Self {
        Series::from_range(0, PRECISION, |k| if k == 0 { value.clone() } else { Scalar::zero() })
    }

    /// Zero to the tracked precision.
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn checked_inv(&self) -> Option<Self> {
        let v = self.valuation();
        if v >= self.hi() {
            return None;
        }
        let u: Vec<Scalar> = (v..self.hi()).map(|k| self.coeff(k)).collect();
        let u0_inv = u[0].checked_inv().ok()?;
        let mut b: Vec<Scalar> = Vec::with_capacity(u.len());
        b.push(u0_inv.clone());
        for n in 1..u.len() {
            let s: Scalar = (1..=n).map(|k| &u[k] * &b[n - k]).sum();
            b.push(-(s * &u0_inv));
        }
        let lo = -v;
        let hi = lo + b.len() as i64;
        Some(Series::from_range(lo, hi, |k| b[(k - lo) as usize].clone()))
    }
}

fn gauge_limit(i_w: Weight, j_w: Weight, h: &Scalar, lambda0: &Scalar, gauge: Gauge) -> Result<BlockTensor> {
    super::check_nome(h)?;
    let entries = gauge_entries(i_w, j_w, &Series::from_scalar(h.clone()), &Series::perturbed(lambda0), gauge)?;
    let entries = entries.iter().map(Series::value_at_zero).collect::<Result<Vec<_>>>()?;
    Ok(BlockTensor::from_entries(i_w, j_w, entries))
}

/// `lim_{λ→λ₀} S_{I,J}(λ)`, defined also where the closed form is `0/0`.
pub fn s_limit(i_w: Weight, j_w: Weight, h: &Scalar, lambda0: &Scalar) -> Result<BlockTensor> {
    gauge_limit(i_w, j_w, h, lambda0, Gauge::Stochastic)
}

/// `lim_{λ→λ₀} R̄_{I,J}(λ)`.
pub fn rbar_limit(i_w: Weight, j_w: Weight, h: &Scalar, lambda0: &Scalar) -> Result<BlockTensor> {
    gauge_limit(i_w, j_w, h, lambda0, Gauge::Symmetric)
}

/// Convenience for tests: the series `Σ c_k ε^k` from explicit coefficients.
pub fn series_from_coeffs(lo: i64, coeffs: &[Scalar]) -> Series {
    let mut padded = coeffs.to_vec();
    padded.resize((PRECISION - lo).max(0) as usize, Scalar::zero());
    Series::from_range(lo, PRECISION, |k| padded[(k - lo) as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::space::permutation;
    use crate::lattice::{build_s, build_s_degenerate, DegenerateKind, ModelParams};

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn removable_quotient() {
        // ((1+ε)² - 1) / ((1+ε) - 1) → 2
        let x = Series::perturbed(&Scalar::one());
        let one = Series::one();
        let num = x.clone() * x.clone() - one.clone();
        let den = x - one;
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q.value_at_zero().unwrap(), s(2, 1));
    }

    #[test]
    fn pole_detected() {
        let e = series_from_coeffs(1, &[Scalar::one()]);
        let inv = e.checked_inv().unwrap();
        assert!(inv.value_at_zero().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = series_from_coeffs(0, &[s(2, 3), s(-1, 5), s(7, 2)]);
        let prod = a.clone() * a.checked_inv().unwrap();
        assert_eq!(prod.value_at_zero().unwrap(), Scalar::one());
        assert!(prod.coeffs[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn regular_points_agree_with_exact() {
        let (h, lam) = (s(2, 3), s(5, 7));
        let w2 = Weight::new(2).unwrap();
        let exact = build_s(w2, w2, &ModelParams::new(h.clone(), lam.clone()).unwrap()).unwrap();
        assert_eq!(s_limit(w2, w2, &h, &lam).unwrap(), exact);
    }

    #[test]
    fn degenerate_points_are_limits() {
        let h = s(2, 3);
        for a in 1..=3 {
            for b in 1..=3 {
                let (wa, wb) = (Weight::new(a).unwrap(), Weight::new(b).unwrap());
                for kind in DegenerateKind::ALL {
                    if !kind.applies(wa, wb) {
                        assert!(matches!(build_s_degenerate(kind, wa, wb, &h), Err(crate::Error::InvalidArgument(_))));
                        continue;
                    }
                    let lam = kind.lambda(wa, wb, &h).unwrap();
                    let closed = build_s_degenerate(kind, wa, wb, &h).unwrap();
                    assert_eq!(s_limit(wa, wb, &h, &lam).unwrap(), closed, "{} ({a},{b})", kind.id());
                }
            }
        }
    }

    #[test]
    fn regularity_at_one() {
        let h = s(-3, 4);
        for n in 1..=3 {
            let w = Weight::new(n).unwrap();
            let r = rbar_limit(w, w, &h, &Scalar::one()).unwrap();
            assert_eq!(r.to_matrix(), permutation(w));
        }
    }
}
