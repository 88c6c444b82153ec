//! Boundary K-matrices for integer spin `J`, built by every available
//! route: the spin-1/2 seed, the recurrence linear system, the triangular
//! closed forms, the double-sum N-matrix, and the generating function.
//!
//! A K-matrix is indexed `K^l_j` with row `j` and column `l`. At `μ = 1`
//! every route is normalized to unit column sums.

mod closed;
mod genfun;
mod recurrence;
mod relations;
mod seed;

pub use closed::{k_lower, k_upper, kbar, kbar_from, n_closed, n_first_column, n_norm, n_to_k, nbar_norm};
pub use genfun::{
    f0, genfun_direct, genfun_eval, genfun_residuals, genfun_table, residual_6_10, residual_6_9, residual_7_1,
    residual_7_6, GenFunPoint, GenFunSource,
};
pub use recurrence::{k_recurrence, k_recurrence_window, recurrence_equations, Equation};
pub use relations::{
    column_sum_spread, k_defining_residual, n_first_column_residual, n_recurrence_residual, stochastic_residual,
    symmetry_residual,
};
pub use seed::k_half;

use alloc::format;
use alloc::vec::Vec;

use crate::lattice::Weight;
use crate::linalg::Matrix;
use crate::{Error, Result, Scalar};

/// Boundary constants `t_±, μ, ν`, the spectral point `y`, and `h = q^{1/2}`.
///
/// `t` is the square root of `t_+/t_-` used by the non-triangular closed
/// forms; it is `None` for the triangular regimes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryParams {
    pub t_plus: Scalar,
    pub t_minus: Scalar,
    pub mu: Scalar,
    pub nu: Scalar,
    pub t: Option<Scalar>,
    pub y: Scalar,
    pub h: Scalar,
}

impl BoundaryParams {
    pub fn new(
        h: Scalar,
        y: Scalar,
        t_plus: Scalar,
        t_minus: Scalar,
        mu: Scalar,
        nu: Scalar,
        t: Option<Scalar>,
    ) -> Result<Self> {
        crate::lattice::check_nome(&h)?;
        for (name, v) in [("y", &y), ("ν", &nu), ("μ", &mu)] {
            if v.is_zero() {
                return Err(Error::SingularParameter(format!("{name} = 0")));
            }
        }
        if t_plus.is_zero() && t_minus.is_zero() {
            return Err(Error::InvalidArgument("t_+ and t_- cannot both vanish".into()));
        }
        if let Some(t) = &t {
            if t.is_zero() {
                return Err(Error::SingularParameter("t = 0".into()));
            }
            if t * t * &t_minus != t_plus {
                return Err(Error::InvalidArgument(format!("t² = {} but t_+/t_- = {t_plus}/{t_minus}", t * t)));
            }
        }
        Ok(BoundaryParams { t_plus, t_minus, mu, nu, t, y, h })
    }

    /// The non-triangular family with `t_+ = t²`, `t_- = 1`.
    pub fn from_t(h: Scalar, y: Scalar, t: Scalar, mu: Scalar, nu: Scalar) -> Result<Self> {
        Self::new(h, y, &t * &t, Scalar::one(), mu, nu, Some(t))
    }

    /// `t_+ = 0`, `t_- = 1`: upper-triangular K.
    pub fn upper(h: Scalar, y: Scalar, mu: Scalar, nu: Scalar) -> Result<Self> {
        Self::new(h, y, Scalar::zero(), Scalar::one(), mu, nu, None)
    }

    /// `t_+ = 1`, `t_- = 0`: lower-triangular K.
    pub fn lower(h: Scalar, y: Scalar, mu: Scalar, nu: Scalar) -> Result<Self> {
        Self::new(h, y, Scalar::one(), Scalar::zero(), mu, nu, None)
    }

    /// Same constants at another spectral point.
    pub fn with_spectral(&self, y: Scalar) -> Result<Self> {
        if y.is_zero() {
            return Err(Error::SingularParameter("spectral point 0".into()));
        }
        Ok(BoundaryParams { y, ..self.clone() })
    }

    pub fn with_mu(&self, mu: Scalar) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::SingularParameter("μ = 0".into()));
        }
        Ok(BoundaryParams { mu, ..self.clone() })
    }

    pub fn q(&self) -> Scalar {
        &self.h * &self.h
    }

    pub fn t(&self) -> Result<&Scalar> {
        self.t.as_ref().ok_or_else(|| Error::InvalidArgument("this route needs t with t² = t_+/t_-".into()))
    }

    pub fn regime(&self) -> Regime {
        if self.t_plus.is_zero() {
            Regime::Upper
        } else if self.t_minus.is_zero() {
            Regime::Lower
        } else {
            Regime::General
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Upper,
    Lower,
    General,
}

/// `(J+1) × (J+1)` boundary matrix, row `j`, column `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatrix {
    spin: Weight,
    entries: Matrix,
}

impl KMatrix {
    pub fn new(spin: Weight, entries: Matrix) -> Result<Self> {
        if entries.rows() != spin.dim() || entries.cols() != spin.dim() {
            return Err(Error::InvalidArgument(format!(
                "K-matrix for spin {} must be {}×{}",
                spin.get(),
                spin.dim(),
                spin.dim()
            )));
        }
        Ok(KMatrix { spin, entries })
    }

    pub fn spin(&self) -> Weight {
        self.spin
    }

    pub fn get(&self, j: usize, l: usize) -> &Scalar {
        &self.entries[(j, l)]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn column_sums(&self) -> Vec<Scalar> {
        self.entries.column_sums()
    }

    pub fn is_stochastic(&self) -> bool {
        self.column_sums().iter().all(Scalar::is_one)
    }

    pub fn scaled(&self, s: &Scalar) -> KMatrix {
        KMatrix { spin: self.spin, entries: self.entries.scale(s) }
    }

    /// Rescaled so that column 0 sums to one.
    pub fn normalized(&self) -> Result<KMatrix> {
        let c = &self.column_sums()[0];
        let inv = c.checked_inv().map_err(|_| Error::SingularDraw("first column of K sums to zero".into()))?;
        Ok(self.scaled(&inv))
    }

    /// Rescaled so that `K^0_0` equals `target`.
    pub fn normalized_corner(&self, target: &Scalar) -> Result<KMatrix> {
        let s = target.checked_div(self.get(0, 0)).map_err(|_| Error::SingularDraw("K^0_0 vanishes".into()))?;
        Ok(self.scaled(&s))
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.spin.dim();
        (0..n).all(|j| (0..j).all(|l| self.get(j, l).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        let n = self.spin.dim();
        (0..n).all(|j| (j + 1..n).all(|l| self.get(j, l).is_zero()))
    }
}

/// Symmetrized companion `N_{j,l}` of a K-matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NMatrix {
    spin: Weight,
    entries: Matrix,
}

impl NMatrix {
    pub fn new(spin: Weight, entries: Matrix) -> Result<Self> {
        if entries.rows() != spin.dim() || entries.cols() != spin.dim() {
            return Err(Error::InvalidArgument("N-matrix has the wrong size".into()));
        }
        Ok(NMatrix { spin, entries })
    }

    pub fn spin(&self) -> Weight {
        self.spin
    }

    pub fn get(&self, j: usize, l: usize) -> &Scalar {
        &self.entries[(j, l)]
    }

    /// `N_{j,l}`, zero outside `0..=J`.
    pub fn at(&self, j: i64, l: i64) -> Scalar {
        let n = self.spin.dim() as i64;
        if j < 0 || l < 0 || j >= n || l >= n {
            Scalar::zero()
        } else {
            self.entries[(j as usize, l as usize)].clone()
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == self.entries.transpose()
    }
}

/// Construction routes for `K_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KRoute {
    /// The 2×2 solution; spin 1 only.
    Seed,
    Recurrence,
    /// `n_to_k(n_closed)`.
    Closed,
    Upper,
    Lower,
}

impl KRoute {
    pub const ALL: [KRoute; 5] = [KRoute::Seed, KRoute::Recurrence, KRoute::Closed, KRoute::Upper, KRoute::Lower];

    pub fn id(&self) -> &'static str {
        match self {
            KRoute::Seed => "seed",
            KRoute::Recurrence => "recurrence",
            KRoute::Closed => "closed",
            KRoute::Upper => "upper",
            KRoute::Lower => "lower",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        KRoute::ALL.into_iter().find(|r| r.id() == id)
    }
}

/// `K_J(y)` by the given route, at the spectral point `params.y`.
///
/// Closed routes carry their own stochastic normalization; the seed is
/// returned as printed; the recurrence is normalized as in
/// [`k_recurrence`].
pub fn build_k(route: KRoute, spin: Weight, params: &BoundaryParams) -> Result<KMatrix> {
    match route {
        KRoute::Seed => {
            if spin.get() != 1 {
                return Err(Error::InvalidArgument("the seed route only builds spin 1".into()));
            }
            k_half(params, &params.y)
        }
        KRoute::Recurrence => k_recurrence(spin, params),
        KRoute::Closed => n_to_k(&n_closed(spin, params)?, params),
        KRoute::Upper => k_upper(spin, params),
        KRoute::Lower => k_lower(spin, params),
    }
}

/// Power `q^k` from `h`.
pub(crate) fn qp(params: &BoundaryParams, k: i64) -> Result<Scalar> {
    params.h.pow(2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn params_validation() {
        let h = s(1, 2);
        assert!(BoundaryParams::from_t(h.clone(), s(3, 2), s(2, 3), s(1, 1), s(1, 5)).is_ok());
        assert!(BoundaryParams::from_t(h.clone(), Scalar::zero(), s(2, 3), s(1, 1), s(1, 5)).is_err());
        assert!(
            BoundaryParams::new(h.clone(), s(3, 2), Scalar::zero(), Scalar::zero(), s(1, 1), s(1, 5), None).is_err()
        );
        assert!(BoundaryParams::new(h.clone(), s(3, 2), s(1, 1), s(1, 1), s(1, 1), s(1, 5), Some(s(2, 1))).is_err());
        assert_eq!(BoundaryParams::upper(h.clone(), s(3, 2), s(1, 1), s(1, 5)).unwrap().regime(), Regime::Upper);
        assert_eq!(BoundaryParams::lower(h, s(3, 2), s(1, 1), s(1, 5)).unwrap().regime(), Regime::Lower);
    }

    #[test]
    fn route_ids_round_trip() {
        for r in KRoute::ALL {
            assert_eq!(KRoute::from_id(r.id()), Some(r));
        }
    }
}
