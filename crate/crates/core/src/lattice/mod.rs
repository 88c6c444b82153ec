//! Higher-spin R-matrices on `V_I ⊗ V_J` and the objects derived from them.
//!
//! Index convention: a [`BlockTensor`] entry `(i, j, i', j')` is the matrix
//! element with row `(i, j)` and column `(i', j')`, i.e. the operator maps
//! `|i'⟩ ⊗ |j'⟩` to `Σ T(i, j, i', j') |i⟩ ⊗ |j⟩`.

mod crossing;
mod degenerate;
mod factorized;
pub mod limit;
mod loperators;
mod rmatrix;
pub mod space;

pub use crossing::{
    build_crossing, build_dual_r, build_dual_r_shifted, crossing_coefficient, f_ij, g_ij, CrossingData,
};
pub use degenerate::{build_s_degenerate, DegenerateKind};
pub use factorized::build_s_factorized;
pub use loperators::build_l_operators;
pub use rmatrix::{build_r, build_rbar, build_s, r_element, r_element_in};

use alloc::format;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::{Error, Field, Result, Scalar};

/// A positive integer weight `I`, labelling the `(I+1)`-dimensional module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u32);

impl Weight {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::InvalidWeight(0));
        }
        Ok(Weight(value))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

impl TryFrom<u32> for Weight {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Weight::new(value)
    }
}

/// `h = q^{1/2}` and a spectral parameter `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelParams {
    pub h: Scalar,
    pub lambda: Scalar,
}

impl ModelParams {
    pub fn new(h: Scalar, lambda: Scalar) -> Result<Self> {
        check_nome(&h)?;
        if lambda.is_zero() {
            return Err(Error::SingularParameter("λ = 0".into()));
        }
        Ok(ModelParams { h, lambda })
    }

    pub fn q(&self) -> Scalar {
        &self.h * &self.h
    }

    pub fn with_lambda(&self, lambda: Scalar) -> Result<Self> {
        ModelParams::new(self.h.clone(), lambda)
    }
}

pub(crate) fn check_nome(h: &Scalar) -> Result<()> {
    if h.is_zero() || h.abs().is_one() {
        return Err(Error::SingularParameter(format!("h = {h} (need h ≠ 0, ±1)")));
    }
    Ok(())
}

/// Dense 4-index array on `V_I ⊗ V_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTensor {
    weights: (Weight, Weight),
    entries: Vec<Scalar>,
}

impl BlockTensor {
    /// Builds the tensor from a generator called only on conserving index
    /// tuples; all other entries are zero.
    pub fn try_from_fn(
        i_w: Weight,
        j_w: Weight,
        f: impl FnMut(usize, usize, usize, usize) -> Result<Scalar>,
    ) -> Result<Self> {
        let entries = tensor_entries(i_w, j_w, f)?;
        Ok(BlockTensor { weights: (i_w, j_w), entries })
    }

    pub(crate) fn from_entries(i_w: Weight, j_w: Weight, entries: Vec<Scalar>) -> Self {
        debug_assert_eq!(entries.len(), (i_w.dim() * j_w.dim()).pow(2));
        BlockTensor { weights: (i_w, j_w), entries }
    }

    pub fn weights(&self) -> (Weight, Weight) {
        self.weights
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.weights.0.dim(), self.weights.1.dim())
    }

    fn offset(&self, i: usize, j: usize, ip: usize, jp: usize) -> usize {
        let (di, dj) = self.dims();
        ((i * dj + j) * di + ip) * dj + jp
    }

    pub fn get(&self, i: usize, j: usize, ip: usize, jp: usize) -> &Scalar {
        &self.entries[self.offset(i, j, ip, jp)]
    }

    /// All index tuples with their values, including zeros, in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 4], &Scalar)> + '_ {
        let (di, dj) = self.dims();
        self.entries.iter().enumerate().map(move |(n, v)| {
            let jp = n % dj;
            let ip = (n / dj) % di;
            let j = (n / (dj * di)) % dj;
            let i = n / (dj * di * dj);
            ([i, j, ip, jp], v)
        })
    }

    /// The operator as a `(I+1)(J+1)`-square matrix.
    pub fn to_matrix(&self) -> Matrix {
        let (di, dj) = self.dims();
        let n = di * dj;
        Matrix::from_fn(n, n, |r, c| self.get(r / dj, r % dj, c / dj, c % dj).clone())
    }

    /// The same operator with the two tensor factors exchanged, as a tensor
    /// on `V_J ⊗ V_I`.
    pub fn swapped(&self) -> BlockTensor {
        let (i_w, j_w) = self.weights;
        let (di, dj) = self.dims();
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..dj {
            for i in 0..di {
                for jp in 0..dj {
                    for ip in 0..di {
                        entries.push(self.get(i, j, ip, jp).clone());
                    }
                }
            }
        }
        BlockTensor { weights: (j_w, i_w), entries }
    }

    /// True when every entry off the `i + j = i' + j'` blocks is zero.
    pub fn is_conserving(&self) -> bool {
        self.iter().all(|([i, j, ip, jp], v)| i + j == ip + jp || v.is_zero())
    }

    /// `Σ_{i,j} T(i, j, i', j')` for every column `(i', j')`.
    pub fn column_sums(&self) -> Vec<Scalar> {
        self.to_matrix().column_sums()
    }
}

/// Evaluates a conserving tensor over any field, row-major.
pub(crate) fn tensor_entries<F: Field>(
    i_w: Weight,
    j_w: Weight,
    mut f: impl FnMut(usize, usize, usize, usize) -> Result<F>,
) -> Result<Vec<F>> {
    let (di, dj) = (i_w.dim(), j_w.dim());
    let mut out = Vec::with_capacity((di * dj).pow(2));
    for i in 0..di {
        for j in 0..dj {
            for ip in 0..di {
                for jp in 0..dj {
                    out.push(if i + j == ip + jp { f(i, j, ip, jp)? } else { F::zero() });
                }
            }
        }
    }
    Ok(out)
}

/// `q^k` computed from `h` as `h^{2k}`.
pub(crate) fn qpow<F: Field>(h: &F, k: i64) -> Result<F> {
    h.powi(2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn weight_zero_rejected() {
        assert_eq!(Weight::new(0), Err(Error::InvalidWeight(0)));
        assert_eq!(Weight::new(3).unwrap().dim(), 4);
    }

    #[test]
    fn params_validated() {
        assert!(ModelParams::new(s(1, 1), s(2, 1)).is_err());
        assert!(ModelParams::new(s(-1, 1), s(2, 1)).is_err());
        assert!(ModelParams::new(Scalar::zero(), s(2, 1)).is_err());
        assert!(ModelParams::new(s(1, 2), Scalar::zero()).is_err());
        assert_eq!(ModelParams::new(s(1, 2), s(3, 2)).unwrap().q(), s(1, 4));
    }

    #[test]
    fn iter_matches_get_and_swap() {
        let (a, b) = (Weight::new(1).unwrap(), Weight::new(2).unwrap());
        let t = BlockTensor::try_from_fn(a, b, |i, j, ip, jp| {
            Ok(Scalar::from_integer((1000 * i + 100 * j + 10 * ip + jp) as i64))
        })
        .unwrap();
        for ([i, j, ip, jp], v) in t.iter() {
            assert_eq!(v, t.get(i, j, ip, jp));
        }
        let sw = t.swapped();
        assert_eq!(sw.weights(), (b, a));
        assert_eq!(sw.get(2, 0, 1, 1), t.get(0, 2, 1, 1));
        assert_eq!(sw.swapped(), t);
        assert!(t.is_conserving());
    }
}
