use alloc::vec::Vec;

use super::space::{diagonal, embed_one, embed_two, partial_transpose};
use super::{build_s, qpow, BlockTensor, ModelParams, Weight};
use crate::linalg::Matrix;
use crate::qseries::qpoch;
use crate::{Error, Result, Scalar};

/// Crossing data for `V_I ⊗ V_J` at one spectral point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingData {
    /// Anti-diagonal, `V_{i, I-i} = c_{i,I}`.
    pub v: Matrix,
    /// `diag(1, q², …, q^{2I})`.
    pub m: Matrix,
    pub f: Scalar,
    pub g: Scalar,
}

/// `c_{i,I} = q^{i(i+1)} (q^{-2I}; q²)_i / (q²; q²)_i`.
pub fn crossing_coefficient(i: usize, i_w: Weight, h: &Scalar) -> Result<Scalar> {
    let qq = qpow(h, 2)?;
    let ii = i as i64;
    let num = qpow(h, ii * (ii + 1))? * qpoch(&qpow(h, -2 * i_w.as_i64())?, &qq, i);
    num.checked_div(&qpoch(&qq, &qq, i))
}

/// `f_{IJ}(λ) = q^{-IJ} (λ² q^{2-I+J}; q²)_I / (λ² q^{2-I-J}; q²)_I`.
pub fn f_ij(i_w: Weight, j_w: Weight, h: &Scalar, lambda: &Scalar) -> Result<Scalar> {
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    let qq = qpow(h, 2)?;
    let l2 = lambda * lambda;
    let num = qpow(h, -ci * cj)? * qpoch(&(&l2 * qpow(h, 2 - ci + cj)?), &qq, i_w.get());
    num.checked_div(&qpoch(&(&l2 * qpow(h, 2 - ci - cj)?), &qq, i_w.get()))
        .map_err(|_| Error::SingularParameter("denominator of f_IJ vanishes".into()))
}

/// `g_{IJ}(λ) = (1-λ²q^{2+I+J})(1-λ²q^{2-I-J}) / ((1-λ²q^{2+I-J})(1-λ²q^{2-I+J}))`.
pub fn g_ij(i_w: Weight, j_w: Weight, h: &Scalar, lambda: &Scalar) -> Result<Scalar> {
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    let l2 = lambda * lambda;
    let one = Scalar::one();
    let fac = |k: i64| -> Result<Scalar> { Ok(&one - &l2 * qpow(h, k)?) };
    let num = fac(2 + ci + cj)? * fac(2 - ci - cj)?;
    num.checked_div(&(fac(2 + ci - cj)? * fac(2 - ci + cj)?))
        .map_err(|_| Error::SingularParameter("denominator of g_IJ vanishes".into()))
}

pub fn build_crossing(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<CrossingData> {
    let (h, lambda) = (&params.h, &params.lambda);
    let d = i_w.dim();
    let mut v = Matrix::zeros(d, d);
    for i in 0..d {
        v[(i, d - 1 - i)] = crossing_coefficient(i, i_w, h)?;
    }
    let (m, _) = twist(i_w, h)?;
    Ok(CrossingData { v, m, f: f_ij(i_w, j_w, h, lambda)?, g: g_ij(i_w, j_w, h, lambda)? })
}

/// `M = diag(q^{2i})` on `V_I`, and its inverse.
pub(crate) fn twist(i_w: Weight, h: &Scalar) -> Result<(Matrix, Matrix)> {
    let d = i_w.dim() as i64;
    let m = diagonal((0..d).map(|i| qpow(h, 2 * i)).collect::<Result<Vec<_>>>()?);
    let m_inv = diagonal((0..d).map(|i| qpow(h, -2 * i)).collect::<Result<Vec<_>>>()?);
    Ok((m, m_inv))
}

fn tensor_from_matrix(i_w: Weight, j_w: Weight, m: &Matrix) -> Result<BlockTensor> {
    let t = BlockTensor::from_entries(
        i_w,
        j_w,
        (0..m.rows() * m.cols())
            .map(|n| {
                let (r, c) = (n / m.cols(), n % m.cols());
                m[(r, c)].clone()
            })
            .collect(),
    );
    if !t.is_conserving() {
        return Err(Error::InvalidArgument("operator does not conserve i + j".into()));
    }
    Ok(t)
}

/// `𝓡₁₂(λ) = [(S₂₁(1/λ)^{t₁})^{-1}]^{t₁}` on `V_I ⊗ V_J`, by exact inversion.
fn dual_r_by_inversion(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<Matrix> {
    let dims = [i_w.dim(), j_w.dim()];
    let inv_lambda = params.lambda.checked_inv()?;
    let s21 = embed_two(&build_s(j_w, i_w, &params.with_lambda(inv_lambda)?)?, &dims, 1, 0);
    let inv = partial_transpose(&s21, &dims, 0)
        .inverse()
        .map_err(|_| Error::SingularParameter("S₂₁^{t₁} is not invertible".into()))?;
    Ok(partial_transpose(&inv, &dims, 0))
}

/// `𝓡₁₂(λ)` through crossing unitarity:
/// `M₁^{-1} S₁₂(λ/q²) M₁ / g_{IJ}(λ/q²)`.
pub fn build_dual_r_shifted(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    let dims = [i_w.dim(), j_w.dim()];
    let shifted = params.lambda.checked_div(&(params.q() * params.q()))?;
    let p = params.with_lambda(shifted.clone())?;
    let (m, m_inv) = twist(i_w, &params.h)?;
    let g_inv = g_ij(i_w, j_w, &params.h, &shifted)?
        .checked_inv()
        .map_err(|_| Error::SingularParameter("g_IJ(λ/q²) = 0".into()))?;
    let prod = Matrix::product([
        &embed_one(&m_inv, &dims, 0),
        &embed_two(&build_s(i_w, j_w, &p)?, &dims, 0, 1),
        &embed_one(&m, &dims, 0),
    ])
    .scale(&g_inv);
    tensor_from_matrix(i_w, j_w, &prod)
}

/// The operator `𝓡₁₂(λ)` entering the dual reflection equation, by
/// partial-transpose inversion.
///
/// # Panics
///
/// If the inversion result differs from [`build_dual_r_shifted`]; the two
/// are independent constructions of the same operator.
pub fn build_dual_r(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    let by_inv = tensor_from_matrix(i_w, j_w, &dual_r_by_inversion(i_w, j_w, params)?)?;
    let shifted = build_dual_r_shifted(i_w, j_w, params)?;
    assert_eq!(by_inv, shifted, "dual R constructions disagree");
    Ok(by_inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    fn w(n: u32) -> Weight {
        Weight::new(n).unwrap()
    }

    #[test]
    fn v_first_row() {
        let p = ModelParams::new(s(1, 2), s(3, 5)).unwrap();
        for n in 1..=3 {
            let c = build_crossing(w(n), w(1), &p).unwrap();
            assert_eq!(c.v[(0, n as usize)], Scalar::one());
            for k in 0..n as usize {
                assert!(c.v[(0, k)].is_zero());
            }
            assert!(c.v.inverse().is_ok());
        }
    }

    #[test]
    fn g_is_ratio_of_f() {
        let (h, lam) = (s(2, 5), s(-7, 3));
        for a in 1..=3 {
            for b in 1..=3 {
                let f1 = f_ij(w(a), w(b), &h, &lam).unwrap();
                let f2 = f_ij(w(a), w(b), &h, &(&lam * &h * &h)).unwrap();
                assert_eq!(g_ij(w(a), w(b), &h, &lam).unwrap(), f2.checked_div(&f1).unwrap());
            }
        }
    }

    #[test]
    fn dual_r_paths_agree_and_invert() {
        let p = ModelParams::new(s(1, 2), s(4, 7)).unwrap();
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let dims = [a as usize + 1, b as usize + 1];
            let r = build_dual_r(w(a), w(b), &p).unwrap();
            let inv_lam = p.lambda.checked_inv().unwrap();
            let s21 = embed_two(&build_s(w(b), w(a), &p.with_lambda(inv_lam).unwrap()).unwrap(), &dims, 1, 0);
            let lhs = partial_transpose(&r.to_matrix(), &dims, 0).mul(&partial_transpose(&s21, &dims, 0));
            assert_eq!(lhs, Matrix::identity(dims[0] * dims[1]));
        }
    }
}
