use alloc::format;
use alloc::vec;

use super::{qpow, tensor_entries, BlockTensor, ModelParams, Weight};
use crate::qseries::{phi_terminating, qbinom, qpoch, PhiSeriesSpec};
use crate::{Error, Field, Result, Scalar};

/// `R_{I,J}(λ)^{i',j'}_{i,j}` over any field, with `q = h²`.
///
/// The inner `4φ3` is summed to `k = min(i, j')`; beyond that a numerator
/// factor vanishes.
#[allow(clippy::too_many_arguments)]
pub fn r_element_in<F: Field>(
    i_w: Weight,
    j_w: Weight,
    h: &F,
    lambda: &F,
    i: usize,
    j: usize,
    ip: usize,
    jp: usize,
) -> Result<F> {
    if i + j != ip + jp {
        return Ok(F::zero());
    }
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    let (ii, jj, iip, jjp) = (i as i64, j as i64, ip as i64, jp as i64);
    let qq = qpow(h, 2)?;
    let l2 = lambda.clone() * lambda.clone();
    let inv_l2 = l2.checked_inv().ok_or_else(|| Error::SingularParameter("λ = 0".into()))?;

    let q_2j = qpow(h, -2 * cj)?;
    let num = qpow(h, iip * jjp - ii * jj - ii * cj - ci * jjp)?
        * qbinom(i + j, ii, &qq)?
        * qpoch(&(qpow(h, ci - cj)? * inv_l2.clone()), &qq, jp)
        * qpoch(&(qpow(h, cj - ci)? * inv_l2.clone()), &qq, i)
        * qpoch(&q_2j, &qq, j);
    let den = qpoch(&(qpow(h, -ci - cj)? * inv_l2), &qq, i + j) * qpoch(&q_2j, &qq, jp);
    let pre = num
        .checked_div(&den)
        .map_err(|_| Error::SingularParameter(format!("prefactor denominator of R[{i},{j};{ip},{jp}] vanishes")))?;

    let spec = PhiSeriesSpec::new(
        vec![
            qpow(h, -2 * ii)?,
            qpow(h, -2 * jjp)?,
            l2.clone() * qpow(h, -ci - cj)?,
            l2.clone() * qpow(h, 2 + ci + cj - 2 * ii - 2 * jj)?,
        ],
        vec![
            qpow(h, -2 * ii - 2 * jj)?,
            l2.clone() * qpow(h, 2 + ci - cj - 2 * ii)?,
            l2 * qpow(h, 2 + cj - ci - 2 * jjp)?,
        ],
        qq.clone(),
        qq,
        i.min(jp),
    );
    let series = phi_terminating(&spec).map_err(Error::into_parameter)?;
    Ok(pre * series)
}

pub fn r_element(i_w: Weight, j_w: Weight, params: &ModelParams, idx: [usize; 4]) -> Result<Scalar> {
    let [i, j, ip, jp] = idx;
    if i > i_w.get() || ip > i_w.get() || j > j_w.get() || jp > j_w.get() {
        return Err(Error::InvalidArgument(format!("index {idx:?} outside V_{} ⊗ V_{}", i_w.get(), j_w.get())));
    }
    r_element_in(i_w, j_w, &params.h, &params.lambda, i, j, ip, jp)
}

/// Which normalization of the R-matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Gauge {
    Plain,
    /// Extra `λ^{i - i'}`.
    Symmetric,
    /// Extra `q^{ij - i'j' - Ji + Ij'}`; unit column sums.
    Stochastic,
}

pub(crate) fn gauge_entries<F: Field>(
    i_w: Weight,
    j_w: Weight,
    h: &F,
    lambda: &F,
    gauge: Gauge,
) -> Result<alloc::vec::Vec<F>> {
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    tensor_entries(i_w, j_w, |i, j, ip, jp| {
        let r = r_element_in(i_w, j_w, h, lambda, i, j, ip, jp)?;
        let (i, j, ip, jp) = (i as i64, j as i64, ip as i64, jp as i64);
        Ok(match gauge {
            Gauge::Plain => r,
            Gauge::Symmetric => r * lambda.powi(i - ip)?,
            Gauge::Stochastic => r * qpow(h, i * j - ip * jp - cj * i + ci * jp)?,
        })
    })
}

fn build(i_w: Weight, j_w: Weight, p: &ModelParams, gauge: Gauge) -> Result<BlockTensor> {
    let entries = gauge_entries(i_w, j_w, &p.h, &p.lambda, gauge)?;
    Ok(BlockTensor::from_entries(i_w, j_w, entries))
}

pub fn build_r(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    build(i_w, j_w, params, Gauge::Plain)
}

/// The symmetric gauge `R̄`, invariant under exchanging the factors when `I = J`.
pub fn build_rbar(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    build(i_w, j_w, params, Gauge::Symmetric)
}

/// The stochastic gauge `S`.
pub fn build_s(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    build(i_w, j_w, params, Gauge::Stochastic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::space::{embed_two, permutation};
    use crate::linalg::Matrix;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    fn w(n: u32) -> Weight {
        Weight::new(n).unwrap()
    }

    #[test]
    fn conservation_zero() {
        let p = ModelParams::new(s(1, 2), s(3, 2)).unwrap();
        assert_eq!(r_element(w(2), w(2), &p, [1, 1, 0, 1]).unwrap(), Scalar::zero());
        assert!(r_element(w(1), w(1), &p, [2, 0, 2, 0]).is_err());
    }

    #[test]
    fn six_vertex_corner_is_one() {
        let p = ModelParams::new(s(1, 2), s(3, 2)).unwrap();
        let t = build_s(w(1), w(1), &p).unwrap();
        assert_eq!(t.get(0, 0, 0, 0), &Scalar::one());
        assert_eq!(t.get(1, 1, 1, 1), &Scalar::one());
        for c in t.column_sums() {
            assert_eq!(c, Scalar::one());
        }
    }

    /// Spin-1/2 stochastic weights with `ξ = λ²`, derived by hand from the
    /// six-vertex model: column `(1,0)` holds `(1-ξ)/(1-q²ξ)` and
    /// `(1-q²)ξ/(1-q²ξ)`, column `(0,1)` holds `(1-q²)/(1-q²ξ)` and
    /// `q²(1-ξ)/(1-q²ξ)`.
    #[test]
    fn spin_half_entries() {
        let (h, lam) = (s(2, 3), s(5, 7));
        let p = ModelParams::new(h, lam.clone()).unwrap();
        let qq = p.q() * p.q();
        let xi = &lam * &lam;
        let one = Scalar::one();
        let den = &one - &qq * &xi;
        let t = build_s(w(1), w(1), &p).unwrap();
        let f = |n: Scalar| n.checked_div(&den).unwrap();
        assert_eq!(t.get(1, 0, 1, 0), &f(&one - &xi));
        assert_eq!(t.get(0, 1, 1, 0), &f((&one - &qq) * &xi));
        assert_eq!(t.get(1, 0, 0, 1), &f(&one - &qq));
        assert_eq!(t.get(0, 1, 0, 1), &f(&qq * (&one - &xi)));
        assert_eq!(t.get(1, 0, 1, 0), &s(1944, 3569));
    }

    #[test]
    fn rbar_is_permutation_symmetric() {
        let p = ModelParams::new(s(3, 5), s(-7, 4)).unwrap();
        for n in 1..=3 {
            let m = build_rbar(w(n), w(n), &p).unwrap().to_matrix();
            let pm = permutation(w(n));
            assert_eq!(Matrix::product([&pm, &m, &pm]), m);
        }
    }

    #[test]
    fn inversion_relation() {
        let lam = s(4, 9);
        let p = ModelParams::new(s(-2, 5), lam.clone()).unwrap();
        let pinv = p.with_lambda(lam.checked_inv().unwrap()).unwrap();
        for (a, b) in [(1, 1), (1, 2), (3, 2)] {
            let dims = [a as usize + 1, b as usize + 1];
            let s12 = embed_two(&build_s(w(a), w(b), &p).unwrap(), &dims, 0, 1);
            let s21 = embed_two(&build_s(w(b), w(a), &pinv).unwrap(), &dims, 1, 0);
            assert_eq!(s12.mul(&s21), Matrix::identity(dims[0] * dims[1]));
        }
    }
}
