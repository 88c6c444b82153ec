use super::{qpow, BlockTensor, ModelParams, Weight};
use crate::qseries::phi_weight;
use crate::{Error, Result, Scalar};

/// The stochastic S-matrix as a convolution of two Φ weights:
/// `S^{i',j'}_{i,j} = Σ_{m+n=i+j} Φ_{q²}(m-j | m; q^{J-I}/λ², q^{-I-J}/λ²)
/// Φ_{q²}(n | j'; λ²/q^{I+J}, q^{-2J})`.
///
/// Shares no summation code with [`super::build_s`]; agreement of the two
/// is a test.
pub fn build_s_factorized(i_w: Weight, j_w: Weight, params: &ModelParams) -> Result<BlockTensor> {
    let h = &params.h;
    let (ci, cj) = (i_w.as_i64(), j_w.as_i64());
    let l2 = &params.lambda * &params.lambda;
    let inv_l2 = l2.checked_inv()?;
    let qq = params.q() * params.q();
    let x1 = qpow(h, cj - ci)? * &inv_l2;
    let y1 = qpow(h, -ci - cj)? * &inv_l2;
    let x2 = &l2 * qpow(h, -ci - cj)?;
    let y2 = qpow(h, -2 * cj)?;
    BlockTensor::try_from_fn(i_w, j_w, |i, j, _ip, jp| {
        let mut acc = Scalar::zero();
        for m in 0..=i + j {
            let first = phi_weight(m as i64 - j as i64, m, &x1, &y1, &qq)?;
            if first.is_zero() {
                continue;
            }
            acc += first * phi_weight((i + j - m) as i64, jp, &x2, &y2, &qq)?;
        }
        Ok(acc)
    })
    .map_err(Error::into_parameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_s;

    #[test]
    fn matches_hypergeometric_form() {
        let p = ModelParams::new(Scalar::new(1, 2).unwrap(), Scalar::new(3, 2).unwrap()).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                let (wa, wb) = (Weight::new(a).unwrap(), Weight::new(b).unwrap());
                assert_eq!(build_s_factorized(wa, wb, &p).unwrap(), build_s(wa, wb, &p).unwrap(), "({a},{b})");
            }
        }
    }
}
