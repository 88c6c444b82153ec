use super::{BlockTensor, ModelParams, Weight};
use crate::{Error, Result, Scalar};

/// `[v] = v - 1/v`.
fn bracket(v: &Scalar) -> Result<Scalar> {
    Ok(v - v.checked_inv()?)
}

/// Closed forms of `S_{1,J}(x)` and `S_{J,1}(x)` (the L-operators), with
/// `x = params.lambda` and every entry over the common denominator
/// `[x q^{(1+J)/2}]`.
pub fn build_l_operators(j_w: Weight, params: &ModelParams) -> Result<(BlockTensor, BlockTensor)> {
    let one = Weight::new(1)?;
    let h = &params.h;
    let x = &params.lambda;
    let q = params.q();
    let cj = j_w.as_i64();
    let d = bracket(&(x * h.pow(1 + cj)?))?;
    let d_inv = d.checked_inv().map_err(|_| Error::SingularParameter("[x q^{(1+J)/2}] = 0".into()))?;
    let x_inv = x.checked_inv()?;

    let a = BlockTensor::try_from_fn(one, j_w, |i, j, ip, jp| {
        let jj = j as i64;
        let v = match (i, ip) {
            (0, 0) if j == jp => q.pow(jj)? * bracket(&(x * h.pow(1 + cj - 2 * jj)?))?,
            (0, 1) if j == jp + 1 => x * h.pow(2 * jj - cj - 1)? * bracket(&q.pow(1 + cj - jj)?)?,
            (1, 0) if j + 1 == jp => h.pow(2 * jj - cj + 1)? * bracket(&q.pow(1 + jj)?)? * &x_inv,
            (1, 1) if j == jp => q.pow(jj - cj)? * bracket(&(x * h.pow(1 - cj + 2 * jj)?))?,
            _ => Scalar::zero(),
        };
        Ok(v * &d_inv)
    })?;

    let b = BlockTensor::try_from_fn(j_w, one, |j, i, jp, ip| {
        let jj = j as i64;
        let v = match (i, ip) {
            (0, 0) if j == jp => q.pow(-jj)? * bracket(&(x * h.pow(1 + cj - 2 * jj)?))?,
            (0, 1) if j == jp + 1 => h.pow(cj + 1 - 2 * jj)? * bracket(&q.pow(1 + cj - jj)?)? * &x_inv,
            (1, 0) if j + 1 == jp => x * h.pow(cj - 1 - 2 * jj)? * bracket(&q.pow(1 + jj)?)?,
            (1, 1) if j == jp => q.pow(cj - jj)? * bracket(&(x * h.pow(1 - cj + 2 * jj)?))?,
            _ => Scalar::zero(),
        };
        Ok(v * &d_inv)
    })?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_s;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn match_general_s_matrix() {
        let p = ModelParams::new(s(2, 3), s(5, 7)).unwrap();
        let one = Weight::new(1).unwrap();
        for n in 1..=3 {
            let w = Weight::new(n).unwrap();
            let (a, b) = build_l_operators(w, &p).unwrap();
            assert_eq!(a, build_s(one, w, &p).unwrap());
            assert_eq!(b, build_s(w, one, &p).unwrap());
            assert_eq!(a.get(0, 0, 0, 0), &Scalar::one());
        }
    }

    #[test]
    fn bottom_right_power() {
        // S_{J,1}: entry (j,1; j,1) = q^{J-j}[x q^{(1-J)/2+j}]/[x q^{(1+J)/2}]; at j = J it is 1.
        let p = ModelParams::new(s(3, 5), s(-4, 9)).unwrap();
        let w = Weight::new(2).unwrap();
        let (_, b) = build_l_operators(w, &p).unwrap();
        assert_eq!(b.get(2, 1, 2, 1), &Scalar::one());
    }

    #[test]
    fn singular_denominator() {
        // x = q^{-(1+J)/2} makes [x q^{(1+J)/2}] vanish.
        let h = s(1, 2);
        let w = Weight::new(1).unwrap();
        let p = ModelParams::new(h.clone(), h.pow(-2).unwrap()).unwrap();
        assert!(matches!(build_l_operators(w, &p), Err(Error::SingularParameter(_))));
    }
}
