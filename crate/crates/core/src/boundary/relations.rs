//! Exact residuals of the linear relations a boundary matrix must satisfy.
//! Each returns the largest absolute residual, so zero means the relation
//! holds everywhere it was checked.

use alloc::vec::Vec;

use super::{qp, recurrence_equations, BoundaryParams, KMatrix, NMatrix};
use crate::qseries::qpoch;
use crate::verify::max_abs;
use crate::{Error, Result, Scalar};

fn div(a: Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_div(b).map_err(|_| Error::SingularDraw("vanishing denominator in residual".into()))
}

fn br(v: &Scalar) -> Result<Scalar> {
    Ok(v - div(Scalar::one(), v)?)
}

/// Defining relations of `K_J` with `K^l_j = 0` for `j < 0` or `j > J`.
/// Relations that reach beyond column `J` are skipped.
pub fn k_defining_residual(k: &KMatrix, params: &BoundaryParams) -> Result<Scalar> {
    let spin = k.spin();
    let jw = spin.as_i64();
    let eqs = recurrence_equations(spin, params, jw, jw)?;
    let at = |j: i64, l: i64| -> Scalar {
        if j < 0 || j > jw {
            Scalar::zero()
        } else {
            k.get(j as usize, l as usize).clone()
        }
    };
    let res = eqs
        .iter()
        .filter(|e| e.terms.iter().all(|(_, (_, l))| (0..=jw).contains(l)))
        .map(|e| e.terms.iter().map(|(c, (j, l))| c * at(*j, *l)).sum::<Scalar>());
    Ok(max_abs(res))
}

/// The two recursions for `N_{j,l}` on `0 ≤ j, l ≤ J`, with `N` zero
/// outside that range.
pub fn n_recurrence_residual(n: &NMatrix, params: &BoundaryParams) -> Result<Scalar> {
    let jw = n.spin().as_i64();
    let t = params.t()?;
    let nu = &params.nu;
    let y2 = &params.y * &params.y;
    let one = Scalar::one();
    let tt = div(one.clone(), t)? - t;
    let tn = qp(params, 2)? * t * nu - div(one.clone(), &(t * nu))?;
    let mut out = Vec::new();
    for j in 0..=jw {
        for l in 0..=jw {
            // `a` is the index being shifted, `b` the spectator; `lo`, `hi`
            // are N at the lowered and raised index.
            let first = |a: i64, b: i64, lo: Scalar, hi: Scalar| -> Result<Scalar> {
                Ok(qp(params, 2 * a + 2 * b)? * (&one - qp(params, 2 * (1 + jw - a))?) * lo
                    + qp(params, 2 * (1 + b + jw))? * (&one - qp(params, 2 + 2 * a)?) * hi
                    + qp(params, 2 * (1 + jw + a))? * &tt * n.at(j, l))
            };
            let second = |a: i64, lo: Scalar, hi: Scalar| -> Result<Scalar> {
                Ok(div(qp(params, 2 * a)?, &y2)? * (&one - qp(params, 2 * (1 + jw - a))?) * lo
                    + &y2 * qp(params, 4 + 2 * jw)? * (&one - qp(params, 2 + 2 * a)?) * hi
                    + qp(params, 2 + jw + 2 * a)? * &tn * n.at(j, l))
            };
            out.push(first(j, l, n.at(j - 1, l), n.at(j + 1, l))? - first(l, j, n.at(j, l - 1), n.at(j, l + 1))?);
            out.push(second(j, n.at(j - 1, l), n.at(j + 1, l))? - second(l, n.at(j, l - 1), n.at(j, l + 1))?);
        }
    }
    Ok(max_abs(out))
}

/// Three-term recurrence of the first column `N_{j,0}`, for `0 ≤ j ≤ J+1`.
pub fn n_first_column_residual(n: &NMatrix, params: &BoundaryParams) -> Result<Scalar> {
    let jw = n.spin().as_i64();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let y4 = &y2 * &y2;
    let one = Scalar::one();
    let mid = br(t)?;
    let cross = br(&(params.q() * t * &params.nu))?;
    let mut out = Vec::new();
    for j in 0..=jw + 1 {
        let r = qpoch(&qp(params, 2 * j)?, &qq, 2) * n.at(j + 1, 0)
            + (&one - qp(params, 2 * j)?) * (&mid + div(&cross * qp(params, 2 * j - jw - 1)?, &y2)?) * n.at(j, 0)
            - (&one - qp(params, 2 * (j - jw - 1))?) * (&one - div(qp(params, 2 * j - 2)?, &y4)?) * n.at(j - 1, 0);
        out.push(r);
    }
    Ok(max_abs(out))
}

/// `K^l_j = (-q²μ²t_+/t_-)^{j-l} (q^{-2J};q²)_j (q²;q²)_l / ((q^{-2J};q²)_l (q²;q²)_j) · K^j_l`.
pub fn symmetry_residual(k: &KMatrix, params: &BoundaryParams) -> Result<Scalar> {
    let jw = k.spin().as_i64();
    let qq = qp(params, 2)?;
    let a = qp(params, -2 * jw)?;
    let base = -div(&qq * &params.mu * &params.mu * &params.t_plus, &params.t_minus)?;
    let dim = k.spin().dim();
    let mut out = Vec::new();
    for j in 0..dim {
        for l in 0..dim {
            let f = base.pow(j as i64 - l as i64)?
                * div(qpoch(&a, &qq, j) * qpoch(&qq, &qq, l), &(qpoch(&a, &qq, l) * qpoch(&qq, &qq, j)))?;
            out.push(k.get(j, l) - f * k.get(l, j));
        }
    }
    Ok(max_abs(out))
}

/// Largest `|Σ_j K^l_j - 1|` over columns.
pub fn stochastic_residual(k: &KMatrix) -> Scalar {
    max_abs(k.column_sums().into_iter().map(|c| c - Scalar::one()))
}

/// Largest `|Σ_j K^l_j - Σ_j K^0_j|`: zero when the column sums are
/// constant, whatever the constant.
pub fn column_sum_spread(k: &KMatrix) -> Scalar {
    let sums = k.column_sums();
    max_abs(sums.iter().map(|c| c - &sums[0]))
}
