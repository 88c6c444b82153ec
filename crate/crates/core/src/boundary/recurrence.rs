use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{build_k, qp, BoundaryParams, KMatrix, KRoute, Regime};
use crate::lattice::Weight;
use crate::linalg::{solve, Matrix};
use crate::{Error, Result, Scalar};

/// One linear relation `Σ c · K^l_j = 0`, labelled by the `(j, l)` it was
/// generated at. Zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub j: i64,
    pub l: i64,
    pub terms: Vec<(Scalar, (i64, i64))>,
}

/// The two independent families of relations obtained by inserting the
/// spin-1/2 solution into the mixed reflection equation, generated for
/// `j ∈ [-2, jmax]`, `l ∈ [-1, lmax]`.
pub fn recurrence_equations(spin: Weight, params: &BoundaryParams, jmax: i64, lmax: i64) -> Result<Vec<Equation>> {
    let jw = spin.as_i64();
    let (tp, tm, mu, nu) = (&params.t_plus, &params.t_minus, &params.mu, &params.nu);
    let mu_inv = mu.checked_inv()?;
    let y2 = &params.y * &params.y;
    let y4 = &y2 * &y2;
    let one = Scalar::one();
    let q2 = qp(params, 2)?;
    let cross = (tm - nu * nu * &q2 * tp) * &y2 * qp(params, 2 + jw)? * nu.checked_inv()?;
    let mut out = Vec::new();
    for j in -2..=jmax {
        for l in -1..=lmax {
            let d = qp(params, 2 * j)? - qp(params, 2 * l)?;
            let e1 = [
                (mu * tp * qp(params, 2 + 2 * jw)? * (&one - qp(params, 2 * (j - jw))?), (j, l + 1)),
                (tm * qp(params, 2 * jw)? * (&one - qp(params, 2 + 2 * l)?) * &mu_inv, (j + 1, l)),
                (&d * &cross, (j + 1, l + 1)),
                (-(mu * tp * &y4 * qp(params, 2 + 2 * jw)? * (&one - qp(params, 2 * (1 + l - jw))?)), (j + 1, l + 2)),
                (-(tm * &y4 * qp(params, 2 * jw)? * (&one - qp(params, 4 + 2 * j)?) * &mu_inv), (j + 2, l + 1)),
            ];
            let e2 = [
                (mu * tp * qp(params, 2 * (2 + l + jw))? * (&one - qp(params, 2 * j - 2 * jw)?), (j, l + 1)),
                (tm * qp(params, 2 * (1 + j + jw))? * (&one - qp(params, 2 + 2 * l)?) * &mu_inv, (j + 1, l)),
                (qp(params, 2 + 2 * jw)? * &d * (tp - tm), (j + 1, l + 1)),
                (-(mu * tp * qp(params, 2 * (1 + j + jw))? * (&one - qp(params, 2 * (1 + l - jw))?)), (j + 1, l + 2)),
                (-(tm * qp(params, 2 * jw + 2 * l)? * (&one - qp(params, 4 + 2 * j)?) * &mu_inv), (j + 2, l + 1)),
            ];
            for e in [e1, e2] {
                let terms: Vec<_> = e.into_iter().filter(|(c, _)| !c.is_zero()).collect();
                out.push(Equation { j, l, terms });
            }
        }
    }
    Ok(out)
}

/// `K_J` from the recurrence with the default column window `l ≤ J+3`.
pub fn k_recurrence(spin: Weight, params: &BoundaryParams) -> Result<KMatrix> {
    k_recurrence_window(spin, params, spin.as_i64() + 3)
}

/// `K_J` from the recurrence solved on rows `j ≤ J+2` and columns
/// `l ≤ lcap`.
///
/// Equations that reach outside the window are left out, never
/// zero-padded: nothing forces `K^l_j` to vanish for large `l`. The system
/// is closed by `K^0_{J+1} = 0` and `K^0_0 = 1`; the result is then
/// rescaled to unit column sums at `μ = 1`, or to the corner of the
/// matching closed form otherwise.
pub fn k_recurrence_window(spin: Weight, params: &BoundaryParams, lcap: i64) -> Result<KMatrix> {
    let jw = spin.as_i64();
    if lcap < jw {
        return Err(Error::InvalidArgument("column window must reach l = J".into()));
    }
    let jcap = jw + 2;
    let mut index = BTreeMap::new();
    for j in 0..=jcap {
        for l in 0..=lcap {
            let n = index.len();
            index.insert((j, l), n);
        }
    }
    let n = index.len();
    let mut rows = Vec::new();
    for eq in recurrence_equations(spin, params, jcap, lcap)? {
        let terms: Vec<_> = eq.terms.iter().filter(|(_, (j, _))| *j >= 0).collect();
        if terms.is_empty() || terms.iter().any(|(_, k)| !index.contains_key(k)) {
            continue;
        }
        let mut row = vec![Scalar::zero(); n + 1];
        for (c, k) in terms {
            row[index[k]] += c;
        }
        rows.push(row);
    }
    let mut pin = |k: (i64, i64), v: Scalar| {
        let mut row = vec![Scalar::zero(); n + 1];
        row[index[&k]] = Scalar::one();
        row[n] = v;
        rows.push(row);
    };
    pin((jw + 1, 0), Scalar::zero());
    pin((0, 0), Scalar::one());

    let sol = solve(rows, n);
    if !sol.consistent {
        return Err(Error::SingularDraw("recurrence system is inconsistent".into()));
    }
    let value = |j: i64, l: i64| -> Result<Scalar> {
        sol.values[index[&(j, l)]]
            .clone()
            .ok_or_else(|| Error::SingularDraw("recurrence does not determine K uniquely".into()))
    };
    for j in jw + 1..=jcap {
        for l in 0..=jw {
            if !value(j, l)?.is_zero() {
                return Err(Error::NonTerminating(alloc::format!("K^{l}_{j} ≠ 0 beyond row J")));
            }
        }
    }
    let dim = spin.dim();
    let mut m = Matrix::zeros(dim, dim);
    for j in 0..dim {
        for l in 0..dim {
            m[(j, l)] = value(j as i64, l as i64)?;
        }
    }
    let raw = KMatrix::new(spin, m)?;
    if params.mu.is_one() {
        raw.normalized()
    } else {
        raw.normalized_corner(&reference_corner(spin, params)?)
    }
}

/// `K^0_0` of the closed form valid in the parameter regime, or 1 when
/// none applies.
fn reference_corner(spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let route = match params.regime() {
        Regime::Upper => KRoute::Upper,
        Regime::Lower => KRoute::Lower,
        Regime::General if params.t.is_some() => KRoute::Closed,
        Regime::General => return Ok(Scalar::one()),
    };
    Ok(build_k(route, spin, params)?.get(0, 0).clone())
}
