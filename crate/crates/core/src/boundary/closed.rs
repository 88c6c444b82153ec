use super::{qp, BoundaryParams, KMatrix, NMatrix};
use crate::lattice::Weight;
use crate::linalg::Matrix;
use crate::qseries::{phi_terminating, phi_weight, qpoch, PhiSeriesSpec};
use crate::{Error, Result, Scalar};

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn div(a: Scalar, b: &Scalar, what: &str) -> Result<Scalar> {
    a.checked_div(b).map_err(|_| Error::SingularDraw(alloc::format!("vanishing {what}")))
}

fn matrix(spin: Weight, mut f: impl FnMut(usize, usize) -> Result<Scalar>) -> Result<Matrix> {
    let n = spin.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            m[(j, l)] = f(j, l)?;
        }
    }
    Ok(m)
}

/// Upper-triangular solution for `t_+ = 0`:
/// `K^l_j = μ^{j-l} Φ(j | l; -y²q^{-J}/ν, -q^{-J}/(y²ν))`.
pub fn k_upper(spin: Weight, params: &BoundaryParams) -> Result<KMatrix> {
    let jw = spin.as_i64();
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let qj = qp(params, jw)?;
    let x = -div(y2.clone(), &(&params.nu * &qj), "ν")?;
    let z = -div(Scalar::one(), &(&y2 * &params.nu * &qj), "ν y²")?;
    let m = matrix(spin, |j, l| {
        let w = phi_weight(j as i64, l, &x, &z, &qq).map_err(|e| e.into_draw())?;
        Ok(params.mu.pow(j as i64 - l as i64)? * w)
    })?;
    KMatrix::new(spin, m)
}

/// Lower-triangular solution for `t_- = 0`, normalized so `K^J_J = 1`.
pub fn k_lower(spin: Weight, params: &BoundaryParams) -> Result<KMatrix> {
    let jw = spin.as_i64();
    let n = spin.get();
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let nu = &params.nu;
    let qj2 = qp(params, jw - 2)?;
    let x = -div(&y2 * nu, &qj2, "q")?;
    let z = -div(nu.clone(), &(&y2 * &qj2), "y²")?;
    let c = params.y.pow(4 * jw)? * div(qpoch(&z, &qq, n), &qpoch(&x, &qq, n), "normalization of K")?;
    let a = qp(params, -2 * jw)?;
    let mq = &params.mu * &qq;
    let m = matrix(spin, |j, l| {
        let ratio =
            div(qpoch(&qq, &qq, l) * qpoch(&a, &qq, j), &(qpoch(&qq, &qq, j) * qpoch(&a, &qq, l)), "(q^{-2J};q²)")?;
        let w = phi_weight(l as i64, j, &x, &z, &qq).map_err(|e| e.into_draw())?;
        Ok(&c * mq.pow(j as i64 - l as i64)? * ratio * w)
    })?;
    KMatrix::new(spin, m)
}

/// Double-sum closed form of `N_{j,l}` with the stochastic normalization.
pub fn n_closed(spin: Weight, params: &BoundaryParams) -> Result<NMatrix> {
    let jw = spin.get();
    let ji = spin.as_i64();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let y4 = &y2 * &y2;
    let nu = &params.nu;
    let a = qp(params, -2 * ji)?;
    let inv_y4 = div(Scalar::one(), &y4, "y")?;
    let b1 = -div(qp(params, -ji)?, &(nu * &y2), "ν y²")?;
    let b2 = div(qp(params, 2 - ji)? * nu * t * t, &y2, "y²")?;
    let mut pk = alloc::vec::Vec::with_capacity(jw + 1);
    for k in 0..=jw {
        let den = qpoch(&qq, &qq, k) * qpoch(&b1, &qq, k) * qpoch(&b2, &qq, k);
        pk.push(div(qpoch(&a, &qq, k) * qpoch(&inv_y4, &qq, k), &den, "closed-form denominator")?);
    }
    let m = matrix(spin, |j, l| {
        let mut sum = Scalar::zero();
        for (k, p) in pk.iter().enumerate() {
            let ki = k as i64;
            let qk = qp(params, -2 * ki)?;
            let qjk = qp(params, -2 * (ji - ki))?;
            for s in 0..=j.min(l) {
                let si = s as i64;
                let mut term = sign(s)
                    * qp(params, (ki - 2 * si) * (ki + 1))?
                    * t.pow(-(j as i64 + l as i64 - 2 * (ki + si)))?
                    * p
                    * div(qpoch(&qjk, &qq, s), &qpoch(&qq, &qq, s), "(q²;q²)")?;
                for m in [j, l] {
                    term *= div(qpoch(&qk, &qq, m - s), &qpoch(&qq, &qq, m - s), "(q²;q²)")?;
                }
                sum += term;
            }
        }
        Ok(sum)
    })?;
    NMatrix::new(spin, m)
}

/// `N̄_J`, the prefactor of the generating function.
pub fn nbar_norm(spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let n = spin.get();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let y4 = &y2 * &y2;
    let nu = &params.nu;
    let num = qp(params, -2 * ji * (ji + 1))?
        * params.y.pow(4 * ji)?
        * t.pow(-2 * ji)?
        * qpoch(&div(Scalar::one(), &y4, "y")?, &qq, n);
    let den = qpoch(&(-(nu * &y2 * qp(params, 2 - ji)?)), &qq, n)
        * qpoch(&div(qp(params, -ji)? * &y2, &(nu * t * t), "ν t²")?, &qq, n);
    div(num, &den, "normalization")
}

/// `N_J = (-t)^J q^{J(J+1)} N̄_J`.
pub fn n_norm(spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    Ok((-params.t()?).pow(ji)? * qp(params, ji * (ji + 1))? * nbar_norm(spin, params)?)
}

/// First column `N_{j,0}` from its terminating ₂φ₁ form.
pub fn n_first_column(spin: Weight, j: usize, params: &BoundaryParams) -> Result<Scalar> {
    if j > spin.get() {
        return Ok(Scalar::zero());
    }
    let ji = spin.as_i64();
    let n = spin.get() - j;
    let jj = j as i64;
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let y4 = &y2 * &y2;
    let nu = &params.nu;
    let a = qp(params, -2 * ji)?;
    let c = -div(nu * qp(params, 2 + 2 * jj - ji)?, &y2, "y²")?;
    let pre = n_norm(spin, params)?
        * qp(params, 2 * (ji + 1) * n as i64)?
        * t.pow(n as i64)?
        * div(qpoch(&a, &qq, n), &qpoch(&qq, &qq, n), "(q²;q²)")?
        * div(qpoch(&c, &qq, n), &qpoch(&div(qp(params, 2 * jj)?, &y4, "y")?, &qq, n), "(q^{2j}/y⁴;q²)")?;
    let spec = PhiSeriesSpec::new(
        alloc::vec![qp(params, -2 * n as i64)?, -(nu * &y2 * qp(params, 2 - ji)?)],
        alloc::vec![c],
        qq,
        div(qp(params, ji)?, &(nu * t * t * &y2), "ν t² y²")?,
        n,
    );
    Ok(pre * phi_terminating(&spec).map_err(|e| e.into_draw())?)
}

/// `K^l_j = (-1)^l q^{2j} (μt)^{j-l} (q²;q²)_l / (q^{-2J};q²)_l · N_{j,l}`.
pub fn n_to_k(n: &NMatrix, params: &BoundaryParams) -> Result<KMatrix> {
    let spin = n.spin();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let a = qp(params, -2 * spin.as_i64())?;
    let mt = &params.mu * t;
    let m = matrix(spin, |j, l| {
        let f = sign(l) * qp(params, 2 * j as i64)? * mt.pow(j as i64 - l as i64)?;
        Ok(f * div(qpoch(&qq, &qq, l), &qpoch(&a, &qq, l), "(q^{-2J};q²)")? * n.get(j, l))
    })?;
    KMatrix::new(spin, m)
}

/// Dual boundary matrix from `K(1/(qx))`: multiplies row `j` by `q^{-2j}`.
pub fn kbar_from(k_reflected: &KMatrix, h: &Scalar) -> Result<KMatrix> {
    let n = k_reflected.spin().dim();
    let mut m = k_reflected.matrix().clone();
    for j in 0..n {
        let f = h.pow(-4 * j as i64)?;
        for l in 0..n {
            m[(j, l)] = &m[(j, l)] * &f;
        }
    }
    KMatrix::new(k_reflected.spin(), m)
}

/// `K̄(x)` built by `route` at the reflected point `1/(qx)`.
pub fn kbar(route: super::KRoute, spin: Weight, params: &BoundaryParams, x: &Scalar) -> Result<KMatrix> {
    let reflected = div(Scalar::one(), &(params.q() * x), "spectral point")?;
    let k = super::build_k(route, spin, &params.with_spectral(reflected)?).map_err(|e| e.into_draw())?;
    kbar_from(&k, &params.h)
}
