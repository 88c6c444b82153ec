use alloc::vec::Vec;

use super::{n_norm, nbar_norm, qp, BoundaryParams, NMatrix};
use crate::lattice::Weight;
use crate::qseries::{phi_terminating, qpoch, PhiSeriesSpec};
use crate::{Error, Result, Scalar};

/// A value `F(u, v)` of the generating function `Σ u^j v^l N_{j,l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFunPoint {
    pub u: Scalar,
    pub v: Scalar,
    pub value: Scalar,
}

/// Where residual checks take `F` from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFunSource {
    ClosedForm,
    CoefficientTable,
}

fn div(a: Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_div(b).map_err(|_| Error::SingularDraw("vanishing denominator in F".into()))
}

fn br(v: &Scalar) -> Result<Scalar> {
    Ok(v - div(Scalar::one(), v)?)
}

/// `(-1)^J t^J q^{J(J+1)} Σ_n (q^{-2(J-k)};q²)_n/(q²;q²)_n (u/t)^n`, the
/// polynomial that `u^J (q²t/u;q²)_J / (q^{-2J}u/t;q²)_k` reduces to.
fn reduced_pochhammer(u: &Scalar, spin: Weight, k: usize, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let a = qp(params, -2 * (ji - k as i64))?;
    let x = div(u.clone(), t)?;
    let mut sum = Scalar::zero();
    let mut xn = Scalar::one();
    for n in 0..=spin.get() - k {
        sum += div(qpoch(&a, &qq, n), &qpoch(&qq, &qq, n))? * &xn;
        xn *= &x;
    }
    let sign = if spin.get().is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    Ok(sign * t.pow(ji)? * qp(params, ji * (ji + 1))? * sum)
}

/// `F(u, v)` with the `u`- and `v`-dependent Pochhammer quotients expanded
/// termwise, so it is finite for every `u, v`.
pub fn genfun_eval(u: &Scalar, v: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<GenFunPoint> {
    let ji = spin.as_i64();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let nu = &params.nu;
    let a = qp(params, -2 * ji)?;
    let b = -div(u * v, &qp(params, 2 + 2 * ji)?)?;
    let c = -(nu * &y2 * qp(params, 2 - ji)?);
    let d = div(qp(params, -ji)? * &y2, &(nu * t * t))?;
    let e = qp(params, 2 - 2 * ji)? * &y2 * &y2;
    let mut sum = Scalar::zero();
    for k in 0..=spin.get() {
        let num = qpoch(&a, &qq, k) * qpoch(&b, &qq, k) * qpoch(&c, &qq, k) * qpoch(&d, &qq, k) * qq.pow(k as i64)?;
        let coeff = div(num, &(qpoch(&qq, &qq, k) * qpoch(&e, &qq, k)))?;
        sum += coeff * reduced_pochhammer(u, spin, k, params)? * reduced_pochhammer(v, spin, k, params)?;
    }
    Ok(GenFunPoint { u: u.clone(), v: v.clone(), value: nbar_norm(spin, params)? * sum })
}

/// `F(u, v)` from the ₄φ₃ closed form as printed; singular where
/// `q^{-2J}u/t` or `q^{-2J}v/t` hits `q^{-2k}`.
pub fn genfun_direct(u: &Scalar, v: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let n = spin.get();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let nu = &params.nu;
    let pre = nbar_norm(spin, params)?
        * (u * v).pow(ji)?
        * qpoch(&div(&qq * t, u)?, &qq, n)
        * qpoch(&div(&qq * t, v)?, &qq, n);
    let spec = PhiSeriesSpec::new(
        alloc::vec![
            qp(params, -2 * ji)?,
            -div(u * v, &qp(params, 2 + 2 * ji)?)?,
            -(nu * &y2 * qp(params, 2 - ji)?),
            div(qp(params, -ji)? * &y2, &(nu * t * t))?,
        ],
        alloc::vec![
            div(qp(params, -2 * ji)? * u, t)?,
            div(qp(params, -2 * ji)? * v, t)?,
            qp(params, 2 - 2 * ji)? * &y2 * &y2,
        ],
        qq.clone(),
        qq,
        n,
    );
    Ok(pre * phi_terminating(&spec).map_err(|e| e.into_draw())?)
}

/// `Σ_{j,l} u^j v^l N_{j,l}`.
pub fn genfun_table(u: &Scalar, v: &Scalar, n: &NMatrix) -> Result<Scalar> {
    let dim = n.spin().dim();
    let upow: Vec<Scalar> = (0..dim).map(|j| u.pow(j as i64)).collect::<Result<_>>()?;
    let vpow: Vec<Scalar> = (0..dim).map(|l| v.pow(l as i64)).collect::<Result<_>>()?;
    let mut sum = Scalar::zero();
    for (j, uj) in upow.iter().enumerate() {
        for (l, vl) in vpow.iter().enumerate() {
            sum += uj * vl * n.get(j, l);
        }
    }
    Ok(sum)
}

/// `F₀(u) = F(u, 0)` from its ₃φ₂ form.
pub fn f0(u: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let n = spin.get();
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let y2 = &params.y * &params.y;
    let nu = &params.nu;
    let mut poly = Scalar::one();
    for i in 0..n {
        poly *= u - qq.pow(i as i64 + 1)? * t;
    }
    let spec = PhiSeriesSpec::new(
        alloc::vec![
            qp(params, -2 * ji)?,
            -(nu * &y2 * qp(params, 2 - ji)?),
            div(qp(params, -ji)? * &y2, &(nu * t * t))?,
        ],
        alloc::vec![div(qp(params, -2 * ji)? * u, t)?, qp(params, 2 - 2 * ji)? * &y2 * &y2],
        qq.clone(),
        qq,
        n,
    );
    Ok(n_norm(spin, params)? * poly * phi_terminating(&spec).map_err(|e| e.into_draw())?)
}

type GenFun<'a> = dyn Fn(&Scalar, &Scalar) -> Result<Scalar> + 'a;

/// First coupled difference equation, in `F(q²u, v)`, `F(u, q²v)`,
/// `F(q²u, q²v)`.
pub fn residual_6_9(f: &GenFun<'_>, u: &Scalar, v: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let t = params.t()?;
    let qq = qp(params, 2)?;
    let one = Scalar::one();
    let (qu, qv) = (&qq * u, &qq * v);
    Ok(u * (&one - div(v.clone(), t)?) * (&one + v * t) * f(&qu, v)?
        - v * (&one - div(u.clone(), t)?) * (&one + u * t) * f(u, &qv)?
        - (u - v) * (&one + u * v * qp(params, -2 * spin.as_i64())?) * f(&qu, &qv)?)
}

/// Second coupled difference equation, in `F(u, q²v)`, `F(q²u, v)`, `F(u, v)`.
pub fn residual_6_10(f: &GenFun<'_>, u: &Scalar, v: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let t = params.t()?;
    let nu = &params.nu;
    let y2 = &params.y * &params.y;
    let qq = qp(params, 2)?;
    let one = Scalar::one();
    let a = div(one.clone(), &(qp(params, 2 + ji)? * t * nu * &y2))?;
    let b = div(t * nu, &(qp(params, ji)? * &y2))?;
    let c = div(one.clone(), &(&qq * &y2 * &y2))?;
    Ok(u * (&one + v * &a) * (&one - v * &b) * f(u, &(&qq * v))?
        - v * (&one + u * &a) * (&one - u * &b) * f(&(&qq * u), v)?
        - (u - v) * (&one + u * v * &c) * f(u, v)?)
}

/// Second-order difference equation in `u` alone.
pub fn residual_7_1(f: &GenFun<'_>, u: &Scalar, v: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let t = params.t()?;
    let nu = &params.nu;
    let y2 = &params.y * &params.y;
    let qq = qp(params, 2)?;
    let one = Scalar::one();
    let fuv = f(u, v)?;
    let a = &qq
        * (&one - div(u.clone(), &(&qq * t))?)
        * (&one + div(t * u, &qq)?)
        * (&one + div(u * v, &(qp(params, 4)? * &y2 * &y2))?)
        * (f(&div(u.clone(), &qq)?, v)? - &fuv);
    let b = (&one - div(t * u * nu, &(qp(params, ji)? * &y2))?)
        * (&one + div(u.clone(), &(qp(params, 2 + ji)? * t * &y2 * nu))?)
        * (&one + div(u * v, &qp(params, 2 + 2 * ji)?)?)
        * (f(&(u * &qq), v)? - &fuv);
    let bracket = (&one - qp(params, 2 - 2 * ji)?) * div(u * v, &y2)?
        - qp(params, 3 - ji)? * v * br(&(params.q() * t * nu))?
        + qp(params, 4)? * br(&y2)?
        - div(&qq * v * br(t)?, &y2)?;
    let c = div(u * u, &(qp(params, 6)? * &y2))? * (&one - qp(params, -2 * ji)?) * bracket * &fuv;
    Ok(a + b - c)
}

/// The `v = 0` reduction of [`residual_7_1`], evaluated on [`f0`].
pub fn residual_7_6(u: &Scalar, spin: Weight, params: &BoundaryParams) -> Result<Scalar> {
    let ji = spin.as_i64();
    let t = params.t()?;
    let nu = &params.nu;
    let y2 = &params.y * &params.y;
    let qq = qp(params, 2)?;
    let one = Scalar::one();
    let fu = f0(u, spin, params)?;
    let a = &qq
        * (&one - div(u.clone(), &(&qq * t))?)
        * (&one + div(t * u, &qq)?)
        * (f0(&div(u.clone(), &qq)?, spin, params)? - &fu);
    let b = (&one - div(t * u * nu, &(qp(params, ji)? * &y2))?)
        * (&one + div(u.clone(), &(qp(params, 2 + ji)? * t * &y2 * nu))?)
        * (f0(&(&qq * u), spin, params)? - &fu);
    let c = div(u * u, &(&qq * &y2))? * (&one - qp(params, -2 * ji)?) * br(&y2)? * &fu;
    Ok(a + b - c)
}

/// Residuals of the two coupled equations and the second-order equation
/// at `(u, v)`.
pub fn genfun_residuals(
    u: &Scalar,
    v: &Scalar,
    spin: Weight,
    params: &BoundaryParams,
    source: GenFunSource,
) -> Result<[Scalar; 3]> {
    let table;
    let f: alloc::boxed::Box<GenFun<'_>> = match source {
        GenFunSource::ClosedForm => {
            alloc::boxed::Box::new(move |a: &Scalar, b: &Scalar| Ok(genfun_eval(a, b, spin, params)?.value))
        }
        GenFunSource::CoefficientTable => {
            table = super::n_closed(spin, params)?;
            let table = &table;
            alloc::boxed::Box::new(move |a: &Scalar, b: &Scalar| genfun_table(a, b, table))
        }
    };
    Ok([
        residual_6_9(&*f, u, v, spin, params)?,
        residual_6_10(&*f, u, v, spin, params)?,
        residual_7_1(&*f, u, v, spin, params)?,
    ])
}
