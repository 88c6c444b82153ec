//! Terminating basic hypergeometric identities, checked to exact zero at
//! random rational points. They serve as oracles for [`phi_terminating`].

use alloc::vec;

use super::{phi_terminating, qpoch, PhiSeriesSpec};
use crate::verify::{resample, Draw, Report, Sampler};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QIdentity {
    /// `2φ1(q^{-n}, a; c; q, q) = a^n (c/a; q)_n / (c; q)_n`.
    QVandermonde,
    /// Sears' transformation of a terminating balanced `4φ3`.
    Sears,
    /// `3φ2(q^{-n}, b, c; d, e; q, de q^n/(bc))` in terms of a `3φ2` at argument `q`.
    Phi32Terminating,
    /// Three-term contiguous relation for `2φ1`, terminated by `b = q^{-n}`.
    Contiguous2phi1,
    /// Contiguous relation linking `4φ3(a+, d+, e+)`, `4φ3(e+)` and `4φ3(d+)`.
    Contiguous4phi3A,
    /// Contiguous relation linking `4φ3(d+)`, `4φ3(e+)` and `4φ3(a-)`.
    Contiguous4phi3B,
}

impl QIdentity {
    pub const ALL: [QIdentity; 6] = [
        QIdentity::QVandermonde,
        QIdentity::Sears,
        QIdentity::Phi32Terminating,
        QIdentity::Contiguous2phi1,
        QIdentity::Contiguous4phi3A,
        QIdentity::Contiguous4phi3B,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            QIdentity::QVandermonde => "qvandermonde",
            QIdentity::Sears => "sears",
            QIdentity::Phi32Terminating => "phi32_terminating",
            QIdentity::Contiguous2phi1 => "contiguous_2phi1",
            QIdentity::Contiguous4phi3A => "contiguous_4phi3_A",
            QIdentity::Contiguous4phi3B => "contiguous_4phi3_B",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        QIdentity::ALL.into_iter().find(|k| k.id() == id)
    }
}

/// Parameters shared by all identities. Unused ones are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityParams {
    pub n: usize,
    pub q: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub z: Scalar,
}

impl IdentityParams {
    pub fn sample(s: &mut Sampler) -> Self {
        IdentityParams {
            n: s.int(1, 3) as usize,
            q: s.nome(),
            a: s.rational(),
            b: s.rational(),
            c: s.rational(),
            d: s.rational(),
            e: s.rational(),
            z: s.rational(),
        }
    }

    fn record(&self, draw: &mut Draw) {
        draw.push("n", &Scalar::from_integer(self.n as i64));
        for (name, v) in [
            ("q", &self.q),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("e", &self.e),
            ("z", &self.z),
        ] {
            draw.push(name, v);
        }
    }
}

fn div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_div(b)
}

fn poch(a: &Scalar, q: &Scalar, n: usize) -> Scalar {
    qpoch(a, q, n)
}

/// Terminating `4φ3(q^{-n}, a, b, c; d, e, f; q, q)`.
fn phi43(p: &IdentityParams, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, e: &Scalar, f: &Scalar) -> Result<Scalar> {
    let qn = p.q.pow(-(p.n as i64))?;
    phi_terminating(&PhiSeriesSpec::new(
        vec![qn, a.clone(), b.clone(), c.clone()],
        vec![d.clone(), e.clone(), f.clone()],
        p.q.clone(),
        p.q.clone(),
        p.n,
    ))
}

/// `LHS - RHS` of the identity at `p`.
pub fn residual(kind: QIdentity, p: &IdentityParams) -> Result<Scalar> {
    let q = &p.q;
    let n = p.n;
    let ni = n as i64;
    let one = Scalar::one();
    let qmn = q.pow(-ni)?;
    let (a, b, c, d, e) = (&p.a, &p.b, &p.c, &p.d, &p.e);
    match kind {
        QIdentity::QVandermonde => {
            let lhs =
                phi_terminating(&PhiSeriesSpec::new(vec![qmn, a.clone()], vec![c.clone()], q.clone(), q.clone(), n))?;
            let rhs = div(&(a.pow(ni)? * poch(&div(c, a)?, q, n)), &poch(c, q, n))?;
            Ok(lhs - rhs)
        }
        QIdentity::Sears => {
            let f = div(&(a * b * c * q.pow(1 - ni)?), &(d * e))?;
            let lhs = phi43(p, a, b, c, d, e, &f)?;
            let ef = &f * e;
            let ef_ab = div(&ef, &(a * b))?;
            let ef_ac = div(&ef, &(a * c))?;
            let ef_abc = div(&ef, &(a * b * c))?;
            let pre = div(
                &(poch(a, q, n) * poch(&ef_ab, q, n) * poch(&ef_ac, q, n)),
                &(poch(e, q, n) * poch(&f, q, n) * poch(&ef_abc, q, n)),
            )?;
            let rhs = pre * phi43(p, &div(e, a)?, &div(&f, a)?, &ef_abc, &ef_ab, &ef_ac, &div(&q.pow(1 - ni)?, a)?)?;
            Ok(lhs - rhs)
        }
        QIdentity::Phi32Terminating => {
            let arg = div(&(d * e * q.pow(ni)?), &(b * c))?;
            let lhs = phi_terminating(&PhiSeriesSpec::new(
                vec![qmn.clone(), b.clone(), c.clone()],
                vec![d.clone(), e.clone()],
                q.clone(),
                arg,
                n,
            ))?;
            let inner = phi_terminating(&PhiSeriesSpec::new(
                vec![qmn, c.clone(), div(d, b)?],
                vec![d.clone(), div(&(c * q.pow(1 - ni)?), e)?],
                q.clone(),
                q.clone(),
                n,
            ))?;
            let rhs = div(&poch(&div(e, c)?, q, n), &poch(e, q, n))? * inner;
            Ok(lhs - rhs)
        }
        QIdentity::Contiguous2phi1 => {
            let z = &p.z;
            let bb = qmn;
            let p21 = |aa: &Scalar, cc: &Scalar| {
                phi_terminating(&PhiSeriesSpec::new(
                    vec![aa.clone(), bb.clone()],
                    vec![cc.clone()],
                    q.clone(),
                    z.clone(),
                    n,
                ))
            };
            let t1 = z * (&one - a) * (&bb - c) * p21(&(a * q), &(c * q))?;
            let t2 = (&one - c) * (q - c) * p21(&div(a, q)?, &div(c, q)?)?;
            let t3 = (&one - c) * (c - q + (a - &bb) * z) * p21(a, c)?;
            Ok(t1 + t2 + t3)
        }
        QIdentity::Contiguous4phi3A | QIdentity::Contiguous4phi3B => {
            // All three series in each relation are balanced when def = abc q^{-n}.
            let f = div(&(a * b * c * q.pow(-ni)?), &(d * e))?;
            let dq = d * q;
            let eq = e * q;
            if kind == QIdentity::Contiguous4phi3A {
                let t1 = (&one - a) * (d - e) * phi43(p, &(a * q), b, c, &dq, &eq, &f)?;
                let t2 = (&one - d) * (a - e) * phi43(p, a, b, c, d, &eq, &f)?;
                let t3 = (&one - e) * (a - d) * phi43(p, a, b, c, &dq, e, &f)?;
                Ok(t1 - t2 + t3)
            } else {
                let qn = q.pow(ni)?;
                let t1 = e * (&one - e) * (b - d) * (c - d) * (&one - d * &qn) * phi43(p, a, b, c, &dq, e, &f)?;
                let t2 = d * (&one - d) * (b - e) * (c - e) * (&one - e * &qn) * phi43(p, a, b, c, d, &eq, &f)?;
                let t3 =
                    (d - e) * (&one - d) * (&one - e) * (b * c - d * e * &qn) * phi43(p, &div(a, q)?, b, c, d, e, &f)?;
                Ok(t1 - t2 + t3)
            }
        }
    }
}

/// Checks `kind` on the draw identified by `(seed, trial)`, resampling
/// whenever a denominator vanishes.
pub fn check_qseries_identity(kind: QIdentity, seed: u64, trial: u64) -> Report {
    resample(kind.id(), seed, trial, |s, draw| {
        let p = IdentityParams::sample(s);
        p.record(draw);
        residual(kind, &p).map_err(Error::into_draw)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    fn fixed(n: usize) -> IdentityParams {
        IdentityParams { n, q: s(1, 3), a: s(2, 7), b: s(-5, 3), c: s(4, 11), d: s(-3, 8), e: s(9, 5), z: s(6, 13) }
    }

    #[test]
    fn all_identities_vanish_at_fixed_point() {
        for n in 0..=3 {
            for kind in QIdentity::ALL {
                assert_eq!(residual(kind, &fixed(n)).unwrap(), Scalar::zero(), "{} n={n}", kind.id());
            }
        }
    }

    #[test]
    fn qvandermonde_n3_random() {
        for trial in 0..10 {
            let r = check_qseries_identity(QIdentity::QVandermonde, 11, trial);
            assert_eq!(r.status, Status::Pass);
        }
    }

    #[test]
    fn sears_with_a_at_q_power() {
        // a = q^{-n}: both sides terminate by the same factor, evaluated independently.
        let mut p = fixed(2);
        p.a = p.q.pow(-2).unwrap();
        assert_eq!(residual(QIdentity::Sears, &p).unwrap(), Scalar::zero());
    }

    #[test]
    fn ids_round_trip() {
        for kind in QIdentity::ALL {
            assert_eq!(QIdentity::from_id(kind.id()), Some(kind));
        }
        assert_eq!(QIdentity::from_id("nope"), None);
    }
}
