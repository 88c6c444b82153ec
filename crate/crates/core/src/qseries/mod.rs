//! q-Pochhammer symbols, q-binomials, terminating basic hypergeometric
//! series and the stochastic weight `Φ_q(γ|β; x, y)`.
//!
//! All functions are generic over [`Field`] so the same code evaluates at
//! rational points and, through [`crate::lattice::limit::Series`], at
//! removable singularities.

pub mod identities;

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Field, Result, Scalar};

/// `(a; q)_n = ∏_{i<n} (1 - a q^i)`; the empty product is 1.
pub fn qpoch<F: Field>(a: &F, q: &F, n: usize) -> F {
    let mut acc = F::one();
    let mut aq = a.clone();
    for i in 0..n {
        acc = acc * (F::one() - aq.clone());
        if i + 1 < n {
            aq = aq * q.clone();
        }
    }
    acc
}

/// `(a_1, ..., a_m; q)_n`.
pub fn qpoch_multi<F: Field>(bases: &[F], q: &F, n: usize) -> F {
    bases.iter().fold(F::one(), |acc, a| acc * qpoch(a, q, n))
}

/// A single Pochhammer symbol `(base; nome)_length`.
#[derive(Debug, Clone, PartialEq)]
pub struct PochSpec {
    pub base: Scalar,
    pub nome: Scalar,
    pub length: usize,
}

impl PochSpec {
    pub fn eval(&self) -> Scalar {
        qpoch(&self.base, &self.nome, self.length)
    }
}

/// Gaussian binomial `[n choose m]_q`, zero outside `0 <= m <= n`.
pub fn qbinom<F: Field>(n: usize, m: i64, q: &F) -> Result<F> {
    if m < 0 || m as usize > n {
        return Ok(F::zero());
    }
    let m = m as usize;
    let denom = qpoch(q, q, n - m) * qpoch(q, q, m);
    qpoch(q, q, n)
        .checked_div(&denom)
        .map_err(|_| Error::VanishingDenominator(format!("(q;q)_k in [{n} choose {m}]_q")))
}

/// Parameters of a terminating series
/// `_{r+1}φ_r(a_1..a_{r+1}; b_1..b_r; q, x)` summed up to `k = kmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeriesSpec<F = Scalar> {
    pub numer: Vec<F>,
    pub denom: Vec<F>,
    pub nome: F,
    pub arg: F,
    pub kmax: usize,
}

impl<F: Field> PhiSeriesSpec<F> {
    pub fn new(numer: Vec<F>, denom: Vec<F>, nome: F, arg: F, kmax: usize) -> Self {
        PhiSeriesSpec { numer, denom, nome, arg, kmax }
    }

    pub fn eval(&self) -> Result<F> {
        phi_terminating(self)
    }
}

/// Sum of the basic hypergeometric series for `0 <= k <= kmax`.
///
/// Every denominator factor in the summed range is inverted before any term
/// is accumulated, so a vanishing `(q, b_i; q)_k` fails fast with
/// [`Error::VanishingDenominator`].
pub fn phi_terminating<F: Field>(spec: &PhiSeriesSpec<F>) -> Result<F> {
    let q = &spec.nome;
    // inv_den[k] = 1 / ((1 - q^{k+1}) ∏_i (1 - b_i q^k))
    let mut inv_den = Vec::with_capacity(spec.kmax);
    let mut qk = F::one();
    for k in 0..spec.kmax {
        let qk1 = qk.clone() * q.clone();
        let mut d = F::one() - qk1.clone();
        for b in &spec.denom {
            d = d * (F::one() - b.clone() * qk.clone());
        }
        let inv = d
            .checked_inv()
            .ok_or_else(|| Error::VanishingDenominator(format!("denominator Pochhammer at k = {}", k + 1)))?;
        inv_den.push(inv);
        qk = qk1;
    }

    let mut term = F::one();
    let mut sum = F::one();
    let mut qk = F::one();
    for inv in inv_den {
        let mut num = F::one();
        for a in &spec.numer {
            num = num * (F::one() - a.clone() * qk.clone());
        }
        term = term * num * inv * spec.arg.clone();
        sum = sum + term.clone();
        qk = qk * q.clone();
    }
    Ok(sum)
}

/// The factorized stochastic weight
/// `Φ_q(γ|β; x, y) = (y/x)^γ (x;q)_γ (y/x;q)_{β-γ} / (y;q)_β · [β choose γ]_q`.
///
/// Zero when `γ < 0` or `γ > β`.
pub fn phi_weight<F: Field>(gamma: i64, beta: usize, x: &F, y: &F, q: &F) -> Result<F> {
    if gamma < 0 || gamma as usize > beta {
        return Ok(F::zero());
    }
    let gamma = gamma as usize;
    let inv_x = x.checked_inv().ok_or_else(|| Error::VanishingDenominator("x = 0 in Φ weight".into()))?;
    let inv_den = qpoch(y, q, beta)
        .checked_inv()
        .ok_or_else(|| Error::VanishingDenominator(format!("(y;q)_{beta} in Φ weight")))?;
    let ratio = y.clone() * inv_x;
    let binom = qbinom(beta, gamma as i64, q)?;
    Ok(ratio.powi(gamma as i64)? * qpoch(x, q, gamma) * qpoch(&ratio, q, beta - gamma) * inv_den * binom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    #[test]
    fn qpoch_examples() {
        let q = s(3, 7);
        assert_eq!(qpoch(&s(5, 2), &q, 0), Scalar::one());
        for n in 1..5 {
            assert_eq!(qpoch(&Scalar::one(), &q, n), Scalar::zero());
        }
        assert_eq!(qpoch(&s(1, 2), &s(1, 2), 2), s(3, 8));
        let spec = PochSpec { base: s(1, 2), nome: s(1, 2), length: 2 };
        assert_eq!(spec.eval(), s(3, 8));
    }

    #[test]
    fn qbinom_examples() {
        let q = s(2, 5);
        assert_eq!(qbinom(4, 0, &q).unwrap(), Scalar::one());
        assert_eq!(qbinom(2, 1, &s(1, 2)).unwrap(), s(3, 2));
        assert_eq!(qbinom(3, 5, &q).unwrap(), Scalar::zero());
        assert_eq!(qbinom(3, -1, &q).unwrap(), Scalar::zero());
        assert!(matches!(qbinom(3, 1, &Scalar::one()), Err(Error::VanishingDenominator(_))));
        assert!(matches!(qbinom(3, 2, &s(-1, 1)), Err(Error::VanishingDenominator(_))));
    }

    #[test]
    fn kmax_zero_is_one() {
        let spec = PhiSeriesSpec::new(alloc::vec![s(3, 4), s(-2, 9)], alloc::vec![Scalar::one()], s(1, 3), s(7, 2), 0);
        assert_eq!(phi_terminating(&spec).unwrap(), Scalar::one());
    }

    #[test]
    fn q_vandermonde_example() {
        // n=1, a=1/3, c=1/5, q=1/2
        let (a, c, q) = (s(1, 3), s(1, 5), s(1, 2));
        let lhs = phi_terminating(&PhiSeriesSpec::new(
            alloc::vec![q.pow(-1).unwrap(), a.clone()],
            alloc::vec![c.clone()],
            q.clone(),
            q.clone(),
            1,
        ))
        .unwrap();
        let rhs = a.clone() * qpoch(&c.checked_div(&a).unwrap(), &q, 1) * qpoch(&c, &q, 1).checked_inv().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vanishing_denominator_reported() {
        // b = q^{-1}: (b;q)_2 = (1 - q^{-1})(1 - 1) = 0
        let q = s(1, 2);
        let spec = PhiSeriesSpec::new(alloc::vec![s(1, 3)], alloc::vec![s(2, 1)], q, s(1, 1), 2);
        assert!(matches!(phi_terminating(&spec), Err(Error::VanishingDenominator(_))));
        let spec1 = PhiSeriesSpec::new(alloc::vec![s(1, 3)], alloc::vec![s(2, 1)], s(1, 2), s(1, 1), 1);
        assert!(phi_terminating(&spec1).is_ok());
    }

    #[test]
    fn phi_weight_specializations() {
        let q = s(1, 4);
        let y = s(-3, 5);
        for j in 0..5usize {
            for i in 0..=j as i64 {
                let at_one = phi_weight(i, j, &Scalar::one(), &y, &q).unwrap();
                assert_eq!(at_one, if i == 0 { Scalar::one() } else { Scalar::zero() });
                let diag = phi_weight(i, j, &y, &y, &q).unwrap();
                assert_eq!(diag, if i as usize == j { Scalar::one() } else { Scalar::zero() });
            }
        }
        assert_eq!(phi_weight(4, 3, &s(1, 3), &y, &q).unwrap(), Scalar::zero());
        assert!(phi_weight(0, 2, &Scalar::zero(), &y, &q).is_err());
    }

    #[test]
    fn phi_weight_sum_rule_example() {
        let (x, y, q) = (s(1, 3), s(1, 7), s(1, 2));
        let total: Scalar = (0..=3).map(|g| phi_weight(g, 3, &x, &y, &q).unwrap()).sum();
        assert_eq!(total, Scalar::one());
    }

    /// Term-by-term reference: each term rebuilt from scratch with its own loops.
    fn reference_sum(numer: &[Scalar], denom: &[Scalar], q: &Scalar, x: &Scalar, kmax: usize) -> Option<Scalar> {
        let mut total = Scalar::zero();
        for k in 0..=kmax {
            let mut top = Scalar::one();
            let mut bottom = Scalar::one();
            for i in 0..k {
                let qi = q.pow(i as i64).unwrap();
                for a in numer {
                    top *= Scalar::one() - a * &qi;
                }
                for b in denom {
                    bottom *= Scalar::one() - b * &qi;
                }
                bottom *= Scalar::one() - q.pow(i as i64 + 1).unwrap();
            }
            if bottom.is_zero() {
                return None;
            }
            total += top.checked_div(&bottom).unwrap() * x.pow(k as i64).unwrap();
        }
        Some(total)
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-30i64..=30, 1i64..=30).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
    }

    fn nonzero_rational() -> impl Strategy<Value = Scalar> {
        (1i64..=30, 1i64..=30, any::<bool>()).prop_map(|(n, d, neg)| Scalar::new(if neg { -n } else { n }, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn poch_splitting(a in small_rational(), q in nonzero_rational(), m in 0usize..=8, n in 0usize..=8) {
            let qm = q.pow(m as i64).unwrap();
            prop_assert_eq!(qpoch(&a, &q, m + n), qpoch(&a, &q, m) * qpoch(&(&a * &qm), &q, n));
        }

        #[test]
        fn phi_matches_reference(
            numer in proptest::collection::vec(small_rational(), 1..4),
            denom in proptest::collection::vec(small_rational(), 0..3),
            q in nonzero_rational(),
            x in small_rational(),
            kmax in 0usize..=6,
        ) {
            let spec = PhiSeriesSpec::new(numer.clone(), denom.clone(), q.clone(), x.clone(), kmax);
            match (phi_terminating(&spec), reference_sum(&numer, &denom, &q, &x, kmax)) {
                (Ok(v), Some(r)) => prop_assert_eq!(v, r),
                (Err(Error::VanishingDenominator(_)), None) => {}
                (got, want) => prop_assert!(false, "mismatch {:?} vs {:?}", got, want),
            }
        }

        #[test]
        fn phi_weight_sums_to_one(beta in 0usize..=6, x in nonzero_rational(), y in nonzero_rational(), q in nonzero_rational()) {
            let terms: Result<alloc::vec::Vec<Scalar>> =
                (0..=beta as i64).map(|g| phi_weight(g, beta, &x, &y, &q)).collect();
            if let Ok(terms) = terms {
                let total: Scalar = terms.into_iter().sum();
                prop_assert_eq!(total, Scalar::one());
            }
        }
    }
}
