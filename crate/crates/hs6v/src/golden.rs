//! The tabulated N-matrices for spin 1 and 2, transcribed as plain
//! arithmetic and compared entrywise with the double-sum closed form.

use hs6v_core::boundary::{n_closed, BoundaryParams};
use hs6v_core::lattice::Weight;
use hs6v_core::{Result, Scalar};

/// Fixed draws `(h, y, t, ν)` as numerator/denominator pairs; `q = h²`.
pub const DRAWS: [[(i64, i64); 4]; 5] = [
    [(1, 2), (3, 2), (2, 3), (1, 5)],
    [(2, 3), (-5, 4), (7, 3), (-3, 11)],
    [(3, 7), (2, 5), (-4, 9), (5, 2)],
    [(-5, 3), (7, 6), (3, 10), (-2, 7)],
    [(4, 9), (-9, 5), (-6, 7), (8, 3)],
];

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenEntry {
    pub spin: u32,
    pub draw: usize,
    pub j: usize,
    pub l: usize,
    pub expected: Scalar,
    pub actual: Scalar,
}

impl GoldenEntry {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

fn r(p: (i64, i64)) -> Scalar {
    Scalar::new(p.0, p.1).expect("fixed draws have nonzero denominators")
}

fn one() -> Scalar {
    Scalar::one()
}

/// Upper triangle `(j, l, N_{j,l})` of the spin-1 table.
pub fn table_spin_one(q: &Scalar, y: &Scalar, t: &Scalar, nu: &Scalar) -> Result<Vec<(usize, usize, Scalar)>> {
    let y2 = y * y;
    let y4 = &y2 * &y2;
    let t2 = t * t;
    let d = (&y2 - nu * q * &t2) * (one() + nu * q * &y2);
    let n00 = (&y2 * (one() + nu * q * &y2 - nu * q * &t2 * (nu * q + &y2))).checked_div(&d)?;
    let n01 = -(nu * t * (one() - &y4)).checked_div(&(q * &d))?;
    let q4 = q * q * q * q;
    let n11 = (nu * q + &y2 - nu * q * &t2 * (one() + nu * q * &y2)).checked_div(&(q4 * &d))?;
    Ok(vec![(0, 0, n00), (0, 1, n01), (1, 1, n11)])
}

/// Upper triangle `(j, l, N_{j,l})` of the spin-2 table.
pub fn table_spin_two(q: &Scalar, y: &Scalar, t: &Scalar, nu: &Scalar) -> Result<Vec<(usize, usize, Scalar)>> {
    let q2 = q * q;
    let q4 = &q2 * &q2;
    let q6 = &q4 * &q2;
    let q8 = &q4 * &q4;
    let q10 = &q8 * &q2;
    let y2 = y * y;
    let y4 = &y2 * &y2;
    let t2 = t * t;
    let t4 = &t2 * &t2;
    let nu2 = nu * nu;
    // (ν t²/y², -ν y²; q²)_2
    let a = (nu * &t2).checked_div(&y2)?;
    let b = -(nu * &y2);
    let d = (one() - &a) * (one() - &a * &q2) * (one() - &b) * (one() - &b * &q2);

    let n00 = (nu * &t2 * (&y2 + nu * &q2) * (nu * &q2 * &t2 * (nu + &y2) - (one() + &q2) * (one() + nu * &y2))
        + (one() + nu * &y2) * (one() + nu * &q2 * &y2))
        .checked_div(&d)?;
    let n01 = (nu * t).checked_div(&(&q2 * &y2))?
        * ((one() - &y4) * (one() + &q2) * (nu * &t2 * (&y2 + nu * &q2) - one() - nu * &y2)).checked_div(&d)?;
    let n02 = (&nu2 * &t2).checked_div(&(&q4 * &y4))? * ((one() - &y4) * (&q2 - &y4)).checked_div(&d)?;
    let n11 = (one() + &q2).checked_div(&q6)?
        + (nu
            * (one() + &q2)
            * (one() - &y4)
            * (&q2 * &y2 * (one() + nu * &y2) + &t2 * (nu * &q2 + &y2) * (one() - nu * &q2 * &y2)
                - nu * &q2 * &t4 * (one() + nu * &y2)))
            .checked_div(&(&q6 * &y4 * &d))?;
    let n12 = (nu * t).checked_div(&(&q8 * &y4))?
        * ((one() + &q2) * (one() - &y4) * (nu * &q2 * &t2 * (one() + nu * &y2) - &y2 - nu * &q2)).checked_div(&d)?;
    let n22 = ((nu + &y2) * (nu * &q2 + &y2) - nu * &t2 * (one() + &q2) * (nu * &q2 + &y2) * (one() + nu * &y2)
        + &nu2 * &q2 * &t4 * (one() + nu * &y2) * (one() + nu * &q2 * &y2))
        .checked_div(&(&q10 * &y4 * &d))?;
    Ok(vec![(0, 0, n00), (0, 1, n01), (0, 2, n02), (1, 1, n11), (1, 2, n12), (2, 2, n22)])
}

/// Every tabulated entry, and its mirror below the diagonal, at every
/// fixed draw.
pub fn run_golden() -> Result<Vec<GoldenEntry>> {
    let mut out = Vec::new();
    for (n, d) in DRAWS.iter().enumerate() {
        let (h, y, t, nu) = (r(d[0]), r(d[1]), r(d[2]), r(d[3]));
        let q = &h * &h;
        let p = BoundaryParams::from_t(h, y.clone(), t.clone(), Scalar::one(), nu.clone())?;
        for spin in [1u32, 2] {
            let table = if spin == 1 { table_spin_one(&q, &y, &t, &nu)? } else { table_spin_two(&q, &y, &t, &nu)? };
            let closed = n_closed(Weight::new(spin)?, &p)?;
            for (j, l, expected) in table {
                let mirror = if j == l { None } else { Some((l, j)) };
                for (a, b) in std::iter::once((j, l)).chain(mirror) {
                    out.push(GoldenEntry {
                        spin,
                        draw: n,
                        j: a,
                        l: b,
                        expected: expected.clone(),
                        actual: closed.get(a, b).clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}
