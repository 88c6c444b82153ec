//! Residuals of the defining identities at explicit parameter values.
//! Every function returns the largest absolute entry of `LHS - RHS`.

use alloc::vec;
use alloc::vec::Vec;

use super::max_abs;
use crate::boundary::{
    build_k, column_sum_spread, k_defining_residual, kbar, n_closed, n_first_column_residual, n_recurrence_residual,
    BoundaryParams, KMatrix, KRoute,
};
use crate::lattice::space::{embed_one, embed_two, partial_trace_first, partial_transpose};
use crate::lattice::{build_crossing, build_dual_r, build_rbar, build_s, g_ij, ModelParams, Weight};
use crate::linalg::Matrix;
use crate::qseries::phi_weight;
use crate::{Result, Scalar};

fn s_at(i_w: Weight, j_w: Weight, h: &Scalar, lambda: Scalar) -> Result<crate::lattice::BlockTensor> {
    build_s(i_w, j_w, &ModelParams::new(h.clone(), lambda)?)
}

/// Yang-Baxter equation `S₁₂(x/y) S₁₃(x/z) S₂₃(y/z) = S₂₃(y/z) S₁₃(x/z) S₁₂(x/y)`.
pub fn ybe_residual(w: [Weight; 3], x: &Scalar, y: &Scalar, z: &Scalar, h: &Scalar) -> Result<Scalar> {
    let dims = [w[0].dim(), w[1].dim(), w[2].dim()];
    let s12 = embed_two(&s_at(w[0], w[1], h, x.checked_div(y)?)?, &dims, 0, 1);
    let s13 = embed_two(&s_at(w[0], w[2], h, x.checked_div(z)?)?, &dims, 0, 2);
    let s23 = embed_two(&s_at(w[1], w[2], h, y.checked_div(z)?)?, &dims, 1, 2);
    let lhs = Matrix::product([&s12, &s13, &s23]);
    let rhs = Matrix::product([&s23, &s13, &s12]);
    Ok(lhs.max_abs_diff(&rhs))
}

/// Mixed reflection equation
/// `S₁₂(x/y) K₁(x) S₂₁(xy) K₂(y) = K₂(y) S₁₂(xy) K₁(x) S₂₁(x/y)`
/// with `K₁ = k_x` on `V_I` and `K₂ = k_y` on `V_J`.
pub fn reflection_residual(k_x: &KMatrix, k_y: &KMatrix, x: &Scalar, y: &Scalar, h: &Scalar) -> Result<Scalar> {
    let (i_w, j_w) = (k_x.spin(), k_y.spin());
    let dims = [i_w.dim(), j_w.dim()];
    let ratio = x.checked_div(y)?;
    let prod = x * y;
    let k1 = embed_one(k_x.matrix(), &dims, 0);
    let k2 = embed_one(k_y.matrix(), &dims, 1);
    let lhs = Matrix::product([
        &embed_two(&s_at(i_w, j_w, h, ratio.clone())?, &dims, 0, 1),
        &k1,
        &embed_two(&s_at(j_w, i_w, h, prod.clone())?, &dims, 1, 0),
        &k2,
    ]);
    let rhs = Matrix::product([
        &k2,
        &embed_two(&s_at(i_w, j_w, h, prod)?, &dims, 0, 1),
        &k1,
        &embed_two(&s_at(j_w, i_w, h, ratio)?, &dims, 1, 0),
    ]);
    Ok(lhs.max_abs_diff(&rhs))
}

/// Dual reflection equation
/// `S₁₂(y/x) K̄₁(x) 𝓡₂₁(1/(xy)) K̄₂(y) = K̄₂(y) 𝓡₁₂(1/(xy)) K̄₁(x) S₂₁(y/x)`.
pub fn dual_reflection_residual(kb_x: &KMatrix, kb_y: &KMatrix, x: &Scalar, y: &Scalar, h: &Scalar) -> Result<Scalar> {
    let (i_w, j_w) = (kb_x.spin(), kb_y.spin());
    let dims = [i_w.dim(), j_w.dim()];
    let ratio = y.checked_div(x)?;
    let inv = (x * y).checked_inv()?;
    let p = ModelParams::new(h.clone(), inv)?;
    let rr12 = embed_two(&build_dual_r(i_w, j_w, &p)?, &dims, 0, 1);
    let rr21 = embed_two(&build_dual_r(j_w, i_w, &p)?, &dims, 1, 0);
    let k1 = embed_one(kb_x.matrix(), &dims, 0);
    let k2 = embed_one(kb_y.matrix(), &dims, 1);
    let lhs = Matrix::product([&embed_two(&s_at(i_w, j_w, h, ratio.clone())?, &dims, 0, 1), &k1, &rr21, &k2]);
    let rhs = Matrix::product([&k2, &rr12, &k1, &embed_two(&s_at(j_w, i_w, h, ratio)?, &dims, 1, 0)]);
    Ok(lhs.max_abs_diff(&rhs))
}

/// An open chain: site weights and inhomogeneities `z_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub sites: Vec<Weight>,
    pub z: Vec<Scalar>,
}

impl Chain {
    fn dims(&self, aux: Weight) -> Vec<usize> {
        let mut d = vec![aux.dim()];
        d.extend(self.sites.iter().map(|w| w.dim()));
        d
    }
}

/// Double-row monodromy matrix
/// `T_a(x) = S_{a1}(x/z₁)…S_{aL}(x/z_L) K_a(x) S_{La}(z_L x)…S_{1a}(z₁ x)`
/// on `V_a ⊗ V_1 ⊗ … ⊗ V_L`.
pub fn monodromy(aux: Weight, chain: &Chain, k: &KMatrix, x: &Scalar, h: &Scalar) -> Result<Matrix> {
    let dims = chain.dims(aux);
    let mut ops = Vec::with_capacity(2 * chain.sites.len() + 1);
    for (n, (w, z)) in chain.sites.iter().zip(&chain.z).enumerate() {
        ops.push(embed_two(&s_at(aux, *w, h, x.checked_div(z)?)?, &dims, 0, n + 1));
    }
    ops.push(embed_one(k.matrix(), &dims, 0));
    for (n, (w, z)) in chain.sites.iter().zip(&chain.z).enumerate().rev() {
        ops.push(embed_two(&s_at(*w, aux, h, z * x)?, &dims, n + 1, 0));
    }
    Ok(Matrix::product(&ops))
}

/// `t(x) = Tr_a K̄_a(x) T_a(x)` with `K` and `K̄` built by `route`.
pub fn transfer_matrix(aux: Weight, chain: &Chain, x: &Scalar, route: KRoute, bp: &BoundaryParams) -> Result<Matrix> {
    let dims = chain.dims(aux);
    let k = build_k(route, aux, &bp.with_spectral(x.clone())?)?;
    let kb = kbar(route, aux, bp, x)?;
    let t = embed_one(kb.matrix(), &dims, 0).mul(&monodromy(aux, chain, &k, x, &bp.h)?);
    Ok(partial_trace_first(&t, &dims))
}

/// `[t_a(x), t_b(y)]` for two auxiliary weights.
pub fn transfer_commutator_residual(
    aux: [Weight; 2],
    chain: &Chain,
    x: &Scalar,
    y: &Scalar,
    route: KRoute,
    bp: &BoundaryParams,
) -> Result<Scalar> {
    let ta = transfer_matrix(aux[0], chain, x, route, bp)?;
    let tb = transfer_matrix(aux[1], chain, y, route, bp)?;
    Ok(max_abs(ta.commutator(&tb).entries()))
}

/// Unitarity `S₁₂(λ) S₂₁(1/λ) = I` and the defining property
/// `𝓡₁₂^{t}(λ) S₂₁^{t}(1/λ) = I` of the dual operator, for both partial
/// transposes.
pub fn unitarity_residual(i_w: Weight, j_w: Weight, lambda: &Scalar, h: &Scalar) -> Result<Scalar> {
    let dims = [i_w.dim(), j_w.dim()];
    let id = Matrix::identity(dims[0] * dims[1]);
    let inv = lambda.checked_inv()?;
    let s12 = embed_two(&s_at(i_w, j_w, h, lambda.clone())?, &dims, 0, 1);
    let s21 = embed_two(&s_at(j_w, i_w, h, inv)?, &dims, 1, 0);
    let rr = embed_two(&build_dual_r(i_w, j_w, &ModelParams::new(h.clone(), lambda.clone())?)?, &dims, 0, 1);
    let mut out = vec![s12.mul(&s21).max_abs_diff(&id)];
    for a in 0..2 {
        let lhs = partial_transpose(&rr, &dims, a).mul(&partial_transpose(&s21, &dims, a));
        out.push(lhs.max_abs_diff(&id));
    }
    Ok(max_abs(out))
}

/// Crossing symmetry, inversion and crossing unitarity of `R̄` and `S` on
/// `V_I ⊗ V_J` at `λ`.
pub fn crossing_residual(i_w: Weight, j_w: Weight, lambda: &Scalar, h: &Scalar) -> Result<Scalar> {
    let dims = [i_w.dim(), j_w.dim()];
    let n = dims[0] * dims[1];
    let q = h * h;
    let p = ModelParams::new(h.clone(), lambda.clone())?;
    let at = |l: Scalar| ModelParams::new(h.clone(), l);
    let cross = build_crossing(i_w, j_w, &p)?;
    let g = g_ij(i_w, j_w, h, lambda)?;
    let gi = Matrix::scalar(n, g);
    let inv = lambda.checked_inv()?;
    let crossed = (&q * lambda).checked_inv()?;
    let crossed2 = (&q * &q * lambda).checked_inv()?;

    let rb12 = embed_two(&build_rbar(i_w, j_w, &p)?, &dims, 0, 1);
    let v1 = embed_one(&cross.v, &dims, 0);
    let v1_inv = embed_one(&cross.v.inverse()?, &dims, 0);
    let rb21_crossed = embed_two(&build_rbar(j_w, i_w, &at(crossed)?)?, &dims, 1, 0);
    let crossing = rb12.scale(&cross.f).max_abs_diff(&Matrix::product([
        &v1,
        &partial_transpose(&rb21_crossed, &dims, 0),
        &v1_inv,
    ]));

    let rb21_inv = embed_two(&build_rbar(j_w, i_w, &at(inv.clone())?)?, &dims, 1, 0);
    let rbar_inversion = rb12.mul(&rb21_inv).max_abs_diff(&Matrix::identity(n));
    let rb21_c2 = embed_two(&build_rbar(j_w, i_w, &at(crossed2.clone())?)?, &dims, 1, 0);
    let rbar_unitarity =
        partial_transpose(&rb12, &dims, 0).mul(&partial_transpose(&rb21_c2, &dims, 0)).max_abs_diff(&gi);

    let s12 = embed_two(&build_s(i_w, j_w, &p)?, &dims, 0, 1);
    let s21_inv = embed_two(&build_s(j_w, i_w, &at(inv)?)?, &dims, 1, 0);
    let s_inversion = s12.mul(&s21_inv).max_abs_diff(&Matrix::identity(n));
    let s21_c2 = embed_two(&build_s(j_w, i_w, &at(crossed2)?)?, &dims, 1, 0);
    let m1 = embed_one(&cross.m, &dims, 0);
    let m1_inv = embed_one(&cross.m.inverse()?, &dims, 0);
    let s_unitarity =
        Matrix::product([&m1, &partial_transpose(&s12, &dims, 0), &m1_inv, &partial_transpose(&s21_c2, &dims, 0)])
            .max_abs_diff(&gi);

    Ok(max_abs([crossing, rbar_inversion, rbar_unitarity, s_inversion, s_unitarity]))
}

/// Largest `|column sum - 1|` of `S_{I,J}(λ)`.
pub fn s_stochastic_residual(i_w: Weight, j_w: Weight, lambda: &Scalar, h: &Scalar) -> Result<Scalar> {
    let s = s_at(i_w, j_w, h, lambda.clone())?;
    Ok(max_abs(s.column_sums().into_iter().map(|c| c - Scalar::one())))
}

fn phi(gamma: i64, beta: i64, x: &Scalar, y: &Scalar, q: &Scalar) -> Result<Scalar> {
    if beta < 0 {
        return Ok(Scalar::zero());
    }
    phi_weight(gamma, beta as usize, x, y, q)
}

/// Parameters of the quartic Φ relation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiIdentityPoint {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
    pub u: Scalar,
    pub v: Scalar,
    pub q: Scalar,
}

/// The quartic relation among `Φ_q` weights equivalent to the degenerate
/// reflection equation, at external indices `(α, β, γ, δ)`.
pub fn phi_identity_residual(idx: [i64; 4], p: &PhiIdentityPoint) -> Result<Scalar> {
    let [al, be, ga, de] = idx;
    let (x, y, z, u, v, q) = (&p.x, &p.y, &p.z, &p.u, &p.v, &p.q);
    let (zx, zy, zu, zv) = (z * x, z * y, z * u, z * v);
    let mut lhs = Scalar::zero();
    let mut rhs = Scalar::zero();
    for b1 in 0..=al {
        for b2 in 0..=al + be - b1 {
            lhs += phi(b1, al, u, v, q)?
                * phi(b2, al + be - b1, &zx, &zv, q)?
                * phi(ga, b1, x, u, q)?
                * phi(de, b1 + b2 - ga, &zy, &zu, q)?;
            rhs += phi(ga, b1, x, y, q)?
                * phi(b1, al, y, v, q)?
                * phi(ga + de - b1, b2, &zx, &zv, q)?
                * phi(b1 + b2 - al, be, &zy, &zu, q)?;
        }
    }
    Ok(lhs - rhs)
}

/// Largest residual of [`phi_identity_residual`] over all indices `≤ bound`.
pub fn phi_identity_max_residual(bound: i64, p: &PhiIdentityPoint) -> Result<Scalar> {
    let mut out = Vec::new();
    for al in 0..=bound {
        for be in 0..=bound {
            for ga in 0..=bound {
                for de in 0..=bound {
                    out.push(phi_identity_residual([al, be, ga, de], p)?);
                }
            }
        }
    }
    Ok(max_abs(out))
}

/// Degenerate reflection equation without difference property, assembled
/// as matrices truncated to indices `0..=bound`. Only columns with
/// `i' + j' ≤ bound` are compared; those are unaffected by the cut.
pub fn degenerate_reflection_residual(
    x: &Scalar,
    y: &Scalar,
    xb: &Scalar,
    yb: &Scalar,
    p: &PhiIdentityPoint,
    bound: usize,
) -> Result<Scalar> {
    let d = bound + 1;
    let (z, q) = (&p.z, &p.q);
    let two = |first: bool, a: &Scalar, b: &Scalar| -> Result<Matrix> {
        let mut m = Matrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                for ip in 0..d {
                    for jp in 0..d {
                        if i + j != ip + jp {
                            continue;
                        }
                        let (g, be) = if first { (i, jp) } else { (j, ip) };
                        m[(i * d + j, ip * d + jp)] = phi(g as i64, be as i64, a, b, q)?;
                    }
                }
            }
        }
        Ok(m)
    };
    let kmat = |a: &Scalar, ab: &Scalar| -> Result<Matrix> {
        let (za, zab) = (z * a, z * ab);
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for l in 0..d {
                m[(j, l)] = phi(j as i64, l as i64, &za, &zab, q)?;
            }
        }
        Ok(m)
    };
    let dims = [d, d];
    let k1 = embed_one(&kmat(x, xb)?, &dims, 0);
    let k2 = embed_one(&kmat(y, yb)?, &dims, 1);
    let lhs = Matrix::product([&two(true, x, y)?, &k1, &two(false, y, xb)?, &k2]);
    let rhs = Matrix::product([&k2, &two(true, x, yb)?, &k1, &two(false, yb, xb)?]);
    let mut out = Vec::new();
    for ip in 0..d {
        for jp in 0..d {
            if ip + jp > bound {
                continue;
            }
            let c = ip * d + jp;
            for r in 0..d * d {
                out.push(&lhs[(r, c)] - &rhs[(r, c)]);
            }
        }
    }
    Ok(max_abs(out))
}

/// Every linear relation that applies to `K_J` built by `route`: the
/// defining recursion, and for the closed route also the recursions of `N`
/// and of its first column. At `μ = 1` the column sums must be constant.
pub fn k_defining_max_residual(spin: Weight, bp: &BoundaryParams, route: KRoute) -> Result<Scalar> {
    let k = build_k(route, spin, bp)?;
    let mut out = vec![k_defining_residual(&k, bp)?];
    if route == KRoute::Closed {
        let n = n_closed(spin, bp)?;
        out.push(n_recurrence_residual(&n, bp)?);
        out.push(n_first_column_residual(&n, bp)?);
    }
    if bp.mu.is_one() {
        out.push(column_sum_spread(&k));
    }
    Ok(max_abs(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d).unwrap()
    }

    fn w(n: u32) -> Weight {
        Weight::new(n).unwrap()
    }

    fn bp() -> BoundaryParams {
        BoundaryParams::from_t(s(1, 2), s(3, 2), s(2, 3), s(4, 5), s(1, 5)).unwrap()
    }

    #[test]
    fn ybe_mixed_weights() {
        let r = ybe_residual([w(1), w(2), w(3)], &s(3, 7), &s(-5, 2), &s(2, 9), &s(2, 3)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn ybe_at_coinciding_points() {
        let r = ybe_residual([w(2), w(1), w(2)], &s(3, 7), &s(3, 7), &s(2, 9), &s(2, 3)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn reflection_detects_a_wrong_boundary_matrix() {
        let p = bp();
        let (x, y) = (s(5, 3), s(-2, 7));
        let kx = build_k(KRoute::Closed, w(1), &p.with_spectral(x.clone()).unwrap()).unwrap();
        let ky = build_k(KRoute::Closed, w(2), &p.with_spectral(y.clone()).unwrap()).unwrap();
        assert!(reflection_residual(&kx, &ky, &x, &y, &p.h).unwrap().is_zero());
        // K_2 evaluated at the wrong spectral point.
        let wrong = build_k(KRoute::Closed, w(2), &p.with_spectral(x.clone()).unwrap()).unwrap();
        assert!(!reflection_residual(&kx, &wrong, &x, &y, &p.h).unwrap().is_zero());
    }

    #[test]
    fn dual_reflection_needs_the_reflected_point() {
        let p = bp();
        let (x, y) = (s(5, 3), s(-2, 7));
        let kx = kbar(KRoute::Closed, w(1), &p, &x).unwrap();
        let ky = kbar(KRoute::Closed, w(2), &p, &y).unwrap();
        assert!(dual_reflection_residual(&kx, &ky, &x, &y, &p.h).unwrap().is_zero());
        let plain = build_k(KRoute::Closed, w(2), &p.with_spectral(y.clone()).unwrap()).unwrap();
        assert!(!dual_reflection_residual(&kx, &plain, &x, &y, &p.h).unwrap().is_zero());
    }

    #[test]
    fn transfer_matrices_commute_on_a_short_chain() {
        let chain = Chain { sites: vec![w(1), w(1)], z: vec![s(3, 2), s(-4, 5)] };
        let r = transfer_commutator_residual([w(1), w(1)], &chain, &s(2, 7), &s(5, 9), KRoute::Closed, &bp()).unwrap();
        assert!(r.is_zero());
        let t = transfer_matrix(w(1), &chain, &s(2, 7), KRoute::Closed, &bp()).unwrap();
        assert!(!t.is_zero());
    }

    #[test]
    fn transfer_matrices_fail_without_the_dual_matrix() {
        // Using K in place of K̄ breaks commutativity.
        let p = bp();
        let chain = Chain { sites: vec![w(1)], z: vec![s(3, 2)] };
        let dims = [2, 2];
        let t = |x: &Scalar| {
            let k = build_k(KRoute::Closed, w(1), &p.with_spectral(x.clone()).unwrap()).unwrap();
            let m = embed_one(k.matrix(), &dims, 0).mul(&monodromy(w(1), &chain, &k, x, &p.h).unwrap());
            partial_trace_first(&m, &dims)
        };
        assert!(!t(&s(2, 7)).commutator(&t(&s(5, 9))).is_zero());
    }

    #[test]
    fn crossing_and_unitarity() {
        for (a, b) in [(1, 1), (1, 3), (3, 2)] {
            assert!(crossing_residual(w(a), w(b), &s(-7, 4), &s(2, 5)).unwrap().is_zero());
            assert!(unitarity_residual(w(a), w(b), &s(-7, 4), &s(2, 5)).unwrap().is_zero());
            assert!(s_stochastic_residual(w(a), w(b), &s(-7, 4), &s(2, 5)).unwrap().is_zero());
        }
    }

    fn point() -> PhiIdentityPoint {
        PhiIdentityPoint { x: s(3, 5), y: s(-7, 2), z: s(2, 9), u: s(5, 4), v: s(-1, 6), q: s(2, 7) }
    }

    #[test]
    fn phi_identity_at_zero_indices_is_one_each_side() {
        assert!(phi_identity_residual([0, 0, 0, 0], &point()).unwrap().is_zero());
    }

    #[test]
    fn phi_identity_up_to_three() {
        assert!(phi_identity_max_residual(3, &point()).unwrap().is_zero());
    }

    #[test]
    fn degenerate_reflection_truncated() {
        let p = point();
        assert!(degenerate_reflection_residual(&s(3, 5), &s(-7, 2), &s(4, 3), &s(9, 8), &p, 3).unwrap().is_zero());
    }

    #[test]
    fn k_defining_all_routes() {
        let p = bp();
        let up = BoundaryParams::upper(s(1, 2), s(3, 2), Scalar::one(), s(1, 5)).unwrap();
        assert!(k_defining_max_residual(w(3), &p, KRoute::Closed).unwrap().is_zero());
        assert!(k_defining_max_residual(w(2), &up, KRoute::Upper).unwrap().is_zero());
        assert!(k_defining_max_residual(w(2), &p.with_mu(Scalar::one()).unwrap(), KRoute::Recurrence)
            .unwrap()
            .is_zero());
    }
}
