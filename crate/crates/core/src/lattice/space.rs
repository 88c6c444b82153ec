//! Operators on tensor products `V_{d_0} ⊗ V_{d_1} ⊗ …`, with basis vectors
//! ordered lexicographically (first factor most significant).

use alloc::vec;
use alloc::vec::Vec;

use super::{BlockTensor, Weight};
use crate::linalg::Matrix;
use crate::Scalar;

fn flat(multi: &[usize], dims: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (m, d)| acc * d + m)
}

fn unflat(mut n: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = n % dims[k];
        n /= dims[k];
    }
}

/// Places a two-site tensor on factors `a` (its first space) and `b` (its
/// second space) of the product, identity elsewhere.
///
/// # Panics
///
/// If the factor dimensions do not match the tensor or `a == b`.
pub fn embed_two(t: &BlockTensor, dims: &[usize], a: usize, b: usize) -> Matrix {
    let (da, db) = t.dims();
    assert!(a != b && dims[a] == da && dims[b] == db, "tensor does not fit factors {a}, {b}");
    let n: usize = dims.iter().product();
    let mut m = Matrix::zeros(n, n);
    let mut multi = vec![0; dims.len()];
    for col in 0..n {
        unflat(col, dims, &mut multi);
        let (ip, jp) = (multi[a], multi[b]);
        for i in 0..da {
            if i > ip + jp {
                break;
            }
            let j = ip + jp - i;
            if j >= db {
                continue;
            }
            let v = t.get(i, j, ip, jp);
            if v.is_zero() {
                continue;
            }
            let mut row = multi.clone();
            row[a] = i;
            row[b] = j;
            m[(flat(&row, dims), col)] = v.clone();
        }
    }
    m
}

/// Like [`embed_two`] but for an arbitrary (not necessarily conserving)
/// operator on `V_a ⊗ V_b` given as a matrix.
pub fn embed_pair_matrix(op: &Matrix, da: usize, db: usize, dims: &[usize], a: usize, b: usize) -> Matrix {
    assert!(a != b && dims[a] == da && dims[b] == db);
    let n: usize = dims.iter().product();
    let mut m = Matrix::zeros(n, n);
    let mut multi = vec![0; dims.len()];
    for col in 0..n {
        unflat(col, dims, &mut multi);
        let c = multi[a] * db + multi[b];
        for r in 0..da * db {
            let v = &op[(r, c)];
            if v.is_zero() {
                continue;
            }
            let mut row = multi.clone();
            row[a] = r / db;
            row[b] = r % db;
            m[(flat(&row, dims), col)] = v.clone();
        }
    }
    m
}

/// Places a single-site matrix (row `j`, column `l`) on factor `a`.
pub fn embed_one(k: &Matrix, dims: &[usize], a: usize) -> Matrix {
    assert!(k.is_square() && k.rows() == dims[a], "matrix does not fit factor {a}");
    let n: usize = dims.iter().product();
    let mut m = Matrix::zeros(n, n);
    let mut multi = vec![0; dims.len()];
    for col in 0..n {
        unflat(col, dims, &mut multi);
        let l = multi[a];
        for j in 0..dims[a] {
            let v = &k[(j, l)];
            if v.is_zero() {
                continue;
            }
            let mut row = multi.clone();
            row[a] = j;
            m[(flat(&row, dims), col)] = v.clone();
        }
    }
    m
}

/// Partial transpose on factor `a`: swaps the row and column index of that
/// factor and leaves the others alone.
pub fn partial_transpose(m: &Matrix, dims: &[usize], a: usize) -> Matrix {
    let n: usize = dims.iter().product();
    let mut out = Matrix::zeros(n, n);
    let mut r = vec![0; dims.len()];
    let mut c = vec![0; dims.len()];
    for row in 0..n {
        for col in 0..n {
            let v = &m[(row, col)];
            if v.is_zero() {
                continue;
            }
            unflat(row, dims, &mut r);
            unflat(col, dims, &mut c);
            core::mem::swap(&mut r[a], &mut c[a]);
            out[(flat(&r, dims), flat(&c, dims))] = v.clone();
        }
    }
    out
}

/// Trace over the first factor of `V_{dims[0]} ⊗ rest`.
pub fn partial_trace_first(m: &Matrix, dims: &[usize]) -> Matrix {
    let rest: usize = dims[1..].iter().product();
    Matrix::from_fn(rest, rest, |r, c| (0..dims[0]).map(|a| &m[(a * rest + r, a * rest + c)]).sum::<Scalar>())
}

/// The flip `|i⟩ ⊗ |j⟩ ↦ |j⟩ ⊗ |i⟩` on `V_I ⊗ V_I`.
pub fn permutation(w: Weight) -> Matrix {
    let d = w.dim();
    Matrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (ip, jp) = (c / d, c % d);
        if i == jp && j == ip {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Diagonal matrix from its entries.
pub fn diagonal(entries: Vec<Scalar>) -> Matrix {
    let n = entries.len();
    let mut m = Matrix::zeros(n, n);
    for (i, v) in entries.into_iter().enumerate() {
        m[(i, i)] = v;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tensor(a: u32, b: u32) -> BlockTensor {
        let (wa, wb) = (Weight::new(a).unwrap(), Weight::new(b).unwrap());
        BlockTensor::try_from_fn(wa, wb, |i, j, ip, jp| {
            Ok(Scalar::from_integer((1 + i + 2 * j + 3 * ip + 5 * jp) as i64))
        })
        .unwrap()
    }

    #[test]
    fn embed_two_on_its_own_space_is_the_matrix() {
        let t = tensor(1, 2);
        assert_eq!(embed_two(&t, &[2, 3], 0, 1), t.to_matrix());
    }

    #[test]
    fn reversed_embedding_matches_swap() {
        let t = tensor(2, 1);
        // t on V_2 ⊗ V_1 placed as (space 1, space 0) of V_1 ⊗ V_2.
        let m = embed_two(&t, &[2, 3], 1, 0);
        assert_eq!(m, t.swapped().to_matrix());
    }

    #[test]
    fn pair_matrix_agrees_with_tensor_embedding() {
        let t = tensor(1, 1);
        let dims = [2, 3, 2];
        assert_eq!(embed_pair_matrix(&t.to_matrix(), 2, 2, &dims, 2, 0), embed_two(&t, &dims, 2, 0));
    }

    #[test]
    fn partial_transposes_compose_to_full_transpose() {
        let m = Matrix::from_fn(6, 6, |r, c| Scalar::from_integer((7 * r + c) as i64));
        let dims = [2, 3];
        let both = partial_transpose(&partial_transpose(&m, &dims, 0), &dims, 1);
        assert_eq!(both, m.transpose());
        assert_eq!(partial_transpose(&partial_transpose(&m, &dims, 0), &dims, 0), m);
    }

    #[test]
    fn trace_of_product_operator() {
        let a = Matrix::from_fn(2, 2, |r, c| Scalar::from_integer((r + 2 * c + 1) as i64));
        let dims = [2, 3];
        let op = embed_one(&a, &dims, 0);
        let tr = partial_trace_first(&op, &dims);
        assert_eq!(tr, Matrix::scalar(3, Scalar::from_integer(1 + 4)));
    }

    #[test]
    fn permutation_squares_to_identity() {
        let p = permutation(Weight::new(2).unwrap());
        assert_eq!(p.mul(&p), Matrix::identity(9));
    }
}
