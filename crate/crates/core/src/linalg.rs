//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn scalar(z: Complex64) -> CMatrix {
    CMatrix::from_element(1, 1, z)
}

pub fn diagonal(values: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(values))
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn distance(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    max_abs(&(a - b))
}

/// `max |M* M - I|`.
pub fn isometry_residual(m: &CMatrix) -> f64 {
    distance(&(m.adjoint() * m), &identity(m.ncols()))
}

/// `max(|M* M - I|, |M M* - I|)`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    isometry_residual(m).max(distance(&(m * m.adjoint()), &identity(m.nrows())))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (r, c) = (a.nrows() + b.nrows(), a.ncols() + b.ncols());
    let mut out = CMatrix::zeros(r, c);
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((a.nrows(), a.ncols()), b.shape()).copy_from(b);
    out
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The `k`-th compound matrix: the action on `Λ^k` in the basis of
/// increasing wedge monomials.
pub fn compound(m: &CMatrix, k: usize) -> CMatrix {
    let rows = subsets(m.nrows(), k);
    let cols = subsets(m.ncols(), k);
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let sub = CMatrix::from_fn(k, k, |a, b| m[(rows[i][a], cols[j][b])]);
        det(&sub)
    })
}

pub fn det(m: &CMatrix) -> Complex64 {
    if m.nrows() == 0 {
        return c(1.0, 0.0);
    }
    m.clone().determinant()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.trace()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Orthonormal basis (columns) of the null space of `m`; singular values
/// below `tol` count as zero.
pub fn null_space(m: &CMatrix, tol: f64) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let padded = if m.nrows() >= n {
        m.clone()
    } else {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), m.shape()).copy_from(m);
        p
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let keep: Vec<usize> = (0..n).filter(|&i| svd.singular_values[i] <= tol).collect();
    CMatrix::from_fn(n, keep.len(), |r, j| v_t[(keep[j], r)].conj())
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

pub fn rank(m: &CMatrix, tol: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s > tol).count()
}

/// Unitary polar factor `U V*` of `M = U Σ V*`.
pub fn polar_unitary(m: &CMatrix) -> CMatrix {
    if m.nrows() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    svd.u.expect("requested") * svd.v_t.expect("requested")
}

/// Orthonormal basis of the range of a Hermitian projection.
pub fn projection_range(p: &CMatrix) -> CMatrix {
    let d = p.nrows();
    if d == 0 {
        return CMatrix::zeros(0, 0);
    }
    let h = (p + p.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let keep: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    CMatrix::from_fn(d, keep.len(), |r, j| eig.eigenvectors[(r, keep[j])])
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = h.nrows();
    if d == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(d, d, |r, j| eig.eigenvectors[(r, order[j])]);
    (values, vectors)
}

/// Schur form `M = Q T Q*`; for normal `M` the triangular factor is
/// diagonal and `Q` diagonalizes.
pub fn schur(m: &CMatrix) -> (CMatrix, CMatrix) {
    if m.nrows() == 0 {
        return (m.clone(), m.clone());
    }
    m.clone().schur().unpack()
}

pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let (_, t) = schur(m);
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Gauss-distributed complex entries scaled to unit variance.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let (a, b): (f64, f64) = (rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
    c(a, b)
}

/// A Haar-ish random unitary: QR of a random complex matrix, phases fixed.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    if d == 0 {
        return CMatrix::zeros(0, 0);
    }
    let m = CMatrix::from_fn(d, d, |_, _| random_complex(rng));
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&CVector::from_fn(d, |i, _| {
        let z = r[(i, i)];
        if z.norm() > 0.0 {
            z / z.norm()
        } else {
            c(1.0, 0.0)
        }
    }));
    q * phases
}

/// Row-major vectorization.
pub fn vec_rows(m: &CMatrix) -> CVector {
    CVector::from_iterator(m.len(), m.transpose().iter().copied())
}

pub fn unvec_rows(v: &[Complex64], rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_row_slice(rows, cols, v)
}

/// The permutation `K` with `K (A ⊗ B) K* = B ⊗ A` for `A` of size `m`
/// and `B` of size `n`.
pub fn commutation(m: usize, n: usize) -> CMatrix {
    let mut k = CMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            k[(j * m + i, i * n + j)] = c(1.0, 0.0);
        }
    }
    k
}
