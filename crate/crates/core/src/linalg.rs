//! Dense numerical kernels: tolerance-based rank, subspace bases, kernels,
//! intersections, orthogonal complements and the matrix exponential.
//!
//! Every rank decision in the crate goes through [`numeric_rank`] and the
//! helpers built on it, with a threshold relative to the largest singular
//! value.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Default relative rank tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Thin singular value decomposition `m = u diag(s) v^T` with `s`
/// decreasing and `v` square (the full right singular basis).
///
/// One-sided Jacobi on the columns (after a QR step for tall inputs). The
/// bidiagonal SVD in nalgebra loses accuracy on the clustered spectra that
/// realified bases produce, so rank decisions use this instead.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Mat,
    pub s: Vec<f64>,
    pub v: Mat,
}

const JACOBI_SWEEPS: usize = 80;

pub fn svd(m: &Mat) -> Svd {
    let (rows, n) = m.shape();
    if rows > n && n > 0 {
        let qr = m.clone().qr();
        let q = qr.q();
        let inner = jacobi_svd(qr.r());
        return Svd { u: q * inner.u, s: inner.s, v: inner.v };
    }
    jacobi_svd(m.clone())
}

fn jacobi_svd(mut a: Mat) -> Svd {
    let (rows, n) = a.shape();
    let mut v = Mat::identity(n, n);
    // Columns below this squared norm are numerically zero; rotating them
    // only stalls convergence.
    let floor = {
        let f = f64::EPSILON * a.norm();
        f * f
    };
    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for r in 0..rows {
                    let x = a[(r, i)];
                    let y = a[(r, j)];
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || alpha <= floor || beta <= floor || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for r in 0..rows {
                    let x = a[(r, i)];
                    let y = a[(r, j)];
                    a[(r, i)] = c * x - s * y;
                    a[(r, j)] = s * x + c * y;
                }
                for r in 0..n {
                    let x = v[(r, i)];
                    let y = v[(r, j)];
                    v[(r, i)] = c * x - s * y;
                    v[(r, j)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|c| a.column(c).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let k = rows.min(n);
    let mut u = Mat::zeros(rows, k);
    let mut s = Vec::with_capacity(k);
    let mut v_sorted = Mat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        v_sorted.set_column(c, &v.column(i));
        if c < k {
            s.push(norms[i]);
            if norms[i] > 0.0 {
                u.set_column(c, &(a.column(i) / norms[i]));
            }
        }
    }
    Svd { u, s, v: v_sorted }
}

/// Singular values in decreasing order.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    svd(m).s
}

/// Number of singular values above `tol` times the largest one.
pub fn numeric_rank(m: &Mat, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&v| v > tol * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis (columns) of the column space of `m`.
pub fn column_basis(m: &Mat, tol: f64) -> Mat {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Mat::zeros(m.nrows(), 0);
    }
    let d = svd(m);
    let top = d.s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Mat::zeros(m.nrows(), 0);
    }
    let r = d.s.iter().filter(|&&v| v > tol * top).count();
    d.u.columns(0, r).into_owned()
}

/// Orthonormal basis (columns) of the kernel of `m`.
pub fn null_space(m: &Mat, tol: f64) -> Mat {
    let n = m.ncols();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return Mat::identity(n, n);
    }
    let d = svd(m);
    let top = d.s.first().copied().unwrap_or(0.0);
    let r = if top == 0.0 { 0 } else { d.s.iter().filter(|&&v| v > tol * top).count() };
    d.v.columns(r, n - r).into_owned()
}

pub fn select_columns(m: &Mat, idx: &[usize]) -> Mat {
    let mut out = Mat::zeros(m.nrows(), idx.len());
    for (c, &i) in idx.iter().enumerate() {
        out.set_column(c, &m.column(i));
    }
    out
}

/// Place the given blocks side by side. All blocks must share a row count.
pub fn hstack(blocks: &[&Mat]) -> Mat {
    let rows = blocks.iter().map(|b| b.nrows()).max().unwrap_or(0);
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        if b.ncols() == 0 {
            continue;
        }
        assert_eq!(b.nrows(), rows, "hstack: row mismatch");
        out.view_mut((0, at), (rows, b.ncols())).copy_from(*b);
        at += b.ncols();
    }
    out
}

/// Columns of `vectors` as a matrix.
pub fn from_columns(n: usize, vectors: &[Vector]) -> Mat {
    let mut out = Mat::zeros(n, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        out.set_column(c, v);
    }
    out
}

/// Orthonormal basis of the sum of two column spaces.
pub fn subspace_sum(u: &Mat, w: &Mat, tol: f64) -> Mat {
    column_basis(&hstack(&[u, w]), tol)
}

/// Orthonormal basis of the intersection of the column spaces of `u` and `w`,
/// computed from the kernel of `[u | -w]`.
pub fn intersection(u: &Mat, w: &Mat, tol: f64) -> Mat {
    let n = u.nrows();
    if u.ncols() == 0 || w.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let ub = column_basis(u, tol);
    let wb = column_basis(w, tol);
    let stacked = hstack(&[&ub, &(-&wb)]);
    let ker = null_space(&stacked, tol);
    if ker.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let coeffs = ker.rows(0, ub.ncols()).into_owned();
    column_basis(&(&ub * coeffs), tol)
}

/// Dimension of the intersection of two column spaces.
pub fn intersection_dim(u: &Mat, w: &Mat, tol: f64) -> usize {
    let a = numeric_rank(u, tol);
    let b = numeric_rank(w, tol);
    let s = numeric_rank(&hstack(&[u, w]), tol);
    a + b - s
}

/// Relative residual of projecting `v` onto the column space of the
/// orthonormal basis `q`.
pub fn span_residual(q: &Mat, v: &Vector) -> f64 {
    let norm = v.norm();
    if norm == 0.0 {
        return 0.0;
    }
    if q.ncols() == 0 {
        return 1.0;
    }
    let proj = q * (q.transpose() * v);
    (v - proj).norm() / norm
}

/// Largest relative residual of the columns of `m` against the span of `basis`.
pub fn contained_residual(basis: &Mat, m: &Mat, tol: f64) -> f64 {
    let q = column_basis(basis, tol);
    (0..m.ncols())
        .map(|c| span_residual(&q, &m.column(c).into_owned()))
        .fold(0.0, f64::max)
}

/// Complement of span(`sub`) inside span(`within`) that is orthogonal with
/// respect to the symmetric positive-definite Gram matrix `gram`.
pub fn gram_complement(sub: &Mat, within: &Mat, gram: &Mat, tol: f64) -> Mat {
    let w = column_basis(within, tol);
    if sub.ncols() == 0 {
        return w;
    }
    let constraints = sub.transpose() * gram * &w;
    let ker = null_space(&constraints, tol);
    if ker.ncols() == 0 {
        return Mat::zeros(within.nrows(), 0);
    }
    column_basis(&(&w * ker), tol)
}

/// Least-squares coordinates of vectors in a fixed (full column rank) basis.
#[derive(Debug, Clone)]
pub struct Coordinates {
    basis: Mat,
    pinv: Mat,
}

impl Coordinates {
    pub fn new(basis: Mat) -> Self {
        let d = svd(&basis);
        let top = d.s.first().copied().unwrap_or(0.0);
        let mut pinv = Mat::zeros(basis.ncols(), basis.nrows());
        for (i, &sv) in d.s.iter().enumerate() {
            if sv > 1e-13 * top {
                pinv += d.v.column(i) * d.u.column(i).transpose() / sv;
            }
        }
        Self { basis, pinv }
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Coordinates of `v` and the relative residual of the fit.
    pub fn solve(&self, v: &Vector) -> (Vector, f64) {
        let c = &self.pinv * v;
        let norm = v.norm();
        let res = if norm == 0.0 { 0.0 } else { (&self.basis * &c - v).norm() / norm };
        (c, res)
    }
}

/// Largest singular value.
pub fn operator_norm(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

fn one_norm(m: &Mat) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

const PADE_ORDER: usize = 8;

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant of fixed order.
pub fn expm(a: &Mat) -> Mat {
    assert!(a.is_square(), "expm of a non-square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > 0.5 {
        libm::ceil(libm::log2(norm / 0.5)) as u32
    } else {
        0
    };
    let scaled = a / libm::pow(2.0, squarings as f64);

    let mut coeff = 1.0;
    let mut power = Mat::identity(n, n);
    let mut num = Mat::identity(n, n);
    let mut den = Mat::identity(n, n);
    let m = PADE_ORDER as f64;
    for k in 1..=PADE_ORDER {
        let kf = k as f64;
        coeff *= (m - kf + 1.0) / (kf * (2.0 * m - kf + 1.0));
        power = &power * &scaled;
        num += &power * coeff;
        if k % 2 == 0 {
            den += &power * coeff;
        } else {
            den -= &power * coeff;
        }
    }
    let mut r = den.lu().solve(&num).expect("Padé denominator is invertible for small norms");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// Flatten a square matrix column-major into a vector.
pub fn vectorize(m: &Mat) -> Vector {
    Vector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &Vector, n: usize) -> Mat {
    Mat::from_column_slice(n, n, v.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_outer_product() {
        assert_eq!(numeric_rank(&Mat::identity(5, 5), DEFAULT_TOL), 5);
        let u = Vector::from_vec(alloc::vec![1.0, -2.0, 0.5, 3.0]);
        let v = Vector::from_vec(alloc::vec![0.3, 1.7, -1.1]);
        assert_eq!(numeric_rank(&(&u * v.transpose()), DEFAULT_TOL), 1);
    }

    #[test]
    fn rank_ignores_tiny_singular_values() {
        let m = Mat::from_diagonal(&Vector::from_vec(alloc::vec![1.0, 1e-12]));
        assert_eq!(numeric_rank(&m, 1e-9), 1);
        assert_eq!(numeric_rank(&m, 1e-13), 2);
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        assert_eq!(numeric_rank(&Mat::zeros(0, 3), DEFAULT_TOL), 0);
        assert_eq!(numeric_rank(&Mat::zeros(4, 0), DEFAULT_TOL), 0);
        assert_eq!(numeric_rank(&Mat::zeros(3, 3), DEFAULT_TOL), 0);
    }

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        let m = Mat::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&m, DEFAULT_TOL);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let u = Mat::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let w = Mat::from_column_slice(3, 2, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let i = intersection(&u, &w, DEFAULT_TOL);
        assert_eq!(i.ncols(), 1);
        assert!((i[(1, 0)].abs() - 1.0).abs() < 1e-12);
        assert_eq!(intersection_dim(&u, &w, DEFAULT_TOL), 1);
    }

    #[test]
    fn expm_of_rotation_generator() {
        let t = 0.7;
        let a = Mat::from_row_slice(2, 2, &[0.0, -t, t, 0.0]);
        let e = expm(&a);
        let expect = Mat::from_row_slice(2, 2, &[libm::cos(t), -libm::sin(t), libm::sin(t), libm::cos(t)]);
        assert!((e - expect).norm() < 1e-14);
    }

    #[test]
    fn expm_of_large_nilpotent_and_diagonal() {
        let a = Mat::from_row_slice(2, 2, &[3.0, 40.0, 0.0, 3.0]);
        let e = expm(&a);
        let e3 = libm::exp(3.0);
        let expect = Mat::from_row_slice(2, 2, &[e3, 40.0 * e3, 0.0, e3]);
        assert!((e - &expect).norm() / expect.norm() < 1e-13);
    }

    #[test]
    fn gram_complement_is_orthogonal() {
        let g = Mat::from_diagonal(&Vector::from_vec(alloc::vec![1.0, 2.0, 3.0]));
        let sub = Mat::from_column_slice(3, 1, &[1.0, 1.0, 0.0]);
        let all = Mat::identity(3, 3);
        let c = gram_complement(&sub, &all, &g, DEFAULT_TOL);
        assert_eq!(c.ncols(), 2);
        assert!((sub.transpose() * &g * &c).norm() < 1e-12);
    }
}
