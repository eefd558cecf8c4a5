//! `g2 = Der(O)`, `f4(-20) = Der(Herm(3, O)_{2,1})` acting on the trace-free
//! part `V`, the null cone `C = {x in V : x o x = 0}` whose projectivization
//! is the flag manifold of `f4`, and the subalgebras used by the catalog.
//!
//! The algebra `f4` is realized by 26x26 matrices in the orthonormal basis
//! of [`jordan::v_basis`]; its Cartan involution is `D -> -D^T` and `k`
//! (dimension 36) is the antisymmetric part.

pub mod jordan;
pub mod octonion;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::SymmetricEigen;
use rand::Rng;

use crate::algebra::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{column_basis, hstack, null_space, numeric_rank, Mat, Vector, DEFAULT_TOL};
use crate::sampling::gaussian_vector;
use jordan::{restrict_to_v, v_basis, v_coordinates, JordanElement, JordanTable, OctMatrix, V_DIM, W_DIM};
use octonion::multiplication_table;
pub use octonion::Octonion;

/// Tolerance for embedding residuals.
pub const EMBED_TOL: f64 = 1e-7;

/// Relative eigenvalue cut for the derivation nullspace of the normal matrix.
pub const NULL_CUT: f64 = 1e-9;

fn nullspace_from_normal(a: &Mat, expected: Option<usize>, what: &str) -> Result<Mat> {
    let n = a.transpose() * a;
    let eig = SymmetricEigen::new(n);
    let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let null: Vec<usize> = order.iter().copied().filter(|&i| eig.eigenvalues[i] <= NULL_CUT * top).collect();
    let next = order.get(null.len()).map(|&i| eig.eigenvalues[i] / top).unwrap_or(1.0);
    if let Some(k) = expected {
        if null.len() != k {
            return Err(Error::Construction(format!(
                "{what}: nullity {} (expected {k}), next relative eigenvalue {next:.3e}",
                null.len()
            )));
        }
    }
    if next < 1e-6 {
        return Err(Error::Construction(format!("{what}: no spectral gap above the nullspace ({next:.3e})")));
    }
    let mut out = Mat::zeros(a.ncols(), null.len());
    for (c, &i) in null.iter().enumerate() {
        out.set_column(c, &eig.eigenvectors.column(i));
    }
    Ok(out)
}

/// `Der(O)` on `R^8`, dimension 14, compact.
pub fn build_g2() -> Result<LieAlgebra> {
    let t = multiplication_table();
    // Unknown D (8x8), column-major: D[r][c] at index 8 c + r.
    let mut rows = Mat::zeros(64 * 8, 64);
    for a in 0..8 {
        for b in 0..8 {
            for r in 0..8 {
                let row = (a * 8 + b) * 8 + r;
                // D(e_a e_b)_r = sum_m t[a][b][m] D[r][m]
                for m in 0..8 {
                    rows[(row, 8 * m + r)] += t[a][b][m];
                }
                // (D e_a) e_b = sum_p D[p][a] t[p][b][r]; e_a (D e_b) likewise.
                for p in 0..8 {
                    rows[(row, 8 * a + p)] -= t[p][b][r];
                    rows[(row, 8 * b + p)] -= t[a][p][r];
                }
            }
        }
    }
    let null = nullspace_from_normal(&rows, Some(14), "Der(O)")?;
    let mats: Vec<Mat> = (0..null.ncols()).map(|c| Mat::from_column_slice(8, 8, null.column(c).as_slice())).collect();
    let labels = (0..mats.len()).map(|i| format!("g{i}")).collect();
    LieAlgebra::from_matrices(labels, mats)?.with_negative_transpose_theta()
}

/// Coefficients `f(i, j)` of `D_ij` in component `r` of
/// `D(u_a o u_b) - D(u_a) o u_b - u_a o D(u_b)`, for `D` acting on `V`.
struct DerivationSystem {
    p: Mat,
    /// `u_a o u_k` in `W` coordinates, indexed `a * 26 + k`.
    prods: Vec<Vector>,
    /// `V`-coordinates of `u_a o u_b`.
    vcoords: Vec<Vector>,
}

impl DerivationSystem {
    fn new(table: &JordanTable) -> Self {
        let p = v_basis();
        let pc = v_coordinates();
        let mut prods = Vec::with_capacity(V_DIM * V_DIM);
        let mut vcoords = Vec::with_capacity(V_DIM * V_DIM);
        for a in 0..V_DIM {
            for k in 0..V_DIM {
                let w = table.mul(&p.column(a).into_owned(), &p.column(k).into_owned());
                vcoords.push(&pc * &w);
                prods.push(w);
            }
        }
        DerivationSystem { p, prods, vcoords }
    }

    /// The 27 x 676 block of constraints for the pair `(a, b)`, with the
    /// unknown `D` flattened row-major (`D_ij` at `26 i + j`).
    fn block(&self, a: usize, b: usize) -> Mat {
        let mut out = Mat::zeros(W_DIM, V_DIM * V_DIM);
        let c = &self.vcoords[a * V_DIM + b];
        for r in 0..W_DIM {
            for i in 0..V_DIM {
                let pri = self.p[(r, i)];
                if pri != 0.0 {
                    for j in 0..V_DIM {
                        out[(r, i * V_DIM + j)] += pri * c[j];
                    }
                }
                out[(r, i * V_DIM + a)] -= self.prods[i * V_DIM + b][r];
                out[(r, i * V_DIM + b)] -= self.prods[a * V_DIM + i][r];
            }
        }
        out
    }
}

/// Basis of antisymmetric (`sym = false`) or symmetric 26x26 matrices,
/// flattened row-major as columns.
fn matrix_basis(sym: bool) -> Mat {
    let mut cols = Vec::new();
    for i in 0..V_DIM {
        for j in i..V_DIM {
            if i == j && !sym {
                continue;
            }
            let mut v = Vector::zeros(V_DIM * V_DIM);
            v[i * V_DIM + j] = 1.0;
            if i != j {
                v[j * V_DIM + i] = if sym { 1.0 } else { -1.0 };
            }
            cols.push(v);
        }
    }
    crate::linalg::from_columns(V_DIM * V_DIM, &cols)
}

fn unflatten(v: &Vector) -> Mat {
    Mat::from_row_slice(V_DIM, V_DIM, v.as_slice())
}

/// `f4(-20)` as `Der(W)` restricted to `V`: 36 antisymmetric (`k = so(9)`)
/// followed by 16 symmetric (`s`) basis matrices.
pub fn build_f4() -> Result<LieAlgebra> {
    let table = JordanTable::new();
    let sys = DerivationSystem::new(&table);
    let pairs: Vec<(usize, usize)> = (0..V_DIM).flat_map(|a| (a..V_DIM).map(move |b| (a, b))).collect();
    let mut mats = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (sym, expected, tag) in [(false, 36, "k"), (true, 16, "s")] {
        let basis = matrix_basis(sym);
        let mut a = Mat::zeros(pairs.len() * W_DIM, basis.ncols());
        for (n, &(x, y)) in pairs.iter().enumerate() {
            let block = sys.block(x, y) * &basis;
            a.view_mut((n * W_DIM, 0), (W_DIM, basis.ncols())).copy_from(&block);
        }
        let null = nullspace_from_normal(&a, Some(expected), "Der(W)")?;
        let worst = (&a * &null).amax();
        if worst > 1e-10 {
            return Err(Error::Construction(format!("derivation residual {worst:.3e}")));
        }
        for c in 0..null.ncols() {
            mats.push(unflatten(&(&basis * null.column(c))));
            labels.push(format!("{tag}{c}"));
        }
    }
    LieAlgebra::from_matrices(labels, mats)?.with_negative_transpose_theta()
}

/// Lifts an operator on `V` to `W`, killing the identity.
pub fn lift_to_w(d_v: &Mat) -> Mat {
    v_basis() * d_v * v_coordinates()
}

/// Largest component of `D(x o y) - Dx o y - x o Dy` over basis pairs of `W`.
pub fn derivation_residual(table: &JordanTable, d_w: &Mat) -> f64 {
    let mut worst: f64 = 0.0;
    let cols: Vec<Vector> = (0..W_DIM).map(|i| d_w.column(i).into_owned()).collect();
    for i in 0..W_DIM {
        let ei = JordanElement::basis(i).to_vector();
        for j in i..W_DIM {
            let ej = JordanElement::basis(j).to_vector();
            let prod = Vector::from_column_slice(table.product_of_basis(i, j));
            let r = d_w * prod - table.mul(&cols[i], &ej) - table.mul(&ei, &cols[j]);
            worst = worst.max(r.amax());
        }
    }
    worst
}

/// The 27x27 operator `x -> A x - x A` for an octonionic matrix `A` whose
/// entries lie in a commutative associative subalgebra (reals or `C`).
pub fn commutator_action(a: &OctMatrix) -> Result<Mat> {
    let mut out = Mat::zeros(W_DIM, W_DIM);
    for c in 0..W_DIM {
        let x = JordanElement::basis(c).to_matrix();
        let ax = jordan::oct_matmul(a, &x);
        let xa = jordan::oct_matmul(&x, a);
        let mut diff = ax;
        for i in 0..3 {
            for j in 0..3 {
                diff[i][j] = ax[i][j] - xa[i][j];
            }
        }
        let (y, dev) = JordanElement::from_matrix(&diff);
        if dev > 1e-12 {
            return Err(Error::Construction(format!("commutator leaves W (deviation {dev:.3e})")));
        }
        out.set_column(c, &y.to_vector());
    }
    Ok(out)
}

/// An 8x8 operator on `O` applied to each off-diagonal entry of `W`.
pub fn entrywise(d8: &Mat) -> Mat {
    let mut out = Mat::zeros(W_DIM, W_DIM);
    for k in 0..3 {
        out.view_mut((3 + 8 * k, 3 + 8 * k), (8, 8)).copy_from(d8);
    }
    out
}

fn to_f4_coeffs(f4: &LieAlgebra, d_w: &Mat, what: &str) -> Result<Vector> {
    let d_v = restrict_to_v(d_w)?;
    let (c, res) = f4.from_matrix(&d_v)?;
    if res > EMBED_TOL {
        return Err(Error::Construction(format!("{what} is not in f4 (residual {res:.3e})")));
    }
    Ok(c)
}

/// A subalgebra of `f4` built as the sum of two commuting factors.
#[derive(Debug, Clone)]
pub struct ProductEmbedding {
    pub sub: Subalgebra,
    /// Basis (coefficient columns) of the noncompact factor.
    pub first: Mat,
    /// Basis of the compact factor.
    pub second: Mat,
}

fn finish_product(f4: &LieAlgebra, first: Vec<Vector>, second: Vec<Vector>, what: &str) -> Result<ProductEmbedding> {
    let d = f4.dim();
    let first = crate::linalg::from_columns(d, &first);
    let second = crate::linalg::from_columns(d, &second);
    let all = hstack(&[&first, &second]);
    let sub = Subalgebra::new(f4, all.clone()).map_err(|e| Error::Construction(format!("{what}: {e}")))?;
    let res = sub.closure_residual(f4);
    if res > EMBED_TOL {
        return Err(Error::Construction(format!("{what}: closure residual {res:.3e}")));
    }
    Ok(ProductEmbedding { sub, first, second })
}

/// Complex 3x3 basis of `su(2,1)` for `J = diag(1, 1, -1)`.
fn su21_basis() -> Vec<OctMatrix> {
    let sign = |i: usize| if i < 2 { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let sigma = sign(i) * sign(j);
            for (re, im) in [(1.0, 0.0), (0.0, 1.0)] {
                let mut a = [[Octonion::ZERO; 3]; 3];
                a[i][j] = Octonion::complex(re, im);
                // A_ji = -sigma conj(A_ij)
                a[j][i] = Octonion::complex(-sigma * re, sigma * im);
                out.push(a);
            }
        }
    }
    for i in 0..2 {
        let mut a = [[Octonion::ZERO; 3]; 3];
        a[i][i] = Octonion::complex(0.0, 1.0);
        a[i + 1][i + 1] = Octonion::complex(0.0, -1.0);
        out.push(a);
    }
    out
}

/// Real 3x3 basis of `so(2,1)` for `J = diag(1, 1, -1)`.
fn so21_basis() -> Vec<OctMatrix> {
    let sign = |i: usize| if i < 2 { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut a = [[Octonion::ZERO; 3]; 3];
            a[i][j] = Octonion::ONE;
            a[j][i] = Octonion::real(-sign(i) * sign(j));
            out.push(a);
        }
    }
    out
}

fn left_mult_e1() -> Mat {
    let mut l = Mat::zeros(8, 8);
    for k in 0..8 {
        let p = Octonion::basis(1) * Octonion::basis(k);
        for r in 0..8 {
            l[(r, k)] = p.0[r];
        }
    }
    l
}

/// Basis of the 8-dimensional subalgebra of `g2` commuting with left
/// multiplication by `e1`, as 8x8 matrices.
pub fn su3_in_g2(g2: &LieAlgebra) -> Result<Vec<Mat>> {
    let real = g2.realization().ok_or_else(|| Error::Unsupported("g2 needs its 8x8 realization".into()))?;
    let l = left_mult_e1();
    let mut stacked = Mat::zeros(64, g2.dim());
    for (i, d) in real.matrices().iter().enumerate() {
        let c = &l * d - d * &l;
        stacked.set_column(i, &crate::linalg::vectorize(&c));
    }
    let ker = null_space(&stacked, DEFAULT_TOL);
    if ker.ncols() != 8 {
        return Err(Error::Construction(format!("centralizer of e1 in g2 has dimension {}", ker.ncols())));
    }
    Ok((0..8).map(|c| real.to_matrix(&ker.column(c).into_owned())).collect())
}

/// `su(2,1) + su(3)`: complex matrices acting by commutators plus the part
/// of `g2` commuting with `C`, acting entrywise.
pub fn embed_su21_su3(f4: &LieAlgebra, g2: &LieAlgebra) -> Result<ProductEmbedding> {
    let mut first = Vec::new();
    for a in su21_basis() {
        first.push(to_f4_coeffs(f4, &commutator_action(&a)?, "su(2,1) generator")?);
    }
    let mut second = Vec::new();
    for d in su3_in_g2(g2)? {
        second.push(to_f4_coeffs(f4, &entrywise(&d), "su(3) generator")?);
    }
    finish_product(f4, first, second, "su(2,1)+su(3)")
}

/// `so(1,2) + g2`: real matrices acting by commutators plus all of `Der(O)`
/// acting entrywise.
pub fn embed_so12_g2(f4: &LieAlgebra, g2: &LieAlgebra) -> Result<ProductEmbedding> {
    let real = g2.realization().ok_or_else(|| Error::Unsupported("g2 needs its 8x8 realization".into()))?;
    let mut first = Vec::new();
    for a in so21_basis() {
        first.push(to_f4_coeffs(f4, &commutator_action(&a)?, "so(1,2) generator")?);
    }
    let mut second = Vec::new();
    for d in real.matrices() {
        second.push(to_f4_coeffs(f4, &entrywise(d), "g2 generator")?);
    }
    finish_product(f4, first, second, "so(1,2)+g2")
}

/// Involutive automorphisms of `W` whose fixed algebras are the symmetric
/// subalgebras of `f4` other than `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanInvolution {
    /// Conjugation by `diag(-1, 1, 1)`: flips `c2, c3`. Fixed algebra
    /// `so(1,8)`.
    Signature,
    /// The octonion automorphism `(a, b) -> (a, -b)` applied entrywise.
    /// Fixed algebra `sp(1,2) + sp(1)`.
    Quaternionic,
}

impl JordanInvolution {
    pub fn w_matrix(self) -> Mat {
        let mut d = [1.0; W_DIM];
        match self {
            JordanInvolution::Signature => d[11..].iter_mut().for_each(|v| *v = -1.0),
            JordanInvolution::Quaternionic => {
                for k in 0..3 {
                    d[3 + 8 * k + 4..3 + 8 * k + 8].iter_mut().for_each(|v| *v = -1.0);
                }
            }
        }
        Mat::from_diagonal(&Vector::from_column_slice(&d))
    }

    /// `(dim, dim k, dim s)` of the fixed algebra.
    pub fn expected(self) -> (usize, usize, usize) {
        match self {
            JordanInvolution::Signature => (36, 28, 8),
            JordanInvolution::Quaternionic => (24, 16, 8),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JordanInvolution::Signature => "so(1,8)",
            JordanInvolution::Quaternionic => "sp(1,2)+sp(1)",
        }
    }
}

/// Fixed algebra of an involution, with the outcome of its validation.
#[derive(Debug, Clone)]
pub struct SymmetricSubalgebra {
    pub involution: JordanInvolution,
    pub sub: Subalgebra,
    pub dims: (usize, usize, usize),
    pub validated: bool,
    pub diagnostics: String,
}

/// `{D in f4 : tau D tau = D}` for a Jordan involution `tau`.
pub fn symmetric_subalgebra(f4: &LieAlgebra, inv: JordanInvolution) -> Result<SymmetricSubalgebra> {
    let real = f4.realization().ok_or_else(|| Error::Unsupported("f4 needs its realization".into()))?;
    let tau = restrict_to_v(&inv.w_matrix())?;
    let d = f4.dim();
    let mut map = Mat::zeros(d, d);
    let mut worst: f64 = 0.0;
    for (i, m) in real.matrices().iter().enumerate() {
        let (c, res) = real.coefficients(&(&tau * m * &tau));
        worst = worst.max(res);
        map.set_column(i, &c);
    }
    if worst > EMBED_TOL {
        return Err(Error::Construction(format!("{} involution does not normalize f4 ({worst:.3e})", inv.name())));
    }
    let fixed = null_space(&(map - Mat::identity(d, d)), DEFAULT_TOL);
    let sub = Subalgebra::new(f4, fixed)?;
    let cartan = crate::algebra::cartan_decomposition(f4)?;
    let k_dim = crate::linalg::intersection_dim(sub.basis(), cartan.k.basis(), DEFAULT_TOL);
    let s_dim = crate::linalg::intersection_dim(sub.basis(), &cartan.s, DEFAULT_TOL);
    let dims = (sub.dim(), k_dim, s_dim);
    let validated = dims == inv.expected() && sub.is_theta_stable(f4)?;
    let diagnostics = format!(
        "fixed algebra of {}: dim {}, k-part {}, s-part {} (expected {:?})",
        inv.name(),
        dims.0,
        dims.1,
        dims.2,
        inv.expected()
    );
    Ok(SymmetricSubalgebra { involution: inv, sub, dims, validated, diagnostics })
}

/// A point of the null cone in `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    pub x: JordanElement,
}

impl ConePoint {
    /// Coordinates in the orthonormal basis of `V`.
    pub fn v_coords(&self) -> Vector {
        v_coordinates() * self.x.to_vector()
    }

    /// The part of `x` with diagonal and complex entries.
    pub fn complex_part(&self) -> JordanElement {
        let mut y = self.x;
        for o in y.off.iter_mut() {
            o.0[2..].iter_mut().for_each(|v| *v = 0.0);
        }
        y
    }

    /// The part of `x` with entries in the orthogonal complement of `C`.
    pub fn imaginary_part(&self) -> JordanElement {
        let mut y = JordanElement { diag: [0.0; 3], off: self.x.off };
        for o in y.off.iter_mut() {
            o.0[0] = 0.0;
            o.0[1] = 0.0;
        }
        y
    }
}

/// The normalized null element
///
/// ```text
/// [[ |c2|^2,  c3,       -conj(c2) ],
///  [ conj(c3), |c1|^2,   c1       ],
///  [ c2,      -conj(c1), -1       ]]
/// ```
///
/// with `c3 = -conj(c2) conj(c1)`, which is what `x o x = 0` forces.
pub fn cone_point(c1: Octonion, c2: Octonion) -> Result<ConePoint> {
    let n = c1.norm_sq() + c2.norm_sq();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!("cone point needs |c1|^2 + |c2|^2 = 1, got {n}")));
    }
    let c3 = -(c2.conj() * c1.conj());
    Ok(ConePoint { x: JordanElement { diag: [c2.norm_sq(), c1.norm_sq(), -1.0], off: [c1, c2, c3] } })
}

/// A cone point with `(c1, c2)` uniform on the unit sphere of `O^2`.
pub fn random_cone_point<R: Rng>(rng: &mut R) -> ConePoint {
    let v = gaussian_vector(rng, 16);
    let v = &v / v.norm();
    let mut c1 = Octonion::ZERO;
    let mut c2 = Octonion::ZERO;
    c1.0.copy_from_slice(&v.as_slice()[..8]);
    c2.0.copy_from_slice(&v.as_slice()[8..]);
    cone_point(c1, c2).expect("unit vector")
}

/// `rank[D_1 x, ..., D_k x, x] - 1`: the dimension of the orbit of the
/// algebra spanned by `ops` through `[x]` in projective space.
pub fn projective_orbit_dim(ops: &[Mat], x: &Vector) -> usize {
    let mut cols: Vec<Vector> = ops.iter().map(|d| d * x).collect();
    cols.push(x.clone());
    let m = crate::linalg::from_columns(x.len(), &cols);
    numeric_rank(&m, DEFAULT_TOL).saturating_sub(1)
}

/// `dim h - projective_orbit_dim`: the stabilizer of `[x]` in `h`.
pub fn projective_stabilizer_dim(ops: &[Mat], x: &Vector) -> usize {
    let independent = numeric_rank(
        &crate::linalg::from_columns(ops[0].len(), &ops.iter().map(crate::linalg::vectorize).collect::<Vec<_>>()),
        DEFAULT_TOL,
    );
    independent - projective_orbit_dim(ops, x)
}

/// Realization matrices (on `V`) of the basis of a subalgebra of `f4`.
pub fn operators(f4: &LieAlgebra, basis: &Mat) -> Result<Vec<Mat>> {
    let b = column_basis(basis, DEFAULT_TOL);
    (0..b.ncols()).map(|c| f4.to_matrix(&b.column(c).into_owned())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_for;

    #[test]
    fn g2_is_compact_of_dimension_14() {
        let g2 = build_g2().unwrap();
        assert_eq!(g2.dim(), 14);
        assert_eq!(g2.killing_form().signature, (0, 14));
        for d in g2.realization().unwrap().matrices() {
            assert!(d.column(0).amax() < 1e-12);
            assert!(d.row(0).amax() < 1e-12);
        }
        assert_eq!(su3_in_g2(&g2).unwrap().len(), 8);
    }

    #[test]
    fn cone_points_square_to_zero() {
        for (c1, c2) in [(Octonion::ONE, Octonion::ZERO), (Octonion::ZERO, Octonion::ONE)] {
            let p = cone_point(c1, c2).unwrap();
            assert!(p.x.trace().abs() < 1e-15);
            assert!(jordan::jordan_mul(&p.x, &p.x).max_abs() < 1e-15);
        }
        let mut rng = rng_for(5, 0);
        for _ in 0..100 {
            let p = random_cone_point(&mut rng);
            assert!(jordan::jordan_mul(&p.x, &p.x).max_abs() < 1e-12);
            assert!(p.x.trace().abs() < 1e-12);
        }
        assert!(cone_point(Octonion::ONE, Octonion::ONE).is_err());
    }

    #[test]
    fn orthogonal_imaginary_entries_give_third_entry() {
        let (a, b) = (0.6, 0.8);
        let p = cone_point(Octonion::basis(2).scale(a), Octonion::basis(4).scale(b)).unwrap();
        // c3 = -conj(c2) conj(c1) = -(b e4)(a e2) = ab e6 in this table.
        assert!((p.x.off[2] - Octonion::basis(6).scale(a * b)).max_abs() < 1e-15);
    }

    #[test]
    fn complex_action_is_a_derivation() {
        let table = JordanTable::new();
        for a in su21_basis().iter().chain(so21_basis().iter()) {
            let d = commutator_action(a).unwrap();
            assert!(derivation_residual(&table, &d) < 1e-13);
        }
        let g2 = build_g2().unwrap();
        for d in g2.realization().unwrap().matrices() {
            assert!(derivation_residual(&table, &entrywise(d)) < 1e-12);
        }
    }

    #[test]
    fn involutions_are_automorphisms() {
        let table = JordanTable::new();
        for inv in [JordanInvolution::Signature, JordanInvolution::Quaternionic] {
            let t = inv.w_matrix();
            for i in 0..W_DIM {
                for j in 0..W_DIM {
                    let ei = JordanElement::basis(i).to_vector();
                    let ej = JordanElement::basis(j).to_vector();
                    let lhs = &t * table.mul(&ei, &ej);
                    let rhs = table.mul(&(&t * &ei), &(&t * &ej));
                    assert!((lhs - rhs).amax() < 1e-15);
                }
            }
        }
    }
}
