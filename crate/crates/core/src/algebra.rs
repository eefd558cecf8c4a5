//! Finite-dimensional real Lie algebras stored as dense structure-constant
//! tensors, with an optional matrix realization and Cartan involution.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::linalg::{
    self, column_basis, hstack, null_space, numeric_rank, span_residual, Coordinates, Mat, Vector,
    DEFAULT_TOL,
};

/// Tolerance for identities that hold exactly in exact arithmetic.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Basis matrices of a faithful matrix representation, with a cached solver
/// that maps matrices back to coefficient vectors.
#[derive(Debug, Clone)]
pub struct MatrixRealization {
    mats: Vec<Mat>,
    size: usize,
    coords: Coordinates,
}

impl MatrixRealization {
    pub fn new(mats: Vec<Mat>) -> Result<Self> {
        let size = mats.first().map(|m| m.nrows()).unwrap_or(0);
        if mats.iter().any(|m| m.nrows() != size || m.ncols() != size) {
            return Err(Error::InvalidInput("realization matrices must share one square size".into()));
        }
        let cols: Vec<Vector> = mats.iter().map(linalg::vectorize).collect();
        let basis = linalg::from_columns(size * size, &cols);
        if numeric_rank(&basis, DEFAULT_TOL) != mats.len() {
            return Err(Error::InvalidInput("realization matrices are linearly dependent".into()));
        }
        Ok(Self { mats, size, coords: Coordinates::new(basis) })
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.mats
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn to_matrix(&self, x: &Vector) -> Mat {
        let mut out = Mat::zeros(self.size, self.size);
        for (c, m) in x.iter().zip(&self.mats) {
            if *c != 0.0 {
                out += m * *c;
            }
        }
        out
    }

    /// Coefficients of `m` and the relative residual of the fit.
    pub fn coefficients(&self, m: &Mat) -> (Vector, f64) {
        self.coords.solve(&linalg::vectorize(m))
    }
}

/// A symmetric bilinear form on coefficient space with its inertia.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    pub matrix: Mat,
    /// (positive, negative) eigenvalue counts.
    pub signature: (usize, usize),
}

impl BilinearForm {
    pub fn new(matrix: Mat) -> Self {
        let sym = (&matrix + matrix.transpose()) * 0.5;
        let eig = sym.clone().symmetric_eigen();
        let scale = eig.eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let cut = IDENTITY_TOL * scale.max(f64::MIN_POSITIVE);
        let pos = eig.eigenvalues.iter().filter(|&&v| v > cut).count();
        let neg = eig.eigenvalues.iter().filter(|&&v| v < -cut).count();
        Self { matrix: sym, signature: (pos, neg) }
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.matrix * y)[(0, 0)]
    }
}

/// A real Lie algebra with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    structure: Vec<f64>,
    realization: Option<MatrixRealization>,
    theta: Option<Mat>,
}

impl LieAlgebra {
    /// Builds the algebra spanned by `mats` (which must be closed under
    /// commutators) and reads off its structure constants.
    pub fn from_matrices(labels: Vec<String>, mats: Vec<Mat>) -> Result<Self> {
        check_len(mats.len(), labels.len())?;
        let realization = MatrixRealization::new(mats)?;
        let dim = realization.mats.len();
        let mut structure = alloc::vec![0.0; dim * dim * dim];
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let a = &realization.mats[i];
                let b = &realization.mats[j];
                let comm = a * b - b * a;
                let (c, res) = realization.coefficients(&comm);
                worst = worst.max(res);
                for k in 0..dim {
                    let v = c[k];
                    structure[(i * dim + j) * dim + k] = v;
                    structure[(j * dim + i) * dim + k] = -v;
                }
            }
        }
        if worst > 1e-8 {
            return Err(Error::Construction(format!(
                "matrices are not closed under commutators (residual {worst:.3e})"
            )));
        }
        clean_structure(&mut structure);
        Ok(Self { dim, labels, structure, realization: Some(realization), theta: None })
    }

    /// Builds an algebra from a full structure tensor, validating the
    /// antisymmetry and Jacobi invariants.
    pub fn from_structure(labels: Vec<String>, structure: Vec<f64>) -> Result<Self> {
        let dim = labels.len();
        check_len(dim * dim * dim, structure.len())?;
        let alg = Self { dim, labels, structure, realization: None, theta: None };
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Attaches a matrix realization after checking that commutators
    /// reproduce the bracket.
    pub fn with_realization(mut self, mats: Vec<Mat>) -> Result<Self> {
        check_len(self.dim, mats.len())?;
        let real = MatrixRealization::new(mats)?;
        let scale = self.max_structure_constant().max(1.0);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let a = &real.mats[i];
                let b = &real.mats[j];
                let comm = a * b - b * a;
                let expect = real.to_matrix(&self.bracket_basis(i, j));
                let err = (comm - expect).amax();
                if err > IDENTITY_TOL * scale * real_scale(&real) {
                    return Err(Error::Invariant(format!(
                        "matrix commutator [{i},{j}] disagrees with bracket by {err:.3e}"
                    )));
                }
            }
        }
        self.realization = Some(real);
        Ok(self)
    }

    /// Attaches an involution after checking `theta^2 = 1` and that it is an
    /// automorphism of the bracket.
    pub fn with_theta(mut self, theta: Mat) -> Result<Self> {
        if theta.nrows() != self.dim || theta.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: theta.nrows() });
        }
        let sq = &theta * &theta - Mat::identity(self.dim, self.dim);
        if sq.amax() > IDENTITY_TOL {
            return Err(Error::Invariant(format!("theta^2 differs from identity by {:.3e}", sq.amax())));
        }
        let scale = self.max_structure_constant().max(1.0);
        for i in 0..self.dim {
            let ti = theta.column(i).into_owned();
            let ad_ti = self.adjoint_unchecked(&ti);
            for j in 0..self.dim {
                let lhs = &theta * self.bracket_basis(i, j);
                let rhs = &ad_ti * theta.column(j);
                let err = (lhs - rhs).amax();
                if err > IDENTITY_TOL * scale {
                    return Err(Error::Invariant(format!(
                        "theta is not an automorphism on [{i},{j}] (error {err:.3e})"
                    )));
                }
            }
        }
        self.theta = Some(theta);
        Ok(self)
    }

    /// Attaches `theta(X) = -X^T` computed through the matrix realization.
    pub fn with_negative_transpose_theta(self) -> Result<Self> {
        let real = self
            .realization
            .as_ref()
            .ok_or_else(|| Error::Unsupported("negative-transpose involution needs matrices".into()))?;
        let mut theta = Mat::zeros(self.dim, self.dim);
        for (i, m) in real.mats.iter().enumerate() {
            let (c, res) = real.coefficients(&(-m.transpose()));
            if res > 1e-8 {
                return Err(Error::Construction(format!("basis element {i} is not closed under transpose")));
            }
            theta.set_column(i, &c);
        }
        theta.iter_mut().for_each(|v| {
            if v.abs() < 1e-13 {
                *v = 0.0
            }
        });
        self.with_theta(theta)
    }

    /// Replaces the basis labels (same count required).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_len(self.dim, labels.len())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &[f64] {
        &self.structure
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn realization(&self) -> Option<&MatrixRealization> {
        self.realization.as_ref()
    }

    pub fn theta(&self) -> Option<&Mat> {
        self.theta.as_ref()
    }

    pub fn max_structure_constant(&self) -> f64 {
        self.structure.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    fn realization_or_err(&self) -> Result<&MatrixRealization> {
        self.realization
            .as_ref()
            .ok_or_else(|| Error::Unsupported("this algebra has no matrix realization".into()))
    }

    fn theta_or_err(&self) -> Result<&Mat> {
        self.theta
            .as_ref()
            .ok_or_else(|| Error::Unsupported("this algebra has no Cartan involution".into()))
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.dim + j) * self.dim;
        Vector::from_column_slice(&self.structure[start..start + self.dim])
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        check_len(self.dim, x.len())?;
        check_len(self.dim, y.len())?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim;
        let mut out = Vector::zeros(d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                let row = &self.structure[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += w * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad X` on coefficient space.
    pub fn adjoint(&self, x: &Vector) -> Result<Mat> {
        check_len(self.dim, x.len())?;
        Ok(self.adjoint_unchecked(x))
    }

    pub(crate) fn adjoint_unchecked(&self, x: &Vector) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d, d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let row = &self.structure[(i * d + j) * d..(i * d + j + 1) * d];
                for k in 0..d {
                    out[(k, j)] += x[i] * row[k];
                }
            }
        }
        out
    }

    /// `ad e_i` for every basis element.
    pub fn adjoint_basis(&self) -> Vec<Mat> {
        (0..self.dim).map(|i| self.adjoint_unchecked(&self.basis_vector(i))).collect()
    }

    /// `B(X, Y) = tr(ad X ad Y)`.
    pub fn killing_form(&self) -> BilinearForm {
        let d = self.dim;
        let ads = self.adjoint_basis();
        let mut b = Mat::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = (&ads[i] * &ads[j]).trace();
                b[(i, j)] = v;
                b[(j, i)] = v;
            }
        }
        BilinearForm::new(b)
    }

    /// Gram matrix of `B_theta(X, Y) = -B(X, theta Y)`.
    pub fn b_theta(&self) -> Result<Mat> {
        let theta = self.theta_or_err()?;
        let b = self.killing_form().matrix;
        let g = -(&b * theta);
        Ok((&g + g.transpose()) * 0.5)
    }

    pub fn to_matrix(&self, x: &Vector) -> Result<Mat> {
        check_len(self.dim, x.len())?;
        Ok(self.realization_or_err()?.to_matrix(x))
    }

    /// Coefficients of a matrix lying in the realization, with its residual.
    pub fn from_matrix(&self, m: &Mat) -> Result<(Vector, f64)> {
        Ok(self.realization_or_err()?.coefficients(m))
    }

    /// `Ad(g)` on coefficient space, for an invertible `g` in the
    /// realization's group.
    pub fn group_adjoint(&self, g: &Mat) -> Result<Mat> {
        let real = self.realization_or_err()?;
        if g.nrows() != real.size || g.ncols() != real.size {
            return Err(Error::DimensionMismatch { expected: real.size, got: g.nrows() });
        }
        let inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("group element is not invertible".into()))?;
        let mut out = Mat::zeros(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for (i, m) in real.mats.iter().enumerate() {
            let (c, res) = real.coefficients(&(g * m * &inv));
            worst = worst.max(res);
            out.set_column(i, &c);
        }
        if worst > 1e-7 {
            return Err(Error::InvalidInput(format!(
                "conjugation leaves the algebra (residual {worst:.3e}); not a group element"
            )));
        }
        Ok(out)
    }

    /// Componentwise Jacobi residual of a triple.
    pub fn jacobi_residual(&self, x: &Vector, y: &Vector, z: &Vector) -> f64 {
        let a = self.bracket_unchecked(x, &self.bracket_unchecked(y, z));
        let b = self.bracket_unchecked(y, &self.bracket_unchecked(z, x));
        let c = self.bracket_unchecked(z, &self.bracket_unchecked(x, y));
        (a + b + c).amax()
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.structure_constant(i, j, k) != -self.structure_constant(j, i, k) {
                        return Err(Error::Invariant(format!("bracket not antisymmetric at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let d = self.dim;
        let ads = self.adjoint_basis();
        let scale = self.max_structure_constant().max(1.0);
        let bound = IDENTITY_TOL * scale * scale;
        for i in 0..d {
            for j in (i + 1)..d {
                let cij = self.bracket_basis(i, j);
                for k in (j + 1)..d {
                    let r = &ads[i] * self.bracket_basis(j, k)
                        + &ads[j] * self.bracket_basis(k, i)
                        + &ads[k] * &cij;
                    if r.amax() > bound {
                        return Err(Error::Invariant(format!(
                            "Jacobi identity fails on ({i},{j},{k}) by {:.3e}",
                            r.amax()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Relative component scale used for closure checks.
    fn bracket_scale(&self) -> f64 {
        self.max_structure_constant().max(f64::MIN_POSITIVE)
    }
}

fn real_scale(real: &MatrixRealization) -> f64 {
    real.mats.iter().map(|m| m.amax()).fold(1.0, f64::max)
}

fn clean_structure(c: &mut [f64]) {
    let scale = c.iter().map(|v| v.abs()).fold(0.0, f64::max);
    for v in c.iter_mut() {
        if v.abs() <= 1e-13 * scale.max(1.0) {
            *v = 0.0;
        }
    }
}

/// A subalgebra given by coefficient vectors (columns) in an ambient algebra.
///
/// The ambient algebra is passed explicitly to every operation; the basis is
/// validated against it on construction.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    basis: Mat,
}

impl Subalgebra {
    /// Validates linear independence and bracket closure.
    pub fn new(g: &LieAlgebra, basis: Mat) -> Result<Self> {
        check_len(g.dim(), basis.nrows())?;
        if numeric_rank(&basis, DEFAULT_TOL) != basis.ncols() {
            return Err(Error::InvalidInput("subalgebra basis is linearly dependent".into()));
        }
        let sub = Self { basis };
        let res = sub.closure_residual(g);
        if res > 1e-8 {
            return Err(Error::InvalidInput(format!("subspace is not closed under the bracket (residual {res:.3e})")));
        }
        Ok(sub)
    }

    /// Like [`Subalgebra::new`] but first reduces a spanning set to a basis.
    pub fn spanned_by(g: &LieAlgebra, spanning: &Mat) -> Result<Self> {
        if numeric_rank(spanning, DEFAULT_TOL) == spanning.ncols() {
            return Self::new(g, spanning.clone());
        }
        Self::new(g, column_basis(spanning, DEFAULT_TOL))
    }

    /// Subalgebra spanned by matrices inside the realization of `g`.
    pub fn from_matrices(g: &LieAlgebra, mats: &[Mat]) -> Result<Self> {
        let mut cols = Vec::with_capacity(mats.len());
        for m in mats {
            let (c, res) = g.from_matrix(m)?;
            if res > 1e-8 {
                return Err(Error::InvalidInput(format!("matrix is not in the ambient algebra (residual {res:.3e})")));
            }
            cols.push(c);
        }
        Self::spanned_by(g, &linalg::from_columns(g.dim(), &cols))
    }

    pub fn whole(g: &LieAlgebra) -> Self {
        Self { basis: Mat::identity(g.dim(), g.dim()) }
    }

    pub fn zero(g: &LieAlgebra) -> Self {
        Self { basis: Mat::zeros(g.dim(), 0) }
    }

    /// Wraps a basis that is already known to span a subalgebra.
    pub(crate) fn from_trusted(basis: Mat) -> Self {
        Self { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> Vector {
        self.basis.column(i).into_owned()
    }

    /// Largest relative residual of a bracket of basis vectors outside the span.
    pub fn closure_residual(&self, g: &LieAlgebra) -> f64 {
        let q = column_basis(&self.basis, DEFAULT_TOL);
        let scale = g.bracket_scale();
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            let x = self.vector(i);
            for j in (i + 1)..self.dim() {
                let y = self.vector(j);
                let b = g.bracket_unchecked(&x, &y);
                let denom = x.norm() * y.norm() * scale;
                let off = &b - &q * (q.transpose() * &b);
                worst = worst.max(off.norm() / denom);
            }
        }
        worst
    }

    /// Relative residual of `v` against this subspace.
    pub fn residual(&self, v: &Vector) -> f64 {
        span_residual(&column_basis(&self.basis, DEFAULT_TOL), v)
    }

    /// Largest residual of the columns of `m` against this subspace.
    pub fn contains_residual(&self, m: &Mat) -> f64 {
        linalg::contained_residual(&self.basis, m, DEFAULT_TOL)
    }

    /// `Ad(x) h` for a group element `x` of the realization.
    pub fn conjugate(&self, g: &LieAlgebra, x: &Mat) -> Result<Self> {
        let ad = g.group_adjoint(x)?;
        Ok(Self { basis: ad * &self.basis })
    }

    /// Whether `theta(h) = h` to tolerance.
    pub fn is_theta_stable(&self, g: &LieAlgebra) -> Result<bool> {
        let theta = g.theta_or_err()?;
        Ok(self.contains_residual(&(theta * &self.basis)) <= 1e-8)
    }

    /// The subalgebra as an abstract Lie algebra in its own basis, carrying
    /// the induced matrix realization and, when `h` is theta-stable, the
    /// restricted involution.
    pub fn to_algebra(&self, g: &LieAlgebra) -> Result<LieAlgebra> {
        let k = self.dim();
        let coords = Coordinates::new(self.basis.clone());
        let mut structure = alloc::vec![0.0; k * k * k];
        for i in 0..k {
            for j in (i + 1)..k {
                let b = g.bracket_unchecked(&self.vector(i), &self.vector(j));
                let (c, _) = coords.solve(&b);
                for m in 0..k {
                    structure[(i * k + j) * k + m] = c[m];
                    structure[(j * k + i) * k + m] = -c[m];
                }
            }
        }
        clean_structure(&mut structure);
        let labels = (0..k).map(|i| format!("h{i}")).collect();
        let mut alg = LieAlgebra { dim: k, labels, structure, realization: None, theta: None };
        if let Some(real) = g.realization() {
            let mats: Vec<Mat> = (0..k).map(|i| real.to_matrix(&self.vector(i))).collect();
            alg.realization = Some(MatrixRealization::new(mats)?);
        }
        if let Some(theta) = g.theta() {
            if self.is_theta_stable(g)? {
                let mut t = Mat::zeros(k, k);
                for i in 0..k {
                    let (c, _) = coords.solve(&(theta * self.basis.column(i)));
                    t.set_column(i, &c);
                }
                alg.theta = Some(t);
            }
        }
        Ok(alg)
    }
}

/// Smallest bracket-closed subspace containing the generators.
pub fn subalgebra_closure(g: &LieAlgebra, generators: &Mat) -> Result<Subalgebra> {
    check_len(g.dim(), generators.nrows())?;
    if generators.ncols() == 0 {
        return Err(Error::InvalidInput("closure needs at least one generator".into()));
    }
    let mut span = column_basis(generators, DEFAULT_TOL);
    loop {
        let mut cols = Vec::new();
        for i in 0..span.ncols() {
            for j in (i + 1)..span.ncols() {
                cols.push(g.bracket_unchecked(&span.column(i).into_owned(), &span.column(j).into_owned()));
            }
        }
        let brackets = linalg::from_columns(g.dim(), &cols);
        let next = column_basis(&hstack(&[&span, &brackets]), DEFAULT_TOL);
        if next.ncols() == span.ncols() {
            return Ok(Subalgebra::from_trusted(span));
        }
        span = next;
    }
}

/// Kernel of `v -> ([v, a_1], ..., [v, a_r])` restricted to span(`within`).
pub fn centralizer(g: &LieAlgebra, of: &Mat, within: &Mat) -> Mat {
    let w = column_basis(within, DEFAULT_TOL);
    if of.ncols() == 0 {
        return w;
    }
    let d = g.dim();
    let mut stacked = Mat::zeros(d * of.ncols(), w.ncols());
    for a in 0..of.ncols() {
        let ad = g.adjoint_unchecked(&of.column(a).into_owned());
        stacked.view_mut((a * d, 0), (d, w.ncols())).copy_from(&(ad * &w));
    }
    let ker = null_space(&stacked, DEFAULT_TOL);
    if ker.ncols() == 0 {
        return Mat::zeros(d, 0);
    }
    column_basis(&(&w * ker), DEFAULT_TOL)
}

/// Span of all brackets `[g, g]`.
pub fn derived_algebra(g: &LieAlgebra) -> Mat {
    let d = g.dim();
    let mut cols = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            cols.push(g.bracket_basis(i, j));
        }
    }
    column_basis(&linalg::from_columns(d, &cols), DEFAULT_TOL)
}

/// Center of `g`.
pub fn center(g: &LieAlgebra) -> Mat {
    let all = Mat::identity(g.dim(), g.dim());
    centralizer(g, &all, &all)
}

/// `g = k + s`, the +1 and -1 eigenspaces of the Cartan involution.
#[derive(Debug, Clone)]
pub struct CartanDecomposition {
    pub k: Subalgebra,
    pub s: Mat,
}

pub fn cartan_decomposition(g: &LieAlgebra) -> Result<CartanDecomposition> {
    let theta = g.theta_or_err()?;
    let id = Mat::identity(g.dim(), g.dim());
    let k = null_space(&(theta - &id), DEFAULT_TOL);
    let s = null_space(&(theta + &id), DEFAULT_TOL);
    if k.ncols() + s.ncols() != g.dim() {
        return Err(Error::Invariant("theta eigenspaces do not span the algebra".into()));
    }
    Ok(CartanDecomposition { k: Subalgebra::from_trusted(k), s })
}

/// A reductive algebra split as `g = g_n + g_c` into its maximal noncompact
/// ideal and the complementary compact ideal.
#[derive(Debug, Clone)]
pub struct IdealSplit {
    pub noncompact: Subalgebra,
    pub compact: Subalgebra,
}

/// Maximal noncompact ideal of a reductive algebra with Cartan involution:
/// the ideal generated by the noncompact part `s`.
pub fn noncompact_ideal(g: &LieAlgebra) -> Result<IdealSplit> {
    let cartan = cartan_decomposition(g)?;
    let killing = g.killing_form();
    let z = center(g);
    let rad = null_space(&killing.matrix, DEFAULT_TOL);
    let union = numeric_rank(&hstack(&[&z, &rad]), DEFAULT_TOL);
    if union != z.ncols() || rad.ncols() != z.ncols() {
        return Err(Error::Unsupported(format!(
            "algebra is not reductive: Killing radical has dimension {}, center {}",
            rad.ncols(),
            z.ncols()
        )));
    }
    let d = g.dim();
    let ads = g.adjoint_basis();
    let mut ideal = column_basis(&cartan.s, DEFAULT_TOL);
    loop {
        let mut blocks = alloc::vec![ideal.clone()];
        for ad in &ads {
            blocks.push(ad * &ideal);
        }
        let refs: Vec<&Mat> = blocks.iter().collect();
        let next = column_basis(&hstack(&refs), DEFAULT_TOL);
        if next.ncols() == ideal.ncols() {
            break;
        }
        ideal = next;
    }
    // Compact semisimple ideals are the Killing-orthogonal part of [g, g];
    // the compact center is z intersected with k.
    let derived = derived_algebra(g);
    let constraints = ideal.transpose() * &killing.matrix * &derived;
    let ker = null_space(&constraints, DEFAULT_TOL);
    let compact_ss = if ker.ncols() == 0 { Mat::zeros(d, 0) } else { column_basis(&(&derived * ker), DEFAULT_TOL) };
    let z_k = linalg::intersection(&z, cartan.k.basis(), DEFAULT_TOL);
    let compact = column_basis(&hstack(&[&compact_ss, &z_k]), DEFAULT_TOL);
    if ideal.ncols() + compact.ncols() != d {
        return Err(Error::Invariant(format!(
            "ideal split does not add up: {} + {} != {d}",
            ideal.ncols(),
            compact.ncols()
        )));
    }
    Ok(IdealSplit { noncompact: Subalgebra::from_trusted(ideal), compact: Subalgebra::from_trusted(compact) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sl2() -> LieAlgebra {
        let h = Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let e = Mat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let f = Mat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        LieAlgebra::from_matrices(alloc::vec!["H".to_string(), "E".to_string(), "F".to_string()], alloc::vec![h, e, f])
            .unwrap()
            .with_negative_transpose_theta()
            .unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        let ef = g.bracket(&g.basis_vector(1), &g.basis_vector(2)).unwrap();
        assert!((ef - g.basis_vector(0)).amax() < 1e-14);
        let x = Vector::from_vec(alloc::vec![0.3, -1.2, 2.0]);
        assert!(g.bracket(&x, &x).unwrap().amax() < 1e-14);
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let g = sl2();
        let bad = Vector::zeros(2);
        assert!(matches!(g.bracket(&bad, &g.basis_vector(0)), Err(Error::DimensionMismatch { .. })));
        assert!(g.adjoint(&bad).is_err());
    }

    #[test]
    fn sl2_killing_and_adjoint() {
        let g = sl2();
        let b = g.killing_form();
        assert!((b.matrix[(0, 0)] - 8.0).abs() < 1e-12);
        assert_eq!(b.signature, (2, 1));
        let ad_h = g.adjoint(&g.basis_vector(0)).unwrap();
        let mut ev: Vec<f64> = ad_h.diagonal().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        for (a, b) in ev.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(g.adjoint(&Vector::zeros(3)).unwrap(), Mat::zeros(3, 3));
    }

    #[test]
    fn closure_of_generators() {
        let g = sl2();
        let e = Mat::from_column_slice(3, 1, &[0.0, 1.0, 0.0]);
        assert_eq!(subalgebra_closure(&g, &e).unwrap().dim(), 1);
        let ef = Mat::from_column_slice(3, 2, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(subalgebra_closure(&g, &ef).unwrap().dim(), 3);
        assert!(subalgebra_closure(&g, &Mat::zeros(3, 0)).is_err());
    }

    #[test]
    fn non_closed_subspace_is_rejected() {
        let g = sl2();
        let ef = Mat::from_column_slice(3, 2, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(Subalgebra::new(&g, ef), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn structure_loader_rejects_broken_antisymmetry() {
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        let mut c = alloc::vec![0.0; 8];
        c[idx(0, 1, 1)] = 1.0;
        let labels = alloc::vec!["a".to_string(), "b".to_string()];
        assert!(LieAlgebra::from_structure(labels.clone(), c.clone()).is_err());
        c[idx(1, 0, 1)] = -1.0;
        let alg = LieAlgebra::from_structure(labels, c).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn theta_must_be_an_automorphism() {
        let g = sl2();
        let mut bad = Mat::identity(3, 3);
        bad[(1, 1)] = -1.0;
        assert!(matches!(g.clone().with_theta(bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn cartan_decomposition_needs_theta() {
        let h = Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let g = LieAlgebra::from_matrices(alloc::vec!["H".to_string()], alloc::vec![h]).unwrap();
        assert!(matches!(cartan_decomposition(&g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_reductive_input_is_rejected() {
        let g = sl2();
        let b = Subalgebra::new(&g, Mat::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
        // The Borel subalgebra is not theta-stable, so give it a trivial involution.
        let alg = b.to_algebra(&g).unwrap().with_theta(Mat::identity(2, 2)).unwrap_or_else(|_| {
            panic!("identity is always an automorphism")
        });
        assert!(matches!(noncompact_ideal(&alg), Err(Error::Unsupported(_))));
    }
}
