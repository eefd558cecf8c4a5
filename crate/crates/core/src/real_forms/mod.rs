//! Constructors for the classical real forms `so(p,q)`, `su(p,q)`, `sp(p,q)`
//! and `sl(n,R)`, with direct sums, diagonal embeddings and the division
//! algebra embeddings used by the catalog.
//!
//! Complex and quaternionic matrices are realified entrywise: an entry `u`
//! becomes the real matrix of left multiplication by `u` on `C = R^2` or
//! `H = R^4` (basis `1, i, j, k`). Quaternionic matrices act on column
//! vectors from the left and commute with right scalar multiplication, so
//! projective quotients use right scalars. With this convention the
//! realification of `X^*` is the transpose, and `theta(X) = -X^T` is a
//! Cartan involution.

mod roots;

pub use roots::{
    minimal_parabolic, minimal_parabolic_from, minimal_parabolic_ordered, restricted_roots, restricted_roots_ordered,
    restricted_roots_with, Parabolic, RankOneData, RestrictedRoots, RootSpace,
};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// The three classical rank-one families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    So,
    Su,
    Sp,
}

impl Family {
    fn base(self) -> Division {
        match self {
            Family::So => Division::Real,
            Family::Su => Division::Complex,
            Family::Sp => Division::Quaternion,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::So => "so",
            Family::Su => "su",
            Family::Sp => "sp",
        })
    }
}

/// Real division algebras, realified by left multiplication matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Division {
    Real,
    Complex,
    Quaternion,
}

impl Division {
    pub fn real_dim(self) -> usize {
        match self {
            Division::Real => 1,
            Division::Complex => 2,
            Division::Quaternion => 4,
        }
    }

    /// Left multiplication by the unit basis element `u` (0 is the identity).
    pub fn unit_matrix(self, u: usize) -> Mat {
        let d = self.real_dim();
        match (self, u) {
            (_, 0) => Mat::identity(d, d),
            (Division::Complex, 1) => Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]),
            (Division::Quaternion, 1) => Mat::from_row_slice(
                4,
                4,
                &[0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 0., -1., 0., 0., 1., 0.],
            ),
            (Division::Quaternion, 2) => Mat::from_row_slice(
                4,
                4,
                &[0., 0., -1., 0., 0., 0., 0., 1., 1., 0., 0., 0., 0., -1., 0., 0.],
            ),
            (Division::Quaternion, 3) => Mat::from_row_slice(
                4,
                4,
                &[0., 0., 0., -1., 0., 0., -1., 0., 0., 1., 0., 0., 1., 0., 0., 0.],
            ),
            _ => panic!("unit index {u} out of range for {self:?}"),
        }
    }
}

/// One elementary basis element of a classical algebra: the unit `unit`
/// placed at `(row, col)` and its forced partner at `(col, row)`. Diagonal
/// elements of `su` are `i (E_kk - E_{k+1,k+1})` and carry `row = col = k`
/// with `traceless_pair = true`.
#[derive(Debug, Clone)]
pub struct ClassicalElement {
    pub row: usize,
    pub col: usize,
    pub unit: usize,
    pub traceless_pair: bool,
    pub matrix: Mat,
    pub label: String,
}

fn place(out: &mut Mat, block: &Mat, i: usize, j: usize, scale: f64) {
    let d = block.nrows();
    let mut view = out.view_mut((i * d, j * d), (d, d));
    view += block * scale;
}

/// The elementary basis of `{X in gl(N, F) : X^* J + J X = 0}` (traceless
/// for `F = C`), `J = diag(1_p, -1_q)`.
pub fn classical_elements(family: Family, p: usize, q: usize) -> Vec<ClassicalElement> {
    let n = p + q;
    let div = family.base();
    let d = div.real_dim();
    let sign = |i: usize| if i < p { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let sigma = sign(i) * sign(j);
            for u in 0..d {
                let unit = div.unit_matrix(u);
                let mut m = Mat::zeros(n * d, n * d);
                place(&mut m, &unit, i, j, 1.0);
                // X_ji = -sigma * conj(X_ij); conj(u) = -u for imaginary units.
                let partner = if u == 0 { -sigma } else { sigma };
                place(&mut m, &unit, j, i, partner);
                let kind = if sigma > 0.0 { "r" } else { "b" };
                out.push(ClassicalElement {
                    row: i,
                    col: j,
                    unit: u,
                    traceless_pair: false,
                    matrix: m,
                    label: format!("{kind}{i}{j}.{u}"),
                });
            }
        }
    }
    match div {
        Division::Real => {}
        Division::Complex => {
            let unit = div.unit_matrix(1);
            for i in 0..n.saturating_sub(1) {
                let mut m = Mat::zeros(n * d, n * d);
                place(&mut m, &unit, i, i, 1.0);
                place(&mut m, &unit, i + 1, i + 1, -1.0);
                out.push(ClassicalElement {
                    row: i,
                    col: i,
                    unit: 1,
                    traceless_pair: true,
                    matrix: m,
                    label: format!("t{i}"),
                });
            }
        }
        Division::Quaternion => {
            for i in 0..n {
                for u in 1..4 {
                    let mut m = Mat::zeros(n * d, n * d);
                    place(&mut m, &div.unit_matrix(u), i, i, 1.0);
                    out.push(ClassicalElement {
                        row: i,
                        col: i,
                        unit: u,
                        traceless_pair: false,
                        matrix: m,
                        label: format!("d{i}.{u}"),
                    });
                }
            }
        }
    }
    out
}

/// `so(p,q)`, `su(p,q)` or `sp(p,q)` with its realified matrix basis and
/// `theta(X) = -X^T`.
pub fn build_classical(family: Family, p: usize, q: usize) -> Result<LieAlgebra> {
    if p + q < 2 {
        return Err(Error::InvalidInput(format!("{family}({p},{q}) needs p + q >= 2")));
    }
    let elems = classical_elements(family, p, q);
    let labels = elems.iter().map(|e| e.label.clone()).collect();
    let mats = elems.into_iter().map(|e| e.matrix).collect();
    LieAlgebra::from_matrices(labels, mats)?.with_negative_transpose_theta()
}

/// `sl(n, R)` with basis `H_i = E_ii - E_{i+1,i+1}` followed by `E_ij`.
pub fn build_sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidInput("sl(n) needs n >= 2".into()));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n - 1 {
        let mut m = Mat::zeros(n, n);
        m[(i, i)] = 1.0;
        m[(i + 1, i + 1)] = -1.0;
        mats.push(m);
        labels.push(if n == 2 { "H".to_string() } else { format!("H{i}") });
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Mat::zeros(n, n);
                m[(i, j)] = 1.0;
                mats.push(m);
                labels.push(match (n, i < j) {
                    (2, true) => "E".to_string(),
                    (2, false) => "F".to_string(),
                    _ => format!("E{i}{j}"),
                });
            }
        }
    }
    LieAlgebra::from_matrices(labels, mats)?.with_negative_transpose_theta()
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((a.nrows(), a.ncols()), (b.nrows(), b.ncols())).copy_from(b);
    out
}

/// `L1 + L2` with the block bracket; matrices and involutions are combined
/// blockwise when both summands carry them.
pub fn direct_sum(l1: &LieAlgebra, l2: &LieAlgebra) -> Result<LieAlgebra> {
    let (d1, d2) = (l1.dim(), l2.dim());
    let d = d1 + d2;
    let mut c = alloc::vec![0.0; d * d * d];
    for i in 0..d1 {
        for j in 0..d1 {
            for k in 0..d1 {
                c[(i * d + j) * d + k] = l1.structure_constant(i, j, k);
            }
        }
    }
    for i in 0..d2 {
        for j in 0..d2 {
            for k in 0..d2 {
                c[((i + d1) * d + j + d1) * d + k + d1] = l2.structure_constant(i, j, k);
            }
        }
    }
    let labels: Vec<String> = l1
        .labels()
        .iter()
        .map(|l| format!("{l}@0"))
        .chain(l2.labels().iter().map(|l| format!("{l}@1")))
        .collect();
    let mut out = LieAlgebra::from_structure(labels, c)?;
    if let (Some(r1), Some(r2)) = (l1.realization(), l2.realization()) {
        let z1 = Mat::zeros(r1.size(), r1.size());
        let z2 = Mat::zeros(r2.size(), r2.size());
        let mats = r1
            .matrices()
            .iter()
            .map(|m| block_diag(m, &z2))
            .chain(r2.matrices().iter().map(|m| block_diag(&z1, m)))
            .collect();
        out = out.with_realization(mats)?;
    }
    if let (Some(t1), Some(t2)) = (l1.theta(), l2.theta()) {
        out = out.with_theta(block_diag(t1, t2))?;
    }
    Ok(out)
}

/// `L^copies` as an iterated direct sum; labels carry the factor index.
pub fn power(l: &LieAlgebra, copies: usize) -> Result<LieAlgebra> {
    if copies == 0 {
        return Err(Error::InvalidInput("power needs at least one copy".into()));
    }
    let mut out = l.clone();
    for _ in 1..copies {
        out = direct_sum(&out, l)?;
    }
    if copies == 1 {
        return Ok(out);
    }
    let labels = (0..copies).flat_map(|c| l.labels().iter().map(move |s| format!("{s}@{c}"))).collect();
    out.with_labels(labels)
}

/// Image of `X -> (X, ..., X)` in `L^copies`.
pub fn diagonal_embed(l: &LieAlgebra, copies: usize) -> Result<(LieAlgebra, Subalgebra)> {
    if copies < 2 {
        return Err(Error::InvalidInput("diagonal embedding needs at least two copies".into()));
    }
    let ambient = power(l, copies)?;
    let d = l.dim();
    let mut basis = Mat::zeros(d * copies, d);
    for i in 0..d {
        for c in 0..copies {
            basis[(c * d + i, i)] = 1.0;
        }
    }
    let sub = Subalgebra::new(&ambient, basis)?;
    Ok((ambient, sub))
}

/// Image of `L^k` in `L^copies` under a map sending factor `c` of the target
/// to factor `assignment[c]` of the source.
pub fn partial_diagonal_embed(l: &LieAlgebra, assignment: &[usize]) -> Result<(LieAlgebra, Subalgebra)> {
    let copies = assignment.len();
    let sources = assignment.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    if copies < 1 || (0..sources).any(|s| !assignment.contains(&s)) {
        return Err(Error::InvalidInput("assignment must be onto 0..k".into()));
    }
    let ambient = power(l, copies)?;
    let d = l.dim();
    let mut basis = Mat::zeros(d * copies, d * sources);
    for (c, &s) in assignment.iter().enumerate() {
        for i in 0..d {
            basis[(c * d + i, s * d + i)] = 1.0;
        }
    }
    let sub = Subalgebra::new(&ambient, basis)?;
    Ok((ambient, sub))
}

/// Division-algebra embeddings between classical algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionEmbedding {
    /// `su(k)` acting on `C^k = R^{2k}`, placed on the last `2k` coordinates
    /// of `R^{p,q}` inside `so(p,q)`.
    SuInSo { k: usize, p: usize, q: usize },
    /// `sp(k)` acting on `H^k = R^{4k}`, placed on the last `4k` coordinates.
    SpInSo { k: usize, p: usize, q: usize },
    /// Real matrices `so(p,q)` inside `su(p,q)`.
    SoInSu { p: usize, q: usize },
    /// Complex matrices `u(p,q)` inside `sp(p,q)`.
    UInSp { p: usize, q: usize },
}

fn compact_block(family: Family, k: usize, ambient: &LieAlgebra, offset: usize) -> Result<Subalgebra> {
    let size = ambient.realization().map(|r| r.size()).unwrap_or(0);
    let mats: Vec<Mat> = classical_elements(family, k, 0)
        .into_iter()
        .map(|e| {
            let mut m = Mat::zeros(size, size);
            let b = e.matrix.nrows();
            m.view_mut((offset, offset), (b, b)).copy_from(&e.matrix);
            m
        })
        .collect();
    Subalgebra::from_matrices(ambient, &mats)
}

/// Builds the ambient algebra and the realified image of the embedding.
pub fn embed_division(e: DivisionEmbedding) -> Result<(LieAlgebra, Subalgebra)> {
    match e {
        DivisionEmbedding::SuInSo { k, p, q } | DivisionEmbedding::SpInSo { k, p, q } => {
            let (family, width) = match e {
                DivisionEmbedding::SuInSo { .. } => (Family::Su, 2 * k),
                _ => (Family::Sp, 4 * k),
            };
            if k == 0 || q < width {
                return Err(Error::InvalidInput(format!(
                    "{family}({k}) needs {width} compact coordinates, so({p},{q}) has {q}"
                )));
            }
            if family == Family::Su && k < 2 {
                return Err(Error::InvalidInput("su(1) is trivial".into()));
            }
            let ambient = build_classical(Family::So, p, q)?;
            let sub = compact_block(family, k, &ambient, p + q - width)?;
            Ok((ambient, sub))
        }
        DivisionEmbedding::SoInSu { p, q } => {
            let ambient = build_classical(Family::Su, p, q)?;
            let mats: Vec<Mat> = classical_elements(Family::Su, p, q)
                .into_iter()
                .filter(|e| e.unit == 0)
                .map(|e| e.matrix)
                .collect();
            let sub = Subalgebra::from_matrices(&ambient, &mats)?;
            Ok((ambient, sub))
        }
        DivisionEmbedding::UInSp { p, q } => {
            let ambient = build_classical(Family::Sp, p, q)?;
            let mats: Vec<Mat> = classical_elements(Family::Sp, p, q)
                .into_iter()
                .filter(|e| e.unit <= 1)
                .map(|e| e.matrix)
                .collect();
            let sub = Subalgebra::from_matrices(&ambient, &mats)?;
            Ok((ambient, sub))
        }
    }
}

/// The block-diagonal symmetric subalgebra for the index split
/// `{0..split} + {split..p+q}`: `so(1,m) + so(n-m)`, `s(u(1,m) + u(n-m))` or
/// `sp(1,m) + sp(n-m)` with `split = m + 1`.
pub fn block_subalgebra(g: &LieAlgebra, family: Family, p: usize, q: usize, split: usize) -> Result<Subalgebra> {
    let n = p + q;
    if split == 0 || split >= n {
        return Err(Error::InvalidInput(format!("block split {split} must lie in 1..{n}")));
    }
    let same = |i: usize, j: usize| (i < split) == (j < split);
    let mats: Vec<Mat> = classical_elements(family, p, q)
        .into_iter()
        .filter(|e| same(e.row, e.col) || e.traceless_pair)
        .map(|e| e.matrix)
        .collect();
    Subalgebra::from_matrices(g, &mats)
}

/// Scalar imaginary quaternions `q * Id`, the `sp(1)` commuting with real
/// matrices in `sp(p,q)`.
pub fn scalar_sp1(g: &LieAlgebra, n: usize) -> Result<Subalgebra> {
    let mats: Vec<Mat> = (1..4)
        .map(|u| {
            let unit = Division::Quaternion.unit_matrix(u);
            let mut m = Mat::zeros(4 * n, 4 * n);
            for i in 0..n {
                place(&mut m, &unit, i, i, 1.0);
            }
            m
        })
        .collect();
    Subalgebra::from_matrices(g, &mats)
}
