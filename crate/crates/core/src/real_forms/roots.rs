//! Restricted roots relative to a maximal abelian subspace of `s`, and the
//! minimal parabolic `p = m + a + n`.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::SymmetricEigen;

use crate::algebra::{cartan_decomposition, centralizer, LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    column_basis, expm, hstack, intersection, numeric_rank, Mat, Vector, DEFAULT_TOL,
};
use crate::sampling::{gaussian_vector, rng_for, CONSTRUCTION_SEED};

/// Eigenvalue clustering gap for generic elements of `a`.
const CLUSTER_GAP: f64 = 1e-6;

/// A restricted root space `g^lambda`, with `lambda` stored by its values on
/// the basis of `a`.
#[derive(Debug, Clone)]
pub struct RootSpace {
    pub functional: Vec<f64>,
    pub basis: Mat,
}

impl RootSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn eval(&self, coeffs_in_a: &[f64]) -> f64 {
        self.functional.iter().zip(coeffs_in_a).map(|(l, c)| l * c).sum()
    }
}

/// Rank-one specifics: `a = R Z` with `alpha(Z) = 1`.
#[derive(Debug, Clone)]
pub struct RankOneData {
    pub z: Vector,
    /// Indices into `RestrictedRoots::roots` for `alpha, 2 alpha, -alpha,
    /// -2 alpha`; the `2 alpha` entries are absent when `m_{2 alpha} = 0`.
    pub alpha: usize,
    pub two_alpha: Option<usize>,
    pub neg_alpha: usize,
    pub neg_two_alpha: Option<usize>,
    pub multiplicities: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct RestrictedRoots {
    /// Basis of `a` (coefficient vectors). In rank one this is the single
    /// normalized `Z`.
    pub a: Mat,
    pub m: Mat,
    pub roots: Vec<RootSpace>,
    /// Indices of positive roots, ordered by the positivity element.
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    /// Coefficients in the `a` basis of the element defining positivity.
    pub positivity: Vec<f64>,
    pub rank_one: Option<RankOneData>,
}

impl RestrictedRoots {
    pub fn rank(&self) -> usize {
        self.a.ncols()
    }

    pub fn root(&self, i: usize) -> &RootSpace {
        &self.roots[i]
    }

    /// Index of the root `-lambda` for `lambda = roots[i]`.
    pub fn negative_of(&self, i: usize) -> Option<usize> {
        let target: Vec<f64> = self.roots[i].functional.iter().map(|v| -v).collect();
        self.find(&target)
    }

    /// Index of the root with the given functional values, if any.
    pub fn find(&self, functional: &[f64]) -> Option<usize> {
        self.roots.iter().position(|r| {
            r.functional.iter().zip(functional).all(|(a, b)| (a - b).abs() < 1e-6)
        })
    }

    /// Sum of the given root spaces as one basis matrix.
    pub fn span_of(&self, dim: usize, idx: &[usize]) -> Mat {
        let blocks: Vec<&Mat> = idx.iter().map(|&i| &self.roots[i].basis).collect();
        if blocks.is_empty() {
            return Mat::zeros(dim, 0);
        }
        hstack(&blocks)
    }
}

/// Maximal abelian subspace of `s` grown greedily from seeded random
/// elements of successive centralizers.
fn maximal_abelian(g: &LieAlgebra, s: &Mat) -> Mat {
    let mut rng = rng_for(CONSTRUCTION_SEED, 0);
    let mut a = Mat::zeros(g.dim(), 0);
    loop {
        let c = if a.ncols() == 0 { s.clone() } else { centralizer(g, &a, s) };
        if c.ncols() == a.ncols() {
            return a;
        }
        // Pick a random element of the centralizer outside span(a).
        let coeffs = gaussian_vector(&mut rng, c.ncols());
        let mut x = &c * coeffs;
        if a.ncols() > 0 {
            let q = column_basis(&a, DEFAULT_TOL);
            x -= &q * (q.transpose() * &x);
        }
        let next = hstack(&[&a, &Mat::from_column_slice(g.dim(), 1, x.as_slice())]);
        a = column_basis(&next, DEFAULT_TOL);
    }
}

/// Restricted roots with a seeded choice of maximal abelian `a`.
pub fn restricted_roots(g: &LieAlgebra) -> Result<RestrictedRoots> {
    let cartan = cartan_decomposition(g)?;
    if cartan.s.ncols() == 0 {
        return Err(Error::RankZero);
    }
    let a = maximal_abelian(g, &cartan.s);
    restricted_roots_with(g, &a)
}

/// Restricted roots relative to a caller-supplied `a` (columns), which must
/// be a maximal abelian subspace of `s`.
pub fn restricted_roots_with(g: &LieAlgebra, a: &Mat) -> Result<RestrictedRoots> {
    roots_impl(g, a, None)
}

/// As [`restricted_roots_with`], with positive roots those taking positive
/// values on the element of `a` with the given coefficients (higher rank).
pub fn restricted_roots_ordered(g: &LieAlgebra, a: &Mat, positivity: &[f64]) -> Result<RestrictedRoots> {
    if positivity.len() != a.ncols() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), got: positivity.len() });
    }
    roots_impl(g, a, Some(positivity))
}

fn roots_impl(g: &LieAlgebra, a: &Mat, chamber: Option<&[f64]>) -> Result<RestrictedRoots> {
    let d = g.dim();
    let cartan = cartan_decomposition(g)?;
    if cartan.s.ncols() == 0 {
        return Err(Error::RankZero);
    }
    if a.nrows() != d || a.ncols() == 0 || numeric_rank(a, DEFAULT_TOL) != a.ncols() {
        return Err(Error::InvalidInput("a must be a nonempty independent set of vectors".into()));
    }
    let theta = g.theta().expect("cartan decomposition succeeded");
    if (theta * a + a).amax() > 1e-8 * a.amax() {
        return Err(Error::InvalidInput("a is not contained in s".into()));
    }
    let r = a.ncols();
    for i in 0..r {
        for j in (i + 1)..r {
            let b = g.bracket(&a.column(i).into_owned(), &a.column(j).into_owned())?;
            if b.amax() > 1e-8 {
                return Err(Error::InvalidInput("a is not abelian".into()));
            }
        }
    }
    if centralizer(g, a, &cartan.s).ncols() != r {
        return Err(Error::InvalidInput("a is not maximal abelian in s".into()));
    }

    // Symmetrize ad(a) with a Cholesky factor of B_theta.
    let gram = g.b_theta()?;
    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Construction("B_theta is not positive definite".into()))?;
    let l = chol.l();
    let lt_inv = l
        .transpose()
        .try_inverse()
        .ok_or_else(|| Error::Construction("B_theta Cholesky factor is singular".into()))?;
    let ads: Vec<Mat> = (0..r).map(|i| g.adjoint_unchecked(&a.column(i).into_owned())).collect();
    let sym = |m: &Mat| {
        let s = l.transpose() * m * &lt_inv;
        (&s + s.transpose()) * 0.5
    };

    let mut rng = rng_for(CONSTRUCTION_SEED, 1);
    let weights = gaussian_vector(&mut rng, r);
    let mut generic = Mat::zeros(d, d);
    for (ad, w) in ads.iter().zip(weights.iter()) {
        generic += ad * *w;
    }
    let scale = generic.amax().max(f64::MIN_POSITIVE);
    let eig = SymmetricEigen::new(sym(&generic) / scale);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < CLUSTER_GAP => c.push(i),
            _ => clusters.push(alloc::vec![i]),
        }
    }

    let mut zero_space = None;
    let mut roots = Vec::new();
    for cluster in clusters {
        let mut y = Mat::zeros(d, cluster.len());
        for (c, &i) in cluster.iter().enumerate() {
            y.set_column(c, &eig.eigenvectors.column(i));
        }
        let mut functional = Vec::with_capacity(r);
        for ad in &ads {
            let s = sym(ad);
            let block = y.transpose() * &s * &y;
            let lambda = block.trace() / cluster.len() as f64;
            let res = (&s * &y - &y * lambda).amax();
            if res > 1e-7 * s.amax().max(1.0) {
                return Err(Error::Construction(format!(
                    "ad(a) is not diagonal on a common eigenspace (residual {res:.3e})"
                )));
            }
            functional.push(lambda);
        }
        let basis = &lt_inv * y;
        if functional.iter().all(|v| v.abs() < 1e-7) {
            zero_space = Some(basis);
        } else {
            roots.push(RootSpace { functional, basis });
        }
    }
    let zero_space = zero_space.ok_or_else(|| Error::Construction("a has no centralizer".into()))?;
    let m = intersection(&zero_space, cartan.k.basis(), DEFAULT_TOL);
    if m.ncols() + r != zero_space.ncols() {
        return Err(Error::Construction(format!(
            "centralizer of a has dimension {}, expected dim m {} + rank {r}",
            zero_space.ncols(),
            m.ncols()
        )));
    }

    let positivity: Vec<f64> = if r == 1 {
        alloc::vec![1.0]
    } else if let Some(o) = chamber {
        o.to_vec()
    } else {
        let mut rng = rng_for(CONSTRUCTION_SEED, 2);
        gaussian_vector(&mut rng, r).iter().copied().collect()
    };
    if r == 1 {
        return rank_one(a, m, roots);
    }
    if roots.iter().any(|root| root.eval(&positivity).abs() < 1e-9) {
        return Err(Error::InvalidInput("positivity element is singular".into()));
    }
    let mut positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].eval(&positivity) > 0.0).collect();
    positive.sort_by(|&x, &y| roots[x].eval(&positivity).total_cmp(&roots[y].eval(&positivity)));
    let mut out = RestrictedRoots { a: a.clone(), m, roots, positive, simple: Vec::new(), positivity, rank_one: None };
    out.simple = simple_roots(&out);
    if out.simple.len() != r {
        return Err(Error::Construction(format!("found {} simple roots for rank {r}", out.simple.len())));
    }
    Ok(out)
}

fn simple_roots(rr: &RestrictedRoots) -> Vec<usize> {
    let pos = &rr.positive;
    pos.iter()
        .copied()
        .filter(|&i| {
            let target = &rr.roots[i].functional;
            !pos.iter().any(|&a| {
                pos.iter().any(|&b| {
                    rr.roots[a]
                        .functional
                        .iter()
                        .zip(&rr.roots[b].functional)
                        .zip(target)
                        .all(|((x, y), t)| (x + y - t).abs() < 1e-6)
                })
            })
        })
        .collect()
}

fn rank_one(a: &Mat, m: Mat, mut roots: Vec<RootSpace>) -> Result<RestrictedRoots> {
    let values: Vec<f64> = roots.iter().map(|r| r.functional[0]).collect();
    let alpha_val = values.iter().copied().filter(|v| *v > 0.0).fold(f64::INFINITY, f64::min);
    if !alpha_val.is_finite() {
        return Err(Error::Construction("no positive restricted root".into()));
    }
    let z = a.column(0) / alpha_val;
    for root in &mut roots {
        root.functional[0] /= alpha_val;
    }
    let find = |t: f64| roots.iter().position(|r| (r.functional[0] - t).abs() < 1e-6);
    for root in &roots {
        let v = root.functional[0];
        if [1.0, 2.0, -1.0, -2.0].iter().all(|t| (v - t).abs() > 1e-6) {
            return Err(Error::Construction(format!("unexpected rank-one root value {v}")));
        }
    }
    let alpha = find(1.0).expect("alpha exists by construction");
    let neg_alpha = find(-1.0).ok_or_else(|| Error::Construction("-alpha is missing".into()))?;
    let two_alpha = find(2.0);
    let neg_two_alpha = find(-2.0);
    if two_alpha.is_some() != neg_two_alpha.is_some() {
        return Err(Error::Construction("2 alpha and -2 alpha disagree".into()));
    }
    let multiplicities = (roots[alpha].dim(), two_alpha.map(|i| roots[i].dim()).unwrap_or(0));
    let mut positive = alloc::vec![alpha];
    positive.extend(two_alpha);
    let z_mat = Mat::from_column_slice(z.len(), 1, z.as_slice());
    Ok(RestrictedRoots {
        a: z_mat,
        m,
        roots,
        positive,
        simple: alloc::vec![alpha],
        positivity: alloc::vec![1.0],
        rank_one: Some(RankOneData { z, alpha, two_alpha, neg_alpha, neg_two_alpha, multiplicities }),
    })
}

/// Minimal parabolic `p = m + a + n` and its opposite nilradical.
#[derive(Debug, Clone)]
pub struct Parabolic {
    pub roots: RestrictedRoots,
    pub m: Subalgebra,
    pub a: Subalgebra,
    pub n: Subalgebra,
    pub nbar: Subalgebra,
    pub p: Subalgebra,
    /// Weyl representative with `Ad(s) Z = -Z`, in the matrix realization.
    /// Present in real rank one.
    pub weyl_rep: Option<Mat>,
}

impl Parabolic {
    pub fn rank_one(&self) -> Result<&RankOneData> {
        self.roots
            .rank_one
            .as_ref()
            .ok_or_else(|| Error::Unsupported("real rank is larger than one".into()))
    }

    /// `g^{j alpha}` for `j` in `{-2, -1, 1, 2}` in rank one (empty when absent).
    pub fn root_space(&self, j: i32) -> Result<Mat> {
        let r1 = self.rank_one()?;
        let idx = match j {
            1 => Some(r1.alpha),
            2 => r1.two_alpha,
            -1 => Some(r1.neg_alpha),
            -2 => r1.neg_two_alpha,
            _ => return Err(Error::InvalidInput(format!("no root space for j = {j}"))),
        };
        let d = self.p.basis().nrows();
        Ok(idx.map(|i| self.roots.roots[i].basis.clone()).unwrap_or_else(|| Mat::zeros(d, 0)))
    }

    /// `dim g/p = dim n`.
    pub fn codim(&self) -> usize {
        self.n.dim()
    }
}

pub fn minimal_parabolic(g: &LieAlgebra) -> Result<Parabolic> {
    let roots = restricted_roots(g)?;
    assemble(g, roots)
}

/// Minimal parabolic relative to a caller-supplied maximal abelian `a`.
pub fn minimal_parabolic_from(g: &LieAlgebra, a: &Mat) -> Result<Parabolic> {
    let roots = restricted_roots_with(g, a)?;
    assemble(g, roots)
}

/// Minimal parabolic for `a` and an explicit positive chamber.
pub fn minimal_parabolic_ordered(g: &LieAlgebra, a: &Mat, positivity: &[f64]) -> Result<Parabolic> {
    let roots = restricted_roots_ordered(g, a, positivity)?;
    assemble(g, roots)
}

fn assemble(g: &LieAlgebra, roots: RestrictedRoots) -> Result<Parabolic> {
    let d = g.dim();
    let negatives: Vec<usize> = roots.positive.iter().filter_map(|&i| roots.negative_of(i)).collect();
    if negatives.len() != roots.positive.len() || 2 * roots.positive.len() != roots.roots.len() {
        return Err(Error::Construction("roots do not split into positive and negative halves".into()));
    }
    let n = roots.span_of(d, &roots.positive);
    let nbar = roots.span_of(d, &negatives);
    let p_basis = hstack(&[&roots.m, &roots.a, &n]);
    if p_basis.ncols() + nbar.ncols() != d {
        return Err(Error::Construction("m + a + n + nbar does not span g".into()));
    }
    let m = Subalgebra::new(g, roots.m.clone())?;
    let a = Subalgebra::new(g, roots.a.clone())?;
    let n_sub = Subalgebra::new(g, n)?;
    let nbar = Subalgebra::new(g, nbar)?;
    let p = Subalgebra::new(g, p_basis)?;
    let weyl_rep = match (&roots.rank_one, g.realization()) {
        (Some(r1), Some(_)) => Some(weyl_representative(g, &roots, r1)?),
        _ => None,
    };
    Ok(Parabolic { roots, m, a, n: n_sub, nbar, p, weyl_rep })
}

/// `s = exp(t (E + theta E))` with `E` in `g^alpha` and `t` chosen so that
/// `Ad(s) Z = -Z`.
fn weyl_representative(g: &LieAlgebra, roots: &RestrictedRoots, r1: &RankOneData) -> Result<Mat> {
    let theta = g.theta().expect("roots were computed from theta");
    let gram = g.b_theta()?;
    let e = roots.roots[r1.alpha].basis.column(0).into_owned();
    let xk = &e + theta * &e;
    let ad = g.adjoint_unchecked(&xk);
    let z = &r1.z;
    let w = &ad * (&ad * z);
    let zz = (z.transpose() * &gram * z)[0];
    let omega_sq = -(z.transpose() * &gram * &w)[0] / zz;
    let along = &w + z * omega_sq;
    if omega_sq <= 0.0 || along.amax() > 1e-8 * w.amax().max(1.0) {
        return Err(Error::Construction("ad(E + theta E)^2 does not preserve a".into()));
    }
    let t = core::f64::consts::PI / libm::sqrt(omega_sq);
    let s = expm(&(g.to_matrix(&xk)? * t));
    let ads = g.group_adjoint(&s)?;
    let flipped = &ads * z + z;
    if flipped.amax() > 1e-8 * z.amax() {
        return Err(Error::Construction(format!(
            "Weyl representative misses Ad(s) Z = -Z by {:.3e}",
            flipped.amax()
        )));
    }
    Ok(s)
}

/// Whether `x` lies in the span of `basis` (used for root-space containment
/// checks in tests and diagnostics).
#[cfg(test)]
pub(crate) fn in_span(basis: &Mat, x: &Vector) -> bool {
    let q = column_basis(basis, DEFAULT_TOL);
    let r = x - &q * (q.transpose() * x);
    r.norm() <= 1e-8 * x.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_forms::{build_classical, build_sl, Family};

    #[test]
    fn rank_one_multiplicities() {
        for n in 2..=5 {
            let g = build_classical(Family::So, 1, n).unwrap();
            let rr = restricted_roots(&g).unwrap();
            assert_eq!(rr.rank_one.unwrap().multiplicities, (n - 1, 0));
        }
        let su = build_classical(Family::Su, 1, 3).unwrap();
        assert_eq!(restricted_roots(&su).unwrap().rank_one.unwrap().multiplicities, (4, 1));
        let sp = build_classical(Family::Sp, 1, 2).unwrap();
        let p = minimal_parabolic(&sp).unwrap();
        assert_eq!(p.rank_one().unwrap().multiplicities, (4, 3));
        assert_eq!(p.codim(), 7);
    }

    #[test]
    fn compact_is_rank_zero() {
        let so3 = build_classical(Family::So, 3, 0).unwrap();
        assert!(matches!(restricted_roots(&so3), Err(Error::RankZero)));
    }

    #[test]
    fn sl2_parabolic_with_diagonal_a() {
        let g = build_sl(2).unwrap();
        let a = Mat::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let p = minimal_parabolic_from(&g, &a).unwrap();
        assert_eq!(p.p.dim(), 2);
        let z = &p.rank_one().unwrap().z;
        assert!((z[0] - 0.5).abs() < 1e-12);
        // n is spanned by E
        assert!(in_span(p.n.basis(), &g.basis_vector(1)));
        let s = p.weyl_rep.as_ref().unwrap();
        // rotation by a quarter turn, up to sign
        assert!(s[(0, 0)].abs() < 1e-12 && (s[(0, 1)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sl3_has_two_simple_roots() {
        let g = build_sl(3).unwrap();
        let a = Mat::from_fn(8, 2, |i, j| if i == j { 1.0 } else { 0.0 });
        let p = minimal_parabolic_from(&g, &a).unwrap();
        assert_eq!(p.roots.roots.len(), 6);
        assert_eq!(p.roots.simple.len(), 2);
        assert_eq!(p.p.dim(), 5);
        assert!(minimal_parabolic_from(&g, &Mat::from_column_slice(8, 1, &[1.0, 0., 0., 0., 0., 0., 0., 0.])).is_err());
    }

    #[test]
    fn root_brackets_are_graded() {
        let g = build_classical(Family::Su, 1, 2).unwrap();
        let p = minimal_parabolic(&g).unwrap();
        let ga = p.root_space(1).unwrap();
        let g2a = p.root_space(2).unwrap();
        for i in 0..ga.ncols() {
            for j in 0..ga.ncols() {
                let b = g.bracket(&ga.column(i).into_owned(), &ga.column(j).into_owned()).unwrap();
                assert!(in_span(&g2a, &b));
            }
        }
    }
}
