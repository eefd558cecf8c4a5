//! One step of the reduction to real rank one: the parabolic `p_alpha` of a
//! simple root, its Levi projection, and the induced pair `(l_alpha, h_alpha)`.

use alloc::vec::Vec;

use crate::algebra::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{column_basis, hstack, intersection, numeric_rank, Mat, Vector, DEFAULT_TOL};
use crate::real_forms::Parabolic;
use crate::sampling::{gaussian_vector, rng_for};

const CONTAIN_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct AlphaParabolicData {
    /// Index of the simple root in the restricted root list.
    pub alpha: usize,
    pub functional: Vec<f64>,
    pub p_alpha: Mat,
    pub l_alpha: Mat,
    pub u_alpha: Mat,
    pub l_cap_p: Mat,
    /// Projection onto `l_alpha` along `u_alpha`, as a map on coefficient
    /// space (zero on the negative root spaces outside `p_alpha`).
    pub projector: Mat,
}

fn proportion(f: &[f64], base: &[f64]) -> Option<f64> {
    let (i, b) = base.iter().enumerate().max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))?;
    let c = f[i] / b;
    let fits = f.iter().zip(base).all(|(a, b)| (a - c * b).abs() < 1e-6);
    fits.then_some(c)
}

pub fn parabolic_alpha(g: &LieAlgebra, p: &Parabolic, alpha: usize) -> Result<AlphaParabolicData> {
    let roots = &p.roots;
    if !roots.simple.contains(&alpha) {
        return Err(Error::InvalidInput(alloc::format!("root {alpha} is not simple")));
    }
    let d = g.dim();
    let base = roots.roots[alpha].functional.clone();
    let (mut levi_roots, mut nil_roots, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for (i, r) in roots.roots.iter().enumerate() {
        let positive = roots.positive.contains(&i);
        match proportion(&r.functional, &base) {
            Some(_) => levi_roots.push(i),
            None if positive => nil_roots.push(i),
            None => rest.push(i),
        }
    }
    let l_alpha = hstack(&[p.m.basis(), p.a.basis(), &roots.span_of(d, &levi_roots)]);
    let u_alpha = roots.span_of(d, &nil_roots);
    let other = roots.span_of(d, &rest);
    let p_alpha = hstack(&[&l_alpha, &u_alpha]);
    let frame = hstack(&[&p_alpha, &other]);
    let inv = frame
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Invariant("root spaces do not span g".into()))?;
    let mut keep = Mat::zeros(d, d);
    for c in 0..l_alpha.ncols() {
        keep[(c, c)] = 1.0;
    }
    let projector = &frame * keep * inv;
    let l_cap_p = intersection(&l_alpha, p.p.basis(), DEFAULT_TOL);
    Ok(AlphaParabolicData { alpha, functional: base, p_alpha, l_alpha, u_alpha, l_cap_p, projector })
}

pub fn levi_projection(ap: &AlphaParabolicData, v: &Vector) -> Result<Vector> {
    let res = crate::linalg::span_residual(&column_basis(&ap.p_alpha, DEFAULT_TOL), v);
    if res > CONTAIN_TOL {
        return Err(Error::InvalidInput(alloc::format!("vector is not in p_alpha (residual {res:.3e})")));
    }
    Ok(&ap.projector * v)
}

/// Largest `|pi[x, y] - [pi x, pi y]|` relative to `|x||y|` over seeded
/// random pairs in `p_alpha`.
pub fn homomorphism_residual(g: &LieAlgebra, ap: &AlphaParabolicData, pairs: usize, seed: u64) -> f64 {
    let scale = g.max_structure_constant().max(1.0);
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let mut rng = rng_for(seed, i as u64);
        let x = &ap.p_alpha * gaussian_vector(&mut rng, ap.p_alpha.ncols());
        let y = &ap.p_alpha * gaussian_vector(&mut rng, ap.p_alpha.ncols());
        let lhs = &ap.projector * g.bracket_unchecked(&x, &y);
        let rhs = g.bracket_unchecked(&(&ap.projector * &x), &(&ap.projector * &y));
        worst = worst.max((lhs - rhs).norm() / (x.norm() * y.norm() * scale));
    }
    worst
}

#[derive(Debug, Clone)]
pub struct InducedPair {
    pub l_alpha: Mat,
    pub h_alpha: Subalgebra,
    pub h_cap_p_alpha: Mat,
    /// `rank(h_alpha ∪ (l_alpha ∩ p)) = dim l_alpha`.
    pub open: bool,
    /// `rank(h ∪ p) = dim g`.
    pub h_open: bool,
}

pub fn induced_pair(g: &LieAlgebra, h: &Subalgebra, p: &Parabolic, ap: &AlphaParabolicData) -> Result<InducedPair> {
    let d = g.dim();
    let h_cap = intersection(h.basis(), &ap.p_alpha, DEFAULT_TOL);
    let image = &ap.projector * &h_cap;
    let h_alpha = if h_cap.ncols() == 0 || numeric_rank(&image, DEFAULT_TOL) == 0 {
        Subalgebra::zero(g)
    } else {
        Subalgebra::spanned_by(g, &column_basis(&image, DEFAULT_TOL))?
    };
    let dim_l = ap.l_alpha.ncols();
    let open = numeric_rank(&hstack(&[h_alpha.basis(), &ap.l_cap_p]), DEFAULT_TOL) == dim_l;
    let h_open = numeric_rank(&hstack(&[h.basis(), p.p.basis()]), DEFAULT_TOL) == d;
    Ok(InducedPair { l_alpha: ap.l_alpha.clone(), h_alpha, h_cap_p_alpha: h_cap, open, h_open })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_forms::{build_classical, build_sl, minimal_parabolic, minimal_parabolic_from, Family};

    #[test]
    fn rank_one_gives_everything() {
        let g = build_classical(Family::Su, 1, 2).unwrap();
        let p = minimal_parabolic(&g).unwrap();
        let ap = parabolic_alpha(&g, &p, p.roots.simple[0]).unwrap();
        assert_eq!(ap.p_alpha.ncols(), g.dim());
        assert_eq!(ap.u_alpha.ncols(), 0);
        assert!(homomorphism_residual(&g, &ap, 20, 0) < 1e-8);
    }

    #[test]
    fn sl3_parabolic_and_projection() {
        let g = build_sl(3).unwrap();
        let a = Mat::from_column_slice(8, 2, &[1.0, 0., 0., 0., 0., 0., 0., 0., 0., 1.0, 0., 0., 0., 0., 0., 0.]);
        let p = minimal_parabolic_from(&g, &a).unwrap();
        let non_simple = p.roots.positive.iter().copied().find(|i| !p.roots.simple.contains(i)).unwrap();
        assert!(matches!(parabolic_alpha(&g, &p, non_simple), Err(Error::InvalidInput(_))));
        for &s in &p.roots.simple {
            let ap = parabolic_alpha(&g, &p, s).unwrap();
            assert_eq!(ap.p_alpha.ncols(), 6);
            assert_eq!(ap.u_alpha.ncols(), 2);
            let u = ap.u_alpha.column(0).into_owned();
            assert!(levi_projection(&ap, &u).unwrap().amax() < 1e-12);
            let l = ap.l_alpha.column(3).into_owned();
            assert!((levi_projection(&ap, &l).unwrap() - &l).amax() < 1e-12);
            assert!(homomorphism_residual(&g, &ap, 100, 1) < 1e-8);
            let whole = Subalgebra::whole(&g);
            let ip = induced_pair(&g, &whole, &p, &ap).unwrap();
            assert_eq!(ip.h_alpha.dim(), ap.l_alpha.ncols());
            assert!(ip.open && ip.h_open);
        }
    }
}
