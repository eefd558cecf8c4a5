//! Generic-rank test for open orbits: `(g, h)` is spherical iff
//! `g = h + Ad(x) p` for some `x`, and a single sample reaching `dim g`
//! certifies it.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{column_basis, hstack, numeric_rank, Mat, DEFAULT_TOL};
use crate::real_forms::Parabolic;
use crate::sampling::{random_group_element, rng_for};

pub const DEFAULT_SAMPLES: usize = 64;
pub const SAMPLE_RADIUS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Spherical,
    NotSphericalAtConfidence,
    DimensionObstructed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Spherical => "spherical",
            Verdict::NotSphericalAtConfidence => "not-spherical-at-confidence",
            Verdict::DimensionObstructed => "dimension-obstructed",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SphericityReport {
    pub pair_name: String,
    pub dim_g: usize,
    pub dim_h: usize,
    /// `dim g/p`.
    pub dim_gp: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub per_sample_dims: Vec<usize>,
    pub max_dim: usize,
    pub verdict: Verdict,
    /// First sample reaching `dim g`, as a group element and its index.
    pub witness: Option<Mat>,
    pub witness_index: Option<usize>,
}

impl SphericityReport {
    /// Largest sampled orbit dimension `max_dim - dim p`.
    pub fn max_orbit_dim(&self) -> usize {
        self.max_dim.saturating_sub(self.dim_g - self.dim_gp)
    }
}

fn realization_size(g: &LieAlgebra) -> Result<usize> {
    g.realization()
        .map(|r| r.size())
        .ok_or_else(|| Error::Unsupported("sphericality sampling needs a matrix realization".into()))
}

/// `Ad(x) p` as coefficient columns.
pub fn translated_parabolic(g: &LieAlgebra, p: &Parabolic, x: &Mat) -> Result<Mat> {
    Ok(g.group_adjoint(x)? * p.p.basis())
}

/// `dim(h + Ad(x) p)`.
pub fn local_dim(g: &LieAlgebra, h: &Subalgebra, p: &Parabolic, x: &Mat) -> Result<usize> {
    local_dim_tol(g, h, p, x, DEFAULT_TOL)
}

pub fn local_dim_tol(g: &LieAlgebra, h: &Subalgebra, p: &Parabolic, x: &Mat, tol: f64) -> Result<usize> {
    realization_size(g)?;
    let hp = column_basis(h.basis(), tol);
    let xp = column_basis(&translated_parabolic(g, p, x)?, tol);
    Ok(numeric_rank(&hstack(&[&hp, &xp]), tol))
}

/// Group element for sample `index` under `seed`.
pub fn sample_element(g: &LieAlgebra, seed: u64, index: usize) -> Result<Mat> {
    let mut rng = rng_for(seed, index as u64);
    random_group_element(g, &mut rng, SAMPLE_RADIUS)
}

/// Verdict from sampled dimensions; shared by the sequential and parallel
/// drivers.
#[allow(clippy::too_many_arguments)]
pub fn assemble_report(
    pair_name: &str,
    g: &LieAlgebra,
    h: &Subalgebra,
    p: &Parabolic,
    seed: u64,
    tol: f64,
    per_sample_dims: Vec<usize>,
    witness: Option<(usize, Mat)>,
) -> SphericityReport {
    let dim_g = g.dim();
    let max_dim = per_sample_dims.iter().copied().max().unwrap_or(0);
    let obstructed = h.dim() + p.p.dim() < dim_g;
    let verdict = if obstructed {
        Verdict::DimensionObstructed
    } else if max_dim == dim_g {
        Verdict::Spherical
    } else {
        Verdict::NotSphericalAtConfidence
    };
    let (witness_index, witness) = match witness {
        Some((i, x)) if verdict == Verdict::Spherical => (Some(i), Some(x)),
        _ => (None, None),
    };
    SphericityReport {
        pair_name: pair_name.into(),
        dim_g,
        dim_h: h.dim(),
        dim_gp: p.codim(),
        samples: per_sample_dims.len(),
        seed,
        tol,
        per_sample_dims,
        max_dim,
        verdict,
        witness,
        witness_index,
    }
}

/// Samples `x = exp(X1) exp(X2)` with `X_i` in the unit operator-norm ball
/// and records `dim(h + Ad(x) p)` for each.
pub fn is_spherical(
    pair_name: &str,
    g: &LieAlgebra,
    h: &Subalgebra,
    p: &Parabolic,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SphericityReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    realization_size(g)?;
    let mut dims = Vec::with_capacity(samples);
    let mut witness = None;
    for i in 0..samples {
        let x = sample_element(g, seed, i)?;
        let d = local_dim_tol(g, h, p, &x, tol)?;
        if d == g.dim() && witness.is_none() {
            witness = Some((i, x));
        }
        dims.push(d);
    }
    Ok(assemble_report(pair_name, g, h, p, seed, tol, dims, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_forms::{build_sl, minimal_parabolic_from};

    fn sl2() -> (LieAlgebra, Parabolic) {
        let g = build_sl(2).unwrap();
        let a = Mat::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let p = minimal_parabolic_from(&g, &a).unwrap();
        (g, p)
    }

    #[test]
    fn local_dims_in_sl2() {
        let (g, p) = sl2();
        let id = Mat::identity(2, 2);
        assert_eq!(local_dim(&g, &p.p, &p, &id).unwrap(), 2);
        assert_eq!(local_dim(&g, &p.n, &p, &id).unwrap(), 2);
        let s = p.weyl_rep.clone().unwrap();
        assert_eq!(local_dim(&g, &p.a, &p, &s).unwrap(), 2);
        assert_eq!(local_dim(&g, &p.n, &p, &s).unwrap(), 3);
    }

    #[test]
    fn torus_of_sl2_is_spherical() {
        let (g, p) = sl2();
        let r = is_spherical("sl2:a", &g, &p.a, &p, 16, 0, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Spherical);
        assert!(r.witness.is_some());
        assert_eq!(r.max_orbit_dim(), 1);
        let zero = Subalgebra::zero(&g);
        let r = is_spherical("sl2:0", &g, &zero, &p, 4, 0, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::DimensionObstructed);
    }

    #[test]
    fn reports_are_deterministic() {
        let (g, p) = sl2();
        let a = is_spherical("x", &g, &p.n, &p, 8, 3, DEFAULT_TOL).unwrap();
        let b = is_spherical("x", &g, &p.n, &p, 8, 3, DEFAULT_TOL).unwrap();
        assert_eq!(a.per_sample_dims, b.per_sample_dims);
        assert_eq!(a.witness, b.witness);
    }
}
