//! Orbit dimensions on `G/P`, the two Bruhat cells in real rank one, the
//! normal form `h = m1 + RX + n1` of a subalgebra inside `p`, and the orbit
//! count it implies.

use alloc::vec::Vec;

use crate::algebra::{noncompact_ideal, LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    column_basis, contained_residual, expm, gram_complement, hstack, intersection, intersection_dim, numeric_rank,
    svd, Mat, Vector, DEFAULT_TOL,
};
use crate::real_forms::{minimal_parabolic_from, Parabolic};
use crate::sampling::{gaussian_vector, rng_for, CONSTRUCTION_SEED};
use crate::sphericality::{sample_element, translated_parabolic, SphericityReport, Verdict};

const CONTAIN_TOL: f64 = 1e-8;

/// `dim h - dim(h ∩ Ad(x) p)`.
pub fn orbit_dim_at(g: &LieAlgebra, h: &Subalgebra, p: &Parabolic, x: &Mat) -> Result<usize> {
    let xp = translated_parabolic(g, p, x)?;
    Ok(h.dim() - intersection_dim(h.basis(), &xp, DEFAULT_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Closed,
    Open,
}

/// Cell of `xP` in `G = P ∪ NsP`: open iff `n + Ad(x) p = g`.
pub fn bruhat_cell_of(g: &LieAlgebra, p: &Parabolic, x: &Mat) -> Result<Cell> {
    p.rank_one()?;
    let xp = translated_parabolic(g, p, x)?;
    let r = numeric_rank(&hstack(&[p.n.basis(), &xp]), DEFAULT_TOL);
    Ok(if r == g.dim() { Cell::Open } else { Cell::Closed })
}

/// `X = Y + Z` with `Y` in `m`, `Z` in `a`, scaled so that `alpha(Z) = 1`.
#[derive(Debug, Clone)]
pub struct NormalElement {
    pub x: Vector,
    pub y: Vector,
    pub z: Vector,
}

#[derive(Debug, Clone)]
pub struct NonreductiveNormalForm {
    pub m1: Mat,
    pub x: Option<NormalElement>,
    pub n1: Mat,
    /// `(n1 ∩ g^alpha, n1 ∩ g^{2 alpha})`.
    pub n1_graded: (Mat, Mat),
    pub n0: Mat,
    pub n0_graded: (Mat, Mat),
    /// Grade of `n0` when it is a line.
    pub j: Option<u8>,
    pub dim_n: usize,
    /// Largest residual of `[m1 + RX, n1]` against `n1`.
    pub ideal_residual: f64,
}

impl NonreductiveNormalForm {
    pub fn k(&self) -> usize {
        self.n1.ncols()
    }
}

fn cols(m: &Mat) -> impl Iterator<Item = Vector> + '_ {
    (0..m.ncols()).map(move |c| m.column(c).into_owned())
}

/// Largest subspace of `s` stable under `ad(h)`.
fn largest_stable(g: &LieAlgebra, h: &Mat, s: Mat) -> Mat {
    let d = g.dim();
    let mut s = column_basis(&s, DEFAULT_TOL);
    loop {
        if s.ncols() == 0 {
            return s;
        }
        let proj_out = Mat::identity(d, d) - &s * s.transpose();
        let mut stacked = Mat::zeros(d * h.ncols(), s.ncols());
        let mut reference: f64 = 0.0;
        for (i, y) in cols(h).enumerate() {
            let moved = g.adjoint_unchecked(&y) * &s;
            reference = reference.max(moved.norm());
            stacked.view_mut((i * d, 0), (d, s.ncols())).copy_from(&(&proj_out * moved));
        }
        // Rank relative to the unprojected images, so that an ad(h)-stable
        // subspace gives an exactly full kernel.
        let dec = svd(&stacked);
        let r = dec.s.iter().filter(|&&v| v > DEFAULT_TOL * reference).count();
        if r == 0 {
            return s;
        }
        let n = s.ncols();
        s = if r == n { Mat::zeros(d, 0) } else { column_basis(&(&s * dec.v.columns(r, n - r)), DEFAULT_TOL) };
    }
}

fn graded(sub: &Mat, p: &Parabolic) -> Result<(Mat, Mat)> {
    let g1 = p.root_space(1)?;
    let g2 = p.root_space(2)?;
    Ok((intersection(sub, &g1, DEFAULT_TOL), intersection(sub, &g2, DEFAULT_TOL)))
}

fn bracket_residual(g: &LieAlgebra, from: &Mat, into: &Mat) -> f64 {
    let mut images = Vec::new();
    for a in cols(from) {
        for b in cols(into) {
            images.push(g.bracket_unchecked(&a, &b));
        }
    }
    if images.is_empty() {
        return 0.0;
    }
    contained_residual(into, &crate::linalg::from_columns(g.dim(), &images), DEFAULT_TOL)
}

pub fn normalize_nonreductive(g: &LieAlgebra, h: &Subalgebra, p: &Parabolic) -> Result<NonreductiveNormalForm> {
    let r1 = p.rank_one()?;
    if h.dim() == 0 {
        return Err(Error::InvalidInput("subalgebra is zero".into()));
    }
    let res = p.p.contains_residual(h.basis());
    if res > CONTAIN_TOL {
        return Err(Error::InvalidInput(alloc::format!(
            "h is not inside p (residual {res:.3e}); conjugate h into p first"
        )));
    }
    let gram = g.b_theta()?;
    let hb = column_basis(h.basis(), DEFAULT_TOL);
    let n1 = largest_stable(g, &hb, intersection(&hb, p.n.basis(), DEFAULT_TOL));
    let ma = hstack(&[p.m.basis(), p.a.basis()]);
    let l = intersection(&hb, &ma, DEFAULT_TOL);
    if l.ncols() + n1.ncols() != hb.ncols() {
        return Err(Error::Normalization(alloc::format!(
            "reductive part of h is not inside m + a ({} + {} != {}); conjugate by an element of n first",
            l.ncols(),
            n1.ncols(),
            hb.ncols()
        )));
    }
    let m1 = intersection(&l, p.m.basis(), DEFAULT_TOL);
    let x = match l.ncols() - m1.ncols() {
        0 => None,
        1 => {
            let raw = gram_complement(&m1, &l, &gram, DEFAULT_TOL).column(0).into_owned();
            let z0 = &r1.z;
            let c = (raw.transpose() * &gram * z0)[0] / (z0.transpose() * &gram * z0)[0];
            let x = raw / c;
            let z = z0.clone();
            let y = &x - &z;
            let yres = p.m.residual(&y) * y.norm() / x.norm().max(1.0);
            if yres > CONTAIN_TOL {
                return Err(Error::Invariant(alloc::format!("m-component of X leaves m by {yres:.3e}")));
            }
            Some(NormalElement { x, y, z })
        }
        _ => return Err(Error::Invariant("h meets a in more than a line".into())),
    };
    let dim_n = p.n.dim();
    if x.is_none() && n1.ncols() != dim_n {
        return Err(Error::NotSpherical("Z = 0 while n1 is a proper subspace of n".into()));
    }
    let n1_graded = graded(&n1, p)?;
    if n1_graded.0.ncols() + n1_graded.1.ncols() != n1.ncols() {
        return Err(Error::Invariant("n1 is not graded by the root spaces".into()));
    }
    let g1 = p.root_space(1)?;
    let g2 = p.root_space(2)?;
    let n0_graded = (
        gram_complement(&n1_graded.0, &g1, &gram, DEFAULT_TOL),
        if g2.ncols() == 0 { g2.clone() } else { gram_complement(&n1_graded.1, &g2, &gram, DEFAULT_TOL) },
    );
    let n0 = hstack(&[&n0_graded.0, &n0_graded.1]);
    if n0.ncols() + n1.ncols() != dim_n {
        return Err(Error::Invariant("n0 + n1 does not fill n".into()));
    }
    let j = match (n0_graded.0.ncols(), n0_graded.1.ncols()) {
        (1, 0) => Some(1),
        (0, 1) => Some(2),
        _ => None,
    };
    let mut reductive = m1.clone();
    if let Some(e) = &x {
        reductive = hstack(&[&reductive, &Mat::from_column_slice(g.dim(), 1, e.x.as_slice())]);
    }
    let ideal_residual = if n1.ncols() == 0 { 0.0 } else { bracket_residual(g, &reductive, &n1) };
    if ideal_residual > CONTAIN_TOL {
        return Err(Error::Invariant(alloc::format!("[m1 + RX, n1] leaves n1 by {ideal_residual:.3e}")));
    }
    Ok(NonreductiveNormalForm { m1, x, n1, n1_graded, n0, n0_graded, j, dim_n, ideal_residual })
}

/// Largest relative deviation from `|Ad(exp tX) v| = e^{jt} |v|` over
/// `v` in `n0 ∩ g^{j alpha}`, `j = 1, 2`, in the `B_theta` norm.
pub fn dilation_residual(g: &LieAlgebra, nf: &NonreductiveNormalForm, t: f64) -> Result<f64> {
    let Some(e) = &nf.x else {
        return Ok(0.0);
    };
    let gram = g.b_theta()?;
    let ad = expm(&(g.adjoint_unchecked(&e.x) * t));
    let mut worst: f64 = 0.0;
    for (jj, sub) in [(1.0, &nf.n0_graded.0), (2.0, &nf.n0_graded.1)] {
        if sub.ncols() == 0 {
            continue;
        }
        // Compare Gram matrices so the check covers every vector of the space.
        let before = sub.transpose() * &gram * sub;
        let moved = &ad * sub;
        let after = moved.transpose() * &gram * &moved;
        let expected = &before * libm::exp(2.0 * jj * t);
        let dev = (after - &expected).amax() / expected.amax();
        worst = worst.max(dev);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// The base point `eP`.
    ClosedCell,
    /// `NsP` as a single orbit (`k = n`).
    FullCell,
    /// `N1 sP`, a `k`-plane in the open cell.
    KPlane,
    /// `(n0 minus 0) x R^k`.
    PuncturedComplement,
    HalfSpacePositive,
    HalfSpaceNegative,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::ClosedCell => "closed-cell",
            OrbitKind::FullCell => "full-cell",
            OrbitKind::KPlane => "k-plane",
            OrbitKind::PuncturedComplement => "punctured-complement",
            OrbitKind::HalfSpacePositive => "half-space+",
            OrbitKind::HalfSpaceNegative => "half-space-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitDescriptor {
    pub kind: OrbitKind,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCountReport {
    pub count: usize,
    pub types: Vec<OrbitDescriptor>,
    pub n: usize,
    pub k: usize,
    pub j: Option<u8>,
}

pub fn nonreductive_orbit_count(nf: &NonreductiveNormalForm, witness: &SphericityReport) -> Result<OrbitCountReport> {
    if witness.verdict != Verdict::Spherical {
        return Err(Error::Precondition(alloc::format!(
            "orbit count needs a spherical witness, got {}",
            witness.verdict
        )));
    }
    let (n, k) = (nf.dim_n, nf.k());
    let d = |kind, dim| OrbitDescriptor { kind, dim };
    let mut types = alloc::vec![d(OrbitKind::ClosedCell, 0)];
    match n - k {
        0 => types.push(d(OrbitKind::FullCell, n)),
        1 => types.extend([
            d(OrbitKind::KPlane, k),
            d(OrbitKind::HalfSpacePositive, n),
            d(OrbitKind::HalfSpaceNegative, n),
        ]),
        _ => types.extend([d(OrbitKind::KPlane, k), d(OrbitKind::PuncturedComplement, n)]),
    }
    Ok(OrbitCountReport { count: types.len(), types, n, k, j: nf.j })
}

#[derive(Debug, Clone)]
pub struct CoincidenceReport {
    /// Number of random samples; the identity is recorded in addition as
    /// entry 0.
    pub samples: usize,
    pub seed: u64,
    /// `(orbit dim of h, orbit dim of h')` per point.
    pub dims: Vec<(usize, usize)>,
    pub coincide: bool,
    pub first_mismatch: Option<usize>,
}

/// Compares `H`- and `H'`-orbit dimensions at the identity and at seeded
/// random points.
pub fn symmetric_coincidence(
    g: &LieAlgebra,
    h: &Subalgebra,
    hprime: &Subalgebra,
    p: &Parabolic,
    samples: usize,
    seed: u64,
) -> Result<CoincidenceReport> {
    let res = hprime.contains_residual(h.basis());
    if res > CONTAIN_TOL {
        return Err(Error::InvalidInput(alloc::format!("h is not contained in h' (residual {res:.3e})")));
    }
    let size = g
        .realization()
        .map(|r| r.size())
        .ok_or_else(|| Error::Unsupported("coincidence check needs a matrix realization".into()))?;
    let mut dims = Vec::with_capacity(samples + 1);
    for i in 0..=samples {
        let x = if i == 0 { Mat::identity(size, size) } else { sample_element(g, seed, i - 1)? };
        dims.push((orbit_dim_at(g, h, p, &x)?, orbit_dim_at(g, hprime, p, &x)?));
    }
    let first_mismatch = dims.iter().position(|(a, b)| a != b);
    Ok(CoincidenceReport { samples, seed, dims, coincide: first_mismatch.is_none(), first_mismatch })
}

/// Minimal parabolic whose `a` lies in `s ∩ q`, `q` the Killing complement
/// of `h'` (real rank one).
pub fn adapted_parabolic(g: &LieAlgebra, hprime: &Subalgebra) -> Result<Parabolic> {
    let killing = g.killing_form();
    let cartan = crate::algebra::cartan_decomposition(g)?;
    let q = gram_complement(hprime.basis(), &Mat::identity(g.dim(), g.dim()), &killing.matrix, DEFAULT_TOL);
    let sq = intersection(&cartan.s, &q, DEFAULT_TOL);
    if sq.ncols() == 0 {
        return Err(Error::Unsupported("s ∩ q is zero; no adapted parabolic".into()));
    }
    let mut rng = rng_for(CONSTRUCTION_SEED, 1);
    let a = &sq * gaussian_vector(&mut rng, sq.ncols());
    minimal_parabolic_from(g, &Mat::from_column_slice(g.dim(), 1, a.as_slice()))
}

#[derive(Debug, Clone)]
pub struct DecompositionCheck {
    pub hprime_cap_m_dim: usize,
    /// `rank(h ∪ (h' ∩ m))`.
    pub spanned: usize,
    pub dim_hprime: usize,
    /// Residual of the noncompact ideal of `h'` against `h`.
    pub ideal_residual: f64,
    /// Whether `h' ∩ p ⊂ m`.
    pub hprime_cap_p_in_m: bool,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.spanned == self.dim_hprime && self.ideal_residual <= CONTAIN_TOL
    }
}

/// Checks `h' = h + (h' ∩ m)` and `h'_n ⊂ h`.
pub fn hprime_decomposition_check(
    g: &LieAlgebra,
    h: &Subalgebra,
    hprime: &Subalgebra,
    p: &Parabolic,
) -> Result<DecompositionCheck> {
    let cap_m = intersection(hprime.basis(), p.m.basis(), DEFAULT_TOL);
    let spanned = numeric_rank(&hstack(&[h.basis(), &cap_m]), DEFAULT_TOL);
    let alg = hprime.to_algebra(g)?;
    if alg.theta().is_none() {
        return Err(Error::Unsupported("h' is not theta-stable".into()));
    }
    let split = noncompact_ideal(&alg)?;
    let ideal = hprime.basis() * split.noncompact.basis();
    let ideal_residual = if ideal.ncols() == 0 { 0.0 } else { h.contains_residual(&ideal) };
    let cap_p = intersection(hprime.basis(), p.p.basis(), DEFAULT_TOL);
    let hprime_cap_p_in_m = cap_p.ncols() == 0 || p.m.contains_residual(&cap_p) <= CONTAIN_TOL;
    Ok(DecompositionCheck {
        hprime_cap_m_dim: cap_m.ncols(),
        spanned,
        dim_hprime: hprime.dim(),
        ideal_residual,
        hprime_cap_p_in_m,
    })
}
