//! Named pairs `(g, h)` with their expected sphericality verdicts, and the
//! recipes that build them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::algebra::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::jordan_f4::{build_f4, build_g2, embed_so12_g2, embed_su21_su3, symmetric_subalgebra, JordanInvolution};
use crate::linalg::{hstack, Mat};
use crate::real_forms::{
    block_subalgebra, build_classical, build_sl, classical_elements, diagonal_embed, embed_division,
    minimal_parabolic, minimal_parabolic_ordered, partial_diagonal_embed, scalar_sp1, DivisionEmbedding, Family,
    Parabolic,
};
use crate::sphericality::Verdict;

pub const DEFAULT_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Spherical,
    NotSpherical,
    DimensionObstructed,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Spherical => "spherical",
            Expected::NotSpherical => "not-spherical",
            Expected::DimensionObstructed => "dimension-obstructed",
        }
    }

    pub fn matches(self, v: Verdict) -> bool {
        matches!(
            (self, v),
            (Expected::Spherical, Verdict::Spherical)
                | (Expected::NotSpherical, Verdict::NotSphericalAtConfidence)
                | (Expected::DimensionObstructed, Verdict::DimensionObstructed)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Full,
    /// Checked in full only when the involution construction validates.
    DimensionOnly,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Full => "full",
            Status::DimensionOnly => "dimension-only",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Part {
    K,
    A,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recipe {
    /// Block-diagonal subalgebra of `family(1, n)` for the split `m + 1`.
    Block { family: Family, n: usize, m: usize },
    Division(DivisionEmbedding),
    /// `so(1, n) + sp(1)` inside `sp(1, n)`.
    RealPlusScalars { n: usize },
    F4Symmetric(JordanInvolution),
    F4Su21Su3,
    F4So12G2,
    Sl2(Sl2Part),
    Sl2CubeDiagonal,
    /// Image of `(x, y) -> (x, x, y)`.
    Sl2CubeXxy,
    Sl3So3,
    /// `m + a` in `so(1, 3)`.
    So13Ma,
    /// `R(Y + Z)` with `Y` spanning `m` in `so(1, 3)`.
    So13Spiral,
    /// `a + R E` with `E` in `g^alpha`, in `su(1, 2)`.
    Su12Line,
    /// `so(1, 1)` on the first two coordinates of `so(1, 5)` plus a compact
    /// factor on the last four: `su(2)`, `sp(1)` or `so(4)`.
    So15 { compact: So15Compact },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum So15Compact {
    Su2,
    Sp1,
    So4,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub ambient: String,
    pub subalgebra: String,
    pub expected: Expected,
    pub source: &'static str,
    pub status: Status,
    pub recipe: Recipe,
}

impl CatalogEntry {
    /// Whether `h` is built inside the minimal parabolic, so that the
    /// non-reductive normal form applies.
    pub fn inside_parabolic(&self) -> bool {
        matches!(
            self.recipe,
            Recipe::Sl2(Sl2Part::A) | Recipe::Sl2(Sl2Part::N) | Recipe::So13Ma | Recipe::So13Spiral | Recipe::Su12Line
        )
    }
}

const SYMMETRIC: &str = "symmetric pair (Berger classification)";
const MAXIMAL: &str = "maximal non-spherical subalgebra";

fn entry(name: String, ambient: &str, sub: &str, expected: Expected, source: &'static str, recipe: Recipe) -> CatalogEntry {
    CatalogEntry {
        name,
        ambient: ambient.into(),
        subalgebra: sub.into(),
        expected,
        source,
        status: Status::Full,
        recipe,
    }
}

/// All entries, classical families up to `n_max`, in a fixed order.
pub fn catalog(n_max: usize) -> Vec<CatalogEntry> {
    use Expected::*;
    let mut out = Vec::new();
    for n in 2..=n_max {
        let amb = format!("so(1,{n})");
        for m in 1..n {
            let sub = format!("so(1,{m})+so({})", n - m);
            let r = Recipe::Block { family: Family::So, n, m };
            out.push(entry(format!("berger:{amb}:{sub}"), &amb, &sub, Spherical, SYMMETRIC, r));
        }
    }
    for n in 2..=n_max {
        let amb = format!("su(1,{n})");
        for m in 1..n {
            let sub = format!("s(u(1,{m})+u({}))", n - m);
            let r = Recipe::Block { family: Family::Su, n, m };
            out.push(entry(format!("berger:{amb}:{sub}"), &amb, &sub, Spherical, SYMMETRIC, r));
        }
        let sub = format!("so(1,{n})");
        let r = Recipe::Division(DivisionEmbedding::SoInSu { p: 1, q: n });
        out.push(entry(format!("berger:{amb}:{sub}"), &amb, &sub, Spherical, SYMMETRIC, r));
    }
    for n in 2..=n_max {
        let amb = format!("sp(1,{n})");
        for m in 1..n {
            let sub = format!("sp(1,{m})+sp({})", n - m);
            let r = Recipe::Block { family: Family::Sp, n, m };
            out.push(entry(format!("berger:{amb}:{sub}"), &amb, &sub, Spherical, SYMMETRIC, r));
        }
        let sub = format!("u(1,{n})");
        let r = Recipe::Division(DivisionEmbedding::UInSp { p: 1, q: n });
        out.push(entry(format!("berger:{amb}:{sub}"), &amb, &sub, Spherical, SYMMETRIC, r));
    }
    for inv in [JordanInvolution::Signature, JordanInvolution::Quaternionic] {
        let mut e = entry(format!("berger:f4:{}", inv.name()), "f4", inv.name(), Spherical, SYMMETRIC, Recipe::F4Symmetric(inv));
        e.status = Status::DimensionOnly;
        out.push(e);
    }
    for n in 2..=n_max {
        let amb = format!("sp(1,{n})");
        let sub = format!("so(1,{n})+sp(1)");
        let exp = if n * (n + 1) / 2 + 3 < 4 * n - 1 { DimensionObstructed } else { NotSpherical };
        out.push(entry(format!("max:{amb}:{sub}"), &amb, &sub, exp, MAXIMAL, Recipe::RealPlusScalars { n }));
    }
    out.push(entry("max:f4:su(2,1)+su(3)".into(), "f4", "su(2,1)+su(3)", NotSpherical, MAXIMAL, Recipe::F4Su21Su3));
    out.push(entry("max:f4:so(1,2)+g2".into(), "f4", "so(1,2)+g2", NotSpherical, MAXIMAL, Recipe::F4So12G2));
    let basic: [(&str, &str, &str, Expected, &'static str, Recipe); 12] = [
        ("sl2:k", "sl(2)", "so(2)", Spherical, "rank-one subalgebra of sl(2)", Recipe::Sl2(Sl2Part::K)),
        ("sl2:a", "sl(2)", "a", Spherical, "rank-one subalgebra of sl(2)", Recipe::Sl2(Sl2Part::A)),
        ("sl2:n", "sl(2)", "n", Spherical, "rank-one subalgebra of sl(2)", Recipe::Sl2(Sl2Part::N)),
        ("sl2^3:diag", "sl(2)^3", "diagonal sl(2)", Spherical, "diagonal in a triple product", Recipe::Sl2CubeDiagonal),
        ("sl2^3:xxy", "sl(2)^3", "(x,x,y) image of sl(2)^2", Spherical, "partial diagonal", Recipe::Sl2CubeXxy),
        ("sl3:so3", "sl(3)", "so(3)", Spherical, "maximal compact subalgebra", Recipe::Sl3So3),
        ("so13:ma", "so(1,3)", "m+a", Spherical, "Levi factor of the minimal parabolic", Recipe::So13Ma),
        ("so13:spiral", "so(1,3)", "R(Y+Z)", DimensionObstructed, "one-parameter subgroup with rotation", Recipe::So13Spiral),
        ("su12:a+line", "su(1,2)", "a+RE", DimensionObstructed, "line in the alpha root space", Recipe::Su12Line),
        ("so15:so11+su2", "so(1,5)", "so(1,1)+su(2)", Spherical, "Lorentzian example", Recipe::So15 { compact: So15Compact::Su2 }),
        ("so15:so11+sp1", "so(1,5)", "so(1,1)+sp(1)", Spherical, "Lorentzian example", Recipe::So15 { compact: So15Compact::Sp1 }),
        ("so15:so11+so4", "so(1,5)", "so(1,1)+so(4)", Spherical, SYMMETRIC, Recipe::So15 { compact: So15Compact::So4 }),
    ];
    for (name, amb, sub, exp, src, r) in basic {
        out.push(entry(name.into(), amb, sub, exp, src, r));
    }
    out
}

pub fn find(name: &str, n_max: usize) -> Option<CatalogEntry> {
    catalog(n_max.max(DEFAULT_N)).into_iter().find(|e| e.name == name)
}

/// A built pair with the parabolic it is tested against.
#[derive(Debug, Clone)]
pub struct Instance {
    pub g: LieAlgebra,
    pub h: Subalgebra,
    pub p: Parabolic,
    pub status: Status,
}

/// Builds catalog pairs, sharing one copy of `f4` and `g2`.
#[derive(Debug, Default)]
pub struct Builder {
    f4: OnceCell<LieAlgebra>,
    g2: OnceCell<LieAlgebra>,
    f4_parabolic: OnceCell<Parabolic>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds the builder with an `f4` loaded elsewhere (for example from a
    /// cache).
    pub fn with_f4(f4: LieAlgebra) -> Self {
        let b = Self::default();
        let _ = b.f4.set(f4);
        b
    }

    pub fn f4(&self) -> Result<&LieAlgebra> {
        if self.f4.get().is_none() {
            let _ = self.f4.set(build_f4()?);
        }
        Ok(self.f4.get().expect("set above"))
    }

    pub fn g2(&self) -> Result<&LieAlgebra> {
        if self.g2.get().is_none() {
            let _ = self.g2.set(build_g2()?);
        }
        Ok(self.g2.get().expect("set above"))
    }

    fn f4_parabolic(&self) -> Result<Parabolic> {
        if self.f4_parabolic.get().is_none() {
            let _ = self.f4_parabolic.set(minimal_parabolic(self.f4()?)?);
        }
        Ok(self.f4_parabolic.get().expect("set above").clone())
    }

    pub fn build(&self, e: &CatalogEntry) -> Result<Instance> {
        let (g, h, p, status) = match e.recipe {
            Recipe::Block { family, n, m } => {
                let g = build_classical(family, 1, n)?;
                let h = block_subalgebra(&g, family, 1, n, m + 1)?;
                let p = minimal_parabolic(&g)?;
                (g, h, p, Status::Full)
            }
            Recipe::Division(d) => {
                let (g, h) = embed_division(d)?;
                let p = minimal_parabolic(&g)?;
                (g, h, p, Status::Full)
            }
            Recipe::RealPlusScalars { n } => {
                let g = build_classical(Family::Sp, 1, n)?;
                let real = real_part(&g, n)?;
                let scalars = scalar_sp1(&g, n + 1)?;
                let h = Subalgebra::spanned_by(&g, &hstack(&[real.basis(), scalars.basis()]))?;
                let p = minimal_parabolic(&g)?;
                (g, h, p, Status::Full)
            }
            Recipe::F4Symmetric(inv) => {
                let f4 = self.f4()?;
                let s = symmetric_subalgebra(f4, inv)?;
                let status = if s.validated { Status::Full } else { Status::DimensionOnly };
                (f4.clone(), s.sub, self.f4_parabolic()?, status)
            }
            Recipe::F4Su21Su3 => {
                let f4 = self.f4()?;
                let emb = embed_su21_su3(f4, self.g2()?)?;
                (f4.clone(), emb.sub, self.f4_parabolic()?, Status::Full)
            }
            Recipe::F4So12G2 => {
                let f4 = self.f4()?;
                let emb = embed_so12_g2(f4, self.g2()?)?;
                (f4.clone(), emb.sub, self.f4_parabolic()?, Status::Full)
            }
            Recipe::Sl2(part) => {
                let g = build_sl(2)?;
                let p = sl_parabolic(&g, 2)?;
                let h = match part {
                    Sl2Part::K => {
                        let c = crate::algebra::cartan_decomposition(&g)?;
                        c.k
                    }
                    Sl2Part::A => p.a.clone(),
                    Sl2Part::N => p.n.clone(),
                };
                (g, h, p, Status::Full)
            }
            Recipe::Sl2CubeDiagonal | Recipe::Sl2CubeXxy => {
                let sl2 = build_sl(2)?;
                let (g, h) = if e.recipe == Recipe::Sl2CubeDiagonal {
                    diagonal_embed(&sl2, 3)?
                } else {
                    partial_diagonal_embed(&sl2, &[0, 0, 1])?
                };
                let p = sl2_cube_parabolic(&g)?;
                (g, h, p, Status::Full)
            }
            Recipe::Sl3So3 => {
                let g = build_sl(3)?;
                let h = crate::algebra::cartan_decomposition(&g)?.k;
                let p = sl_parabolic(&g, 3)?;
                (g, h, p, Status::Full)
            }
            Recipe::So13Ma | Recipe::So13Spiral => {
                let g = build_classical(Family::So, 1, 3)?;
                let p = minimal_parabolic(&g)?;
                let h = if e.recipe == Recipe::So13Ma {
                    Subalgebra::spanned_by(&g, &hstack(&[p.m.basis(), p.a.basis()]))?
                } else {
                    let x = p.m.vector(0) + &p.rank_one()?.z;
                    Subalgebra::new(&g, Mat::from_column_slice(g.dim(), 1, x.as_slice()))?
                };
                (g, h, p, Status::Full)
            }
            Recipe::Su12Line => {
                let g = build_classical(Family::Su, 1, 2)?;
                let p = minimal_parabolic(&g)?;
                let line = p.root_space(1)?.columns(0, 1).into_owned();
                let h = Subalgebra::new(&g, hstack(&[p.a.basis(), &line]))?;
                (g, h, p, Status::Full)
            }
            Recipe::So15 { compact } => {
                let (g, k) = match compact {
                    So15Compact::Su2 => embed_division(DivisionEmbedding::SuInSo { k: 2, p: 1, q: 5 })?,
                    So15Compact::Sp1 => embed_division(DivisionEmbedding::SpInSo { k: 1, p: 1, q: 5 })?,
                    So15Compact::So4 => {
                        let g = build_classical(Family::So, 1, 5)?;
                        let h = block_subalgebra(&g, Family::So, 1, 5, 2)?;
                        let p = minimal_parabolic(&g)?;
                        return Ok(Instance { g, h, p, status: Status::Full });
                    }
                };
                let boost = lorentz_boost(&g)?;
                let h = Subalgebra::spanned_by(&g, &hstack(&[boost.basis(), k.basis()]))?;
                let p = minimal_parabolic(&g)?;
                (g, h, p, Status::Full)
            }
        };
        Ok(Instance { g, h, p, status })
    }
}

/// Real matrices `so(1, n)` inside `sp(1, n)`.
fn real_part(g: &LieAlgebra, n: usize) -> Result<Subalgebra> {
    let mats: Vec<Mat> = classical_elements(Family::Sp, 1, n)
        .into_iter()
        .filter(|e| e.unit == 0)
        .map(|e| e.matrix)
        .collect();
    Subalgebra::from_matrices(g, &mats)
}

/// `so(1, 1)` on the first two coordinates of `so(1, q)`.
fn lorentz_boost(g: &LieAlgebra) -> Result<Subalgebra> {
    let q = g.realization().map(|r| r.size()).unwrap_or(0) - 1;
    let mats: Vec<Mat> = classical_elements(Family::So, 1, q)
        .into_iter()
        .filter(|e| e.row < 2 && e.col < 2)
        .map(|e| e.matrix)
        .collect();
    if mats.len() != 1 {
        return Err(Error::Construction(format!("expected one boost generator, found {}", mats.len())));
    }
    Subalgebra::from_matrices(g, &mats)
}

/// Upper-triangular minimal parabolic of `sl(n)` (diagonal `a`, basis
/// `H_1..H_{n-1}` first).
pub fn sl_parabolic(g: &LieAlgebra, n: usize) -> Result<Parabolic> {
    let r = n - 1;
    let mut a = Mat::zeros(g.dim(), r);
    for i in 0..r {
        a[(i, i)] = 1.0;
    }
    if r == 1 {
        return crate::real_forms::minimal_parabolic_from(g, &a);
    }
    // sum_i (n - i) i H_i is the dual of the half-sum of positive roots.
    let positivity: Vec<f64> = (1..=r).map(|i| ((n - i) * i) as f64).collect();
    minimal_parabolic_ordered(g, &a, &positivity)
}

/// Product of upper-triangular parabolics in `sl(2)^3`.
pub fn sl2_cube_parabolic(g: &LieAlgebra) -> Result<Parabolic> {
    let mut a = Mat::zeros(g.dim(), 3);
    for c in 0..3 {
        a[(3 * c, c)] = 1.0;
    }
    minimal_parabolic_ordered(g, &a, &[1.0, 1.0, 1.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_ordered() {
        let c = catalog(DEFAULT_N);
        let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
        assert!(find("sl2:a", DEFAULT_N).is_some());
        assert!(find("nope", DEFAULT_N).is_none());
        let berger = c.iter().filter(|e| e.name.starts_with("berger:")).count();
        assert_eq!(berger, 6 + 9 + 9 + 2);
    }

    #[test]
    fn classical_recipes_have_expected_dimensions() {
        let b = Builder::new();
        let dims = [
            ("berger:su(1,3):s(u(1,1)+u(2))", 15, 7),
            ("berger:sp(1,2):u(1,2)", 21, 9),
            ("max:sp(1,2):so(1,2)+sp(1)", 21, 6),
            ("so15:so11+su2", 15, 4),
            ("so15:so11+so4", 15, 7),
            ("sl2^3:xxy", 9, 6),
            ("su12:a+line", 8, 2),
        ];
        for (name, dg, dh) in dims {
            let inst = b.build(&find(name, DEFAULT_N).unwrap()).unwrap();
            assert_eq!((inst.g.dim(), inst.h.dim()), (dg, dh), "{name}");
        }
    }
}
