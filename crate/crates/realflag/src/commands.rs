//! Command implementations. Each returns the text for stdout and an exit
//! code; errors are rendered by the caller.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use rayon::prelude::*;
use realflag_core::catalog::{catalog, find, Builder, CatalogEntry, Expected, Instance, Status};
use realflag_core::jordan_f4::{self, jordan, JordanInvolution};
use realflag_core::linalg::expm;
use realflag_core::orbits::{nonreductive_orbit_count, normalize_nonreductive, symmetric_coincidence};
use realflag_core::real_forms::minimal_parabolic;
use realflag_core::reduction::{homomorphism_residual, induced_pair, parabolic_alpha};
use realflag_core::sampling::{gaussian_vector, rng_for};
use realflag_core::{registry, Error, LieAlgebra};
use serde::Serialize;

use crate::cache::{self, CacheOutcome};
use crate::error::{AppError, AppResult};
use crate::format::{from_json, read_json, subalgebra_from, to_json, SpecFile};
use crate::parallel;
use crate::report::{self, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    /// Human notes that are not part of the deterministic report.
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

pub fn to_pretty<T: Serialize>(v: &T) -> AppResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn emit<T: Serialize>(v: &T, code: i32) -> AppResult<Outcome> {
    Ok(Outcome { code, stdout: to_pretty(v)?, stderr: String::new() })
}

pub fn parse_expected(s: &str) -> AppResult<Expected> {
    [Expected::Spherical, Expected::NotSpherical, Expected::DimensionObstructed]
        .into_iter()
        .find(|e| e.as_str() == s)
        .ok_or_else(|| AppError::Format(format!("unknown expectation {s:?}")))
}

/// Shared state for one invocation: the cache location and a lazily loaded
/// `f4`.
#[derive(Debug)]
pub struct Session {
    cache_dir: PathBuf,
    n: usize,
    f4: OnceLock<(LieAlgebra, CacheOutcome)>,
}

impl Session {
    pub fn new(cache_dir: PathBuf, n: usize) -> Self {
        Session { cache_dir, n, f4: OnceLock::new() }
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    fn f4_entry(&self) -> AppResult<&(LieAlgebra, CacheOutcome)> {
        if let Some(v) = self.f4.get() {
            return Ok(v);
        }
        let loaded = cache::load_or_build_f4(&self.cache_dir)?;
        Ok(self.f4.get_or_init(|| loaded))
    }

    pub fn f4(&self) -> AppResult<&LieAlgebra> {
        Ok(&self.f4_entry()?.0)
    }

    pub fn entry(&self, name: &str) -> AppResult<CatalogEntry> {
        find(name, self.n).ok_or_else(|| AppError::UnknownPair(name.into()))
    }

    pub fn builder(&self, e: &CatalogEntry) -> AppResult<Builder> {
        Ok(if e.ambient == "f4" { Builder::with_f4(self.f4()?.clone()) } else { Builder::new() })
    }

    pub fn build(&self, e: &CatalogEntry) -> AppResult<Instance> {
        Ok(self.builder(e)?.build(e)?)
    }
}

fn dimension_only(name: &str, inst: &Instance, expected: Option<Expected>) -> report::DimensionOnly {
    report::DimensionOnly {
        schema: SCHEMA,
        pair: name.into(),
        expected: expected.map(|e| e.as_str().into()),
        status: Status::DimensionOnly.as_str().into(),
        dim_g: inst.g.dim(),
        dim_h: inst.h.dim(),
        dim_gp: inst.p.codim(),
        dimension_allows_open_orbit: inst.h.dim() + inst.p.p.dim() >= inst.g.dim(),
    }
}

/// Sphericality check of a catalog entry; also used by `batch`.
pub fn check_entry(session: &Session, e: &CatalogEntry, s: Sampling) -> AppResult<(Option<report::Sphericity>, report::DimensionOnly, bool)> {
    let inst = session.build(e)?;
    let dims = dimension_only(&e.name, &inst, Some(e.expected));
    if inst.status == Status::DimensionOnly {
        let ok = dims.dimension_allows_open_orbit == (e.expected == Expected::Spherical);
        return Ok((None, dims, ok));
    }
    let r = parallel::is_spherical(&e.name, &inst.g, &inst.h, &inst.p, s.samples, s.seed, s.tol)?;
    let ok = e.expected.matches(r.verdict);
    let rep = report::Sphericity::new(&r, Some(e.expected.as_str().into()), inst.status.as_str(), Some(ok));
    Ok((Some(rep), dims, ok))
}

pub fn check_pair(session: &Session, name: &str, s: Sampling) -> AppResult<Outcome> {
    let e = session.entry(name)?;
    let (rep, dims, ok) = check_entry(session, &e, s)?;
    let code = if ok { 0 } else { 1 };
    match rep {
        Some(r) => emit(&r, code),
        None => emit(&dims, code),
    }
}

pub fn check_spec_file(path: &Path, s: Sampling) -> AppResult<Outcome> {
    let spec: SpecFile = read_json(path)?;
    let g = from_json(&spec.algebra)?;
    let h = subalgebra_from(&g, &spec.subalgebra)?;
    let p = minimal_parabolic(&g)?;
    let name = spec
        .name
        .clone()
        .unwrap_or_else(|| path.file_stem().map_or("spec".into(), |s| s.to_string_lossy().into_owned()));
    let expected = spec.expected.as_deref().map(parse_expected).transpose()?;
    let r = parallel::is_spherical(&name, &g, &h, &p, s.samples, s.seed, s.tol)?;
    let matches = expected.map(|e| e.matches(r.verdict));
    let rep = report::Sphericity::new(&r, expected.map(|e| e.as_str().into()), Status::Full.as_str(), matches);
    emit(&rep, if matches == Some(false) { 1 } else { 0 })
}

pub fn orbit_count(session: &Session, name: &str, s: Sampling) -> AppResult<Outcome> {
    let e = session.entry(name)?;
    let inst = session.build(&e)?;
    let nf = normalize_nonreductive(&inst.g, &inst.h, &inst.p)?;
    let w = parallel::is_spherical(name, &inst.g, &inst.h, &inst.p, s.samples, s.seed, s.tol)?;
    let count = nonreductive_orbit_count(&nf, &w)?;
    emit(&report::OrbitCount::new(name, &count), 0)
}

pub fn orbit_coincide(session: &Session, name: &str, sup: &str, s: Sampling) -> AppResult<Outcome> {
    let (e, es) = (session.entry(name)?, session.entry(sup)?);
    if e.ambient != es.ambient {
        return Err(Error::InvalidInput(format!("{name} lives in {} but {sup} lives in {}", e.ambient, es.ambient)).into());
    }
    let inst = session.build(&e)?;
    let sup_inst = session.build(&es)?;
    if inst.g.structure() != sup_inst.g.structure() {
        return Err(Error::Invariant("the two pairs use different bases of the ambient algebra".into()).into());
    }
    let r = symmetric_coincidence(&inst.g, &inst.h, &sup_inst.h, &inst.p, s.samples, s.seed)?;
    emit(&report::Coincidence::new(name, sup, &r), 0)
}

pub const HOMOMORPHISM_PAIRS: usize = 1000;

/// One reduction step for the simple root `simple[alpha]`, with `h` moved
/// by the inverse of the open-orbit witness so that `h + p = g`.
pub fn reduce_step(session: &Session, name: &str, alpha: usize, s: Sampling) -> AppResult<report::ReductionStep> {
    let e = session.entry(name)?;
    let inst = session.build(&e)?;
    let (g, p) = (&inst.g, &inst.p);
    let simple = &p.roots.simple;
    let root = *simple.get(alpha).ok_or_else(|| {
        Error::InvalidInput(format!("alpha must be below the number of simple roots ({})", simple.len()))
    })?;
    let w = parallel::is_spherical(name, g, &inst.h, p, s.samples, s.seed, s.tol)?;
    let h = match &w.witness {
        Some(x) => {
            let inv = x.clone().try_inverse().ok_or_else(|| Error::Invariant("singular witness".into()))?;
            inst.h.conjugate(g, &inv)?
        }
        None => inst.h.clone(),
    };
    let ap = parabolic_alpha(g, p, root)?;
    let ip = induced_pair(g, &h, p, &ap)?;
    Ok(report::ReductionStep {
        schema: SCHEMA,
        pair: name.into(),
        alpha,
        root_index: root,
        simple_roots: simple.len(),
        witness_index: w.witness_index,
        dim_p_alpha: ap.p_alpha.ncols(),
        dim_l_alpha: ap.l_alpha.ncols(),
        dim_u_alpha: ap.u_alpha.ncols(),
        dim_h_cap_p_alpha: ip.h_cap_p_alpha.ncols(),
        dim_h_alpha: ip.h_alpha.dim(),
        dim_l_cap_p: ap.l_cap_p.ncols(),
        open: ip.open,
        h_open: ip.h_open,
        homomorphism_residual: homomorphism_residual(g, &ap, HOMOMORPHISM_PAIRS, s.seed),
    })
}

pub fn reduce(session: &Session, name: &str, alpha: usize, s: Sampling) -> AppResult<Outcome> {
    emit(&reduce_step(session, name, alpha, s)?, 0)
}

pub fn catalog_listing(n: usize) -> report::Catalog {
    report::Catalog { schema: SCHEMA, n, entries: catalog(n).iter().map(report::Entry::from).collect() }
}

pub fn catalog_cmd(n: usize, json: bool) -> AppResult<Outcome> {
    let listing = catalog_listing(n);
    if json {
        return emit(&listing, 0);
    }
    let width = listing.entries.iter().map(|e| e.name.len()).max().unwrap_or(4);
    let mut out = format!("{:width$}  {:20}  {:14}  provenance\n", "name", "expected", "status");
    for e in &listing.entries {
        out.push_str(&format!("{:width$}  {:20}  {:14}  {}\n", e.name, e.expected, e.status, e.provenance));
    }
    Ok(Outcome { code: 0, stdout: out, stderr: String::new() })
}

pub fn batch(session: &Session, n: usize, s: Sampling, json: bool) -> AppResult<Outcome> {
    let entries = catalog(n);
    if entries.iter().any(|e| e.ambient == "f4") {
        session.f4()?;
    }
    let lines: Vec<report::BatchLine> = entries
        .par_iter()
        .map(|e| {
            let mut line = report::BatchLine {
                name: e.name.clone(),
                expected: e.expected.as_str().into(),
                status: e.status.as_str().into(),
                verdict: None,
                max_dim: None,
                dim_g: None,
                passed: false,
                error: None,
            };
            match check_entry(session, e, s) {
                Ok((rep, dims, ok)) => {
                    line.passed = ok;
                    line.dim_g = Some(dims.dim_g);
                    if let Some(r) = rep {
                        line.status = r.status;
                        line.verdict = Some(r.verdict);
                        line.max_dim = Some(r.max_dim);
                    }
                }
                Err(err) => line.error = Some(err.to_string()),
            }
            line
        })
        .collect();
    let passed = lines.iter().filter(|l| l.passed).count();
    let failed = lines.len() - passed;
    let code = if failed == 0 { 0 } else { 1 };
    let b = report::Batch { schema: SCHEMA, n, samples: s.samples, seed: s.seed, tol: s.tol, passed, failed, entries: lines };
    if json {
        return emit(&b, code);
    }
    let mut out = String::new();
    for l in &b.entries {
        let what = match (&l.verdict, &l.error) {
            (_, Some(err)) => format!("error: {err}"),
            (Some(v), None) => format!("{v} (max {} of {})", l.max_dim.unwrap_or(0), l.dim_g.unwrap_or(0)),
            (None, None) => l.status.clone(),
        };
        out.push_str(&format!("{} {}: {}\n", if l.passed { "PASS" } else { "FAIL" }, l.name, what));
    }
    out.push_str(&format!("{passed} passed, {failed} failed\n"));
    Ok(Outcome { code, stdout: out, stderr: String::new() })
}

pub fn export_algebra(session: &Session, name: &str) -> AppResult<Outcome> {
    let parsed = registry::parse(name).map_err(|_| AppError::UnknownAlgebra(name.into()))?;
    let g = if parsed == (registry::Named { base: registry::Base::F4, copies: 1 }) {
        session.f4()?.clone()
    } else {
        registry::build_named(name)?
    };
    emit(&to_json(&g)?, 0)
}

fn check(name: &str, passed: bool, detail: String) -> report::Check {
    report::Check { name: name.into(), passed, detail }
}

const COMPLEX_PART_SAMPLES: u64 = 10_000;

/// Invariant battery for `f4` and its subalgebras on the cone of rank-one
/// elements.
pub fn f4_verify(session: &Session, samples: usize, seed: u64) -> AppResult<Outcome> {
    let (g, outcome) = session.f4_entry()?;
    let mut checks = Vec::new();
    checks.push(check("dimension", g.dim() == 52, format!("dim {}", g.dim())));
    let sig = g.killing_form().signature;
    checks.push(check("killing-signature", sig == (16, 36), format!("{sig:?}")));

    let p = minimal_parabolic(g)?;
    let mult = p.rank_one().ok().map(|r| r.multiplicities);
    checks.push(check("flag-dimension", p.codim() == 15, format!("dim g/p {}", p.codim())));
    checks.push(check("multiplicities", mult == Some((8, 7)), mult.map_or("unavailable".into(), |(a, b)| format!("({a}, {b})"))));

    let table = jordan::JordanTable::new();
    let mut worst_der: f64 = 0.0;
    let mut worst_jacobi: f64 = 0.0;
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let x = gaussian_vector(&mut rng, 52);
        let y = gaussian_vector(&mut rng, 52);
        let z = gaussian_vector(&mut rng, 52);
        worst_jacobi = worst_jacobi.max(g.jacobi_residual(&x, &y, &z) / (x.norm() * y.norm() * z.norm()));
        let d = g.to_matrix(&x)?;
        worst_der = worst_der.max(jordan_f4::derivation_residual(&table, &jordan_f4::lift_to_w(&d)) / x.norm());
    }
    checks.push(check("jacobi", worst_jacobi <= 1e-10, format!("relative residual {worst_jacobi:.3e}")));
    checks.push(check("derivations", worst_der <= 1e-8, format!("relative residual {worst_der:.3e}")));

    let vb = jordan::v_basis();
    let mut worst_cone: f64 = 0.0;
    let mut worst_flow: f64 = 0.0;
    let mut min_complex = f64::INFINITY;
    for i in 0..samples {
        let mut rng = rng_for(seed.wrapping_add(1), i as u64);
        let x = jordan_f4::random_cone_point(&mut rng);
        let d = g.to_matrix(&gaussian_vector(&mut rng, 52))?;
        let xw = &vb * x.v_coords();
        let dxw = &vb * (&d * x.v_coords());
        let scale = xw.norm() * dxw.norm();
        worst_cone = worst_cone.max(table.mul(&xw, &dxw).norm() / scale.max(f64::MIN_POSITIVE));
        let moved = jordan::JordanElement::from_vector(&(&vb * (expm(&(d * 0.5)) * x.v_coords())));
        let sq = jordan::jordan_mul(&moved, &moved);
        worst_flow = worst_flow.max(sq.max_abs() / moved.max_abs().powi(2));
    }
    for i in 0..COMPLEX_PART_SAMPLES {
        let x = jordan_f4::random_cone_point(&mut rng_for(seed.wrapping_add(3), i));
        min_complex = min_complex.min(x.complex_part().max_abs());
    }
    checks.push(check("cone-tangent", worst_cone <= 1e-8, format!("max |x o Dx| {worst_cone:.3e}")));
    checks.push(check("cone-invariance", worst_flow <= 1e-8, format!("max |y o y| {worst_flow:.3e}")));
    checks.push(check("complex-part", min_complex > 1e-9, format!("min |x_C| {min_complex:.3e}")));

    let g2 = jordan_f4::build_g2()?;
    let g2_sig = g2.killing_form().signature;
    checks.push(check("g2", g2.dim() == 14 && g2_sig == (0, 14), format!("dim {}, signature {g2_sig:?}", g2.dim())));
    let so12 = jordan_f4::embed_so12_g2(g, &g2)?;
    let su21 = jordan_f4::embed_su21_su3(g, &g2)?;
    let g2_ops = jordan_f4::operators(g, &so12.second)?;
    let su_ops = jordan_f4::operators(g, su21.sub.basis())?;
    let (mut g2_max, mut stab_min) = (0, usize::MAX);
    for i in 0..samples {
        let x = jordan_f4::random_cone_point(&mut rng_for(seed.wrapping_add(2), i as u64)).v_coords();
        g2_max = g2_max.max(jordan_f4::projective_orbit_dim(&g2_ops, &x));
        stab_min = stab_min.min(jordan_f4::projective_stabilizer_dim(&su_ops, &x));
    }
    checks.push(check("g2-orbits", g2_max <= 11, format!("max projective orbit dim {g2_max}")));
    checks.push(check("su21-su3-stabilizers", stab_min >= 2, format!("min projective stabilizer dim {stab_min}")));
    for inv in [JordanInvolution::Signature, JordanInvolution::Quaternionic] {
        let s = jordan_f4::symmetric_subalgebra(g, inv)?;
        checks.push(check(&format!("symmetric:{}", inv.name()), s.validated, s.diagnostics.clone()));
    }
    let passed = checks.iter().all(|c| c.passed);
    let cache = match outcome {
        CacheOutcome::Hit => "hit".to_string(),
        CacheOutcome::Built => "built".to_string(),
        CacheOutcome::Rebuilt(why) => format!("rebuilt ({why})"),
    };
    let rep = report::F4Verify { schema: SCHEMA, table_hash: cache::table_hash(), checks, passed };
    let mut out = emit(&rep, if passed { 0 } else { 1 })?;
    out.stderr = format!("f4 cache: {cache}\n");
    Ok(out)
}
