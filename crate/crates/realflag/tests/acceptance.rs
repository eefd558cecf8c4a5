//! Acceptance gate: one line per criterion, non-zero exit if any fails.

#[path = "../../core/tests/support/flow_oracle.rs"]
mod flow_oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use realflag::cache::{load_or_build_f4, CacheOutcome};
use realflag::commands::{reduce_step, Sampling, Session};
use realflag::parallel::is_spherical;
use realflag_core::catalog::{catalog, find, Builder, CatalogEntry, Instance, Status, DEFAULT_N};
use realflag_core::jordan_f4::{self, jordan, Octonion};
use realflag_core::linalg::{Mat, DEFAULT_TOL};
use realflag_core::orbits::{
    dilation_residual, nonreductive_orbit_count, normalize_nonreductive, orbit_dim_at, symmetric_coincidence,
};
use realflag_core::real_forms::{build_classical, build_sl, classical_elements, minimal_parabolic, Family};
use realflag_core::sampling::rng_for;
use realflag_core::sphericality::Verdict;
use realflag_core::{LieAlgebra, Vector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Outcome);

const SAMPLES: usize = 64;
const NEGATIVE_SAMPLES: usize = 256;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Ctx {
    session: Session,
    builder: Builder,
    f4: LieAlgebra,
    cache: PathBuf,
}

impl Ctx {
    fn entry(&self, name: &str) -> Result<CatalogEntry, String> {
        find(name, DEFAULT_N).ok_or_else(|| format!("{name} missing from the catalog"))
    }

    fn build(&self, name: &str) -> Result<Instance, String> {
        self.builder.build(&self.entry(name)?).map_err(err)
    }
}

fn dimension_table(_: &Ctx) -> Outcome {
    let t = Instant::now();
    for n in 2..=6usize {
        let cases = [
            (Family::So, n * (n + 1) / 2),
            (Family::Su, (n + 1) * (n + 1) - 1),
            (Family::Sp, (n + 1) * (2 * n + 3)),
        ];
        for (family, formula) in cases {
            let count = classical_elements(family, 1, n).len();
            let dim = build_classical(family, 1, n).map_err(err)?.dim();
            ensure(dim == formula && count == formula, format!("{family}(1,{n}): dim {dim}, basis {count}, formula {formula}"))?;
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.2}s"))?;
    Ok(format!("15 algebras in {secs:.2}s"))
}

fn exceptional_builds(ctx: &Ctx) -> Outcome {
    let t = Instant::now();
    let fresh = jordan_f4::build_f4().map_err(err)?;
    let build = t.elapsed();
    ensure(build < Duration::from_secs(300), format!("f4 build took {build:?}"))?;
    let g = &ctx.f4;
    ensure(g.structure() == fresh.structure(), "cached f4 differs from a fresh build")?;
    ensure(g.dim() == 52, format!("dim f4 = {}", g.dim()))?;
    let sig = g.killing_form().signature;
    ensure(sig == (16, 36), format!("f4 signature {sig:?}"))?;
    let p = minimal_parabolic(g).map_err(err)?;
    ensure(p.codim() == 15, format!("dim g/p = {}", p.codim()))?;
    let g2 = ctx.builder.g2().map_err(err)?;
    let g2_sig = g2.killing_form().signature;
    ensure(g2.dim() == 14 && g2_sig == (0, 14), format!("g2 dim {}, signature {g2_sig:?}", g2.dim()))?;
    let (_, again) = load_or_build_f4(&ctx.cache).map_err(err)?;
    ensure(again == CacheOutcome::Hit, format!("second load was {again:?}"))?;
    Ok(format!("f4 (52, (16, 36), g/p 15) built in {:.1}s and cached; g2 (14, (0, 14))", build.as_secs_f64()))
}

fn positive_suite(ctx: &Ctx) -> Outcome {
    let mut slowest = (0.0, String::new());
    let (mut full, mut dim_only, mut division) = (0, 0, 0);
    for e in catalog(DEFAULT_N).iter().filter(|e| e.name.starts_with("berger:")) {
        let t = Instant::now();
        let inst = ctx.builder.build(e).map_err(err)?;
        if inst.status == Status::DimensionOnly {
            ensure(inst.h.dim() + inst.p.p.dim() >= inst.g.dim(), format!("{}: dimensions rule out an open orbit", e.name))?;
            dim_only += 1;
            continue;
        }
        let r = is_spherical(&e.name, &inst.g, &inst.h, &inst.p, SAMPLES, 0, DEFAULT_TOL).map_err(err)?;
        let secs = t.elapsed().as_secs_f64();
        ensure(r.verdict == Verdict::Spherical, format!("{}: {}", e.name, r.verdict))?;
        ensure(r.witness.is_some(), format!("{}: no rank certificate", e.name))?;
        ensure(secs < 30.0, format!("{} took {secs:.1}s", e.name))?;
        if secs > slowest.0 {
            slowest = (secs, e.name.clone());
        }
        full += 1;
        if e.name.contains(":so(1,") && e.name.starts_with("berger:su") || e.name.contains(":u(1,") {
            division += 1;
        }
    }
    ensure(division == 6, format!("{division} division-algebra pairs, expected 6"))?;
    Ok(format!(
        "{full} pairs spherical ({division} via division embeddings), {dim_only} dimension-only, slowest {} in {:.1}s",
        slowest.1, slowest.0
    ))
}

fn negative_suite(ctx: &Ctx) -> Outcome {
    let sp2 = ctx.build("max:sp(1,2):so(1,2)+sp(1)")?;
    ensure((sp2.h.dim(), sp2.p.codim()) == (6, 7), format!("sp(1,2): dims {} and {}", sp2.h.dim(), sp2.p.codim()))?;
    let r = is_spherical("sp2", &sp2.g, &sp2.h, &sp2.p, SAMPLES, 0, DEFAULT_TOL).map_err(err)?;
    ensure(r.verdict == Verdict::DimensionObstructed, format!("sp(1,2): {}", r.verdict))?;

    let sp3 = ctx.build("max:sp(1,3):so(1,3)+sp(1)")?;
    let r = is_spherical("sp3", &sp3.g, &sp3.h, &sp3.p, NEGATIVE_SAMPLES, 0, DEFAULT_TOL).map_err(err)?;
    let sp3_max = r.max_orbit_dim();
    ensure(sp3_max <= 9 && sp3.p.codim() == 11, format!("sp(1,3): max orbit {sp3_max}, dim g/p {}", sp3.p.codim()))?;

    let g2 = ctx.builder.g2().map_err(err)?;
    let so12 = jordan_f4::embed_so12_g2(&ctx.f4, g2).map_err(err)?;
    let su21 = jordan_f4::embed_su21_su3(&ctx.f4, g2).map_err(err)?;
    let g2_ops = jordan_f4::operators(&ctx.f4, &so12.second).map_err(err)?;
    let su_ops = jordan_f4::operators(&ctx.f4, su21.sub.basis()).map_err(err)?;
    let (mut g2_max, mut stab_min, mut su_max) = (0, usize::MAX, 0);
    for i in 0..NEGATIVE_SAMPLES as u64 {
        let x = jordan_f4::random_cone_point(&mut rng_for(0, i)).v_coords();
        g2_max = g2_max.max(jordan_f4::projective_orbit_dim(&g2_ops, &x));
        stab_min = stab_min.min(jordan_f4::projective_stabilizer_dim(&su_ops, &x));
        su_max = su_max.max(jordan_f4::projective_orbit_dim(&su_ops, &x));
    }
    ensure(g2_max <= 11, format!("g2 orbit dimension {g2_max}"))?;
    ensure(stab_min >= 2 && su_max <= 14, format!("su(2,1)+su(3): stabilizer {stab_min}, orbit {su_max}"))?;
    for name in ["max:f4:su(2,1)+su(3)", "max:f4:so(1,2)+g2"] {
        let inst = ctx.build(name)?;
        let r = is_spherical(name, &inst.g, &inst.h, &inst.p, SAMPLES, 0, DEFAULT_TOL).map_err(err)?;
        ensure(r.verdict == Verdict::NotSphericalAtConfidence, format!("{name}: {}", r.verdict))?;
    }
    Ok(format!(
        "sp(1,2) 6 < 7; sp(1,3) max orbit {sp3_max} <= 9 < 11; g2 orbits <= {g2_max}; su(2,1)+su(3) stabilizers >= {stab_min}, orbits <= {su_max} < 15"
    ))
}

fn orbit_counts(ctx: &Ctx) -> Outcome {
    let t = Instant::now();
    let diag = [[1.0, 0.0], [0.0, -1.0]];
    let upper = [[0.0, 1.0], [0.0, 0.0]];
    let boost = flow_oracle::unit(0, 1, 1.0) + flow_oracle::unit(1, 0, 1.0);
    let rotation = flow_oracle::unit(2, 3, -1.0) + flow_oracle::unit(3, 2, 1.0);
    let oracle = [
        ("sl2:n", flow_oracle::projective_line_oracle(&[upper], 720)),
        ("so13:ma", flow_oracle::celestial_sphere_oracle(&[boost, rotation], 60, 90)),
        ("sl2:a", flow_oracle::projective_line_oracle(&[diag], 720)),
    ];
    let mut got = Vec::new();
    for (name, expect) in oracle {
        let inst = ctx.build(name)?;
        let nf = normalize_nonreductive(&inst.g, &inst.h, &inst.p).map_err(err)?;
        let w = is_spherical(name, &inst.g, &inst.h, &inst.p, SAMPLES, 0, DEFAULT_TOL).map_err(err)?;
        let count = nonreductive_orbit_count(&nf, &w).map_err(err)?.count;
        ensure(count == expect, format!("{name}: library {count}, oracle {expect}"))?;
        got.push(format!("{name} {count}"));
    }
    ensure(got == ["sl2:n 2", "so13:ma 3", "sl2:a 4"], format!("{got:?}"))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("{} (oracle agrees)", got.join(", ")))
}

fn dilation(ctx: &Ctx) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut grades = [false; 2];
    let mut forms = 0;
    for e in catalog(DEFAULT_N).iter().filter(|e| e.inside_parabolic()) {
        let inst = ctx.builder.build(e).map_err(err)?;
        let nf = normalize_nonreductive(&inst.g, &inst.h, &inst.p).map_err(err)?;
        grades[0] |= nf.n0_graded.0.ncols() > 0;
        grades[1] |= nf.n0_graded.1.ncols() > 0;
        for t in [-1.0, 0.3, 1.0] {
            worst = worst.max(dilation_residual(&inst.g, &nf, t).map_err(err)?);
        }
        forms += 1;
    }
    ensure(worst <= 1e-8, format!("residual {worst:.3e}"))?;
    ensure(grades == [true, true], "a root grade is never exercised")?;
    Ok(format!("{forms} normal forms, grades 1 and 2, max relative error {worst:.2e}"))
}

fn coincidence(ctx: &Ctx) -> Outcome {
    let h = ctx.build("so15:so11+su2")?;
    let hp = ctx.build("so15:so11+so4")?;
    let r = symmetric_coincidence(&h.g, &h.h, &hp.h, &h.p, SAMPLES, 0).map_err(err)?;
    ensure(r.coincide, format!("first mismatch at point {:?}", r.first_mismatch))?;
    let diag = ctx.build("sl2^3:diag")?;
    let xxy = ctx.build("sl2^3:xxy")?;
    let id = Mat::identity(6, 6);
    let dims = (
        orbit_dim_at(&diag.g, &diag.h, &diag.p, &id).map_err(err)?,
        orbit_dim_at(&xxy.g, &xxy.h, &diag.p, &id).map_err(err)?,
    );
    ensure(dims == (1, 2), format!("origin dims {dims:?}"))?;
    Ok(format!("so(1,5) pair coincides at {} points; origin dims 1 vs 2", r.dims.len()))
}

fn reduction(ctx: &Ctx) -> Outcome {
    let s = Sampling { samples: SAMPLES, seed: 0, tol: DEFAULT_TOL };
    let mut worst: f64 = 0.0;
    let mut steps = 0;
    for (name, simple) in [("sl2^3:diag", 3), ("sl3:so3", 2)] {
        for alpha in 0..simple {
            let r = reduce_step(&ctx.session, name, alpha, s).map_err(err)?;
            ensure(r.simple_roots == simple, format!("{name}: {} simple roots", r.simple_roots))?;
            ensure(r.open, format!("{name}: alpha {alpha} not open"))?;
            worst = worst.max(r.homomorphism_residual);
            steps += 1;
        }
    }
    ensure(worst <= 1e-8, format!("homomorphism residual {worst:.3e}"))?;
    Ok(format!("{steps} simple roots open, homomorphism residual {worst:.2e}"))
}

fn run_property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn properties(ctx: &Ctx) -> Outcome {
    let algs = [
        build_classical(Family::So, 1, 3).map_err(err)?,
        build_classical(Family::Su, 1, 2).map_err(err)?,
        build_classical(Family::Sp, 1, 2).map_err(err)?,
        build_sl(3).map_err(err)?,
    ];
    let coeffs = || prop::collection::vec(-1.0f64..1.0, 21);
    let v = |g: &LieAlgebra, c: &[f64]| Vector::from_column_slice(&c[..g.dim()]);
    run_property("jacobi", (0usize..4, coeffs(), coeffs(), coeffs()), |(k, a, b, c)| {
        let g = &algs[k];
        let s = g.max_structure_constant().max(1.0);
        prop_assert!(g.jacobi_residual(&v(g, &a), &v(g, &b), &v(g, &c)) <= 1e-10 * s * s);
        Ok(())
    })?;
    run_property("killing invariance", (0usize..4, coeffs(), coeffs(), coeffs()), |(k, a, b, c)| {
        let g = &algs[k];
        let (x, y, z) = (v(g, &a), v(g, &b), v(g, &c));
        let kf = g.killing_form();
        let lhs = kf.eval(&g.bracket(&x, &y).unwrap(), &z);
        let rhs = -kf.eval(&y, &g.bracket(&x, &z).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * kf.matrix.amax().max(1.0) * g.max_structure_constant().max(1.0));
        Ok(())
    })?;
    run_property("b_theta positivity", (0usize..4, coeffs()), |(k, a)| {
        let g = &algs[k];
        let x = v(g, &a);
        let gram = g.b_theta().unwrap();
        let min_eig = gram.clone().symmetric_eigen().eigenvalues.min();
        prop_assert!(min_eig > 0.0);
        prop_assert!((x.transpose() * &gram * &x)[0] >= min_eig * x.norm_squared() * (1.0 - 1e-12));
        Ok(())
    })?;
    let oct = || prop::collection::vec(-2.0f64..2.0, 8);
    run_property("octonion norm", (oct(), oct()), |(a, b)| {
        let x = Octonion(a.try_into().unwrap());
        let y = Octonion(b.try_into().unwrap());
        let rhs = x.norm() * y.norm();
        prop_assert!(((x * y).norm() - rhs).abs() <= 1e-12 * rhs.max(1.0));
        Ok(())
    })?;
    let table = jordan::JordanTable::new();
    let vb = jordan::v_basis();
    run_property("cone invariance", (prop::collection::vec(-1.0f64..1.0, 52), 0u64..1 << 32), |(c, seed)| {
        let d = ctx.f4.to_matrix(&Vector::from_column_slice(&c)).unwrap();
        let x = jordan_f4::random_cone_point(&mut rng_for(seed, 0)).v_coords();
        let (xw, dxw) = (&vb * &x, &vb * (&d * &x));
        prop_assert!(table.mul(&xw, &xw).norm() <= 1e-10 * xw.norm_squared());
        prop_assert!(2.0 * table.mul(&xw, &dxw).norm() <= 1e-8 * (xw.norm() * dxw.norm()).max(1e-300));
        Ok(())
    })?;
    Ok("jacobi, killing invariance, b_theta positivity, octonion norm, cone invariance: 64 cases each".into())
}

fn main() {
    let start = Instant::now();
    let cache = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("realflag-cache");
    let (f4, first) = load_or_build_f4(&cache).expect("f4 loads or builds");
    println!("f4 cache at {}: {first:?}", cache.display());
    let ctx = Ctx { session: Session::new(cache.clone(), DEFAULT_N), builder: Builder::with_f4(f4.clone()), f4, cache };
    let criteria: [Criterion; 9] = [
        ("dimension table", dimension_table),
        ("exceptional builds", exceptional_builds),
        ("positive sphericality suite", positive_suite),
        ("negative sphericality suite", negative_suite),
        ("orbit counts", orbit_counts),
        ("dilation law", dilation),
        ("orbit coincidence", coincidence),
        ("reduction step", reduction),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(|| f(&ctx))).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
