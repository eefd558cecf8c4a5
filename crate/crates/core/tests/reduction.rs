use realflag_core::catalog::{find, Builder, DEFAULT_N};
use realflag_core::linalg::{contained_residual, hstack, DEFAULT_TOL};
use realflag_core::reduction::*;
use realflag_core::sphericality::is_spherical;
use realflag_core::Subalgebra;

/// Checks the induction step at the open-orbit witness, where `h + p = g`.
fn check_pair(name: &str) {
    let inst = Builder::new().build(&find(name, DEFAULT_N).unwrap()).unwrap();
    let (g, p) = (&inst.g, &inst.p);
    let w = is_spherical(name, g, &inst.h, p, 64, 0, DEFAULT_TOL).unwrap();
    let x = w.witness.expect("spherical pair has a witness");
    let inv = x.clone().try_inverse().unwrap();
    let h = inst.h.conjugate(g, &inv).unwrap();
    assert_eq!(p.roots.simple.len(), p.roots.rank());
    for &alpha in &p.roots.simple {
        let ap = parabolic_alpha(g, p, alpha).unwrap();
        assert_eq!(ap.l_alpha.ncols() + ap.u_alpha.ncols(), ap.p_alpha.ncols());
        let res = homomorphism_residual(g, &ap, 1000, 9);
        assert!(res <= 1e-8, "{name}: homomorphism residual {res:.3e}");
        let ip = induced_pair(g, &h, p, &ap).unwrap();
        assert!(ip.h_open, "{name}: translated h + p = g");
        assert!(ip.open, "{name}: openness flag for root {alpha}");
        assert!(contained_residual(&ap.l_alpha, ip.h_alpha.basis(), DEFAULT_TOL) <= 1e-8);
        assert!(ip.h_alpha.closure_residual(g) <= 1e-8);
        let lifted = hstack(&[&ip.h_cap_p_alpha, &ap.u_alpha]);
        assert!(contained_residual(&lifted, ip.h_alpha.basis(), DEFAULT_TOL) <= 1e-8);
    }
}

#[test]
fn diagonal_in_sl2_cubed() {
    check_pair("sl2^3:diag");
}

#[test]
fn compact_in_sl3() {
    check_pair("sl3:so3");
    let inst = Builder::new().build(&find("sl3:so3", DEFAULT_N).unwrap()).unwrap();
    for &alpha in &inst.p.roots.simple {
        let ap = parabolic_alpha(&inst.g, &inst.p, alpha).unwrap();
        assert_eq!(ap.p_alpha.ncols(), 6);
        let ip = induced_pair(&inst.g, &inst.h, &inst.p, &ap).unwrap();
        assert!(ip.h_open && ip.open, "so(3) + p = g already at the identity");
    }
}

#[test]
fn product_root_system() {
    let inst = Builder::new().build(&find("sl2^3:diag", DEFAULT_N).unwrap()).unwrap();
    let (g, p) = (&inst.g, &inst.p);
    for &alpha in &p.roots.simple {
        let ap = parabolic_alpha(g, p, alpha).unwrap();
        assert_eq!((ap.l_alpha.ncols(), ap.u_alpha.ncols(), ap.p_alpha.ncols()), (5, 2, 7));
        let whole = Subalgebra::whole(g);
        let ip = induced_pair(g, &whole, p, &ap).unwrap();
        assert_eq!(ip.h_alpha.dim(), 5);
    }
    // Exactly one simple root has the first sl(2) factor in its Levi, and
    // its nilradical is n2 + n3.
    let first = realflag_core::Mat::identity(9, 9).columns(0, 3).into_owned();
    let levis: Vec<_> = p
        .roots
        .simple
        .iter()
        .map(|&a| parabolic_alpha(g, p, a).unwrap())
        .filter(|ap| contained_residual(&ap.l_alpha, &first, DEFAULT_TOL) < 1e-10)
        .collect();
    assert_eq!(levis.len(), 1);
    let u = &levis[0].u_alpha;
    assert!(u.rows(0, 3).amax() < 1e-12);
    assert_eq!(u.ncols(), 2);
}
