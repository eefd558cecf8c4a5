use realflag::parallel;
use realflag_core::catalog::{find, Builder, DEFAULT_N};
use realflag_core::linalg::DEFAULT_TOL;
use realflag_core::sphericality::is_spherical;

#[test]
fn parallel_driver_matches_sequential() {
    let b = Builder::new();
    for name in ["sl2^3:xxy", "berger:su(1,3):so(1,3)", "max:sp(1,2):so(1,2)+sp(1)", "so13:ma"] {
        let inst = b.build(&find(name, DEFAULT_N).unwrap()).unwrap();
        let seq = is_spherical(name, &inst.g, &inst.h, &inst.p, 24, 5, DEFAULT_TOL).unwrap();
        let par = parallel::is_spherical(name, &inst.g, &inst.h, &inst.p, 24, 5, DEFAULT_TOL).unwrap();
        assert_eq!(seq.per_sample_dims, par.per_sample_dims, "{name}");
        assert_eq!(seq.verdict, par.verdict);
        assert_eq!(seq.witness_index, par.witness_index);
        assert_eq!(seq.witness, par.witness);
    }
    let inst = b.build(&find("sl2:a", DEFAULT_N).unwrap()).unwrap();
    assert!(parallel::is_spherical("sl2:a", &inst.g, &inst.h, &inst.p, 0, 0, DEFAULT_TOL).is_err());
}
