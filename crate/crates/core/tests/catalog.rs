use std::time::Instant;

use realflag_core::catalog::{catalog, Builder, Recipe, DEFAULT_N};
use realflag_core::linalg::DEFAULT_TOL;
use realflag_core::sphericality::is_spherical;

fn is_f4(r: &Recipe) -> bool {
    matches!(r, Recipe::F4Symmetric(_) | Recipe::F4Su21Su3 | Recipe::F4So12G2)
}

#[test]
fn classical_entries_meet_expectations() {
    let b = Builder::new();
    let mut failures = Vec::new();
    for e in catalog(DEFAULT_N).iter().filter(|e| !is_f4(&e.recipe)) {
        let t = Instant::now();
        let inst = b.build(e).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let r = is_spherical(&e.name, &inst.g, &inst.h, &inst.p, 64, 0, DEFAULT_TOL).unwrap();
        println!("{:40} dim g {:3} dim h {:3} max {:3} {:30} {:?}", e.name, r.dim_g, r.dim_h, r.max_dim, r.verdict.as_str(), t.elapsed());
        if !e.expected.matches(r.verdict) {
            failures.push(format!("{}: expected {} got {}", e.name, e.expected.as_str(), r.verdict));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
