//! Rayon drivers. Every sample draws from its own `(seed, index)` stream,
//! so results do not depend on scheduling.

use rayon::prelude::*;
use realflag_core::real_forms::Parabolic;
use realflag_core::sphericality::{assemble_report, local_dim_tol, sample_element, SphericityReport};
use realflag_core::{Error, LieAlgebra, Mat, Subalgebra};

/// Parallel equivalent of `realflag_core::sphericality::is_spherical`.
pub fn is_spherical(
    pair_name: &str,
    g: &LieAlgebra,
    h: &Subalgebra,
    p: &Parabolic,
    samples: usize,
    seed: u64,
    tol: f64,
) -> realflag_core::Result<SphericityReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let results: Vec<(usize, Option<Mat>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x = sample_element(g, seed, i)?;
            let d = local_dim_tol(g, h, p, &x, tol)?;
            Ok((d, (d == g.dim()).then_some(x)))
        })
        .collect::<realflag_core::Result<_>>()?;
    let witness = results.iter().enumerate().find_map(|(i, (_, x))| x.clone().map(|x| (i, x)));
    let dims = results.into_iter().map(|(d, _)| d).collect();
    Ok(assemble_report(pair_name, g, h, p, seed, tol, dims, witness))
}
