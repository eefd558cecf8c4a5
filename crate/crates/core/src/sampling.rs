//! Seeded randomness. Every random draw is derived from a `(seed, index)`
//! pair so results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::linalg::{expm, operator_norm, Mat, Vector};

pub type SampleRng = ChaCha8Rng;

/// Independent stream for sample `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// Uniform direction in coefficient space, scaled so its matrix has operator
/// norm `radius * u^(1/dim)` with `u` uniform on (0, 1].
pub fn ball_element<R: Rng>(g: &LieAlgebra, rng: &mut R, radius: f64) -> Result<Mat> {
    let x = gaussian_vector(rng, g.dim());
    let m = g.to_matrix(&x)?;
    let norm = operator_norm(&m);
    let u: f64 = 1.0 - rng.random::<f64>();
    let r = radius * libm::pow(u, 1.0 / g.dim() as f64);
    Ok(if norm > 0.0 { m * (r / norm) } else { m })
}

/// `exp(X1) exp(X2)` with both factors drawn from the ball of `radius`.
pub fn random_group_element<R: Rng>(g: &LieAlgebra, rng: &mut R, radius: f64) -> Result<Mat> {
    let a = ball_element(g, rng, radius)?;
    let b = ball_element(g, rng, radius)?;
    Ok(expm(&a) * expm(&b))
}

/// Fixed seed used for internal generic choices (maximal abelian subspaces,
/// generic elements of Cartan subspaces).
pub const CONSTRUCTION_SEED: u64 = 0x5eed_f1a9;
