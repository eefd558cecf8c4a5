//! Numerical toolkit for real semisimple Lie algebras: structure constants,
//! real forms and restricted roots, the exceptional algebra `f4(-20)` from
//! the twisted octonionic Jordan algebra, and generic-rank tests for open
//! orbits on real flag manifolds.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod jordan_f4;
pub mod linalg;
pub mod orbits;
pub mod real_forms;
pub mod reduction;
pub mod registry;
pub mod sampling;
pub mod sphericality;

pub use algebra::{LieAlgebra, Subalgebra};
pub use error::{Error, Result};
pub use linalg::{Mat, Vector};
