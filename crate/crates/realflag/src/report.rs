//! Serialized reports. Every top-level object carries `schema: 1`.

use realflag_core::catalog::CatalogEntry;
use realflag_core::orbits::{CoincidenceReport, OrbitCountReport};
use realflag_core::sphericality::SphericityReport;
use serde::Serialize;

use crate::format::rows;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Sphericity {
    pub schema: u32,
    pub pair: String,
    pub expected: Option<String>,
    pub status: String,
    pub dim_g: usize,
    pub dim_h: usize,
    pub dim_gp: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub per_sample_dims: Vec<usize>,
    pub max_dim: usize,
    pub max_orbit_dim: usize,
    pub verdict: String,
    pub matches: Option<bool>,
    pub witness_index: Option<usize>,
    pub witness: Option<Vec<Vec<f64>>>,
}

impl Sphericity {
    pub fn new(r: &SphericityReport, expected: Option<String>, status: &str, matches: Option<bool>) -> Self {
        Sphericity {
            schema: SCHEMA,
            pair: r.pair_name.clone(),
            expected,
            status: status.into(),
            dim_g: r.dim_g,
            dim_h: r.dim_h,
            dim_gp: r.dim_gp,
            samples: r.samples,
            seed: r.seed,
            tol: r.tol,
            per_sample_dims: r.per_sample_dims.clone(),
            max_dim: r.max_dim,
            max_orbit_dim: r.max_orbit_dim(),
            verdict: r.verdict.as_str().into(),
            matches,
            witness_index: r.witness_index,
            witness: r.witness.as_ref().map(rows),
        }
    }
}

/// Report for entries whose subalgebra could not be validated beyond its
/// dimension.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionOnly {
    pub schema: u32,
    pub pair: String,
    pub expected: Option<String>,
    pub status: String,
    pub dim_g: usize,
    pub dim_h: usize,
    pub dim_gp: usize,
    pub dimension_allows_open_orbit: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub kind: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCount {
    pub schema: u32,
    pub pair: String,
    pub count: usize,
    pub types: Vec<Orbit>,
    pub n: usize,
    pub k: usize,
    pub j: Option<u8>,
}

impl OrbitCount {
    pub fn new(pair: &str, r: &OrbitCountReport) -> Self {
        OrbitCount {
            schema: SCHEMA,
            pair: pair.into(),
            count: r.count,
            types: r.types.iter().map(|t| Orbit { kind: t.kind.as_str().into(), dim: t.dim }).collect(),
            n: r.n,
            k: r.k,
            j: r.j,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Coincidence {
    pub schema: u32,
    pub pair: String,
    pub sup: String,
    pub samples: usize,
    pub seed: u64,
    /// Point 0 is the identity; point `i > 0` is sample `i - 1`.
    pub dims: Vec<(usize, usize)>,
    pub coincide: bool,
    pub first_mismatch: Option<usize>,
}

impl Coincidence {
    pub fn new(pair: &str, sup: &str, r: &CoincidenceReport) -> Self {
        Coincidence {
            schema: SCHEMA,
            pair: pair.into(),
            sup: sup.into(),
            samples: r.samples,
            seed: r.seed,
            dims: r.dims.clone(),
            coincide: r.coincide,
            first_mismatch: r.first_mismatch,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub schema: u32,
    pub pair: String,
    pub alpha: usize,
    pub root_index: usize,
    pub simple_roots: usize,
    pub witness_index: Option<usize>,
    pub dim_p_alpha: usize,
    pub dim_l_alpha: usize,
    pub dim_u_alpha: usize,
    pub dim_h_cap_p_alpha: usize,
    pub dim_h_alpha: usize,
    pub dim_l_cap_p: usize,
    pub open: bool,
    pub h_open: bool,
    pub homomorphism_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: String,
    pub ambient: String,
    pub subalgebra: String,
    pub expected: String,
    pub status: String,
    pub provenance: String,
}

impl From<&CatalogEntry> for Entry {
    fn from(e: &CatalogEntry) -> Self {
        Entry {
            name: e.name.clone(),
            ambient: e.ambient.clone(),
            subalgebra: e.subalgebra.clone(),
            expected: e.expected.as_str().into(),
            status: e.status.as_str().into(),
            provenance: e.source.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub schema: u32,
    pub n: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchLine {
    pub name: String,
    pub expected: String,
    pub status: String,
    pub verdict: Option<String>,
    pub max_dim: Option<usize>,
    pub dim_g: Option<usize>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Batch {
    pub schema: u32,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<BatchLine>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct F4Verify {
    pub schema: u32,
    pub table_hash: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema: u32,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}
