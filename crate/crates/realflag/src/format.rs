//! JSON interchange for algebras and pair specifications.
//!
//! An algebra is `{"dim", "labels", "bracket", "theta", "matrices"}` where
//! `bracket` lists `[i, j, k, c]` for `[e_i, e_j] = ... + c e_k` (0-based,
//! only `i < j` is needed), `theta` is the row-major matrix of the Cartan
//! involution and `matrices` is an optional faithful realization. A spec
//! file adds `"subalgebra": {"basis": [[...], ...]}` with coefficient
//! vectors in the algebra's basis.

use std::path::Path;

use realflag_core::{LieAlgebra, Mat, Subalgebra};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub bracket: Vec<(usize, usize, usize, f64)>,
    pub theta: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<f64>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubalgebraBlock {
    pub basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// `spherical`, `not-spherical` or `dimension-obstructed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(flatten)]
    pub algebra: LieJson,
    pub subalgebra: SubalgebraBlock,
}

pub fn rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

fn from_rows(rows: &[Vec<f64>], nrows: usize, ncols: usize, what: &str) -> AppResult<Mat> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(AppError::Format(format!("{what} must be {nrows}x{ncols}")));
    }
    Ok(Mat::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

pub fn to_json(g: &LieAlgebra) -> AppResult<LieJson> {
    let d = g.dim();
    let theta = g.theta().ok_or_else(|| AppError::Format("algebra has no Cartan involution".into()))?;
    let mut bracket = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for k in 0..d {
                let c = g.structure_constant(i, j, k);
                if c != 0.0 {
                    bracket.push((i, j, k, c));
                }
            }
        }
    }
    Ok(LieJson {
        dim: d,
        labels: g.labels().to_vec(),
        bracket,
        theta: rows(theta),
        matrices: g.realization().map(|r| r.matrices().iter().map(rows).collect()),
    })
}

/// Rebuilds an algebra, rejecting anything that is not antisymmetric, fails
/// Jacobi, or carries an involution that is not a Cartan involution.
pub fn from_json(j: &LieJson) -> AppResult<LieAlgebra> {
    let d = j.dim;
    if j.labels.len() != d {
        return Err(AppError::Format(format!("{} labels for dimension {d}", j.labels.len())));
    }
    let mut c = vec![0.0; d * d * d];
    let mut set = vec![false; d * d * d];
    for &(i, jj, k, v) in &j.bracket {
        if i >= d || jj >= d || k >= d {
            return Err(AppError::Format(format!("bracket index out of range in [{i}, {jj}, {k}]")));
        }
        if i == jj {
            if v != 0.0 {
                return Err(AppError::Format(format!("[e{i}, e{i}] must vanish")));
            }
            continue;
        }
        for (a, b, s) in [(i, jj, v), (jj, i, -v)] {
            let idx = (a * d + b) * d + k;
            if set[idx] && c[idx] != s {
                return Err(AppError::Format(format!("conflicting entries for [e{i}, e{jj}] along e{k}")));
            }
            c[idx] = s;
            set[idx] = true;
        }
    }
    let mut g = LieAlgebra::from_structure(j.labels.clone(), c)?;
    if let Some(ms) = &j.matrices {
        let size = ms.first().map_or(0, |m| m.len());
        let mats = ms.iter().map(|m| from_rows(m, size, size, "realization matrix")).collect::<AppResult<Vec<_>>>()?;
        g = g.with_realization(mats)?;
    }
    g = g.with_theta(from_rows(&j.theta, d, d, "theta")?)?;
    let b = g.b_theta()?;
    if b.cholesky().is_none() {
        return Err(AppError::Format("theta is not a Cartan involution: B_theta is not positive definite".into()));
    }
    Ok(g)
}

pub fn subalgebra_from(g: &LieAlgebra, block: &SubalgebraBlock) -> AppResult<Subalgebra> {
    if block.basis.is_empty() {
        return Ok(Subalgebra::zero(g));
    }
    let d = g.dim();
    if block.basis.iter().any(|v| v.len() != d) {
        return Err(AppError::Format(format!("subalgebra vectors must have length {d}")));
    }
    let m = Mat::from_fn(d, block.basis.len(), |r, c| block.basis[c][r]);
    Ok(Subalgebra::spanned_by(g, &m)?)
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> AppResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}
