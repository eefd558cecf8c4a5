//! The Jordan algebra `W = Herm(3, O)_{2,1}` of octonionic matrices
//!
//! ```text
//! [[ a1,       c3,      -conj(c2) ],
//!  [ conj(c3), a2,       c1       ],
//!  [ c2,      -conj(c1), a3       ]]
//! ```
//!
//! i.e. `x = J x^* J` with `J = diag(1, 1, -1)`, under `x o y = (xy + yx)/2`.
//! Coordinates on `W` are `[a1, a2, a3, c1 (8), c2 (8), c3 (8)]`.

use alloc::format;
use alloc::vec::Vec;

use super::octonion::Octonion;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};

pub const W_DIM: usize = 27;
pub const V_DIM: usize = 26;

/// A 3x3 matrix with octonion entries.
pub type OctMatrix = [[Octonion; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JordanElement {
    pub diag: [f64; 3],
    pub off: [Octonion; 3],
}

impl JordanElement {
    pub fn identity() -> Self {
        JordanElement { diag: [1.0; 3], off: [Octonion::ZERO; 3] }
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; W_DIM];
        c[i] = 1.0;
        Self::from_coords(&c)
    }

    pub fn from_coords(c: &[f64]) -> Self {
        assert_eq!(c.len(), W_DIM, "Jordan coordinates have length 27");
        let mut off = [Octonion::ZERO; 3];
        for (k, o) in off.iter_mut().enumerate() {
            o.0.copy_from_slice(&c[3 + 8 * k..11 + 8 * k]);
        }
        JordanElement { diag: [c[0], c[1], c[2]], off }
    }

    pub fn coords(&self) -> [f64; W_DIM] {
        let mut c = [0.0; W_DIM];
        c[..3].copy_from_slice(&self.diag);
        for k in 0..3 {
            c[3 + 8 * k..11 + 8 * k].copy_from_slice(&self.off[k].0);
        }
        c
    }

    pub fn to_vector(&self) -> Vector {
        Vector::from_column_slice(&self.coords())
    }

    pub fn from_vector(v: &Vector) -> Self {
        Self::from_coords(v.as_slice())
    }

    pub fn to_matrix(&self) -> OctMatrix {
        let [a1, a2, a3] = self.diag;
        let [c1, c2, c3] = self.off;
        [
            [Octonion::real(a1), c3, -c2.conj()],
            [c3.conj(), Octonion::real(a2), c1],
            [c2, -c1.conj(), Octonion::real(a3)],
        ]
    }

    /// Reads an element off a matrix, returning the largest deviation from
    /// the twisted Hermitian pattern.
    pub fn from_matrix(m: &OctMatrix) -> (Self, f64) {
        let x = JordanElement {
            diag: [m[0][0].re(), m[1][1].re(), m[2][2].re()],
            off: [m[1][2], m[2][0], m[0][1]],
        };
        let back = x.to_matrix();
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                dev = dev.max((back[i][j] - m[i][j]).max_abs());
            }
        }
        (x, dev)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.coords();
        c.iter_mut().for_each(|v| *v *= s);
        Self::from_coords(&c)
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

pub fn oct_matmul(x: &OctMatrix, y: &OctMatrix) -> OctMatrix {
    let mut out = [[Octonion::ZERO; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            for k in 0..3 {
                *o = *o + x[i][k] * y[k][j];
            }
        }
    }
    out
}

fn oct_add_scaled(x: &OctMatrix, y: &OctMatrix, s: f64) -> OctMatrix {
    let mut out = *x;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (x[i][j] + y[i][j]).scale(s);
        }
    }
    out
}

/// `x o y = (xy + yx) / 2` with octonionic matrix products.
pub fn jordan_mul(x: &JordanElement, y: &JordanElement) -> JordanElement {
    let (xm, ym) = (x.to_matrix(), y.to_matrix());
    let sum = oct_add_scaled(&oct_matmul(&xm, &ym), &oct_matmul(&ym, &xm), 0.5);
    let (out, dev) = JordanElement::from_matrix(&sum);
    debug_assert!(dev <= 1e-12 * (1.0 + x.max_abs() * y.max_abs()), "product left W");
    out
}

/// `tr(x o y) = sum a_i b_i - 2 <c1, d1> - 2 <c2, d2> + 2 <c3, d3>`.
pub fn trace_form(x: &JordanElement, y: &JordanElement) -> f64 {
    let d: f64 = x.diag.iter().zip(&y.diag).map(|(a, b)| a * b).sum();
    d + 2.0 * (x.off[2].dot(&y.off[2]) - x.off[0].dot(&y.off[0]) - x.off[1].dot(&y.off[1]))
}

/// The positive form `<x, y> = tr(x o J y J)`.
pub fn positive_form(x: &JordanElement, y: &JordanElement) -> f64 {
    let d: f64 = x.diag.iter().zip(&y.diag).map(|(a, b)| a * b).sum();
    d + 2.0 * (0..3).map(|k| x.off[k].dot(&y.off[k])).sum::<f64>()
}

/// Gram weights of the positive form in `W` coordinates.
pub fn positive_weights() -> [f64; W_DIM] {
    let mut w = [2.0; W_DIM];
    w[..3].copy_from_slice(&[1.0; 3]);
    w
}

/// Precomputed structure tensor of `o` on `W` coordinates.
#[derive(Debug, Clone)]
pub struct JordanTable {
    t: Vec<f64>,
}

impl JordanTable {
    pub fn new() -> Self {
        let mut t = alloc::vec![0.0; W_DIM * W_DIM * W_DIM];
        for i in 0..W_DIM {
            for j in i..W_DIM {
                let p = jordan_mul(&JordanElement::basis(i), &JordanElement::basis(j)).coords();
                for k in 0..W_DIM {
                    t[(i * W_DIM + j) * W_DIM + k] = p[k];
                    t[(j * W_DIM + i) * W_DIM + k] = p[k];
                }
            }
        }
        JordanTable { t }
    }

    pub fn entries(&self) -> &[f64] {
        &self.t
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[f64] {
        let s = (i * W_DIM + j) * W_DIM;
        &self.t[s..s + W_DIM]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(W_DIM);
        for i in 0..W_DIM {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..W_DIM {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(self.product_of_basis(i, j)) {
                    *o += w * t;
                }
            }
        }
        out
    }
}

impl Default for JordanTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Columns: an orthonormal basis of `V = W_{tr = 0}` for the positive form,
/// `(1,-1,0)/sqrt 2`, `(1,1,-2)/sqrt 6`, then `e_k / sqrt 2` for the 24
/// octonion coordinates.
pub fn v_basis() -> Mat {
    let mut p = Mat::zeros(W_DIM, V_DIM);
    let r2 = libm::sqrt(2.0);
    let r6 = libm::sqrt(6.0);
    p[(0, 0)] = 1.0 / r2;
    p[(1, 0)] = -1.0 / r2;
    p[(0, 1)] = 1.0 / r6;
    p[(1, 1)] = 1.0 / r6;
    p[(2, 1)] = -2.0 / r6;
    for k in 0..24 {
        p[(3 + k, 2 + k)] = 1.0 / r2;
    }
    p
}

/// Left inverse of [`v_basis`] on `V`: `P^T G` with `G` the positive Gram.
pub fn v_coordinates() -> Mat {
    let mut pt = v_basis().transpose();
    let w = positive_weights();
    for c in 0..W_DIM {
        for r in 0..V_DIM {
            pt[(r, c)] *= w[c];
        }
    }
    pt
}

/// Restricts an operator on `W` that preserves `V` to `V` coordinates.
pub fn restrict_to_v(d_w: &Mat) -> Result<Mat> {
    if d_w.shape() != (W_DIM, W_DIM) {
        return Err(Error::DimensionMismatch { expected: W_DIM, got: d_w.nrows() });
    }
    let p = v_basis();
    let image = d_w * &p;
    let d_v = v_coordinates() * &image;
    let back = &p * &d_v;
    let dev = (back - image).amax();
    if dev > 1e-10 * d_w.amax().max(1.0) {
        return Err(Error::InvalidInput(format!("operator does not preserve V (deviation {dev:.3e})")));
    }
    Ok(d_v)
}
