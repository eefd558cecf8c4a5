//! Octonions by Cayley-Dickson doubling of the quaternions:
//! `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
//!
//! Basis `e0 = 1`, `e1, e2, e3 = (i, 0), (j, 0), (k, 0)` and
//! `e4, e5, e6, e7 = (0, 1), (0, i), (0, j), (0, k)`. The complex subfield is
//! `span{1, e1}`; its orthogonal complement is spanned by `e2..e7`, with
//! `e2 e4 = e6`.

use core::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Octonion(pub [f64; 8]);

fn qmul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: [f64; 4]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

fn halves(x: &Octonion) -> ([f64; 4], [f64; 4]) {
    let c = &x.0;
    ([c[0], c[1], c[2], c[3]], [c[4], c[5], c[6], c[7]])
}

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub fn real(r: f64) -> Self {
        Octonion::ONE.scale(r)
    }

    /// `re + im e1`.
    pub fn complex(re: f64, im: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = re;
        c[1] = im;
        Octonion(c)
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for v in c.iter_mut().skip(1) {
            *v = -*v;
        }
        Octonion(c)
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.0;
        c.iter_mut().for_each(|v| *v *= s);
        Octonion(c)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        self + (-rhs)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        octonion_mul(&self, &rhs)
    }
}

pub fn octonion_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (a, b) = halves(x);
    let (c, d) = halves(y);
    let ac = qmul(a, c);
    let db = qmul(qconj(d), b);
    let da = qmul(d, a);
    let bc = qmul(b, qconj(c));
    Octonion([
        ac[0] - db[0],
        ac[1] - db[1],
        ac[2] - db[2],
        ac[3] - db[3],
        da[0] + bc[0],
        da[1] + bc[1],
        da[2] + bc[2],
        da[3] + bc[3],
    ])
}

/// `t[i][j]` is `e_i e_j` as a coefficient array.
pub fn multiplication_table() -> [[[f64; 8]; 8]; 8] {
    let mut t = [[[0.0; 8]; 8]; 8];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            *out = (Octonion::basis(i) * Octonion::basis(j)).0;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gaussian_vector, rng_for};

    fn random(seed: u64, i: u64) -> Octonion {
        let v = gaussian_vector(&mut rng_for(seed, i), 8);
        let mut c = [0.0; 8];
        c.copy_from_slice(v.as_slice());
        Octonion(c)
    }

    #[test]
    fn units_and_signs() {
        let b = random(1, 0);
        assert_eq!(Octonion::ONE * b, b);
        assert_eq!(b * Octonion::ONE, b);
        for i in 1..8 {
            assert_eq!(Octonion::basis(i) * Octonion::basis(i), -Octonion::ONE);
        }
        assert_eq!(Octonion::basis(2) * Octonion::basis(4), Octonion::basis(6));
    }

    #[test]
    fn norm_is_multiplicative() {
        // Oracle: the composition identity |ab| = |a||b|, which fails for any
        // wrong sign in the doubling formula.
        for i in 0..1000 {
            let a = random(2, 2 * i);
            let b = random(2, 2 * i + 1);
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn alternative_but_not_associative() {
        let a = random(3, 0);
        let b = random(3, 1);
        let c = random(3, 2);
        assert!((a * (a * b) - (a * a) * b).max_abs() < 1e-12);
        assert!(((b * a) * a - b * (a * a)).max_abs() < 1e-12);
        assert!(((a * b) * c - a * (b * c)).max_abs() > 1e-3);
    }

    #[test]
    fn conjugation_reverses_products() {
        let a = random(4, 0);
        let b = random(4, 1);
        assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() < 1e-12);
    }
}
