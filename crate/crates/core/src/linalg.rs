//! Two-component spinors and complex 2×2 matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Coin-space state at one site, expressed on the basis `(b₋, b₊)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor2 {
    pub minus: C64,
    pub plus: C64,
}

impl Spinor2 {
    pub const ZERO: Spinor2 = Spinor2 {
        minus: C64::new(0.0, 0.0),
        plus: C64::new(0.0, 0.0),
    };

    pub fn new(minus: C64, plus: C64) -> Self {
        Spinor2 { minus, plus }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.minus.norm_sqr() + self.plus.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn dot(&self, other: &Spinor2) -> C64 {
        self.minus.conj() * other.minus + self.plus.conj() * other.plus
    }

    pub fn scale(&self, s: C64) -> Spinor2 {
        Spinor2::new(self.minus * s, self.plus * s)
    }

    pub fn is_finite(&self) -> bool {
        self.minus.is_finite() && self.plus.is_finite()
    }

    pub fn max_abs_diff(&self, other: &Spinor2) -> f64 {
        (self.minus - other.minus)
            .norm()
            .max((self.plus - other.plus).norm())
    }
}

impl Add for Spinor2 {
    type Output = Spinor2;
    fn add(self, o: Spinor2) -> Spinor2 {
        Spinor2::new(self.minus + o.minus, self.plus + o.plus)
    }
}

impl Sub for Spinor2 {
    type Output = Spinor2;
    fn sub(self, o: Spinor2) -> Spinor2 {
        Spinor2::new(self.minus - o.minus, self.plus - o.plus)
    }
}

impl Neg for Spinor2 {
    type Output = Spinor2;
    fn neg(self) -> Spinor2 {
        Spinor2::new(-self.minus, -self.plus)
    }
}

/// Complex 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C64; 2]; 2],
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Mat2::diag(re(1.0), re(1.0))
    }

    pub fn zero() -> Self {
        Mat2::diag(re(0.0), re(0.0))
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, re(0.0), re(0.0), d)
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Mat2::new(
            re(rows[0][0]),
            re(rows[0][1]),
            re(rows[1][0]),
            re(rows[1][1]),
        )
    }

    #[inline]
    pub fn get(&self, r: usize, col: usize) -> C64 {
        self.m[r][col]
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = &self.m;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn conj(&self) -> Mat2 {
        let m = &self.m;
        Mat2::new(m[0][0].conj(), m[0][1].conj(), m[1][0].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Matrix inverse; `None` when the determinant vanishes exactly.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == re(0.0) {
            return None;
        }
        let m = &self.m;
        Some(Mat2::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let m = &self.m;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn apply(&self, v: &Spinor2) -> Spinor2 {
        let m = &self.m;
        Spinor2::new(
            m[0][0] * v.minus + m[0][1] * v.plus,
            m[1][0] * v.minus + m[1][1] * v.plus,
        )
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max |M†M − 1|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Mat2) -> Mat2 {
        *self * *other + *other * *self
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(re(-1.0))
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(re(-1.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Spinor2> for Mat2 {
    type Output = Spinor2;
    fn mul(self, v: Spinor2) -> Spinor2 {
        self.apply(&v)
    }
}

/// Real 3×3 matrix helpers used by the geometry code.
pub type Real3 = [[f64; 3]; 3];

pub fn mat3_mul(a: &Real3, b: &Real3) -> Real3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat3_transpose(a: &Real3) -> Real3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat3_det(a: &Real3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Cofactor inverse; `None` if the determinant is exactly zero.
pub fn mat3_inverse(a: &Real3) -> Option<Real3> {
    let det = mat3_det(a);
    if det == 0.0 {
        return None;
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            out[i][j] = sign * minor / det;
        }
    }
    Some(out)
}

/// Totally antisymmetric symbol on three indices with `ε^{012} = 1`.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Minkowski metric `diag(1, −1, −1)`.
pub const ETA: [f64; 3] = [1.0, -1.0, -1.0];
