//! One-mode operators of the pure-shear walk at `m = 0`, `ε = 1`.
//!
//! A plane wave `e^{i k·p}` is labelled by `q = 2k`, because each step moves the
//! walker twice along each axis.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use crate::linalg::{c, Mat2, C64};
use crate::spin::walk::{transfer_matrix, WalkParams};
use crate::spin::Angles;

/// Wavevector `(q_X, q_Y)`; the Brillouin zone is `[−2π, 2π)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint {
    pub qx: f64,
    pub qy: f64,
}

fn wrap(q: f64) -> f64 {
    (q + 2.0 * PI).rem_euclid(4.0 * PI) - 2.0 * PI
}

impl ModePoint {
    pub const fn new(qx: f64, qy: f64) -> Self {
        ModePoint { qx, qy }
    }

    /// Same mode folded into `[−2π, 2π)²`.
    pub fn wrapped(self) -> Self {
        ModePoint::new(wrap(self.qx), wrap(self.qy))
    }

    pub fn norm(&self) -> f64 {
        self.qx.hypot(self.qy)
    }

    pub fn dist(&self, other: &ModePoint) -> f64 {
        (self.qx - other.qx).hypot(self.qy - other.qy)
    }
}

/// Free one-step operator `W⁽⁰⁾(q)`.
pub fn mode_w0(q: ModePoint) -> Mat2 {
    let ex = C64::from_polar(1.0, q.qx);
    let exc = ex.conj();
    let (s, co) = q.qy.sin_cos();
    Mat2::new(ex * co, -exc * s, ex * s, exc * co)
}

/// `(Ā, B̄)` before the `e^{±iπ/4}/√2` rephasing.
pub fn abar_bbar(q: ModePoint) -> (C64, C64) {
    let (x, y) = (q.qx, q.qy);
    let re_a = -(x - y).cos() + y.cos() - y.sin() + (2.0 * y).sin();
    let im_a = -(x + y).cos() + y.cos() + y.sin();
    let re_b = (x + y).sin() - y.sin() + y.cos() - (2.0 * y).cos();
    let im_b = (x - y).sin() + y.sin() + y.cos() - 1.0;
    (c(re_a, im_a), c(re_b, im_b))
}

/// `(A, B)` entering `W⁽¹⁾`.
pub fn a_b(q: ModePoint) -> (C64, C64) {
    let (ab, bb) = abar_bbar(q);
    let pa = C64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4);
    (pa * ab, pa.conj() * bb)
}

/// First-order shear operator `W⁽¹⁾(q)`, so that `W ≈ W⁽⁰⁾ + ξG W⁽¹⁾`.
pub fn mode_w1(q: ModePoint) -> Mat2 {
    let (a, b) = a_b(q);
    let ex = C64::from_polar(1.0, q.qx);
    let exc = ex.conj();
    Mat2::new(ex * a, -exc * b, ex * b.conj(), exc * a.conj())
}

/// Landscape `ρ(q) = (|Ā|² + |B̄|²)^{1/2}`, whose maxima are ≈ 4.69826.
///
/// This is `√2` times the common eigenvalue modulus of `W⁽¹⁾`
/// ([`w1_eigen_modulus`]); both have the same zeros and maxima.
pub fn rho(q: ModePoint) -> f64 {
    let (a, b) = abar_bbar(q);
    (a.norm_sqr() + b.norm_sqr()).sqrt()
}

/// `(|A|² + |B|²)^{1/2}`, the modulus of both eigenvalues of `W⁽¹⁾(q)`.
pub fn w1_eigen_modulus(q: ModePoint) -> f64 {
    let (a, b) = a_b(q);
    (a.norm_sqr() + b.norm_sqr()).sqrt()
}

/// First-order pair `(W⁽⁰⁾, W⁽¹⁾)` at one mode, with the `(ξ, g)` used to assemble it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeOperator {
    pub q: ModePoint,
    pub w0: Mat2,
    pub w1: Mat2,
    pub xi: f64,
    pub g: f64,
}

impl ModeOperator {
    pub fn new(xi: f64, g: f64, q: ModePoint) -> Self {
        ModeOperator {
            q,
            w0: mode_w0(q),
            w1: mode_w1(q),
            xi,
            g,
        }
    }

    /// `W⁽⁰⁾ + ξg W⁽¹⁾`.
    pub fn first_order(&self) -> Mat2 {
        self.w0 + self.w1.scale(c(self.xi * self.g, 0.0))
    }

    /// Exact lattice operator at the same `(ξ, g, q)`.
    pub fn exact(&self) -> Mat2 {
        assembled_operator(self.xi, self.g, self.q)
    }

    /// `‖W⁽⁰⁾†W⁽¹⁾ + W⁽¹⁾†W⁽⁰⁾‖_max`, zero when the expansion is unitary at first order.
    pub fn first_order_unitarity_defect(&self) -> f64 {
        (self.w0.adjoint() * self.w1 + self.w1.adjoint() * self.w0).max_abs()
    }
}

/// Exact plane-wave transfer matrix of the lattice step for uniform pure-shear
/// angles `θ¹² = θ²¹ = π/2 − ξg`, with `m = 0`, `ε = 1` and `k = q/2`.
///
/// With `g` held fixed over the step the mass-like term vanishes.
pub fn assembled_operator(xi: f64, g: f64, q: ModePoint) -> Mat2 {
    let params = WalkParams {
        epsilon: 1.0,
        mass: 0.0,
        xi,
    };
    transfer_matrix(
        &Angles::pure_shear(xi * g),
        0.0,
        &params,
        q.qx / 2.0,
        q.qy / 2.0,
    )
}
