//! Coin-space rotations `u(θ)`, `r(θ)`, `Q(M)` and the representation-change matrix `Π`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{c, re, Mat2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coin {
    /// Mixing rotation `u(θ)` applied between the two jumps of a block.
    U(f64),
    /// Basis rotation `r(θ)` conjugating each block.
    R(f64),
    /// Mass gate `Q(M)`.
    Q(f64),
    /// Representation change `Π` relating the two halves of the step.
    Pi,
}

pub fn coin_matrix(kind: Coin) -> Mat2 {
    match kind {
        Coin::U(theta) => {
            let (s, co) = theta.sin_cos();
            Mat2::new(re(-co), c(0.0, s), c(0.0, -s), re(co))
        }
        Coin::R(theta) => {
            let (s, co) = (theta / 2.0).sin_cos();
            Mat2::new(c(0.0, co), c(0.0, s), re(-s), re(co))
        }
        Coin::Q(mass) => {
            let (s, co) = (2.0 * mass).sin_cos();
            Mat2::new(re(co), c(0.0, -s), c(0.0, -s), re(co))
        }
        Coin::Pi => Mat2::new(
            c(0.0, -FRAC_1_SQRT_2),
            re(FRAC_1_SQRT_2),
            re(-FRAC_1_SQRT_2),
            c(0.0, FRAC_1_SQRT_2),
        ),
    }
}

/// `u(θ)`
pub fn u(theta: f64) -> Mat2 {
    coin_matrix(Coin::U(theta))
}

/// `r(θ)`
pub fn r(theta: f64) -> Mat2 {
    coin_matrix(Coin::R(theta))
}

/// `r(θ)⁻¹`; `r` is unitary so this is its adjoint.
pub fn r_inv(theta: f64) -> Mat2 {
    r(theta).adjoint()
}

pub fn pi() -> Mat2 {
    coin_matrix(Coin::Pi)
}

pub fn pi_inv() -> Mat2 {
    pi().adjoint()
}
