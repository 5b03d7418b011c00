//! Closed-form eigendecomposition of 2×2 complex matrices.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Spinor2, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub eigenvalue: C64,
    /// Unit norm, first nonzero component real and positive.
    pub eigenvector: Spinor2,
    /// `−arg λ` in `(−π, π]`, so that `λ = |λ| e^{−iE}`.
    pub energy: f64,
}

/// Principal energy of an eigenvalue.
pub fn energy_of(lambda: C64) -> f64 {
    let e = -lambda.arg();
    if e <= -PI {
        e + 2.0 * PI
    } else {
        e
    }
}

const ZERO: f64 = 1e-14;

fn normalize(v: Spinor2) -> Spinor2 {
    let v = v.scale(C64::new(1.0 / v.norm(), 0.0));
    let lead = if v.minus.norm() > ZERO { v.minus } else { v.plus };
    v.scale(lead.conj() / lead.norm())
}

fn pair(lambda: C64, v: Spinor2) -> EigenPair {
    EigenPair {
        eigenvalue: lambda,
        eigenvector: normalize(v),
        energy: energy_of(lambda),
    }
}

/// Eigenvector of `m` for `lambda`, from whichever row of `m − λ` is better conditioned.
fn kernel_vector(m: &Mat2, lambda: C64) -> Spinor2 {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let from_row0 = Spinor2::new(b, lambda - a);
    let from_row1 = Spinor2::new(lambda - d, c);
    if from_row0.norm_sqr() >= from_row1.norm_sqr() {
        from_row0
    } else {
        from_row1
    }
}

fn order(x: &EigenPair, y: &EigenPair) -> Ordering {
    x.energy.total_cmp(&y.energy).then_with(|| {
        // Ties: larger leading component first, so the identity yields e₁, e₂.
        y.eigenvector.minus.norm().total_cmp(&x.eigenvector.minus.norm())
    })
}

/// Both eigenpairs, ordered by ascending energy.
///
/// A scalar multiple of the identity returns the standard basis. Any other
/// matrix with a repeated eigenvalue is defective and reported as such.
pub fn eigen(m: &Mat2) -> Result<[EigenPair; 2]> {
    let scale = m.max_abs().max(1.0);
    let half_tr = m.trace() * 0.5;
    let disc = (half_tr * half_tr - m.det()).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;

    let off = m.get(0, 1).norm().max(m.get(1, 0).norm());
    if disc.norm() <= 1e-12 * scale {
        let diag_gap = (m.get(0, 0) - m.get(1, 1)).norm();
        if off <= ZERO * scale && diag_gap <= 1e-12 * scale {
            let mut out = [
                pair(m.get(0, 0), Spinor2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
                pair(m.get(1, 1), Spinor2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))),
            ];
            out.sort_by(order);
            return Ok(out);
        }
        return Err(Error::Defective {
            re: half_tr.re,
            im: half_tr.im,
        });
    }

    let mut out = [pair(l1, kernel_vector(m, l1)), pair(l2, kernel_vector(m, l2))];
    out.sort_by(order);
    Ok(out)
}
