//! Small-`|q|` expansion of the shear walk.

use crate::error::{Error, Result};
use crate::linalg::{c, Mat2, Spinor2, C64};
use crate::spectral::modes::ModePoint;

/// `W` at first order in `q_X`, `q_Y`.
pub fn large_scale_operator(xi: f64, g: f64, q: ModePoint) -> Mat2 {
    let xg = xi * g;
    let a = q.qx + xg * q.qy;
    let b = q.qy + xg * q.qx;
    Mat2::new(c(1.0, a), c(-b, 0.0), c(b, 0.0), c(1.0, -a))
}

/// First-order eigenvalues and energies of [`large_scale_operator`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeEnergies {
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub e_plus: f64,
    pub e_minus: f64,
}

/// Adds the `q_X > 0` eigenvector expansion `V₊ = V₊⁽⁰⁾ + ξg V₊⁽¹⁾`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeEigs {
    pub energies: PerturbativeEnergies,
    pub v0: Spinor2,
    pub v1: Spinor2,
}

impl PerturbativeEigs {
    pub fn v_plus(&self, xi: f64, g: f64) -> Spinor2 {
        self.v0 + self.v1.scale(c(xi * g, 0.0))
    }
}

/// `λ± = 1 ∓ i(1 + 2ξg q_X q_Y/|q|²)|q|` and `E± = ±(1 + 2ξg q_X q_Y/|q|²)|q|`.
pub fn perturbative_energies(xi: f64, g: f64, q: ModePoint) -> Result<PerturbativeEnergies> {
    let n = q.norm();
    if n == 0.0 {
        return Err(Error::ZeroWavevector);
    }
    let w = (1.0 + 2.0 * xi * g * q.qx * q.qy / (n * n)) * n;
    Ok(PerturbativeEnergies {
        lambda_plus: c(1.0, -w),
        lambda_minus: c(1.0, w),
        e_plus: w,
        e_minus: -w,
    })
}

/// Energies plus the `V₊` expansion, which is only available for `q_X > 0`.
///
/// `V₊⁽¹⁾ = −i/(q_X + |q|) · (q_X − q_Y²(1 + 2q_X/|q|)/(q_X + |q|), 0)ᵀ`.
pub fn perturbative_eigs(xi: f64, g: f64, q: ModePoint) -> Result<PerturbativeEigs> {
    let energies = perturbative_energies(xi, g, q)?;
    if !(q.qx > 0.0) {
        return Err(Error::UnsupportedBranch { qx: q.qx });
    }
    let n = q.norm();
    let s = q.qx + n;
    let v0 = Spinor2::new(c(0.0, -q.qy / s), c(1.0, 0.0));
    let bracket = q.qx - q.qy * q.qy * (1.0 + 2.0 * q.qx / n) / s;
    let v1 = Spinor2::new(c(0.0, -bracket / s), c(0.0, 0.0));
    Ok(PerturbativeEigs { energies, v0, v1 })
}

/// `‖W V − λ V‖` for the `+` branch at first order.
pub fn eigen_residual(xi: f64, g: f64, q: ModePoint) -> Result<f64> {
    let p = perturbative_eigs(xi, g, q)?;
    let v = p.v_plus(xi, g);
    let w = large_scale_operator(xi, g, q);
    Ok((w.apply(&v) - v.scale(p.energies.lambda_plus)).norm())
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_origin() {
        let m = large_scale_operator(0.0, 0.0, ModePoint::new(0.0, 0.0));
        assert_eq!(m, Mat2::identity());
    }

    #[test]
    fn direct_substitution() {
        let m = large_scale_operator(0.01, 1.0, ModePoint::new(0.1, 0.05));
        assert!((m.get(0, 0) - c(1.0, 0.1005)).norm() < 1e-15);
    }

    #[test]
    fn axis_modes_unshifted() {
        let e = perturbative_energies(0.1, 1.0, ModePoint::new(0.3, 0.0)).unwrap();
        assert!((e.e_plus - 0.3).abs() < 1e-15);
    }

    #[test]
    fn diagonal_mode_energy() {
        let e = perturbative_energies(0.01, 1.0, ModePoint::new(0.1, 0.1)).unwrap();
        assert!((e.e_plus - 1.01 * 0.1 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(e.e_minus, -e.e_plus);
    }

    #[test]
    fn unperturbed_vector() {
        let p = perturbative_eigs(0.0, 0.0, ModePoint::new(0.3, 0.4)).unwrap();
        assert!((p.v0.minus - c(0.0, -0.5)).norm() < 1e-15);
        assert_eq!(p.v0.plus, c(1.0, 0.0));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            perturbative_energies(0.1, 1.0, ModePoint::new(0.0, 0.0)),
            Err(Error::ZeroWavevector)
        ));
        assert!(matches!(
            perturbative_eigs(0.1, 1.0, ModePoint::new(-0.1, 0.2)),
            Err(Error::UnsupportedBranch { .. })
        ));
    }
}
