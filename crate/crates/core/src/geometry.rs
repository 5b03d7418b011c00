//! Angles ↔ triads ↔ metrics, and the angle fields of a linear gravitational wave.
//!
//! Index conventions: `Triad::e[μ][a] = e^μ_(a)` and `DualTriad::d[a][μ] = e^(a)_μ`.
//! Both carry the synchronous border `e^0_(0) = 1` with every mixed time–space
//! component zero; the spatial block of the triad is `C^{kl} = cos θ^{kl}` and
//! that of the dual triad is `(C⁻¹)^{kl}`.

use crate::error::{Error, Result};
use crate::linalg::{mat3_inverse, mat3_mul, mat3_transpose, Real3, ETA};
use crate::spin::angles::{AngleField, Angles};

/// Below this `|det C|` the dual triad is treated as undefined.
pub const SINGULAR_DET: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    e: Real3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualTriad {
    d: Real3,
}

/// Symmetric `g_{μν}` in synchronous form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric3 {
    pub g: Real3,
}

fn check_border(m: &Real3, what: &str) -> Result<()> {
    if m[0][0] != 1.0 {
        return Err(Error::MalformedTriad(format!(
            "{what}: time-time component is {} (must be 1)",
            m[0][0]
        )));
    }
    for k in 1..3 {
        if m[0][k] != 0.0 || m[k][0] != 0.0 {
            return Err(Error::MalformedTriad(format!(
                "{what}: mixed time-space component at index {k} is nonzero"
            )));
        }
    }
    Ok(())
}

fn with_border(block: [[f64; 2]; 2]) -> Real3 {
    [
        [1.0, 0.0, 0.0],
        [0.0, block[0][0], block[0][1]],
        [0.0, block[1][0], block[1][1]],
    ]
}

impl Triad {
    /// Validates the synchronous border.
    pub fn new(e: Real3) -> Result<Self> {
        check_border(&e, "triad")?;
        Ok(Triad { e })
    }

    pub fn from_spatial(block: [[f64; 2]; 2]) -> Self {
        Triad {
            e: with_border(block),
        }
    }

    /// `e^μ_(a)`.
    #[inline]
    pub fn component(&self, mu: usize, a: usize) -> f64 {
        self.e[mu][a]
    }

    pub fn as_array(&self) -> &Real3 {
        &self.e
    }

    pub fn spatial(&self) -> [[f64; 2]; 2] {
        [[self.e[1][1], self.e[1][2]], [self.e[2][1], self.e[2][2]]]
    }

    pub fn spatial_det(&self) -> f64 {
        let s = self.spatial();
        s[0][0] * s[1][1] - s[0][1] * s[1][0]
    }
}

impl DualTriad {
    pub fn new(d: Real3) -> Result<Self> {
        check_border(&d, "dual triad")?;
        Ok(DualTriad { d })
    }

    pub fn from_spatial(block: [[f64; 2]; 2]) -> Self {
        DualTriad {
            d: with_border(block),
        }
    }

    /// `e^(a)_μ`.
    #[inline]
    pub fn component(&self, a: usize, mu: usize) -> f64 {
        self.d[a][mu]
    }

    pub fn as_array(&self) -> &Real3 {
        &self.d
    }

    pub fn spatial(&self) -> [[f64; 2]; 2] {
        [[self.d[1][1], self.d[1][2]], [self.d[2][1], self.d[2][2]]]
    }

    /// `max |e^(a)_μ e^μ_(b) − δ^a_b|`.
    pub fn contraction_defect(&self, triad: &Triad) -> f64 {
        let p = mat3_mul(&self.d, &triad.e);
        let mut worst: f64 = 0.0;
        for (a, row) in p.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }
}

/// Triad whose spatial block is `[cos θ^{kl}]`.
pub fn triad_from_angles(angles: &Angles) -> Triad {
    Triad::from_spatial(angles.cos_matrix())
}

pub fn dual_triad(t: &Triad) -> Result<DualTriad> {
    let det = t.spatial_det();
    if !(det.abs() >= SINGULAR_DET) {
        return Err(Error::SingularGeometry { det, site: None });
    }
    let s = t.spatial();
    let inv = [
        [s[1][1] / det, -s[0][1] / det],
        [-s[1][0] / det, s[0][0] / det],
    ];
    Ok(DualTriad::from_spatial(inv))
}

/// Inverse of [`dual_triad`].
pub fn triad_from_dual(d: &DualTriad) -> Result<Triad> {
    let s = d.spatial();
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    if !(det.abs() >= SINGULAR_DET) {
        return Err(Error::SingularGeometry { det, site: None });
    }
    Ok(Triad::from_spatial([
        [s[1][1] / det, -s[0][1] / det],
        [-s[1][0] / det, s[0][0] / det],
    ]))
}

/// Metric from the explicit component formulas of the synchronous block form.
pub fn metric_from_dual_triad(d: &DualTriad) -> Metric3 {
    let e = |a: usize, mu: usize| d.component(a, mu);
    let g11 = -e(1, 1).powi(2) - e(2, 1).powi(2);
    let g22 = -e(2, 2).powi(2) - e(1, 2).powi(2);
    let g12 = -e(1, 2) * e(1, 1) - e(2, 1) * e(2, 2);
    Metric3 {
        g: [[1.0, 0.0, 0.0], [0.0, g11, g12], [0.0, g12, g22]],
    }
}

/// `g = dᵀ η d`, i.e. `g_{μν} = η_{ab} e^(a)_μ e^(b)_ν`.
pub fn metric_eta_contraction(d: &DualTriad) -> Metric3 {
    let eta = [[ETA[0], 0.0, 0.0], [0.0, ETA[1], 0.0], [0.0, 0.0, ETA[2]]];
    let g = mat3_mul(&mat3_transpose(d.as_array()), &mat3_mul(&eta, d.as_array()));
    Metric3 { g }
}

impl Metric3 {
    pub fn minkowski() -> Self {
        Metric3 {
            g: [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]],
        }
    }

    pub fn max_abs_diff(&self, other: &Metric3) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..3 {
            for nu in 0..3 {
                worst = worst.max((self.g[mu][nu] - other.g[mu][nu]).abs());
            }
        }
        worst
    }

    pub fn inverse(&self) -> Option<Real3> {
        mat3_inverse(&self.g)
    }

    /// Spatial block is negative definite (both eigenvalues of the symmetric 2×2 block < 0).
    pub fn spatial_negative_definite(&self) -> bool {
        let (a, b, d) = (self.g[1][1], self.g[1][2], self.g[2][2]);
        a < 0.0 && a * d - b * b > 0.0
    }
}

/// Named time profile for `F(T)` or `G(T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Waveform {
    Constant(f64),
    /// `amplitude · sin(omega · T + phase)`
    Sine { amplitude: f64, omega: f64, phase: f64 },
}

impl Waveform {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Waveform::Constant(v) => v,
            Waveform::Sine {
                amplitude,
                omega,
                phase,
            } => amplitude * (omega * t + phase).sin(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Waveform::Constant(v) => v == 0.0,
            Waveform::Sine { amplitude, .. } => amplitude == 0.0,
        }
    }
}

/// Linear gravitational wave in the `(T, X, Y)` coordinates, with compression
/// profile `F`, shear profile `G` and offsets `K`, `K′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GwParams {
    pub xi: f64,
    pub f: Waveform,
    pub g: Waveform,
    pub k: f64,
    pub k_prime: f64,
}

impl GwParams {
    pub fn pure_shear(xi: f64, g: Waveform) -> Self {
        GwParams {
            xi,
            f: Waveform::Constant(0.0),
            g,
            k: 0.0,
            k_prime: 0.0,
        }
    }

    /// `(−ξ(F − K), ξ(F + K′))`, the two quantities whose square roots give `θ^{11}`, `θ^{22}`.
    fn radicands(&self, t: f64) -> (f64, f64) {
        let f = self.f.eval(t);
        (-self.xi * (f - self.k), self.xi * (f + self.k_prime))
    }

    fn check_at(&self, t: f64) -> Result<()> {
        let (r11, r22) = self.radicands(t);
        if r11 < 0.0 {
            return Err(Error::SignCondition {
                constant: "K",
                time: t,
                value: r11,
            });
        }
        if r22 < 0.0 {
            return Err(Error::SignCondition {
                constant: "K'",
                time: t,
                value: r22,
            });
        }
        Ok(())
    }

    /// Checks the sign conditions at every given time.
    pub fn check_times(&self, times: impl IntoIterator<Item = f64>) -> Result<()> {
        times.into_iter().try_for_each(|t| self.check_at(t))
    }
}

/// Walk angles simulating the wave at time `T`.
pub fn gw_angles(gw: &GwParams, t: f64) -> Result<Angles> {
    gw.check_at(t)?;
    Ok(gw_angles_unchecked(gw, t))
}

fn gw_angles_unchecked(gw: &GwParams, t: f64) -> Angles {
    let (r11, r22) = gw.radicands(t);
    let shear = std::f64::consts::FRAC_PI_2 - gw.xi * gw.g.eval(t);
    Angles::new(r11.sqrt(), shear, shear, r22.sqrt())
}

/// Spatially uniform angle field of the wave. Angles are NaN wherever the sign
/// conditions fail, so validate the simulated time range with
/// [`GwParams::check_times`] first.
impl AngleField for GwParams {
    fn angles_at(&self, t: f64, _x: f64, _y: f64) -> Angles {
        gw_angles_unchecked(self, t)
    }
    fn uniform_in_space(&self) -> bool {
        true
    }
}

/// First-order wave metric written down directly in `(T, X, Y)`.
pub fn gw_metric_reference(gw: &GwParams, t: f64) -> Metric3 {
    let f = gw.f.eval(t);
    let g = gw.g.eval(t);
    let xi = gw.xi;
    let g11 = -(1.0 - xi * (f - gw.k));
    let g22 = -(1.0 + xi * (f + gw.k_prime));
    let g12 = xi * g;
    Metric3 {
        g: [[1.0, 0.0, 0.0], [0.0, g11, g12], [0.0, g12, g22]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn flat_angles_give_identity_block() {
        let t = triad_from_angles(&Angles::flat());
        let s = t.spatial();
        assert_eq!(s[0][0], 1.0);
        assert_eq!(s[1][1], 1.0);
        assert!(s[0][1].abs() < 1e-16 && s[1][0].abs() < 1e-16);
    }

    #[test]
    fn pure_shear_block_to_first_order() {
        let xg = 1e-6;
        let s = triad_from_angles(&Angles::pure_shear(xg)).spatial();
        assert_eq!(s[0][0], 1.0);
        assert!((s[0][1] - xg).abs() < 1e-15);
        assert!((s[1][0] - xg).abs() < 1e-15);
    }

    #[test]
    fn single_angle_entry() {
        let a = Angles::new(FRAC_PI_3, FRAC_PI_2, FRAC_PI_2, 0.0);
        assert!((triad_from_angles(&a).component(1, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dual_of_identity_and_symmetric_block() {
        let id = Triad::from_spatial([[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(dual_triad(&id).unwrap().spatial(), [[1.0, 0.0], [0.0, 1.0]]);

        let a = 0.3;
        let t = Triad::from_spatial([[1.0, a], [a, 1.0]]);
        let d = dual_triad(&t).unwrap().spatial();
        let n = 1.0 - a * a;
        assert!((d[0][0] - 1.0 / n).abs() < 1e-15);
        assert!((d[0][1] + a / n).abs() < 1e-15);
        assert!((d[1][0] + a / n).abs() < 1e-15);
    }

    #[test]
    fn singular_block_is_rejected() {
        let t = Triad::from_spatial([[1.0, 1.0], [1.0, 1.0]]);
        assert!(matches!(
            dual_triad(&t),
            Err(Error::SingularGeometry { site: None, .. })
        ));
    }

    #[test]
    fn border_is_validated() {
        let mut e = *Triad::from_spatial([[1.0, 0.0], [0.0, 1.0]]).as_array();
        e[0][0] = 2.0;
        assert!(matches!(Triad::new(e), Err(Error::MalformedTriad(_))));
        e[0][0] = 1.0;
        e[0][2] = 0.1;
        assert!(Triad::new(e).is_err());
        assert!(DualTriad::new(e).is_err());
    }

    #[test]
    fn minkowski_from_identity() {
        let d = DualTriad::from_spatial([[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(metric_from_dual_triad(&d), Metric3::minkowski());
        assert_eq!(metric_eta_contraction(&d), Metric3::minkowski());
    }

    #[test]
    fn explicit_formulas_agree_with_eta_contraction_on_asymmetric_blocks() {
        let blocks = [
            [[1.2, -0.4], [0.7, 0.9]],
            [[0.3, 1.1], [-0.2, 0.8]],
            [[2.0, 0.0], [0.5, -1.3]],
        ];
        for b in blocks {
            let d = DualTriad::from_spatial(b);
            let diff = metric_from_dual_triad(&d).max_abs_diff(&metric_eta_contraction(&d));
            assert!(diff < 1e-15, "block {b:?}: {diff}");
        }
    }

    #[test]
    fn gw_angles_flat_when_xi_zero() {
        let gw = GwParams {
            xi: 0.0,
            f: Waveform::Constant(0.7),
            g: Waveform::Constant(1.0),
            k: 1.0,
            k_prime: 1.0,
        };
        assert_eq!(gw_angles(&gw, 3.0).unwrap(), Angles::flat());
    }

    #[test]
    fn gw_angles_pure_shear() {
        let gw = GwParams::pure_shear(0.01, Waveform::Constant(1.0));
        let a = gw_angles(&gw, 0.0).unwrap();
        assert_eq!(a.t11, 0.0);
        assert_eq!(a.t22, 0.0);
        assert!((a.t12 - (FRAC_PI_2 - 0.01)).abs() < 1e-15);
        assert_eq!(a.t12, a.t21);
    }

    #[test]
    fn gw_angles_compression() {
        // F(T) = cos(ωT) written as a sine with phase π/2; at T = 0, F = 1.
        let gw = GwParams {
            xi: 1e-4,
            f: Waveform::Sine {
                amplitude: 1.0,
                omega: 0.3,
                phase: FRAC_PI_2,
            },
            g: Waveform::Constant(0.0),
            k: 1.0,
            k_prime: 1.0,
        };
        let a = gw_angles(&gw, 0.0).unwrap();
        assert_eq!(a.t11, 0.0);
        assert!((a.t22 - 2e-4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sign_condition_names_the_constant() {
        let gw = GwParams {
            xi: -0.01,
            f: Waveform::Constant(1.0),
            g: Waveform::Constant(0.0),
            k: 0.0,
            k_prime: 0.0,
        };
        match gw_angles(&gw, 0.0) {
            Err(Error::SignCondition { constant, .. }) => assert_eq!(constant, "K'"),
            other => panic!("unexpected {other:?}"),
        }
        let gw = GwParams { xi: 0.01, ..gw };
        match gw_angles(&gw, 0.0) {
            Err(Error::SignCondition { constant, .. }) => assert_eq!(constant, "K"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reference_metric_values() {
        let flat = GwParams::pure_shear(0.0, Waveform::Constant(1.0));
        assert_eq!(gw_metric_reference(&flat, 0.0), Metric3::minkowski());

        let shear = GwParams::pure_shear(0.01, Waveform::Constant(1.0));
        assert!((gw_metric_reference(&shear, 0.0).g[1][2] - 0.01).abs() < 1e-16);

        let compress = GwParams {
            xi: 0.01,
            f: Waveform::Constant(1.0),
            g: Waveform::Constant(0.0),
            k: 0.0,
            k_prime: 0.0,
        };
        let m = gw_metric_reference(&compress, 0.0);
        assert!((m.g[1][1] + 0.99).abs() < 1e-15);
        assert!((m.g[2][2] + 1.01).abs() < 1e-15);
    }
}
