//! The one-step walk operator `V_j` and its building blocks.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Spinor2};
use crate::spin::angles::{AngleProvider, Angles};
use crate::spin::coin::{coin_matrix, pi, pi_inv, r, r_inv, u, Coin};
use crate::spin::field::SpinorField;
use crate::spin::mass_term::t_epsilon;

/// Lattice parameter `ε`, mass `m` and wave amplitude `ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    pub epsilon: f64,
    pub mass: f64,
    pub xi: f64,
}

impl WalkParams {
    pub fn new(epsilon: f64, mass: f64, xi: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be positive, got {epsilon}")));
        }
        if !(mass >= 0.0 && mass.is_finite()) {
            return Err(Error::Config(format!("mass must be nonnegative, got {mass}")));
        }
        if !xi.is_finite() {
            return Err(Error::Config(format!("xi must be finite, got {xi}")));
        }
        Ok(WalkParams { epsilon, mass, xi })
    }
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams {
            epsilon: 1.0,
            mass: 0.0,
            xi: 0.0,
        }
    }
}

/// Spatial direction of a jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn from_index(axis: usize) -> Result<Axis> {
        match axis {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            other => Err(Error::Config(format!("axis must be 1 or 2, got {other}"))),
        }
    }

    fn offset(self) -> (i64, i64) {
        match self {
            Axis::One => (1, 0),
            Axis::Two => (0, 1),
        }
    }
}

/// Per-site 2×2 matrices, collapsed to one matrix when the angles are uniform.
enum SiteMatrices {
    Uniform(Mat2),
    PerSite(Vec<Mat2>),
}

impl SiteMatrices {
    #[inline]
    fn get(&self, idx: usize) -> &Mat2 {
        match self {
            SiteMatrices::Uniform(m) => m,
            SiteMatrices::PerSite(v) => &v[idx],
        }
    }
}

/// Angles of one time slice, one entry per site or a single shared value.
pub enum AngleSlice {
    Uniform(Angles),
    PerSite(Vec<Angles>),
}

impl AngleSlice {
    pub fn sample(provider: &impl AngleProvider, j: i64, l1: usize, l2: usize) -> Self {
        if provider.uniform_in_space() {
            AngleSlice::Uniform(provider.angles(j, 0, 0))
        } else {
            AngleSlice::PerSite(
                (0..l1 * l2)
                    .into_par_iter()
                    .map(|idx| provider.angles(j, (idx / l2) as i64, (idx % l2) as i64))
                    .collect(),
            )
        }
    }

    fn matrices(&self, f: impl Fn(&Angles) -> Mat2 + Sync + Send) -> SiteMatrices {
        match self {
            AngleSlice::Uniform(a) => SiteMatrices::Uniform(f(a)),
            AngleSlice::PerSite(v) => SiteMatrices::PerSite(v.par_iter().map(f).collect()),
        }
    }
}

fn apply_local(field: &SpinorField, mats: &SiteMatrices) -> SpinorField {
    let data = field
        .data()
        .par_iter()
        .enumerate()
        .map(|(idx, s)| mats.get(idx).apply(s))
        .collect();
    field.with_data(data)
}

/// `out_p = M_p (S ψ)_p`; reads only `field`, writes only the new buffer.
fn shift_then_local(field: &SpinorField, axis: Axis, mats: Option<&SiteMatrices>) -> SpinorField {
    let (d1, d2) = axis.offset();
    let data = (0..field.len())
        .into_par_iter()
        .map(|idx| {
            let (p1, p2) = field.site(idx);
            let shifted = Spinor2::new(
                field.get(p1 + d1, p2 + d2).minus,
                field.get(p1 - d1, p2 - d2).plus,
            );
            match mats {
                Some(m) => m.get(idx).apply(&shifted),
                None => shifted,
            }
        })
        .collect();
    field.with_data(data)
}

/// Spin-dependent translation: `ψ⁻` is pulled from `p + e_axis`, `ψ⁺` from `p − e_axis`.
pub fn shift_apply(field: &SpinorField, axis: usize) -> Result<SpinorField> {
    Ok(shift_then_local(field, Axis::from_index(axis)?, None))
}

fn w_block(
    field: &SpinorField,
    axis: Axis,
    angle: impl Fn(&Angles) -> f64 + Sync + Send,
    slice: &AngleSlice,
) -> SpinorField {
    let rot = slice.matrices(|a| r(angle(a)));
    let mix = slice.matrices(|a| u(angle(a)));
    let closing = slice.matrices(|a| {
        let t = angle(a);
        r_inv(t) * u(t)
    });
    let a = apply_local(field, &rot);
    let b = shift_then_local(&a, axis, Some(&mix));
    shift_then_local(&b, axis, Some(&closing))
}

/// `W_k(θ) = R⁻¹(θ) U(θ) S_k U(θ) S_k R(θ)` with `θ` given per site (row-major, `p₁` slow).
pub fn w_block_apply(field: &SpinorField, axis: usize, theta: &[f64]) -> Result<SpinorField> {
    let axis = Axis::from_index(axis)?;
    if theta.len() != field.len() {
        return Err(Error::Config(format!(
            "angle slice has {} entries for {} sites",
            theta.len(),
            field.len()
        )));
    }
    let slice = AngleSlice::PerSite(theta.iter().map(|&t| Angles::new(t, t, t, t)).collect());
    Ok(w_block(field, axis, |a| a.t11, &slice))
}

/// `Q(ε(m − T_ε/4)/2)`.
///
/// The half argument makes the gate's generator `ε(m − T_ε/4)σ₁`, which is the
/// mass term of the continuum Hamiltonian; `Q(M)` itself rotates by `2M`.
pub fn mass_gate(params: &WalkParams, t_eps: f64) -> Mat2 {
    coin_matrix(Coin::Q(params.epsilon * (params.mass - t_eps / 4.0) / 2.0))
}

/// `Ψ_{j+1} = V_j Ψ_j` with
/// `V_j = Π⁻¹ [W₁(θ¹²) W₂(θ²²)] Π [W₂(θ²¹) W₁(θ¹¹)] Q`, the `Q` gate acting first.
pub fn step(
    field: &SpinorField,
    j: i64,
    provider: &impl AngleProvider,
    params: &WalkParams,
) -> Result<SpinorField> {
    let (l1, l2) = field.shape();
    let slice = AngleSlice::sample(provider, j, l1, l2);

    let gates = if provider.uniform_in_space() {
        SiteMatrices::Uniform(mass_gate(params, t_epsilon(provider, j, 0, 0, params)?))
    } else {
        let gates: Result<Vec<Mat2>> = (0..l1 * l2)
            .into_par_iter()
            .map(|idx| {
                let (p1, p2) = field.site(idx);
                Ok(mass_gate(params, t_epsilon(provider, j, p1, p2, params)?))
            })
            .collect();
        SiteMatrices::PerSite(gates?)
    };

    let psi = apply_local(field, &gates);
    let psi = w_block(&psi, Axis::One, |a| a.t11, &slice);
    let psi = w_block(&psi, Axis::Two, |a| a.t21, &slice);
    let psi = apply_local(&psi, &SiteMatrices::Uniform(pi()));
    let psi = w_block(&psi, Axis::Two, |a| a.t22, &slice);
    let psi = w_block(&psi, Axis::One, |a| a.t12, &slice);
    Ok(apply_local(&psi, &SiteMatrices::Uniform(pi_inv())))
}

/// `n` successive steps starting at time `j₀`. `n = 0` returns the input unchanged.
pub fn evolve(
    field: &SpinorField,
    j0: i64,
    steps: usize,
    provider: &impl AngleProvider,
    params: &WalkParams,
) -> Result<SpinorField> {
    let mut psi = field.clone();
    for n in 0..steps as i64 {
        psi = step(&psi, j0 + n, provider, params)?;
    }
    Ok(psi)
}

fn shift_phase(k: f64) -> Mat2 {
    Mat2::diag(Complex64::from_polar(1.0, k), Complex64::from_polar(1.0, -k))
}

fn block_symbol(theta: f64, k: f64) -> Mat2 {
    let d = shift_phase(k);
    r_inv(theta) * u(theta) * d * u(theta) * d * r(theta)
}

/// Exact one-step matrix acting on the plane-wave amplitude of `e^{i(k₁p₁ + k₂p₂)}`
/// when the angles are spatially uniform.
pub fn transfer_matrix(angles: &Angles, t_eps: f64, params: &WalkParams, k1: f64, k2: f64) -> Mat2 {
    pi_inv()
        * block_symbol(angles.t12, k1)
        * block_symbol(angles.t22, k2)
        * pi()
        * block_symbol(angles.t21, k2)
        * block_symbol(angles.t11, k1)
        * mass_gate(params, t_eps)
}
