//! The curved-space Dirac Hamiltonian on the lattice, with spectral spatial derivatives.
//!
//! `H = Σ_k −i(B^k ∂_k + ½ ∂_k B^k) + (m − T₀/4) γ^(0)`, with `∂_k` taken with
//! respect to `x^k = p_k ε/2`.

use rayon::prelude::*;

use crate::continuum::gamma::GammaRep;
use crate::error::{Error, Result};
use crate::geometry::{dual_triad, triad_from_angles, triad_from_dual, DualTriad, Triad};
use crate::linalg::{c, levi_civita, mat3_inverse, Mat2, Spinor2, C64, ETA};
use crate::spectral::fourier::Fourier2d;
use crate::spin::angles::{AngleField, Angles};
use crate::spin::field::SpinorField;

/// `(B¹, B²)` with `B^k = [[−cos θ^{k1}, −i cos θ^{k2}], [i cos θ^{k2}, cos θ^{k1}]]`.
pub fn b_matrices(angles: &Angles) -> [Mat2; 2] {
    let cm = angles.cos_matrix();
    let b = |k: usize| {
        let (c1, c2) = (cm[k][0], cm[k][1]);
        Mat2::new(c(-c1, 0.0), c(0.0, -c2), c(0.0, c2), c(c1, 0.0))
    };
    [b(0), b(1)]
}

/// `B^k = e^k_(a) γ^(0) γ^(a)`, summed over the spatial frame index.
pub fn b_from_triad(triad: &Triad, gamma: &GammaRep) -> [Mat2; 2] {
    let b = |k: usize| {
        (1..3).fold(Mat2::zero(), |acc, a| {
            acc + (gamma.upper[0] * gamma.upper[a]).scale(c(triad.component(k, a), 0.0))
        })
    };
    [b(1), b(2)]
}

fn central<T>(series: &impl Fn(f64) -> Result<T>, t: f64, h: f64) -> Result<(T, T)> {
    Ok((series(t - h)?, series(t + h)?))
}

/// `∂₀ e^(a)_μ` by a centred difference of step `h`, indexed `[a][μ]`.
fn dual_time_derivative(
    series: &impl Fn(f64) -> Result<DualTriad>,
    t: f64,
    h: f64,
) -> Result<[[f64; 3]; 3]> {
    let (lo, hi) = central(series, t, h)?;
    let mut d = [[0.0; 3]; 3];
    for (a, row) in d.iter_mut().enumerate() {
        for (mu, v) in row.iter_mut().enumerate() {
            *v = (hi.component(a, mu) - lo.component(a, mu)) / (2.0 * h);
        }
    }
    Ok(d)
}

/// `T₀ = −ε^{abc} η_{cd} e^μ_(a) ∂_b e^(d)_μ` for a spatially uniform dual triad
/// series, so only `b = 0` contributes.
pub fn t0(series: impl Fn(f64) -> Result<DualTriad>, t: f64, h: f64) -> Result<f64> {
    let triad = triad_from_dual(&series(t)?)?;
    let dt = dual_time_derivative(&series, t, h)?;
    let mut total = 0.0;
    for a in 0..3 {
        for cc in 0..3 {
            let e = levi_civita(a, 0, cc);
            if e == 0.0 {
                continue;
            }
            for mu in 0..3 {
                total -= e * ETA[cc] * triad.component(mu, a) * dt[cc][mu];
            }
        }
    }
    Ok(total)
}

/// The same quantity as `e^(1)ν ∂₀ e^(2)_ν − e^(2)ν ∂₀ e^(1)_ν`, raising the
/// coordinate index with the inverse metric `g^{νρ}`.
pub fn t0_raised(series: impl Fn(f64) -> Result<DualTriad>, t: f64, h: f64) -> Result<f64> {
    let d = series(t)?;
    let g = crate::geometry::metric_eta_contraction(&d);
    let ginv = mat3_inverse(&g.g).ok_or(Error::SingularGeometry {
        det: 0.0,
        site: None,
    })?;
    let dt = dual_time_derivative(&series, t, h)?;
    let raised = |a: usize, nu: usize| (0..3).map(|rho| ginv[nu][rho] * d.component(a, rho)).sum::<f64>();
    let mut total = 0.0;
    for nu in 0..3 {
        total += raised(1, nu) * dt[2][nu] - raised(2, nu) * dt[1][nu];
    }
    Ok(total)
}

fn dual_at(field: &(impl AngleField + ?Sized), t: f64, x: f64, y: f64) -> Result<DualTriad> {
    dual_triad(&triad_from_angles(&field.angles_at(t, x, y)))
}

/// Step for the centred time difference inside [`HamiltonianField::build`].
pub const T0_STEP: f64 = 1e-4;

/// `H` sampled on a lattice at one time.
pub struct HamiltonianField {
    l1: usize,
    l2: usize,
    spacing: f64,
    b: [Vec<Mat2>; 2],
    /// `∂_k B^k` for `k = 1, 2`.
    db: [Vec<Mat2>; 2],
    /// `m − T₀/4` per site.
    mass_term: Vec<f64>,
    fourier: Fourier2d,
}

fn derivative_of_matrices(plan: &Fourier2d, mats: &[Mat2], axis: usize, h: f64) -> Vec<Mat2> {
    let mut entries: [Vec<C64>; 4] = Default::default();
    for (e, slot) in entries.iter_mut().enumerate() {
        let raw: Vec<C64> = mats.iter().map(|m| m.get(e / 2, e % 2)).collect();
        *slot = plan.derivative(&raw, axis, h);
    }
    (0..mats.len())
        .map(|i| Mat2::new(entries[0][i], entries[1][i], entries[2][i], entries[3][i]))
        .collect()
}

impl HamiltonianField {
    /// Samples `B^k` and `m − T₀/4` from `field` at time `t` on an `l1 × l2`
    /// lattice with site spacing `ε/2`.
    pub fn build(
        field: &(impl AngleField + ?Sized),
        t: f64,
        l1: usize,
        l2: usize,
        epsilon: f64,
        mass: f64,
    ) -> Result<Self> {
        let h = epsilon / 2.0;
        let sites: Vec<(f64, f64)> = (0..l1 * l2)
            .map(|i| ((i / l2) as f64 * h, (i % l2) as f64 * h))
            .collect();
        let angles: Vec<Angles> = sites
            .par_iter()
            .map(|&(x, y)| field.angles_at(t, x, y))
            .collect();
        let bs: Vec<[Mat2; 2]> = angles.iter().map(b_matrices).collect();
        let b = [
            bs.iter().map(|m| m[0]).collect::<Vec<_>>(),
            bs.iter().map(|m| m[1]).collect::<Vec<_>>(),
        ];
        let mass_term = sites
            .par_iter()
            .map(|&(x, y)| Ok(mass - t0(|tt| dual_at(field, tt, x, y), t, T0_STEP)? / 4.0))
            .collect::<Result<Vec<f64>>>()?;
        let fourier = Fourier2d::new(l1, l2);
        let db = [
            derivative_of_matrices(&fourier, &b[0], 1, h),
            derivative_of_matrices(&fourier, &b[1], 2, h),
        ];
        Ok(HamiltonianField {
            l1,
            l2,
            spacing: h,
            b,
            db,
            mass_term,
            fourier,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.l1, self.l2)
    }

    pub fn b(&self, k: usize) -> &[Mat2] {
        &self.b[k - 1]
    }

    pub fn mass_term(&self) -> &[f64] {
        &self.mass_term
    }
}

/// Share of `‖Ψ‖²` carried by modes with `|n_j| > L_j/4` on either axis.
pub fn high_band_fraction(field: &SpinorField) -> f64 {
    let (l1, l2) = field.shape();
    let modes = crate::spectral::fourier::dft_field(field);
    let total = modes.norm_sqr();
    if total == 0.0 {
        return 0.0;
    }
    let high = |n: usize, l: usize| {
        let s = if 2 * n >= l { l - n } else { n };
        4 * s > l
    };
    let top: f64 = modes
        .data()
        .iter()
        .enumerate()
        .filter(|(i, _)| high(i / l2, l1) || high(i % l2, l2))
        .map(|(_, s)| s.norm_sqr())
        .sum();
    top / total
}

/// Fields whose top half spectrum carries more than this share of the norm are rejected.
pub const BAND_LIMIT: f64 = 1e-8;

pub fn check_band_limited(field: &SpinorField) -> Result<()> {
    let fraction = high_band_fraction(field);
    if fraction > BAND_LIMIT {
        return Err(Error::NotBandLimited {
            fraction,
            limit: BAND_LIMIT,
        });
    }
    Ok(())
}

/// `HΨ`. The field must be band-limited.
pub fn hamiltonian_apply(field: &SpinorField, ham: &HamiltonianField) -> Result<SpinorField> {
    if field.shape() != ham.shape() {
        return Err(Error::Config(format!(
            "field shape {:?} does not match Hamiltonian shape {:?}",
            field.shape(),
            ham.shape()
        )));
    }
    check_band_limited(field)?;
    let minus: Vec<C64> = field.data().iter().map(|s| s.minus).collect();
    let plus: Vec<C64> = field.data().iter().map(|s| s.plus).collect();
    let h = ham.spacing;
    let d = |axis: usize| {
        (
            ham.fourier.derivative(&minus, axis, h),
            ham.fourier.derivative(&plus, axis, h),
        )
    };
    let grads = [d(1), d(2)];
    let gamma0 = GammaRep::standard().upper[0];
    let mi = c(0.0, -1.0);
    let data = (0..field.len())
        .into_par_iter()
        .map(|i| {
            let psi = field.data()[i];
            let mut out = gamma0.apply(&psi).scale(c(ham.mass_term[i], 0.0));
            for k in 0..2 {
                let dpsi = Spinor2::new(grads[k].0[i], grads[k].1[i]);
                let term = ham.b[k][i].apply(&dpsi) + ham.db[k][i].apply(&psi).scale(c(0.5, 0.0));
                out = out + term.scale(mi);
            }
            out
        })
        .collect();
    let (l1, l2) = field.shape();
    SpinorField::from_vec(l1, l2, data)
}
