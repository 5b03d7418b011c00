//! Numerical check that one lattice step is `1 − iεH` up to `O(ε²)`.

use std::f64::consts::PI;

use crate::continuum::hamiltonian::{hamiltonian_apply, HamiltonianField};
use crate::error::{Error, Result};
use crate::geometry::{GwParams, Waveform};
use crate::linalg::{c, Spinor2, C64};
use crate::spin::angles::{AngleField, Angles, ContinuumFn, Sampled, Uniform};
use crate::spin::field::SpinorField;
use crate::spin::walk::{step, WalkParams};
use crate::table::Table;

/// `‖V_j Ψ − Ψ + iεHΨ‖ / ‖Ψ‖`, with `H` built from the same angles at `T = jε`.
pub fn continuum_residual(
    field: &(impl AngleField + ?Sized),
    params: &WalkParams,
    psi: &SpinorField,
    j: i64,
) -> Result<f64> {
    let (l1, l2) = psi.shape();
    let provider = Sampled::new(field, params.epsilon);
    let stepped = step(psi, j, &provider, params)?;
    let ham = HamiltonianField::build(field, j as f64 * params.epsilon, l1, l2, params.epsilon, params.mass)?;
    let h_psi = hamiltonian_apply(psi, &ham)?;
    let r = stepped.sub(psi).add(&h_psi.scale(c(0.0, params.epsilon)));
    Ok(r.norm() / psi.norm())
}

/// Scenarios for the order-of-convergence check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContinuumCase {
    Flat,
    /// Constant shear `ξG`.
    PureShear { xi_g: f64 },
    /// Flat geometry with mass `m`.
    Massive { mass: f64 },
    /// Angles varying smoothly in space and time.
    Varying,
}

impl ContinuumCase {
    pub fn name(&self) -> &'static str {
        match self {
            ContinuumCase::Flat => "flat",
            ContinuumCase::PureShear { .. } => "pure-shear",
            ContinuumCase::Massive { .. } => "massive",
            ContinuumCase::Varying => "varying",
        }
    }

    fn mass(&self) -> f64 {
        match self {
            ContinuumCase::Massive { mass } => *mass,
            _ => 0.0,
        }
    }
}

/// Physical side length of the periodic box used by [`convergence_table`].
pub const BOX: f64 = 1.6;

/// Smooth test field made of a few low plane waves in physical coordinates
/// `x = p ε/2`, so refining `ε` resolves the same continuum function.
pub fn smooth_field(l1: usize, l2: usize, epsilon: f64, box_len: f64) -> Result<SpinorField> {
    let kappa = 2.0 * PI / box_len;
    let waves: [((f64, f64), Spinor2); 3] = [
        ((1.0, 0.0), Spinor2::new(c(0.6, 0.2), c(-0.1, 0.5))),
        ((0.0, -1.0), Spinor2::new(c(0.1, -0.3), c(0.4, 0.0))),
        ((1.0, 2.0), Spinor2::new(c(-0.2, 0.1), c(0.15, -0.25))),
    ];
    let h = epsilon / 2.0;
    SpinorField::from_fn(l1, l2, |p1, p2| {
        let (x, y) = (p1 as f64 * h, p2 as f64 * h);
        waves.iter().fold(Spinor2::default(), |acc, ((n1, n2), pol)| {
            acc + pol.scale(C64::from_polar(1.0, kappa * (n1 * x + n2 * y)))
        })
    })
}

fn varying_angles(t: f64, x: f64, y: f64) -> Angles {
    let kappa = 2.0 * PI / BOX;
    Angles::new(
        0.2 + 0.05 * (kappa * x + 0.5 * t).sin(),
        1.3 + 0.04 * (kappa * y).cos(),
        1.25 - 0.03 * (kappa * (x - y) + t).sin(),
        0.15 + 0.05 * (kappa * y - 0.3 * t).cos(),
    )
}

/// Residual at one `ε` for one case, on a box of side [`BOX`].
pub fn case_residual(case: ContinuumCase, epsilon: f64) -> Result<f64> {
    let l = (2.0 * BOX / epsilon).round() as usize;
    if l < 4 || !l.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "epsilon {epsilon} gives an unusable lattice size {l}"
        )));
    }
    let params = WalkParams::new(epsilon, case.mass(), 0.0)?;
    let psi = smooth_field(l, l, epsilon, BOX)?;
    match case {
        ContinuumCase::Flat | ContinuumCase::Massive { .. } => {
            continuum_residual(&Uniform(Angles::flat()), &params, &psi, 0)
        }
        ContinuumCase::PureShear { xi_g } => {
            let gw = GwParams::pure_shear(1.0, Waveform::Constant(xi_g));
            continuum_residual(&gw, &params, &psi, 0)
        }
        ContinuumCase::Varying => continuum_residual(&ContinuumFn(varying_angles), &params, &psi, 0),
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_order(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

/// Default refinement sequence; the finest level is a 128² lattice.
pub const EPSILONS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// `epsilon,residual` table and fitted order for one case.
pub fn convergence_table(case: ContinuumCase, epsilons: &[f64]) -> Result<(Table, f64)> {
    let mut table = Table::new(&["epsilon", "residual"]);
    let mut res = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let r = case_residual(case, eps)?;
        table.push(vec![eps, r]);
        res.push(r);
    }
    let order = fit_order(epsilons, &res);
    Ok((table, order))
}
