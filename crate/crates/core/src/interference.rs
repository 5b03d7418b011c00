//! Two same-energy modes, one shear step, and the relative density change Δ.
//!
//! The modes are `Ψ¹ = (0, 1)ᵀ e^{iq p_X/2}` and `Ψ² = (−i, 1)ᵀ/√2 · e^{iq p_Y/2}`,
//! eigenvectors of the free walk with the common eigenvalue `e^{−iq}`. Their
//! superposition has density `N₀ = 2 + √2 cos(qu/2)` with `u = p_X − p_Y`, and
//! a single step with shear `ξg` changes it by `ξg N₀ Δ` at first order.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{c, Spinor2, C64};
use crate::spin::angles::Uniform;
use crate::spin::field::SpinorField;
use crate::spin::walk::{step, WalkParams};
use crate::spin::Angles;
use crate::table::Table;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nearest `q = 4πn/L` to `q`.
pub fn nearest_admissible(q: f64, l: usize) -> f64 {
    let step = 4.0 * PI / l as f64;
    (q / step).round() * step
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceSetup {
    pub q: f64,
    pub l1: usize,
    pub l2: usize,
    pub xi: f64,
    pub g0: f64,
}

impl InterferenceSetup {
    /// Fails unless both plane waves are periodic on the lattice, i.e. `qL_j/2 ∈ 2πℤ`.
    pub fn new(q: f64, l1: usize, l2: usize, xi: f64, g0: f64) -> Result<Self> {
        if l1 == 0 || l2 == 0 || !l1.is_multiple_of(2) || !l2.is_multiple_of(2) {
            return Err(Error::Config(format!("lattice {l1}x{l2} must have positive even sides")));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Config(format!("q must be positive, got {q}")));
        }
        let l = gcd(l1, l2);
        let nearest = nearest_admissible(q, l);
        let turns = q * l as f64 / (4.0 * PI);
        if (turns - turns.round()).abs() > 1e-9 {
            return Err(Error::IncompatibleWavevector { q, nearest });
        }
        Ok(InterferenceSetup { q, l1, l2, xi, g0 })
    }

    /// Same as [`InterferenceSetup::new`] after moving `q` to the nearest admissible value.
    pub fn snapped(q: f64, l1: usize, l2: usize, xi: f64, g0: f64) -> Result<Self> {
        let mut qs = nearest_admissible(q, gcd(l1.max(1), l2.max(1)));
        if qs <= 0.0 {
            qs = 4.0 * PI / gcd(l1.max(1), l2.max(1)) as f64;
        }
        InterferenceSetup::new(qs, l1, l2, xi, g0)
    }

    /// Period of the pattern in `u`, in lattice units.
    fn u_period(&self) -> usize {
        gcd(self.l1, self.l2)
    }
}

/// `Ψ₀(p) = Ψ¹e^{iq p_X/2} + Ψ²e^{iq p_Y/2}`.
pub fn initial_superposition(setup: &InterferenceSetup) -> Result<SpinorField> {
    // q p/2 = 2π n p / L exactly; reducing n p mod L keeps the phases bit-periodic.
    let l = setup.u_period() as i64;
    let n = (setup.q * l as f64 / (4.0 * PI)).round() as i64;
    let phase = |p: i64| C64::from_polar(1.0, 2.0 * PI * (n * p).rem_euclid(l) as f64 / l as f64);
    let psi1 = Spinor2::new(c(0.0, 0.0), c(1.0, 0.0));
    let psi2 = Spinor2::new(c(0.0, -1.0 / SQRT_2), c(1.0 / SQRT_2, 0.0));
    SpinorField::from_fn(setup.l1, setup.l2, |px, py| {
        psi1.scale(phase(px)) + psi2.scale(phase(py))
    })
}

pub fn n0(q: f64, u: f64) -> f64 {
    2.0 + SQRT_2 * (q * u / 2.0).cos()
}

/// First-order `Δ(q, u) = 2√2 cos(q(u − 2)/2) sin²q / N₀(q, u)`.
pub fn delta_formula(q: f64, u: f64) -> f64 {
    2.0 * SQRT_2 * (q * (u - 2.0) / 2.0).cos() * q.sin().powi(2) / n0(q, u)
}

/// Δ as a function of `u = p_X − p_Y`, one value per residue class modulo the lattice period.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub u: Vec<i64>,
    pub value: Vec<f64>,
}

/// Largest spread of a per-site quantity within any `u` class.
fn collapse(setup: &InterferenceSetup, per_site: &[f64]) -> (DensityProfile, f64) {
    let period = setup.u_period() as i64;
    let mut first: Vec<Option<f64>> = vec![None; period as usize];
    let mut spread: f64 = 0.0;
    for (idx, v) in per_site.iter().enumerate() {
        let (px, py) = ((idx / setup.l2) as i64, (idx % setup.l2) as i64);
        let u = (px - py).rem_euclid(period) as usize;
        match first[u] {
            None => first[u] = Some(*v),
            Some(f) => spread = spread.max((f - v).abs()),
        }
    }
    let profile = DensityProfile {
        u: (0..period).collect(),
        value: first.into_iter().map(|v| v.unwrap_or(f64::NAN)).collect(),
    };
    (profile, spread)
}

/// Tolerance for Δ being constant along each diagonal `u = const`.
pub const DIAGONAL_TOL: f64 = 1e-10;

/// Δ divides a density roundoff of a few ulps by `ξg`, so below `|ξg| = 1e-4` the
/// tolerance grows as `1/|ξg|`.
pub fn diagonal_tolerance(xi_g: f64) -> f64 {
    DIAGONAL_TOL * (1e-4 / xi_g.abs()).max(1.0)
}

/// One step of the pure-shear walk (`m = 0`, `ε = 1`, `G = g0` throughout) applied to Ψ₀.
pub fn delta_simulated(setup: &InterferenceSetup) -> Result<DensityProfile> {
    let xg = setup.xi * setup.g0;
    if xg == 0.0 {
        return Err(Error::Config("Δ is normalised by ξg0, which must be nonzero".into()));
    }
    let psi0 = initial_superposition(setup)?;
    let params = WalkParams::new(1.0, 0.0, setup.xi)?;
    let psi1 = step(&psi0, 0, &Uniform(Angles::pure_shear(xg)), &params)?;
    let (d0, d1) = (psi0.density(), psi1.density());
    let delta: Vec<f64> = d0.iter().zip(&d1).map(|(a, b)| (b - a) / (xg * a)).collect();
    let (profile, spread) = collapse(setup, &delta);
    if spread > diagonal_tolerance(xg) {
        return Err(Error::Consistency(format!(
            "Δ varies by {spread:e} along a diagonal u = const"
        )));
    }
    Ok(profile)
}

/// `max_p |N₁ − N₀|` for the free walk, which should vanish.
pub fn free_step_density_defect(setup: &InterferenceSetup) -> Result<f64> {
    let psi0 = initial_superposition(setup)?;
    let psi1 = step(&psi0, 0, &Uniform(Angles::flat()), &WalkParams::default())?;
    Ok(psi0
        .density()
        .iter()
        .zip(psi1.density())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// `2√2 sin²q √(1 − sin²q/2) / (2 + √2 cos q √(1 − sin²q/2) − sin²q)`.
fn f_branch(q: f64) -> f64 {
    let s2 = q.sin().powi(2);
    let r = (1.0 - s2 / 2.0).sqrt();
    2.0 * SQRT_2 * s2 * r / (2.0 + SQRT_2 * q.cos() * r - s2)
}

/// Closed form of [`delta_max`] for `q ∈ [0, π)`: `f(q)` on `[π/2, π)` and `f(π − q)` below.
pub fn delta_max_closed(q: f64) -> f64 {
    f_branch(q.max(PI - q))
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Dense samples per period before refinement in [`delta_max`].
pub const DELTA_MAX_SAMPLES: usize = 4096;

/// `max_u |Δ(q, u)|` over real `u` in one period `4π/q`.
pub fn delta_max(q: f64) -> f64 {
    if q.sin().abs() < 1e-300 {
        return 0.0;
    }
    let period = 4.0 * PI / q;
    let h = period / DELTA_MAX_SAMPLES as f64;
    let g = |u: f64| delta_formula(q, u).abs();
    let best = (0..DELTA_MAX_SAMPLES)
        .map(|i| i as f64 * h)
        .max_by(|a, b| g(*a).total_cmp(&g(*b)))
        .unwrap();
    golden_max(g, best - h, best + h, 1e-10).1.max(g(best))
}

/// `max |Δ(q, u)|` over integer `u` in one period, the values a lattice can realise.
pub fn delta_max_integer(q: f64) -> f64 {
    if q.sin().abs() < 1e-300 {
        return 0.0;
    }
    let n = (4.0 * PI / q).ceil() as i64;
    (0..=n)
        .map(|u| delta_formula(q, u as f64).abs())
        .fold(0.0, f64::max)
}

/// The two wavenumbers in `(0, π)` where `Δ_M` peaks, ascending, and the peak value.
pub fn delta_max_peaks() -> (f64, f64, f64) {
    // The peak is too flat for comparisons of f to pin q below ~1e-6; bisect on f' instead.
    let (guess, _) = golden_max(f_branch, PI / 2.0, PI, 1e-8);
    let h = 1e-5;
    let df = |q: f64| (f_branch(q + h) - f_branch(q - h)) / (2.0 * h);
    let (mut a, mut b) = (guess - 1e-3, guess + 1e-3);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if df(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let q = 0.5 * (a + b);
    (PI - q, q, f_branch(q))
}

/// CSV tables behind the interference figures.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTables {
    /// `pX,pY,N0,delta` at one `q`.
    pub plane: Table,
    /// `q,u,delta`, two periods per wavenumber.
    pub profiles: Table,
    /// `q,deltaM_continuous,deltaM_integer` over `[0, π)`.
    pub sweep: Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub plane_q: f64,
    pub plane_size: usize,
    pub profile_qs: Vec<f64>,
    pub profile_samples: usize,
    pub sweep_resolution: usize,
}

impl Default for FigureSpec {
    fn default() -> Self {
        let (lo, hi, _) = delta_max_peaks();
        FigureSpec {
            plane_q: hi,
            plane_size: 32,
            profile_qs: vec![lo, PI / 2.0, hi],
            profile_samples: 512,
            sweep_resolution: 512,
        }
    }
}

pub fn plane_table(q: f64, size: usize) -> Table {
    let mut t = Table::new(&["pX", "pY", "N0", "delta"]);
    for px in 0..size {
        for py in 0..size {
            let u = px as f64 - py as f64;
            t.push(vec![px as f64, py as f64, n0(q, u), delta_formula(q, u)]);
        }
    }
    t
}

/// Profiles over `u ∈ [0, 8π/q]`, i.e. exactly two periods, endpoints included.
pub fn profile_table(qs: &[f64], samples: usize) -> Result<Table> {
    let mut t = Table::new(&["q", "u", "delta"]);
    for &q in qs {
        if !(q > 0.0 && q < PI) {
            return Err(Error::Config(format!("profile wavenumber {q} must lie in (0, π)")));
        }
        let span = 8.0 * PI / q;
        for i in 0..=samples {
            let u = span * i as f64 / samples as f64;
            t.push(vec![q, u, delta_formula(q, u)]);
        }
    }
    Ok(t)
}

pub fn sweep_table(resolution: usize) -> Table {
    let rows: Vec<Vec<f64>> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let q = PI * i as f64 / resolution as f64;
            vec![q, delta_max(q), delta_max_integer(q)]
        })
        .collect();
    Table {
        header: vec!["q".into(), "deltaM_continuous".into(), "deltaM_integer".into()],
        rows,
    }
}

pub fn figure_tables(spec: &FigureSpec) -> Result<FigureTables> {
    Ok(FigureTables {
        plane: plane_table(spec.plane_q, spec.plane_size),
        profiles: profile_table(&spec.profile_qs, spec.profile_samples)?,
        sweep: sweep_table(spec.sweep_resolution),
    })
}
