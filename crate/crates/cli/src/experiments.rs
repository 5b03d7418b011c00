//! One function per experiment. Each is pure: it returns tables and a JSON
//! summary and leaves writing to the runner.

use std::f64::consts::{FRAC_PI_2, PI};

use dtqw_core::continuum::convergence::EPSILONS;
use dtqw_core::continuum::{convergence_table, ContinuumCase};
use dtqw_core::geometry::{dual_triad, gw_angles, gw_metric_reference, metric_from_dual_triad, triad_from_angles};
use dtqw_core::interference::{
    delta_formula, delta_max_closed, delta_max_peaks, delta_simulated, plane_table, profile_table, sweep_table,
    InterferenceSetup,
};
use dtqw_core::linalg::c;
use dtqw_core::spectral::{find_rho_maxima, rho, unaffected_modes, SpectrumGrid, SpectrumKind};
use dtqw_core::spin::angles::Sampled;
use dtqw_core::spin::{step, SpinorField, WalkParams};
use dtqw_core::table::Table;
use dtqw_core::Spinor2;
use serde_json::{json, Value};

use crate::config::{Experiment, RunConfig};
use crate::error::CliError;

/// Named CSV tables plus experiment-specific results for the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<(String, Table)>,
    pub results: Value,
}

pub fn compute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.experiment {
        Experiment::Evolve => evolve(cfg),
        Experiment::Spectrum => spectrum(cfg),
        Experiment::RhoMax => rho_max(cfg),
        Experiment::UnaffectedModes => unaffected(),
        Experiment::Interference => interference(cfg),
        Experiment::DeltamSweep => deltam_sweep(cfg),
        Experiment::ContinuumCheck => continuum_check(cfg),
        Experiment::GwAngles => gw_angle_series(cfg),
    }
}

/// Per-step norm drift allowed by `evolve` before it reports a numeric failure.
pub const NORM_TOL: f64 = 1e-12;

/// Normalised Gaussian packet at the lattice centre with polarization `(1, i)/√2`.
fn gaussian_packet(l1: usize, l2: usize) -> Result<SpinorField, CliError> {
    let sigma = l1.min(l2) as f64 / 8.0;
    let (c1, c2) = (l1 as f64 / 2.0, l2 as f64 / 2.0);
    let pol = Spinor2::new(c(1.0, 0.0), c(0.0, 1.0));
    let psi = SpinorField::from_fn(l1, l2, |p1, p2| {
        let r2 = (p1 as f64 - c1).powi(2) + (p2 as f64 - c2).powi(2);
        pol.scale(c((-r2 / (4.0 * sigma * sigma)).exp(), 0.0))
    })?;
    Ok(psi.scale(c(1.0 / psi.norm(), 0.0)))
}

fn moments(psi: &SpinorField) -> (f64, f64, f64) {
    let (mut m1, mut m2, mut m11) = (0.0, 0.0, 0.0);
    for (idx, d) in psi.density().iter().enumerate() {
        let (p1, p2) = psi.site(idx);
        let (x, y) = (p1 as f64, p2 as f64);
        m1 += d * x;
        m2 += d * y;
        m11 += d * (x * x + y * y);
    }
    let n = psi.norm_sqr();
    let (m1, m2) = (m1 / n, m2 / n);
    (m1, m2, (m11 / n - m1 * m1 - m2 * m2).max(0.0).sqrt())
}

fn evolve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let [l1, l2] = cfg.lattice;
    let p = cfg.params;
    let params = WalkParams::new(p.epsilon, p.mass, p.xi)?;
    let gw = cfg.gw_params();
    let provider = Sampled::new(&gw, p.epsilon);
    let mut psi = gaussian_packet(l1, l2)?;
    let mut series = Table::new(&["step", "T", "norm", "mean_p1", "mean_p2", "width"]);
    let mut worst: f64 = 0.0;
    for j in 0..=cfg.steps {
        let (m1, m2, w) = moments(&psi);
        let norm = psi.norm();
        series.push(vec![j as f64, j as f64 * p.epsilon, norm, m1, m2, w]);
        worst = worst.max((norm - 1.0).abs());
        if worst > NORM_TOL * (j + 1) as f64 {
            return Err(CliError::Numeric(format!("norm drifted by {worst:e} after {j} steps")));
        }
        if j < cfg.steps {
            psi = step(&psi, j as i64, &provider, &params)?;
        }
    }
    let mut density = Table::new(&["pX", "pY", "density"]);
    for (idx, d) in psi.density().iter().enumerate() {
        let (p1, p2) = psi.site(idx);
        density.push(vec![p1 as f64, p2 as f64, *d]);
    }
    Ok(Outcome {
        tables: vec![("evolve_series.csv".into(), series), ("evolve_density.csv".into(), density)],
        results: json!({
            "initial_state": "gaussian, sigma = min(L1, L2)/8, centred, polarization (1, i)/sqrt2",
            "max_norm_defect": worst,
        }),
    })
}

fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let grid = SpectrumGrid::sample(cfg.resolution, SpectrumKind::Rho, rho);
    let max = grid.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = grid.values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(Outcome {
        tables: vec![("spectrum.csv".into(), grid.to_table())],
        results: json!({ "quantity": "rho", "grid_max": max, "grid_min": min }),
    })
}

fn rho_max(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let maxima = find_rho_maxima(cfg.resolution)?;
    let mut t = Table::new(&["qX", "qY", "rho"]);
    for (p, v) in &maxima {
        t.push(vec![p.qx, p.qy, *v]);
    }
    Ok(Outcome {
        tables: vec![("rho_maxima.csv".into(), t)],
        results: json!({ "count": maxima.len() }),
    })
}

/// Refinement tolerance on `ρ` for accepting a zero.
pub const ZERO_TOL: f64 = 1e-10;

fn unaffected() -> Result<Outcome, CliError> {
    let zeros = unaffected_modes(ZERO_TOL)?;
    let mut t = Table::new(&["qX", "qY", "rho"]);
    for p in &zeros {
        t.push(vec![p.qx, p.qy, rho(*p)]);
    }
    Ok(Outcome {
        tables: vec![("unaffected_modes.csv".into(), t)],
        results: json!({ "count": zeros.len(), "tolerance": ZERO_TOL }),
    })
}

fn interference(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let [l1, l2] = cfg.lattice;
    let (q_lo, q_hi, _) = delta_max_peaks();
    let q_req = cfg.q.unwrap_or(q_hi);
    let g0 = cfg.gw.g.to_waveform().eval(cfg.params.epsilon);
    let setup = InterferenceSetup::snapped(q_req, l1, l2, cfg.params.xi, g0)?;
    let prof = delta_simulated(&setup)?;

    let mut t = Table::new(&["u", "delta_simulated", "delta_formula"]);
    let mut err: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for (u, v) in prof.u.iter().zip(&prof.value) {
        let f = delta_formula(setup.q, *u as f64);
        err = err.max((v - f).abs());
        peak = peak.max(v.abs());
        t.push(vec![*u as f64, *v, f]);
    }
    let mut qs = vec![q_lo, FRAC_PI_2, q_hi];
    if !qs.iter().any(|q| (q - q_req).abs() < 1e-12) {
        qs.push(q_req);
    }
    let profiles = profile_table(&qs, 512)?;
    let plane = plane_table(q_req, l1.min(l2));
    Ok(Outcome {
        tables: vec![
            ("interference_profile.csv".into(), t),
            ("interference_plane.csv".into(), plane),
            ("interference_profiles.csv".into(), profiles),
        ],
        results: json!({
            "q_requested": q_req,
            "q_used": setup.q,
            "xi": setup.xi,
            "g0": g0,
            "max_abs_delta_simulated": peak,
            "max_abs_error_vs_formula": err,
            "delta_max_closed_at_q_used": delta_max_closed(setup.q),
        }),
    })
}

fn deltam_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let t = sweep_table(cfg.resolution);
    let (q_lo, q_hi, v) = delta_max_peaks();
    Ok(Outcome {
        tables: vec![("deltam_sweep.csv".into(), t)],
        results: json!({
            "q_max": q_hi,
            "q_max_reflected": q_lo,
            "delta_max": v,
            "wavelengths": [4.0 * PI / q_hi, 4.0 * PI / q_lo],
        }),
    })
}

/// Accepted range for the fitted continuum order.
pub const ORDER_RANGE: (f64, f64) = (1.8, 2.2);

fn continuum_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let xi_g = cfg.params.xi * cfg.gw.g.to_waveform().eval(0.0);
    let xi_g = if xi_g == 0.0 { 1e-3 } else { xi_g };
    let mass = if cfg.params.mass == 0.0 { 0.5 } else { cfg.params.mass };
    let cases = [
        ContinuumCase::Flat,
        ContinuumCase::PureShear { xi_g },
        ContinuumCase::Massive { mass },
        ContinuumCase::Varying,
    ];
    let mut tables = Vec::new();
    let mut results = serde_json::Map::new();
    let mut failures = Vec::new();
    for case in cases {
        let (t, order) = convergence_table(case, &EPSILONS)?;
        let entry = match case {
            ContinuumCase::PureShear { xi_g } => json!({ "order": order, "xi_g": xi_g }),
            ContinuumCase::Massive { mass } => json!({ "order": order, "mass": mass }),
            _ => json!({ "order": order }),
        };
        if !(ORDER_RANGE.0..=ORDER_RANGE.1).contains(&order) {
            failures.push(format!("{} order {order:.4}", case.name()));
        }
        results.insert(case.name().into(), entry);
        tables.push((format!("continuum_{}.csv", case.name()), t));
    }
    if !failures.is_empty() {
        return Err(CliError::Numeric(format!(
            "continuum order outside [{}, {}]: {}",
            ORDER_RANGE.0,
            ORDER_RANGE.1,
            failures.join("; ")
        )));
    }
    Ok(Outcome { tables, results: Value::Object(results) })
}

fn gw_angle_series(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let gw = cfg.gw_params();
    let mut t = Table::new(&[
        "T", "theta11", "theta12", "theta21", "theta22", "g11", "g12", "g22", "ref_g11", "ref_g12", "ref_g22",
    ]);
    let mut worst: f64 = 0.0;
    for j in 0..=cfg.steps {
        let time = j as f64 * cfg.params.epsilon;
        let a = gw_angles(&gw, time)?;
        let g = metric_from_dual_triad(&dual_triad(&triad_from_angles(&a))?).g;
        let r = gw_metric_reference(&gw, time).g;
        worst = worst.max((g[1][1] - r[1][1]).abs()).max((g[2][2] - r[2][2]).abs());
        t.push(vec![time, a.t11, a.t12, a.t21, a.t22, g[1][1], g[1][2], g[2][2], r[1][1], r[1][2], r[2][2]]);
    }
    Ok(Outcome {
        tables: vec![("gw_angles.csv".into(), t)],
        results: json!({ "max_diagonal_metric_deviation": worst }),
    })
}
