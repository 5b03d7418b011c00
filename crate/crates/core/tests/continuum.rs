use std::f64::consts::PI;
use std::time::Instant;

use dtqw_core::continuum::convergence::{BOX, EPSILONS};
use dtqw_core::continuum::*;
use dtqw_core::geometry::{dual_triad, triad_from_angles, DualTriad};
use dtqw_core::linalg::c;
use dtqw_core::spin::angles::{ContinuumFn, Sampled, Uniform};
use dtqw_core::spin::{t_epsilon, Angles, SpinorField, WalkParams};
use dtqw_core::{Spinor2, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn second_order_in_epsilon() {
    let t = Instant::now();
    for case in [
        ContinuumCase::Flat,
        ContinuumCase::PureShear { xi_g: 1e-3 },
        ContinuumCase::Massive { mass: 0.5 },
        ContinuumCase::Varying,
    ] {
        let (table, order) = convergence_table(case, &EPSILONS).unwrap();
        assert!((1.8..=2.2).contains(&order), "{}: order {order}\n{}", case.name(), table.to_csv());
    }
    assert!(t.elapsed().as_secs_f64() < 60.0);
}

#[test]
fn uniform_massive_field_follows_mass_gate() {
    let mut errs = Vec::new();
    for eps in EPSILONS {
        let l = (2.0 * BOX / eps).round() as usize;
        let psi = SpinorField::from_fn(l, l, |_, _| Spinor2::new(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        let params = WalkParams::new(eps, 0.5, 0.0).unwrap();
        errs.push(continuum_residual(&Uniform(Angles::flat()), &params, &psi, 0).unwrap());
    }
    let order = fit_order(&EPSILONS, &errs);
    assert!((order - 2.0).abs() < 0.1, "{errs:?}");
}

fn random_series(rng: &mut StdRng) -> impl Fn(f64) -> dtqw_core::Result<DualTriad> {
    let base: Vec<f64> = (0..4).map(|_| rng.gen_range(0.1..1.4)).collect();
    let amp: Vec<f64> = (0..4).map(|_| rng.gen_range(-0.1..0.1)).collect();
    let om: Vec<f64> = (0..4).map(|_| rng.gen_range(0.2..2.0)).collect();
    move |t: f64| {
        let th = |i: usize| base[i] + amp[i] * (om[i] * t).sin();
        dual_triad(&triad_from_angles(&Angles::new(th(0), th(1), th(2), th(3))))
    }
}

#[test]
fn t0_forms_agree() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let series = random_series(&mut rng);
        let t = rng.gen_range(0.0..5.0);
        let a = t0(&series, t, 1e-4).unwrap();
        let b = t0_raised(&series, t, 1e-4).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn lattice_mass_term_converges_to_t0() {
    let th = |t: f64| Angles::new(0.3 + 0.1 * t.sin(), 1.2 + 0.05 * t, 1.0 - 0.1 * (2.0 * t).cos(), 0.4);
    let field = ContinuumFn(move |t: f64, _x: f64, _y: f64| th(t));
    let series = |t: f64| dual_triad(&triad_from_angles(&th(t)));
    let exact = t0(series, 0.0, 1e-5).unwrap();
    let err = |eps: f64| {
        let p = Sampled::new(&field, eps);
        let params = WalkParams::new(eps, 0.0, 0.0).unwrap();
        (t_epsilon(&p, 0, 0, 0, &params).unwrap() - exact).abs()
    };
    let (e2, e3) = (err(1e-2), err(1e-3));
    let order = (e2 / e3).log10();
    assert!((order - 1.0).abs() < 0.1, "{e2} {e3}");
    // Richardson removes the first-order term.
    assert!((2.0 * err_signed(&field, 5e-4, exact) - err_signed(&field, 1e-3, exact)).abs() < 1e-5);
}

fn err_signed(field: &impl dtqw_core::spin::AngleField, eps: f64, exact: f64) -> f64 {
    let p = Sampled::new(field, eps);
    let params = WalkParams::new(eps, 0.0, 0.0).unwrap();
    t_epsilon(&p, 0, 0, 0, &params).unwrap() - exact
}

#[test]
fn flat_plane_wave_energies_are_plus_minus_q() {
    let (l, eps) = (32usize, 0.1);
    let h = eps / 2.0;
    let (n1, n2) = (3.0, -2.0);
    let kx = 2.0 * PI * n1 / (l as f64 * h);
    let ky = 2.0 * PI * n2 / (l as f64 * h);
    let ham = HamiltonianField::build(&Uniform(Angles::flat()), 0.0, l, l, eps, 0.0).unwrap();
    // On e^{ik·x} the symbol is B¹k_x + B²k_y, Hermitian with eigenvalues ±|k|.
    let [b1, b2] = b_matrices(&Angles::flat());
    let sym = b1.scale(c(kx, 0.0)) + b2.scale(c(ky, 0.0));
    let [lo, hi] = dtqw_core::spectral::eigen(&sym).unwrap();
    assert!((lo.eigenvalue + hi.eigenvalue).norm() < 1e-12);
    let norm_k = kx.hypot(ky);
    for pair in [lo, hi] {
        assert!((pair.eigenvalue.re.abs() - norm_k).abs() < 1e-12);
        assert!(pair.eigenvalue.im.abs() < 1e-12);
        let pol = pair.eigenvector;
        let psi = SpinorField::from_fn(l, l, |p1, p2| {
            pol.scale(C64::from_polar(1.0, kx * p1 as f64 * h + ky * p2 as f64 * h))
        })
        .unwrap();
        let out = hamiltonian_apply(&psi, &ham).unwrap();
        assert!(out.max_abs_diff(&psi.scale(pair.eigenvalue)) < 1e-10);
    }
}

#[test]
fn hamiltonian_is_hermitian_on_smooth_fields() {
    let (l, eps) = (32usize, 0.1);
    let field = ContinuumFn(|t: f64, x: f64, y: f64| {
        let k = 2.0 * PI / 1.6;
        Angles::new(
            0.2 + 0.05 * (k * x + t).sin(),
            1.3 + 0.04 * (k * y).cos(),
            1.25,
            0.15 + 0.05 * (k * (x + y)).cos(),
        )
    });
    let ham = HamiltonianField::build(&field, 0.3, l, l, eps, 0.4).unwrap();
    let phi = smooth_field(l, l, eps, 1.6).unwrap();
    let psi = smooth_field(l, l, eps, 1.6).unwrap().translate(3, -5);
    let lhs = phi.inner(&hamiltonian_apply(&psi, &ham).unwrap());
    let rhs = hamiltonian_apply(&phi, &ham).unwrap().inner(&psi);
    assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
}

#[test]
fn identities() {
    let g = GammaRep::standard();
    assert!(g.clifford_defect() < 1e-14);
    assert_eq!(g.j_tensor_defect(), 0.0);
}

#[test]
fn band_limit_fraction_of_smooth_field_is_tiny() {
    let psi = smooth_field(16, 16, 0.2, BOX).unwrap();
    assert!(high_band_fraction(&psi) < 1e-20);
}
