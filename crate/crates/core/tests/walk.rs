use std::f64::consts::{FRAC_PI_2, PI};

use dtqw_core::linalg::c;
use dtqw_core::spin::angles::{FromFn, TimeSeries, Uniform};
use dtqw_core::spin::{
    evolve, step, t_epsilon, t_epsilon_compact, transfer_matrix, Angles, SpinorField, WalkParams,
};
use dtqw_core::{Spinor2, C64};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_field(l1: usize, l2: usize, rng: &mut StdRng) -> SpinorField {
    let data: Vec<Spinor2> = (0..l1 * l2)
        .map(|_| {
            Spinor2::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    let f = SpinorField::from_vec(l1, l2, data).unwrap();
    f.scale(c(1.0 / f.norm(), 0.0))
}

fn random_angles(rng: &mut StdRng) -> Angles {
    Angles::new(
        rng.gen_range(0.1..1.4),
        rng.gen_range(0.1..1.4),
        rng.gen_range(0.1..1.4),
        rng.gen_range(0.1..1.4),
    )
}

fn plane_wave(l1: usize, l2: usize, k1: f64, k2: f64, pol: Spinor2) -> SpinorField {
    SpinorField::from_fn(l1, l2, |p1, p2| {
        pol.scale(C64::from_polar(1.0, k1 * p1 as f64 + k2 * p2 as f64))
    })
    .unwrap()
}

#[test]
fn norm_preserved_for_site_dependent_angles() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let coeffs: Vec<f64> = (0..8).map(|_| rng.gen_range(-0.3..0.3)).collect();
        let provider = FromFn(move |j: i64, p1: i64, p2: i64| {
            let (t, x, y) = (j as f64, p1 as f64, p2 as f64);
            Angles::new(
                0.5 + coeffs[0] * (0.3 * t + x).sin(),
                1.0 + coeffs[1] * (0.7 * y - t).cos(),
                0.9 + coeffs[2] * (x * y + coeffs[3]).sin(),
                0.4 + coeffs[4] * (t * coeffs[5] + y).cos(),
            )
        });
        let params = WalkParams::new(rng.gen_range(0.2..1.0), rng.gen_range(0.0..1.0), 0.0).unwrap();
        let psi = random_field(8, 6, &mut rng);
        let out = step(&psi, 2, &provider, &params).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn compact_and_direct_mass_terms_agree_on_random_histories() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let now = random_angles(&mut rng);
        let next = random_angles(&mut rng);
        let p = TimeSeries(move |j: i64| if j == 0 { now } else { next });
        let params = WalkParams::new(rng.gen_range(0.1..1.0), 0.0, 0.0).unwrap();
        let a = t_epsilon(&p, 0, 0, 0, &params).unwrap();
        let b = t_epsilon_compact(&p, 0, 0, 0, &params).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn translation_covariance() {
    let mut rng = StdRng::seed_from_u64(3);
    let psi = random_field(8, 8, &mut rng);
    let a = random_angles(&mut rng);
    let params = WalkParams::new(0.5, 0.3, 0.0).unwrap();
    let lhs = step(&psi.translate(2, 2), 0, &Uniform(a), &params).unwrap();
    let rhs = step(&psi, 0, &Uniform(a), &params).unwrap().translate(2, 2);
    assert!(lhs.max_abs_diff(&rhs) < 1e-14);
}

#[test]
fn plane_wave_step_equals_transfer_matrix() {
    let mut rng = StdRng::seed_from_u64(5);
    let (l1, l2) = (16, 8);
    for _ in 0..20 {
        let a = random_angles(&mut rng);
        let n1 = rng.gen_range(0..l1) as f64;
        let n2 = rng.gen_range(0..l2) as f64;
        let (k1, k2) = (2.0 * PI * n1 / l1 as f64, 2.0 * PI * n2 / l2 as f64);
        let pol = Spinor2::new(c(0.6, 0.1), c(-0.2, 0.7));
        let params = WalkParams::new(0.8, 0.4, 0.0).unwrap();
        let out = step(&plane_wave(l1, l2, k1, k2, pol), 0, &Uniform(a), &params).unwrap();
        let m = transfer_matrix(&a, 0.0, &params, k1, k2);
        let want = plane_wave(l1, l2, k1, k2, m.apply(&pol));
        assert!(out.max_abs_diff(&want) < 1e-12);
    }
}

#[test]
fn flat_axis_mode_picks_up_plane_wave_phase() {
    // Polarization (0, 1) with q = (q, 0) is multiplied by e^{-iq} per step.
    let l = 32;
    let n = 5;
    let k = 2.0 * PI * n as f64 / l as f64;
    let q = 2.0 * k;
    let pol = Spinor2::new(c(0.0, 0.0), c(1.0, 0.0));
    let psi = plane_wave(l, l, k, 0.0, pol);
    let out = step(&psi, 0, &Uniform(Angles::flat()), &WalkParams::default()).unwrap();
    assert!(out.max_abs_diff(&psi.scale(C64::from_polar(1.0, -q))) < 1e-12);
}

#[test]
fn long_flat_run_keeps_norm() {
    let mut rng = StdRng::seed_from_u64(1);
    let psi = random_field(64, 64, &mut rng);
    let out = evolve(&psi, 0, 1000, &Uniform(Angles::flat()), &WalkParams::default()).unwrap();
    assert!((out.norm() - 1.0).abs() < 1e-9);
}

#[test]
fn evolve_composes_steps() {
    let mut rng = StdRng::seed_from_u64(9);
    let psi = random_field(6, 6, &mut rng);
    let p = TimeSeries(|j: i64| Angles::pure_shear(0.05 * (0.4 * j as f64).sin()));
    let params = WalkParams::new(1.0, 0.2, 0.05).unwrap();
    let two = evolve(&psi, 3, 2, &p, &params).unwrap();
    let manual = step(&step(&psi, 3, &p, &params).unwrap(), 4, &p, &params).unwrap();
    assert_eq!(two, manual);
}

#[test]
fn mass_gate_mixes_uniform_field() {
    // q = 0, flat: only the Q gate acts, and it rotates by ε m about σ₁.
    let params = WalkParams::new(0.5, 0.5, 0.0).unwrap();
    let psi = SpinorField::from_fn(4, 4, |_, _| Spinor2::new(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
    let out = step(&psi, 0, &Uniform(Angles::flat()), &params).unwrap();
    let th = params.epsilon * params.mass;
    let s = out.get(1, 2);
    assert!((s.minus - c(th.cos(), 0.0)).norm() < 1e-14);
    assert!((s.plus - c(0.0, -th.sin())).norm() < 1e-14);
}

#[test]
fn singular_angles_are_reported() {
    let p = Uniform(Angles::new(0.0, 0.0, 0.0, 0.0));
    let psi = SpinorField::zeros(4, 4).unwrap();
    assert!(step(&psi, 0, &p, &WalkParams::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn step_is_unitary(
        t in prop::array::uniform4(0.1f64..1.4),
        dt in prop::array::uniform4(-0.05f64..0.05),
        eps in 0.1f64..1.0,
        mass in 0.0f64..2.0,
        seed in any::<u64>(),
    ) {
        let now = Angles::new(t[0], t[1], t[2], t[3]);
        let next = Angles::new(t[0] + dt[0], t[1] + dt[1], t[2] + dt[2], t[3] + dt[3]);
        let p = TimeSeries(move |j: i64| if j == 0 { now } else { next });
        let params = WalkParams::new(eps, mass, 0.0).unwrap();
        let psi = random_field(6, 4, &mut StdRng::seed_from_u64(seed));
        let out = step(&psi, 0, &p, &params).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transfer_matrix_is_unitary(
        t in prop::array::uniform4(0.0f64..FRAC_PI_2),
        k1 in -PI..PI,
        k2 in -PI..PI,
        te in -1.0f64..1.0,
    ) {
        let a = Angles::new(t[0], t[1], t[2], t[3]);
        let m = transfer_matrix(&a, te, &WalkParams::new(0.7, 0.3, 0.0).unwrap(), k1, k2);
        prop_assert!(m.unitarity_defect() < 1e-13);
    }
}
