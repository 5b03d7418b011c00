//! The mass-like scalar `T_ε` entering the `Q` gate.
//!
//! `T_ε` reads the angles at `j` and `j + 1`, so it is nonlocal in time. Two
//! evaluations are provided: the direct sum over the cosine matrix `C` and its
//! inverse, and the triad contraction `−ε^{abc} η_{cd} e^μ_(a) D_b e^(d)_μ`.
//! They agree identically; the second also exposes the spatial terms `K^i`
//! that drop out of it.

use crate::error::Result;
use crate::geometry::{dual_triad, triad_from_angles, DualTriad, SINGULAR_DET};
use crate::linalg::{levi_civita, ETA};
use crate::spin::angles::{AngleProvider, Angles};
use crate::spin::walk::WalkParams;

fn inverse_cos(angles: &Angles, j: i64, p1: i64, p2: i64) -> Result<[[f64; 2]; 2]> {
    let t = triad_from_angles(angles);
    let d = dual_triad(&t).map_err(|e| e.at_site(j, p1, p2))?;
    Ok(d.spatial())
}

/// Direct form `Σ_k (C^{k2} D₀(C⁻¹)^{1k} − C^{k1} D₀(C⁻¹)^{2k})`.
pub fn t_epsilon(
    provider: &impl AngleProvider,
    j: i64,
    p1: i64,
    p2: i64,
    params: &WalkParams,
) -> Result<f64> {
    let now = provider.angles(j, p1, p2);
    let next = provider.angles(j + 1, p1, p2);
    let c = now.cos_matrix();
    let inv_now = inverse_cos(&now, j, p1, p2)?;
    let inv_next = inverse_cos(&next, j + 1, p1, p2)?;
    let d0 = |r: usize, s: usize| (inv_next[r][s] - inv_now[r][s]) / params.epsilon;
    Ok((0..2)
        .map(|k| c[k][1] * d0(0, k) - c[k][0] * d0(1, k))
        .sum())
}

/// Finite differences `D_b e^(d)_μ` of the dual triad at one site, indexed `[b][d][μ]`.
///
/// `D₀` is the forward time difference over `ε`; `D₁`, `D₂` are forward
/// differences over the half spacing `ε/2`.
struct DualDifferences {
    diff: [[[f64; 3]; 3]; 3],
}

impl DualDifferences {
    fn at(provider: &impl AngleProvider, j: i64, p1: i64, p2: i64, eps: f64) -> Result<Self> {
        let dual = |jj: i64, q1: i64, q2: i64| -> Result<DualTriad> {
            let a = provider.angles(jj, q1, q2);
            dual_triad(&triad_from_angles(&a)).map_err(|e| e.at_site(jj, q1, q2))
        };
        let here = dual(j, p1, p2)?;
        let neighbours = [
            (dual(j + 1, p1, p2)?, eps),
            (dual(j, p1 + 1, p2)?, eps / 2.0),
            (dual(j, p1, p2 + 1)?, eps / 2.0),
        ];
        let mut diff = [[[0.0; 3]; 3]; 3];
        for (b, (nb, h)) in neighbours.iter().enumerate() {
            for d in 0..3 {
                for mu in 0..3 {
                    diff[b][d][mu] = (nb.component(d, mu) - here.component(d, mu)) / h;
                }
            }
        }
        Ok(DualDifferences { diff })
    }
}

/// Contraction form `−ε^{abc} η_{cd} e^μ_(a) D_b e^(d)_μ`, summed over all indices
/// including the spatial differences.
pub fn t_epsilon_compact(
    provider: &impl AngleProvider,
    j: i64,
    p1: i64,
    p2: i64,
    params: &WalkParams,
) -> Result<f64> {
    let triad = triad_from_angles(&provider.angles(j, p1, p2));
    if triad.spatial_det().abs() < SINGULAR_DET {
        // Surface the same error as the direct form.
        inverse_cos(&provider.angles(j, p1, p2), j, p1, p2)?;
    }
    let dd = DualDifferences::at(provider, j, p1, p2, params.epsilon)?;
    let mut total = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let eps_abc = levi_civita(a, b, c);
                if eps_abc == 0.0 {
                    continue;
                }
                // η is diagonal, so d = c.
                for mu in 0..3 {
                    total -= eps_abc * ETA[c] * triad.component(mu, a) * dd.diff[b][c][mu];
                }
            }
        }
    }
    Ok(total)
}

/// The spatial terms `K^i = ε^{ibc} e^μ_(b) η_{cd} D_i e^(d)_μ`, `i = 1, 2`.
/// They vanish identically for synchronous triads.
pub fn spatial_terms(
    provider: &impl AngleProvider,
    j: i64,
    p1: i64,
    p2: i64,
    params: &WalkParams,
) -> Result<[f64; 2]> {
    let triad = triad_from_angles(&provider.angles(j, p1, p2));
    let dd = DualDifferences::at(provider, j, p1, p2, params.epsilon)?;
    let mut k = [0.0; 2];
    for (slot, i) in (1..3).enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                let e = levi_civita(i, b, c);
                if e == 0.0 {
                    continue;
                }
                for mu in 0..3 {
                    k[slot] += e * triad.component(mu, b) * ETA[c] * dd.diff[i][c][mu];
                }
            }
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::spin::angles::{FromFn, TimeSeries, Uniform};
    use std::f64::consts::FRAC_PI_2;

    fn params(eps: f64) -> WalkParams {
        WalkParams::new(eps, 0.0, 0.0).unwrap()
    }

    #[test]
    fn diagonal_cos_matrix_gives_zero() {
        let p = TimeSeries(|j: i64| {
            let t = j as f64;
            Angles::new(0.3 + 0.2 * t.sin(), FRAC_PI_2, FRAC_PI_2, 0.5 * (0.7 * t).cos())
        });
        for j in 0..10 {
            assert!(t_epsilon(&p, j, 0, 0, &params(1.0)).unwrap().abs() < 1e-15);
            assert!(t_epsilon_compact(&p, j, 0, 0, &params(1.0)).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn antidiagonal_cos_matrix_gives_zero() {
        let p = TimeSeries(|j: i64| {
            let t = j as f64;
            Angles::new(FRAC_PI_2, 0.3 * t.sin(), 0.2 + 0.1 * t, FRAC_PI_2)
        });
        for j in 0..10 {
            assert!(t_epsilon(&p, j, 0, 0, &params(0.5)).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn time_independent_angles_give_zero() {
        let p = Uniform(Angles::new(0.4, 1.1, 0.9, 0.2));
        assert_eq!(t_epsilon(&p, 3, 1, 2, &params(1.0)).unwrap(), 0.0);
        assert_eq!(t_epsilon_compact(&p, 3, 1, 2, &params(1.0)).unwrap(), 0.0);
    }

    #[test]
    fn pure_shear_cancels_at_first_order() {
        let xi = 1e-4;
        let g = |j: i64| (0.1 * j as f64).sin();
        let p = TimeSeries(move |j: i64| Angles::pure_shear(xi * g(j)));
        let max_dg = (0..20)
            .map(|j| (g(j + 1) - g(j)).abs())
            .fold(0.0, f64::max);
        for j in 0..20 {
            let t = t_epsilon(&p, j, 0, 0, &params(1.0)).unwrap();
            assert!(t.abs() <= 10.0 * xi * xi * max_dg, "j={j}: {t}");
        }
    }

    #[test]
    fn spatial_terms_vanish() {
        let p = FromFn(|j: i64, p1: i64, p2: i64| {
            let (t, x, y) = (j as f64, p1 as f64, p2 as f64);
            Angles::new(
                0.4 + 0.1 * (t + x).sin(),
                1.2 + 0.1 * (0.5 * y).cos(),
                1.0 - 0.1 * (x - y).sin(),
                0.3 + 0.2 * (0.3 * t * y).cos(),
            )
        });
        for j in 0..3 {
            for p1 in 0..3 {
                let k = spatial_terms(&p, j, p1, 1, &params(0.7)).unwrap();
                assert!(k[0].abs() < 1e-12 && k[1].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_geometry_reports_site() {
        let p = TimeSeries(|j: i64| {
            if j == 0 {
                Angles::flat()
            } else {
                Angles::new(0.0, 0.0, 0.0, 0.0)
            }
        });
        match t_epsilon(&p, 0, 2, 3, &params(1.0)) {
            Err(Error::SingularGeometry { site, .. }) => assert_eq!(site, Some((1, 2, 3))),
            other => panic!("unexpected {other:?}"),
        }
        assert!(t_epsilon_compact(&p, 0, 2, 3, &params(1.0)).is_err());
    }
}
