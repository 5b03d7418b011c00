//! Sampled spectra over the Brillouin zone, the ρ maxima and the modes left
//! untouched by the shear at first order.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectral::modes::{abar_bbar, rho, ModePoint};
use crate::table::Table;

/// What a [`SpectrumGrid`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Rho,
    W1Modulus,
    /// Energy of the upper band of the exact operator.
    Energy,
    Custom,
}

/// Real values on the `N × N` grid `q_i = −2π + 4πi/N`, row-major with `q_X` slow.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub resolution: usize,
    pub kind: SpectrumKind,
    pub values: Vec<f64>,
}

pub fn grid_coord(i: usize, n: usize) -> f64 {
    -2.0 * PI + 4.0 * PI * i as f64 / n as f64
}

impl SpectrumGrid {
    pub fn sample(resolution: usize, kind: SpectrumKind, f: impl Fn(ModePoint) -> f64 + Sync) -> Self {
        let n = resolution;
        let values = (0..n * n)
            .into_par_iter()
            .map(|idx| f(ModePoint::new(grid_coord(idx / n, n), grid_coord(idx % n, n))))
            .collect();
        SpectrumGrid {
            resolution,
            kind,
            values,
        }
    }

    pub fn point(&self, idx: usize) -> ModePoint {
        let n = self.resolution;
        ModePoint::new(grid_coord(idx / n, n), grid_coord(idx % n, n))
    }

    /// Value at `(i, j)` with periodic wrap.
    pub fn at(&self, i: i64, j: i64) -> f64 {
        let n = self.resolution as i64;
        self.values[(i.rem_euclid(n) * n + j.rem_euclid(n)) as usize]
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["qX", "qY", "value"]);
        for (idx, v) in self.values.iter().enumerate() {
            let p = self.point(idx);
            t.push(vec![p.qx, p.qy, *v]);
        }
        t
    }
}

/// Derivative-free coordinate ascent, halving the step until it drops below `tol`.
fn coordinate_ascent(f: impl Fn(ModePoint) -> f64, start: ModePoint, h0: f64, tol: f64) -> (ModePoint, f64) {
    let mut p = start;
    let mut best = f(p);
    let mut h = h0;
    while h >= tol {
        let mut moved = false;
        for (dx, dy) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let cand = ModePoint::new(p.qx + dx, p.qy + dy);
            let v = f(cand);
            if v > best {
                best = v;
                p = cand;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    (p, best)
}

/// Grid indices that are strict-or-tied local maxima among their 8 periodic neighbours.
fn local_maxima(grid: &SpectrumGrid) -> Vec<usize> {
    let n = grid.resolution as i64;
    (0..grid.values.len())
        .into_par_iter()
        .filter(|&idx| {
            let (i, j) = (idx as i64 / n, idx as i64 % n);
            let v = grid.values[idx];
            (-1..=1).all(|di| (-1..=1).all(|dj| (di == 0 && dj == 0) || grid.at(i + di, j + dj) <= v))
        })
        .collect()
}

/// The four absolute maxima of `ρ` over `[−2π, 2π)²`, sorted lexicographically
/// by `(q_X, q_Y)`.
pub fn find_rho_maxima(resolution: usize) -> Result<Vec<(ModePoint, f64)>> {
    if resolution < 256 {
        return Err(Error::Config(format!(
            "rho maxima search needs resolution >= 256, got {resolution}"
        )));
    }
    let grid = SpectrumGrid::sample(resolution, SpectrumKind::Rho, rho);
    let h = 4.0 * PI / resolution as f64;
    let mut cands = local_maxima(&grid);
    cands.sort_by(|a, b| grid.values[*b].total_cmp(&grid.values[*a]));
    // Keep comfortably more seeds than maxima so near-ties on the grid cannot
    // crowd out a true maximum.
    cands.truncate(32);

    let mut refined: Vec<(ModePoint, f64)> = cands
        .par_iter()
        .map(|&idx| {
            let (p, v) = coordinate_ascent(rho, grid.point(idx), h, 1e-8);
            (p.wrapped(), v)
        })
        .collect();
    refined.sort_by(|a, b| b.1.total_cmp(&a.1));

    let mut out: Vec<(ModePoint, f64)> = Vec::new();
    for (p, v) in refined {
        if out.iter().all(|(q, _)| q.dist(&p) > 1e-4) {
            out.push((p, v));
        }
        if out.len() == 4 {
            break;
        }
    }
    out.sort_by(|a, b| a.0.qx.total_cmp(&b.0.qx).then(a.0.qy.total_cmp(&b.0.qy)));
    Ok(out)
}

/// Residual `(Re Ā, Im Ā, Re B̄, Im B̄)` and its Jacobian.
fn zero_system(q: ModePoint) -> ([f64; 4], [[f64; 2]; 4]) {
    let (x, y) = (q.qx, q.qy);
    let (a, b) = abar_bbar(q);
    let jac = [
        [
            (x - y).sin(),
            -(x - y).sin() - y.sin() - y.cos() + 2.0 * (2.0 * y).cos(),
        ],
        [(x + y).sin(), (x + y).sin() - y.sin() + y.cos()],
        [
            (x + y).cos(),
            (x + y).cos() - y.cos() - y.sin() + 2.0 * (2.0 * y).sin(),
        ],
        [(x - y).cos(), -(x - y).cos() + y.cos() - y.sin()],
    ];
    ([a.re, a.im, b.re, b.im], jac)
}

/// Gauss–Newton on the overdetermined system `Ā = B̄ = 0`.
fn gauss_newton(start: ModePoint) -> (ModePoint, f64) {
    let mut p = start;
    for _ in 0..50 {
        let (r, j) = zero_system(p);
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for k in 0..4 {
            a11 += j[k][0] * j[k][0];
            a12 += j[k][0] * j[k][1];
            a22 += j[k][1] * j[k][1];
            g1 += j[k][0] * r[k];
            g2 += j[k][1] * r[k];
        }
        let det = a11 * a22 - a12 * a12;
        if det.abs() < 1e-300 {
            break;
        }
        let dx = (a22 * g1 - a12 * g2) / det;
        let dy = (a11 * g2 - a12 * g1) / det;
        p = ModePoint::new(p.qx - dx, p.qy - dy);
        if dx.hypot(dy) < 1e-15 {
            break;
        }
    }
    (p, rho(p))
}

/// Zeros of `(A, B)` in the closed square `[−2π, 2π]²`, sorted lexicographically.
///
/// The closed square is used because the expected set includes points on its
/// upper edges (e.g. `(2π, 2π)`); `A` and `B` are `2π`-periodic so edge points
/// are genuine copies. A candidate counts as a zero when `ρ < tolerance` after
/// refinement.
pub fn unaffected_modes(tolerance: f64) -> Result<Vec<ModePoint>> {
    if !(tolerance > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tolerance}")));
    }
    let n = 512usize;
    let h = 4.0 * PI / n as f64;
    let coord = |i: usize| -2.0 * PI + h * i as f64;
    let f = |x: f64, y: f64| rho(ModePoint::new(x, y));

    let seeds: Vec<ModePoint> = (0..(n + 1) * (n + 1))
        .into_par_iter()
        .filter_map(|idx| {
            let (x, y) = (coord(idx / (n + 1)), coord(idx % (n + 1)));
            let v = f(x, y);
            let is_min = (-1..=1).all(|di: i32| {
                (-1..=1).all(|dj: i32| {
                    (di == 0 && dj == 0) || f(x + di as f64 * h, y + dj as f64 * h) >= v
                })
            });
            (is_min && v < 0.5).then(|| ModePoint::new(x, y))
        })
        .collect();

    let edge = 2.0 * PI + 1e-9;
    let mut zeros: Vec<ModePoint> = Vec::new();
    for s in seeds {
        let (p, v) = gauss_newton(s);
        if v < tolerance
            && p.qx.abs() <= edge
            && p.qy.abs() <= edge
            && zeros.iter().all(|z| z.dist(&p) > 1e-6)
        {
            zeros.push(p);
        }
    }
    zeros.sort_by(|a, b| a.qx.total_cmp(&b.qx).then(a.qy.total_cmp(&b.qy)));
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_half_open_zone() {
        assert_eq!(grid_coord(0, 8), -2.0 * PI);
        assert!((grid_coord(8, 8) - 2.0 * PI).abs() < 1e-15);
        let g = SpectrumGrid::sample(4, SpectrumKind::Custom, |q| q.qx);
        assert_eq!(g.values.len(), 16);
        assert_eq!(g.at(-1, 0), g.at(3, 0));
    }

    #[test]
    fn ascent_finds_quadratic_peak() {
        let f = |q: ModePoint| -(q.qx - 0.3).powi(2) - 2.0 * (q.qy + 0.7).powi(2);
        let (p, _) = coordinate_ascent(f, ModePoint::new(0.0, 0.0), 0.1, 1e-10);
        assert!((p.qx - 0.3).abs() < 1e-8 && (p.qy + 0.7).abs() < 1e-8);
    }

    #[test]
    fn low_resolution_is_rejected() {
        assert!(find_rho_maxima(128).is_err());
    }
}
