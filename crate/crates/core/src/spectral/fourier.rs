//! Lattice Fourier transform of spinor fields.
//!
//! Convention: `ψ̂(n₁, n₂) = N^{-1/2} Σ_p ψ(p) e^{−i(k₁p₁ + k₂p₂)}` with
//! `k_j = 2π n_j / L_j` and `N = L₁L₂`. The `N^{-1/2}` factor on both sides
//! makes the transform unitary, so Parseval holds without weights.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::Result;
use crate::linalg::{Spinor2, C64};
use crate::spin::field::SpinorField;

/// Reusable 2-D FFT plans for one lattice shape.
pub struct Fourier2d {
    l1: usize,
    l2: usize,
    fwd1: Arc<dyn Fft<f64>>,
    fwd2: Arc<dyn Fft<f64>>,
    inv1: Arc<dyn Fft<f64>>,
    inv2: Arc<dyn Fft<f64>>,
}

impl Fourier2d {
    pub fn new(l1: usize, l2: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fourier2d {
            l1,
            l2,
            fwd1: planner.plan_fft_forward(l1),
            fwd2: planner.plan_fft_forward(l2),
            inv1: planner.plan_fft_inverse(l1),
            inv2: planner.plan_fft_inverse(l2),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.l1, self.l2)
    }

    /// In-place transform of row-major data (`p₁` slow), unnormalized.
    fn transform(&self, data: &mut [C64], along1: &Arc<dyn Fft<f64>>, along2: &Arc<dyn Fft<f64>>) {
        let (l1, l2) = (self.l1, self.l2);
        assert_eq!(data.len(), l1 * l2);
        data.par_chunks_mut(l2).for_each(|row| along2.process(row));
        let mut cols: Vec<C64> = vec![C64::new(0.0, 0.0); l1 * l2];
        // Transpose so each column is contiguous.
        for p1 in 0..l1 {
            for p2 in 0..l2 {
                cols[p2 * l1 + p1] = data[p1 * l2 + p2];
            }
        }
        cols.par_chunks_mut(l1).for_each(|col| along1.process(col));
        for p1 in 0..l1 {
            for p2 in 0..l2 {
                data[p1 * l2 + p2] = cols[p2 * l1 + p1];
            }
        }
    }

    pub fn forward(&self, data: &mut [C64]) {
        self.transform(data, &self.fwd1, &self.fwd2);
        let s = 1.0 / ((self.l1 * self.l2) as f64).sqrt();
        data.iter_mut().for_each(|v| *v *= s);
    }

    pub fn inverse(&self, data: &mut [C64]) {
        self.transform(data, &self.inv1, &self.inv2);
        let s = 1.0 / ((self.l1 * self.l2) as f64).sqrt();
        data.iter_mut().for_each(|v| *v *= s);
    }

    /// Lattice wavenumber of index `n` along an axis of length `l`, folded into `[−π, π)`.
    pub fn wavenumber(n: usize, l: usize) -> f64 {
        let n = n as i64;
        let l = l as i64;
        let signed = if 2 * n >= l { n - l } else { n };
        2.0 * PI * signed as f64 / l as f64
    }

    /// Spectral derivative along `axis` (1 or 2) of a periodic complex array sampled
    /// with spacing `h`. The Nyquist mode is dropped, as its derivative is not real-consistent.
    pub fn derivative(&self, data: &[C64], axis: usize, h: f64) -> Vec<C64> {
        let (l1, l2) = (self.l1, self.l2);
        let mut work = data.to_vec();
        self.forward(&mut work);
        work.par_iter_mut().enumerate().for_each(|(idx, v)| {
            let (n, l) = if axis == 1 { (idx / l2, l1) } else { (idx % l2, l2) };
            if 2 * n == l {
                *v = C64::new(0.0, 0.0);
            } else {
                *v *= C64::new(0.0, Self::wavenumber(n, l) / h);
            }
        });
        self.inverse(&mut work);
        work
    }
}

fn split(field: &SpinorField) -> (Vec<C64>, Vec<C64>) {
    field.data().iter().map(|s| (s.minus, s.plus)).unzip()
}

fn join(field: &SpinorField, minus: Vec<C64>, plus: Vec<C64>) -> Result<SpinorField> {
    let (l1, l2) = field.shape();
    let data = minus
        .into_iter()
        .zip(plus)
        .map(|(m, p)| Spinor2::new(m, p))
        .collect();
    SpinorField::from_vec(l1, l2, data)
}

/// Mode amplitudes of both spin components, laid out like the input with index `(n₁, n₂)`.
pub fn dft_field(field: &SpinorField) -> SpinorField {
    let (l1, l2) = field.shape();
    let plan = Fourier2d::new(l1, l2);
    let (mut m, mut p) = split(field);
    plan.forward(&mut m);
    plan.forward(&mut p);
    join(field, m, p).expect("shape preserved")
}

pub fn idft_field(modes: &SpinorField) -> SpinorField {
    let (l1, l2) = modes.shape();
    let plan = Fourier2d::new(l1, l2);
    let (mut m, mut p) = split(modes);
    plan.inverse(&mut m);
    plan.inverse(&mut p);
    join(modes, m, p).expect("shape preserved")
}
