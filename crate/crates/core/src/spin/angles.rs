//! Sources of the four walk angles `θ^{11}, θ^{12}, θ^{21}, θ^{22}`.
//!
//! An [`AngleProvider`] answers on the integer spacetime lattice `(j, p₁, p₂)`.
//! An [`AngleField`] is a continuum description in coordinates `(T, X, Y)`; it
//! is sampled onto the lattice with [`Sampled`] using `T = jε`, `X = p₁ε/2`,
//! `Y = p₂ε/2`.

use std::f64::consts::FRAC_PI_2;

/// Selects one of the four angles by its `(k, l)` index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleIndex {
    A11,
    A12,
    A21,
    A22,
}

impl AngleIndex {
    pub const ALL: [AngleIndex; 4] = [
        AngleIndex::A11,
        AngleIndex::A12,
        AngleIndex::A21,
        AngleIndex::A22,
    ];

    /// Zero-based `(k−1, l−1)`.
    pub fn pair(self) -> (usize, usize) {
        match self {
            AngleIndex::A11 => (0, 0),
            AngleIndex::A12 => (0, 1),
            AngleIndex::A21 => (1, 0),
            AngleIndex::A22 => (1, 1),
        }
    }
}

/// The four angles at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub t11: f64,
    pub t12: f64,
    pub t21: f64,
    pub t22: f64,
}

impl Angles {
    pub const fn new(t11: f64, t12: f64, t21: f64, t22: f64) -> Self {
        Angles { t11, t12, t21, t22 }
    }

    /// Flat spacetime: `C = [cos θ^{kl}]` is the identity.
    pub const fn flat() -> Self {
        Angles::new(0.0, FRAC_PI_2, FRAC_PI_2, 0.0)
    }

    /// Pure shear of amplitude `ξG`: `θ^{12} = θ^{21} = π/2 − ξG`.
    pub fn pure_shear(xi_g: f64) -> Self {
        Angles::new(0.0, FRAC_PI_2 - xi_g, FRAC_PI_2 - xi_g, 0.0)
    }

    pub fn get(&self, which: AngleIndex) -> f64 {
        match which {
            AngleIndex::A11 => self.t11,
            AngleIndex::A12 => self.t12,
            AngleIndex::A21 => self.t21,
            AngleIndex::A22 => self.t22,
        }
    }

    /// `[θ^{kl}]` as a 2×2 array indexed `[k−1][l−1]`.
    pub fn as_matrix(&self) -> [[f64; 2]; 2] {
        [[self.t11, self.t12], [self.t21, self.t22]]
    }

    /// Cosine matrix `C^{kl} = cos θ^{kl}`.
    pub fn cos_matrix(&self) -> [[f64; 2]; 2] {
        self.as_matrix().map(|row| row.map(f64::cos))
    }

    pub fn is_finite(&self) -> bool {
        [self.t11, self.t12, self.t21, self.t22]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Angle source on the integer lattice. Must be pure and answer at every `j ≥ 0`,
/// including the `j + 1` slice needed by the mass-like term.
pub trait AngleProvider: Sync {
    fn angles(&self, j: i64, p1: i64, p2: i64) -> Angles;

    /// `true` when the angles do not depend on `(p₁, p₂)`.
    fn uniform_in_space(&self) -> bool {
        false
    }

    fn angle(&self, j: i64, p1: i64, p2: i64, which: AngleIndex) -> f64 {
        self.angles(j, p1, p2).get(which)
    }
}

impl<P: AngleProvider + ?Sized> AngleProvider for &P {
    fn angles(&self, j: i64, p1: i64, p2: i64) -> Angles {
        (**self).angles(j, p1, p2)
    }
    fn uniform_in_space(&self) -> bool {
        (**self).uniform_in_space()
    }
}

/// Angle source in continuum coordinates `(T, X, Y)`.
pub trait AngleField: Sync {
    fn angles_at(&self, t: f64, x: f64, y: f64) -> Angles;

    fn uniform_in_space(&self) -> bool {
        false
    }
}

/// Same angles everywhere and at all times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform(pub Angles);

impl AngleProvider for Uniform {
    fn angles(&self, _j: i64, _p1: i64, _p2: i64) -> Angles {
        self.0
    }
    fn uniform_in_space(&self) -> bool {
        true
    }
}

impl AngleField for Uniform {
    fn angles_at(&self, _t: f64, _x: f64, _y: f64) -> Angles {
        self.0
    }
    fn uniform_in_space(&self) -> bool {
        true
    }
}

/// Spatially uniform, time-dependent angles given by a closure of `j`.
pub struct TimeSeries<F>(pub F);

impl<F: Fn(i64) -> Angles + Sync> AngleProvider for TimeSeries<F> {
    fn angles(&self, j: i64, _p1: i64, _p2: i64) -> Angles {
        (self.0)(j)
    }
    fn uniform_in_space(&self) -> bool {
        true
    }
}

/// Arbitrary lattice angles given by a closure of `(j, p₁, p₂)`.
pub struct FromFn<F>(pub F);

impl<F: Fn(i64, i64, i64) -> Angles + Sync> AngleProvider for FromFn<F> {
    fn angles(&self, j: i64, p1: i64, p2: i64) -> Angles {
        (self.0)(j, p1, p2)
    }
}

/// Continuum angles given by a closure of `(T, X, Y)`.
pub struct ContinuumFn<F>(pub F);

impl<F: Fn(f64, f64, f64) -> Angles + Sync> AngleField for ContinuumFn<F> {
    fn angles_at(&self, t: f64, x: f64, y: f64) -> Angles {
        (self.0)(t, x, y)
    }
}

/// Precomputed angles for `time_slices` consecutive times starting at `j₀`.
///
/// Holds one slice more than the number of steps it can drive, because the
/// mass-like term at `j` reads the angles at `j + 1`.
#[derive(Debug, Clone)]
pub struct Tabulated {
    j0: i64,
    l1: usize,
    l2: usize,
    slices: Vec<Vec<Angles>>,
}

impl Tabulated {
    pub fn sample(
        source: &impl AngleProvider,
        j0: i64,
        time_slices: usize,
        l1: usize,
        l2: usize,
    ) -> Self {
        let slices = (0..time_slices as i64)
            .map(|dj| {
                (0..(l1 * l2) as i64)
                    .map(|idx| source.angles(j0 + dj, idx / l2 as i64, idx % l2 as i64))
                    .collect()
            })
            .collect();
        Tabulated { j0, l1, l2, slices }
    }

    /// Number of steps this table can drive starting at `j₀`.
    pub fn steps_supported(&self) -> usize {
        self.slices.len().saturating_sub(1)
    }
}

impl AngleProvider for Tabulated {
    fn angles(&self, j: i64, p1: i64, p2: i64) -> Angles {
        let slice = &self.slices[(j - self.j0) as usize];
        let a = p1.rem_euclid(self.l1 as i64) as usize;
        let b = p2.rem_euclid(self.l2 as i64) as usize;
        slice[a * self.l2 + b]
    }
}

/// Lattice view of a continuum angle field at lattice parameter `ε`.
pub struct Sampled<'a, F: ?Sized> {
    pub field: &'a F,
    pub epsilon: f64,
}

impl<'a, F: AngleField + ?Sized> Sampled<'a, F> {
    pub fn new(field: &'a F, epsilon: f64) -> Self {
        Sampled { field, epsilon }
    }
}

impl<F: AngleField + ?Sized> AngleProvider for Sampled<'_, F> {
    fn angles(&self, j: i64, p1: i64, p2: i64) -> Angles {
        let e = self.epsilon;
        self.field
            .angles_at(j as f64 * e, p1 as f64 * e / 2.0, p2 as f64 * e / 2.0)
    }
    fn uniform_in_space(&self) -> bool {
        self.field.uniform_in_space()
    }
}
