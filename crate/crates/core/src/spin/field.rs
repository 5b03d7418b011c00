use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Spinor2, C64};

/// Walker state `Ψ_j` on a periodic `L₁ × L₂` lattice.
///
/// Sites are stored with `p₁` as the slow index: site `(p₁, p₂)` lives at
/// `p₁ · L₂ + p₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    l1: usize,
    l2: usize,
    data: Vec<Spinor2>,
}

impl SpinorField {
    /// Zero field. Both extents must be positive and even.
    pub fn zeros(l1: usize, l2: usize) -> Result<Self> {
        check_shape(l1, l2)?;
        Ok(SpinorField {
            l1,
            l2,
            data: vec![Spinor2::ZERO; l1 * l2],
        })
    }

    pub fn from_fn(l1: usize, l2: usize, f: impl Fn(i64, i64) -> Spinor2 + Sync) -> Result<Self> {
        check_shape(l1, l2)?;
        let data = (0..l1 * l2)
            .into_par_iter()
            .map(|idx| f((idx / l2) as i64, (idx % l2) as i64))
            .collect();
        Ok(SpinorField { l1, l2, data })
    }

    pub fn from_vec(l1: usize, l2: usize, data: Vec<Spinor2>) -> Result<Self> {
        check_shape(l1, l2)?;
        if data.len() != l1 * l2 {
            return Err(Error::Config(format!(
                "field data has {} sites, expected {}",
                data.len(),
                l1 * l2
            )));
        }
        Ok(SpinorField { l1, l2, data })
    }

    /// Same shape as `self`, new contents.
    pub(crate) fn with_data(&self, data: Vec<Spinor2>) -> Self {
        debug_assert_eq!(data.len(), self.data.len());
        SpinorField {
            l1: self.l1,
            l2: self.l2,
            data,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.l1, self.l2)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Spinor2] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Spinor2] {
        &mut self.data
    }

    /// Linear index of `(p₁, p₂)` with periodic wrap.
    #[inline]
    pub fn index(&self, p1: i64, p2: i64) -> usize {
        let a = p1.rem_euclid(self.l1 as i64) as usize;
        let b = p2.rem_euclid(self.l2 as i64) as usize;
        a * self.l2 + b
    }

    #[inline]
    pub fn site(&self, idx: usize) -> (i64, i64) {
        ((idx / self.l2) as i64, (idx % self.l2) as i64)
    }

    #[inline]
    pub fn get(&self, p1: i64, p2: i64) -> Spinor2 {
        self.data[self.index(p1, p2)]
    }

    pub fn set(&mut self, p1: i64, p2: i64, v: Spinor2) {
        let idx = self.index(p1, p2);
        self.data[idx] = v;
    }

    /// `Σ_p (|ψ⁻|² + |ψ⁺|²)`, summed sequentially so the result is thread-count independent.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(Spinor2::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self, other⟩ = Σ_p self_p† other_p`.
    pub fn inner(&self, other: &SpinorField) -> C64 {
        assert_eq!(self.shape(), other.shape(), "inner product of mismatched fields");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.dot(b))
            .sum()
    }

    /// Probability density `|ψ⁻|² + |ψ⁺|²` per site.
    pub fn density(&self) -> Vec<f64> {
        self.data.iter().map(Spinor2::norm_sqr).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Spinor2::is_finite)
    }

    pub fn map(&self, f: impl Fn(Spinor2) -> Spinor2 + Sync) -> Self {
        self.with_data(self.data.par_iter().map(|&s| f(s)).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|v| v.scale(s))
    }

    pub fn add(&self, other: &SpinorField) -> Self {
        assert_eq!(self.shape(), other.shape());
        self.with_data(self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &SpinorField) -> Self {
        assert_eq!(self.shape(), other.shape());
        self.with_data(self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect())
    }

    /// Largest per-component difference between two fields of equal shape.
    pub fn max_abs_diff(&self, other: &SpinorField) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Translate the whole field by `(d₁, d₂)` sites: `out(p) = in(p − d)`.
    pub fn translate(&self, d1: i64, d2: i64) -> Self {
        let data = (0..self.len())
            .map(|idx| {
                let (p1, p2) = self.site(idx);
                self.get(p1 - d1, p2 - d2)
            })
            .collect();
        self.with_data(data)
    }
}

pub(crate) fn check_shape(l1: usize, l2: usize) -> Result<()> {
    if l1 == 0 || l2 == 0 || !l1.is_multiple_of(2) || !l2.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "lattice shape {l1}×{l2} must have positive even extents"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn odd_or_empty_shapes_are_rejected() {
        assert!(SpinorField::zeros(3, 4).is_err());
        assert!(SpinorField::zeros(4, 0).is_err());
        assert!(SpinorField::zeros(4, 6).is_ok());
    }

    #[test]
    fn periodic_indexing() {
        let f = SpinorField::from_fn(4, 6, |p1, p2| {
            Spinor2::new(c(p1 as f64, 0.0), c(p2 as f64, 0.0))
        })
        .unwrap();
        assert_eq!(f.get(-1, 7), f.get(3, 1));
        assert_eq!(f.get(3, 1).minus, c(3.0, 0.0));
    }

    #[test]
    fn translate_moves_excitation() {
        let mut f = SpinorField::zeros(4, 4).unwrap();
        f.set(1, 2, Spinor2::new(c(1.0, 0.0), c(0.0, 0.0)));
        let t = f.translate(1, -1);
        assert_eq!(t.get(2, 1).minus, c(1.0, 0.0));
        assert_eq!(t.norm_sqr(), 1.0);
    }
}
