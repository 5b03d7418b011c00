//! The 2×2 representation of the (1+2)D Clifford algebra used by the walk.

use crate::linalg::{c, levi_civita, Mat2, ETA};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRep {
    /// `γ^(a)`, upper frame index.
    pub upper: [Mat2; 3],
}

impl Default for GammaRep {
    fn default() -> Self {
        GammaRep::standard()
    }
}

impl GammaRep {
    /// `γ^(0) = σ₁`, `γ^(1) = iσ₂`, `γ^(2) = iσ₃`.
    pub fn standard() -> Self {
        let z = c(0.0, 0.0);
        GammaRep {
            upper: [
                Mat2::new(z, c(1.0, 0.0), c(1.0, 0.0), z),
                Mat2::new(z, c(1.0, 0.0), c(-1.0, 0.0), z),
                Mat2::new(c(0.0, 1.0), z, z, c(0.0, -1.0)),
            ],
        }
    }

    /// `γ_(a) = η_{ab} γ^(b)`.
    pub fn lower(&self, a: usize) -> Mat2 {
        self.upper[a].scale(c(ETA[a], 0.0))
    }

    /// `max_{a,b} ‖{γ^(a), γ^(b)} − 2η^{ab}‖`.
    pub fn clifford_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { ETA[a] * 2.0 } else { 0.0 };
                let d = self.upper[a].anticommutator(&self.upper[b]) - Mat2::identity().scale(c(want, 0.0));
                worst = worst.max(d.max_abs());
            }
        }
        worst
    }

    /// `S_(c)(d) = (i/2)[γ_(c), γ_(d)]`.
    pub fn spin_generator(&self, cc: usize, d: usize) -> Mat2 {
        self.lower(cc).commutator(&self.lower(d)).scale(c(0.0, 0.5))
    }

    /// `J_(b)(c)(d) = {γ_(b), S_(c)(d)}`.
    pub fn j_tensor(&self, b: usize, cc: usize, d: usize) -> Mat2 {
        self.lower(b).anticommutator(&self.spin_generator(cc, d))
    }

    /// `max ‖J_(b)(c)(d) − 2ε_{bcd}‖` over all index triples.
    pub fn j_tensor_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    let want = Mat2::identity().scale(c(2.0 * levi_civita(b, cc, d), 0.0));
                    worst = worst.max((self.j_tensor(b, cc, d) - want).max_abs());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations_are_exact() {
        assert_eq!(GammaRep::standard().clifford_defect(), 0.0);
    }

    #[test]
    fn cyclic_j_components_are_two() {
        let g = GammaRep::standard();
        let two = Mat2::identity().scale(c(2.0, 0.0));
        assert_eq!(g.j_tensor(0, 1, 2), two);
        assert_eq!(g.j_tensor(2, 0, 1), two);
        assert_eq!(g.j_tensor(1, 2, 0), two);
    }

    #[test]
    fn j_is_antisymmetric_and_vanishes_on_repeats() {
        let g = GammaRep::standard();
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    let j = g.j_tensor(b, cc, d);
                    assert_eq!(j, -g.j_tensor(b, d, cc));
                    assert_eq!(j, -g.j_tensor(cc, b, d));
                    if b == cc || cc == d || b == d {
                        assert_eq!(j, Mat2::zero());
                    }
                }
            }
        }
        assert_eq!(g.j_tensor_defect(), 0.0);
    }
}
