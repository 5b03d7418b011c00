//! Continuum limit of the walk: the Dirac Hamiltonian it reproduces at first
//! order in `ε`, and the algebraic identities behind its mass-like term.

pub mod convergence;
pub mod gamma;
pub mod hamiltonian;

pub use convergence::{
    case_residual, continuum_residual, convergence_table, fit_order, smooth_field, ContinuumCase,
};
pub use gamma::GammaRep;
pub use hamiltonian::{
    b_from_triad, b_matrices, check_band_limited, hamiltonian_apply, high_band_fraction, t0,
    t0_raised, HamiltonianField,
};
