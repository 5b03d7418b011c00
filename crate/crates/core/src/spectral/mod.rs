//! Fourier-space analysis of the pure-shear walk.

pub mod eigen;
pub mod fourier;
pub mod landscape;
pub mod large_scale;
pub mod modes;

pub use eigen::{eigen, energy_of, EigenPair};
pub use fourier::{dft_field, idft_field, Fourier2d};
pub use landscape::{find_rho_maxima, unaffected_modes, SpectrumGrid, SpectrumKind};
pub use large_scale::{
    eigen_residual, large_scale_operator, perturbative_eigs, perturbative_energies,
    PerturbativeEigs, PerturbativeEnergies,
};
pub use modes::{
    a_b, abar_bbar, assembled_operator, mode_w0, mode_w1, rho, w1_eigen_modulus, ModeOperator,
    ModePoint,
};
