//! Walker state on the lattice and the exact unitary step.

pub mod angles;
pub mod coin;
pub mod field;
pub mod mass_term;
pub mod walk;

pub use angles::{AngleField, AngleIndex, AngleProvider, Angles};
pub use coin::{coin_matrix, Coin};
pub use field::SpinorField;
pub use mass_term::{spatial_terms, t_epsilon, t_epsilon_compact};
pub use walk::{evolve, mass_gate, shift_apply, step, transfer_matrix, w_block_apply, WalkParams};
