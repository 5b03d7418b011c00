//! Discrete-time quantum walks on a periodic two-dimensional lattice whose
//! continuum limit is the Dirac equation in a curved (1+2)D spacetime, with
//! tools for studying their response to linear gravitational waves.

// Index loops mirror the tensor notation; `!(x > y)` forms deliberately reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod continuum;
pub mod error;
pub mod geometry;
pub mod interference;
pub mod linalg;
pub mod spectral;
pub mod spin;
pub mod table;

pub use error::{Error, Result};
pub use linalg::{Mat2, Spinor2, C64};
