//! Spectral simulator for the time-dependent Hartree–Fock–Bogoliubov system
//! on a periodic torus, together with the harmonic-analysis toolkit used to
//! measure Strichartz and collapsing norms of its solutions.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::type_complexity)]

pub mod error;
pub mod evolution;
pub mod expm;
pub mod fft;
pub mod field;
pub mod grid;
pub mod kernels;
pub mod linalg;
pub mod linear;
pub mod littlewood_paley;
pub mod multiplier;
pub mod norms;
pub mod potential;
pub mod rotate;

pub use error::{Error, Result};
pub use field::{OneBodyField, PairKernel, Symmetry};
pub use grid::GridSpec;
pub use num_complex::Complex64 as C64;
