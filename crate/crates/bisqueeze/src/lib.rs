//! Gaussian-state toolkit for bi-squeezed three-mode states.
//!
//! Three bosonic modes `a`, `b`, `c` are driven by two simultaneous two-mode
//! squeezing interactions that share the middle (idler) mode `b`. This crate
//! builds the resulting covariance matrices, evaluates entanglement and
//! coherence figures of merit across every partition, conditions the two
//! outer modes on a homodyne measurement of the idler, and cross-checks the
//! Gaussian pipeline against an independent truncated Fock-space simulation.
//!
//! States are second-moment matrices in the `(a₁…a_N, a₁†…a_N†)` operator
//! ordering, normalized so the vacuum is the identity. All evolutions are
//! symplectic: `σ_f = S† σ S`.

pub mod fock;
pub mod generation;
pub mod homodyne;
pub mod measures;
pub mod regimes;
pub mod statefile;
pub mod sweep;
pub mod symplectic;

mod error;

pub use error::{Error, Result};

/// Physical constants (exact SI values).
pub mod constants {
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054571817e-34;
    /// Boltzmann constant, J/K.
    pub const K_B: f64 = 1.380649e-23;
}
