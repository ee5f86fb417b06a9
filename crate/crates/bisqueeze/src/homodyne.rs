//! Conditioning on a perfect homodyne measurement of one mode.
//!
//! The measured quadrature is `x_θ = cos θ·q + sin θ·p`. In the quadrature
//! basis with the measured mode last, the state partitions into blocks
//! `[[A, C], [Cᵀ, B]]` and the conditional state of the remaining modes is
//! the Schur complement
//!
//! ```text
//! σ_out|θ = A − C (π_θ B π_θ)⁺ Cᵀ,
//! ```
//!
//! where `π_θ` is the rank-1 projector onto `x_θ` and `(·)⁺` the
//! Moore–Penrose pseudoinverse. The outcome value never enters: Gaussian
//! conditioning is outcome-independent, and all spectra are θ-independent.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::generation::CovarianceElements;
use crate::measures::negativity_from_nu;
use crate::symplectic::{CovarianceMatrix, QuadratureCovariance};
use crate::{Error, Result};

/// Relative eigenvalue cutoff for the pseudoinverse of `π_θ B π_θ`.
const PINV_CUTOFF: f64 = 1e-12;

/// Two-mode state left after homodyne detection of the idler.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalState {
    sigma: CovarianceMatrix,
}

impl ConditionalState {
    pub fn sigma(&self) -> &CovarianceMatrix {
        &self.sigma
    }

    pub fn into_sigma(self) -> CovarianceMatrix {
        self.sigma
    }
}

/// Pseudoinverse of a small real symmetric matrix by spectral decomposition,
/// dropping eigenvalues below `PINV_CUTOFF` relative to the largest.
fn pseudoinverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let cutoff = PINV_CUTOFF * eig.eigenvalues.amax();
    let inv = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| {
        if x.abs() > cutoff {
            1.0 / x
        } else {
            0.0
        }
    }));
    &eig.eigenvectors * inv * eig.eigenvectors.transpose()
}

/// Conditions a physical state on a perfect homodyne measurement of
/// quadrature `x_θ` of the given mode.
pub fn homodyne_condition(
    sigma: &CovarianceMatrix,
    measured: usize,
    theta: f64,
) -> Result<ConditionalState> {
    let n = sigma.n_modes();
    if measured >= n {
        return Err(Error::ModeOutOfRange {
            index: measured,
            n_modes: n,
        });
    }
    if n < 2 {
        return Err(Error::InvalidModes(
            "need at least one mode left after the measurement".into(),
        ));
    }
    if !sigma.is_physical() {
        return Err(Error::NotPhysical {
            min_eigenvalue: sigma.min_physicality_eigenvalue(),
        });
    }
    let quad = sigma.to_quadrature_measured_last(measured)?;
    let full = quad.matrix();
    let k = 2 * (n - 1);
    let a = full.view((0, 0), (k, k)).into_owned();
    let b = full.view((k, k), (2, 2)).into_owned();
    let c = full.view((0, k), (k, 2)).into_owned();

    let (ct, st) = (theta.cos(), theta.sin());
    let projector =
        DMatrix::from_row_slice(2, 2, &[ct * ct, st * ct, st * ct, st * st]);
    let pinv = pseudoinverse(&(&projector * b * &projector));
    let out = a - &c * pinv * c.transpose();

    let kept: Vec<usize> = (0..n - 1).collect();
    let sigma_out = QuadratureCovariance::new(kept, out)?.to_covariance()?;
    Ok(ConditionalState { sigma: sigma_out })
}

/// Closed-form conditional state of the outer modes after measuring `x_θ` of
/// the idler of a bi-squeezed state, in the annihilation/creation basis:
/// θ enters only as a phase `e^{∓2iθ}` on the anomalous block.
pub fn conditional_elements(e: &CovarianceElements, theta: f64) -> DMatrix<C64> {
    let ee = e.epsilon * e.epsilon / (2.0 * e.beta);
    let ez = e.epsilon * e.zeta / (2.0 * e.beta);
    let zz = e.zeta * e.zeta / (2.0 * e.beta);
    let phase = C64::from_polar(1.0, -2.0 * theta);
    let r = |x: f64| C64::new(x, 0.0);
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m[(0, 0)] = r(e.alpha - ee);
    m[(0, 1)] = r(e.delta - ez);
    m[(1, 0)] = r(e.delta - ez);
    m[(1, 1)] = r(e.gamma - zz);
    m[(2, 2)] = m[(0, 0)];
    m[(2, 3)] = m[(0, 1)];
    m[(3, 2)] = m[(0, 1)];
    m[(3, 3)] = m[(1, 1)];
    m[(0, 2)] = -phase * ee;
    m[(0, 3)] = -phase * ez;
    m[(1, 2)] = -phase * ez;
    m[(1, 3)] = -phase * zz;
    m[(2, 0)] = m[(0, 2)].conj();
    m[(3, 0)] = m[(0, 3)].conj();
    m[(2, 1)] = m[(1, 2)].conj();
    m[(3, 1)] = m[(1, 3)].conj();
    m
}

/// Local symplectic invariants of a two-mode conditional state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalInvariants {
    /// Determinant of the first single-mode block.
    pub a_sq: f64,
    /// Determinant of the second single-mode block.
    pub b_sq: f64,
    /// Determinant of the correlation block.
    pub c_plus_c_minus: f64,
    /// `|a² − b²| < 1e-8`: the state is symmetric.
    pub symmetric: bool,
    /// Smallest symplectic eigenvalue of the partial transpose, from
    /// `2ν̃₋² = Δ̃ − √(Δ̃² − 4·det σ)` with `Δ̃ = a² + b² − 2c₊c₋`.
    pub nu_tilde_minus: f64,
    /// `ν̃₋ < 1`.
    pub entangled: bool,
}

/// Computes the local invariants and the PPT eigenvalue of a two-mode state
/// from its determinant decomposition.
pub fn local_invariants(cs: &ConditionalState) -> Result<LocalInvariants> {
    let sigma = cs.sigma();
    if sigma.n_modes() != 2 {
        return Err(Error::ModeMismatch {
            left: sigma.n_modes(),
            right: 2,
        });
    }
    let m = sigma.matrix();
    let det2 = |p: C64, q: C64, r: C64, s: C64| (p * s - q * r).re;
    let a_sq = det2(m[(0, 0)], m[(0, 2)], m[(2, 0)], m[(2, 2)]);
    let b_sq = det2(m[(1, 1)], m[(1, 3)], m[(3, 1)], m[(3, 3)]);
    let c_plus_c_minus = det2(m[(0, 1)], m[(0, 3)], m[(2, 1)], m[(2, 3)]);
    let det_sigma = m.clone().determinant().re;
    let delta_tilde = a_sq + b_sq - 2.0 * c_plus_c_minus;
    let disc = (delta_tilde * delta_tilde - 4.0 * det_sigma).max(0.0);
    let nu_sq = 0.5 * (delta_tilde - disc.sqrt());
    if nu_sq < -1e-10 {
        return Err(Error::Numerical(format!(
            "negative squared eigenvalue {nu_sq:.3e}"
        )));
    }
    let nu = nu_sq.max(0.0).sqrt();
    Ok(LocalInvariants {
        a_sq,
        b_sq,
        c_plus_c_minus,
        symmetric: (a_sq - b_sq).abs() < 1e-8,
        nu_tilde_minus: nu,
        entangled: nu < 1.0,
    })
}

/// Closed-form `ν̃₋` of the partially transposed conditional state, straight
/// from the bi-squeezed elements:
///
/// ```text
/// Δ̃    = α² + γ² − 2δ² − (αε² − 2δεζ + γζ²)/β
/// det σ = (αγ − δ²)·[(αγ − δ²) − (γε² − 2δεζ + αζ²)/β]
/// ν̃₋²  = ½·[Δ̃ − √(Δ̃² − 4·det σ)]
/// ```
pub fn nu_minus_after_homodyne(e: &CovarianceElements) -> f64 {
    let cross = 2.0 * e.delta * e.epsilon * e.zeta;
    let delta_tilde = e.alpha * e.alpha + e.gamma * e.gamma
        - 2.0 * e.delta * e.delta
        - (e.alpha * e.epsilon * e.epsilon - cross + e.gamma * e.zeta * e.zeta) / e.beta;
    let minor = e.alpha * e.gamma - e.delta * e.delta;
    let det = minor
        * (minor - (e.gamma * e.epsilon * e.epsilon - cross + e.alpha * e.zeta * e.zeta) / e.beta);
    let disc = (delta_tilde * delta_tilde - 4.0 * det).max(0.0);
    (0.5 * (delta_tilde - disc.sqrt())).max(0.0).sqrt()
}

/// Equal-occupation (`ν = 1`) specialization of [`nu_minus_after_homodyne`]
/// in terms of `s₁ = sinh²r_ab`, `s₂ = sinh²r_bc`:
///
/// ```text
/// ν̃₋² = [1 + 2s₁ + 2s₂ + 10s₁s₂ + 8s₁²s₂
///        − 4√(s₁s₂)·√(1 + 3s₁ + 2s₂ + 8s₁s₂ + 2s₁² + 10s₁²s₂ + 4s₁³s₂)] / D,
/// D    = 1 + 2s₁ + 2s₂ + 2s₁s₂
/// ```
pub fn nu_minus_after_homodyne_equal_frequency(r_ab: f64, r_bc: f64) -> f64 {
    let s1 = r_ab.sinh().powi(2);
    let s2 = r_bc.sinh().powi(2);
    let d = 1.0 + 2.0 * s1 + 2.0 * s2 + 2.0 * s1 * s2;
    let lead = 1.0 + 2.0 * s1 + 2.0 * s2 + 10.0 * s1 * s2 + 8.0 * s1 * s1 * s2;
    let radicand = 1.0
        + 3.0 * s1
        + 2.0 * s2
        + 8.0 * s1 * s2
        + 2.0 * s1 * s1
        + 10.0 * s1 * s1 * s2
        + 4.0 * s1 * s1 * s1 * s2;
    (((lead - 4.0 * (s1 * s2).sqrt() * radicand.sqrt()) / d).max(0.0)).sqrt()
}

/// Negativity of the conditional state via [`local_invariants`].
pub fn conditional_negativity(cs: &ConditionalState) -> Result<f64> {
    Ok(negativity_from_nu(local_invariants(cs)?.nu_tilde_minus))
}
