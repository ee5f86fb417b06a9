//! Entanglement and coherence figures of merit.
//!
//! Every two-mode entanglement measure used here is a decreasing function of
//! the smallest symplectic eigenvalue `ν̃₋` of the partially transposed
//! state; entanglement exists iff `ν̃₋ < 1`.

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::generation::CovarianceElements;
use crate::symplectic::CovarianceMatrix;
use crate::{Error, Result};

/// One of the three mode pairs of the three-mode system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModePair {
    Ab,
    Bc,
    Ac,
}

impl ModePair {
    pub fn indices(self) -> (usize, usize) {
        match self {
            ModePair::Ab => (0, 1),
            ModePair::Bc => (1, 2),
            ModePair::Ac => (0, 2),
        }
    }
}

impl std::str::FromStr for ModePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ab" => Ok(ModePair::Ab),
            "bc" => Ok(ModePair::Bc),
            "ac" => Ok(ModePair::Ac),
            other => Err(Error::InvalidParameter(format!(
                "unknown mode pair '{other}' (expected ab, bc, or ac)"
            ))),
        }
    }
}

/// `x·ln x`, with the limit value 0 below the cancellation floor.
fn x_ln_x(x: f64) -> f64 {
    if x < 1e-14 {
        0.0
    } else {
        x * x.ln()
    }
}

fn h_plus(x: f64) -> f64 {
    x_ln_x((x + 1.0) / 2.0)
}

fn h_minus(x: f64) -> f64 {
    x_ln_x((x - 1.0).max(0.0) / 2.0)
}

fn f_pm(x: f64, sign: f64) -> f64 {
    x_ln_x((x + sign).powi(2) / (4.0 * x))
}

/// Entanglement measures of a two-mode state, all functions of `ν̃₋`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport {
    /// Smallest symplectic eigenvalue of the partial transpose.
    pub nu_tilde_minus: f64,
    /// `max[0, (1 − ν̃₋) / 2ν̃₋]`.
    pub negativity: f64,
    /// `max[0, −ln ν̃₋]` (natural log).
    pub log_negativity: f64,
    /// `max[0, f₊(ν̃₋) − f₋(ν̃₋)]` with
    /// `f_±(x) = (x±1)²/(4x) · ln[(x±1)²/(4x)]`; defined for symmetric
    /// states, zero whenever `ν̃₋ ≥ 1`.
    pub entanglement_of_formation: f64,
    /// Whether the two single-mode reductions have equal determinants, the
    /// regime in which the entanglement-of-formation expression applies.
    pub symmetric: bool,
}

pub fn negativity_from_nu(nu_tilde_minus: f64) -> f64 {
    (0.0f64).max((1.0 - nu_tilde_minus) / (2.0 * nu_tilde_minus))
}

fn report_from_nu(nu: f64, symmetric: bool) -> EntanglementReport {
    let eof = if nu < 1.0 {
        (0.0f64).max(f_pm(nu, 1.0) - f_pm(nu, -1.0))
    } else {
        0.0
    };
    EntanglementReport {
        nu_tilde_minus: nu,
        negativity: negativity_from_nu(nu),
        log_negativity: (0.0f64).max(-nu.ln()),
        entanglement_of_formation: eof,
        symmetric,
    }
}

/// PPT entanglement measures of a physical two-mode state.
pub fn negativity(sigma: &CovarianceMatrix) -> Result<EntanglementReport> {
    if sigma.n_modes() != 2 {
        return Err(Error::ModeMismatch {
            left: sigma.n_modes(),
            right: 2,
        });
    }
    if !sigma.is_physical() {
        return Err(Error::NotPhysical {
            min_eigenvalue: sigma.min_physicality_eigenvalue(),
        });
    }
    let nus = sigma.partial_transpose(1)?.symplectic_eigenvalues()?;
    let nu_minus = *nus.last().expect("two-mode state has eigenvalues");
    let det_a = single_mode_det(sigma, 0);
    let det_b = single_mode_det(sigma, 1);
    Ok(report_from_nu(nu_minus, (det_a - det_b).abs() < 1e-8))
}

fn single_mode_det(sigma: &CovarianceMatrix, mode: usize) -> f64 {
    let n = sigma.n_modes();
    let m = sigma.matrix();
    (m[(mode, mode)] * m[(mode + n, mode + n)] - m[(mode, mode + n)] * m[(mode + n, mode)]).re
}

/// Closed-form `ν̃₋` of a reduced pair of the bi-squeezed state. Evaluated in
/// rationalized form to avoid cancellation at large squeezing:
///
/// ```text
/// ν̃₋^(ab) = 2(αβ − ε²) / [α + β + √((α−β)² + 4ε²)]
/// ν̃₋^(bc) = 2(βγ − ζ²) / [β + γ + √((β−γ)² + 4ζ²)]
/// ν̃₋^(ac) = 2(αγ − δ²) / [√((α+γ)² − 4δ²) + |α−γ|]
/// ```
pub fn reduced_nu_minus_analytic(e: &CovarianceElements, pair: ModePair) -> f64 {
    match pair {
        ModePair::Ab => {
            let root = ((e.alpha - e.beta).powi(2) + 4.0 * e.epsilon * e.epsilon).sqrt();
            2.0 * (e.alpha * e.beta - e.epsilon * e.epsilon) / (e.alpha + e.beta + root)
        }
        ModePair::Bc => {
            let root = ((e.beta - e.gamma).powi(2) + 4.0 * e.zeta * e.zeta).sqrt();
            2.0 * (e.beta * e.gamma - e.zeta * e.zeta) / (e.beta + e.gamma + root)
        }
        ModePair::Ac => {
            let root = ((e.alpha + e.gamma).powi(2) - 4.0 * e.delta * e.delta).sqrt();
            2.0 * (e.alpha * e.gamma - e.delta * e.delta) / (root + (e.alpha - e.gamma).abs())
        }
    }
}

/// Negativity of the `mode` vs rest bipartition of a multi-mode state.
pub fn one_vs_rest_negativity(sigma: &CovarianceMatrix, mode: usize) -> Result<f64> {
    let nus = sigma.partial_transpose(mode)?.symplectic_eigenvalues()?;
    Ok(negativity_from_nu(*nus.last().expect("non-empty spectrum")))
}

/// Tripartite negativity: geometric mean of the three one-vs-rest
/// negativities of a physical three-mode state.
pub fn tripartite_negativity(sigma: &CovarianceMatrix) -> Result<f64> {
    if sigma.n_modes() != 3 {
        return Err(Error::ModeMismatch {
            left: sigma.n_modes(),
            right: 3,
        });
    }
    if !sigma.is_physical() {
        return Err(Error::NotPhysical {
            min_eigenvalue: sigma.min_physicality_eigenvalue(),
        });
    }
    let mut product = 1.0;
    for mode in 0..3 {
        product *= one_vs_rest_negativity(sigma, mode)?;
    }
    Ok(product.cbrt())
}

/// Mean photon number of one mode, `(σ_mm − 1)/2`.
pub fn number_expectation(sigma: &CovarianceMatrix, mode: usize) -> Result<f64> {
    if mode >= sigma.n_modes() {
        return Err(Error::ModeOutOfRange {
            index: mode,
            n_modes: sigma.n_modes(),
        });
    }
    Ok((sigma.matrix()[(mode, mode)].re - 1.0) / 2.0)
}

/// Von Neumann entropy in nats, `Σ_k [h₊(ν_k) − h₋(ν_k)]` with
/// `h_±(x) = ((x±1)/2)·ln((x±1)/2)`.
pub fn von_neumann_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    if !sigma.is_physical() {
        return Err(Error::NotPhysical {
            min_eigenvalue: sigma.min_physicality_eigenvalue(),
        });
    }
    Ok(sigma
        .symplectic_eigenvalues()?
        .iter()
        .map(|&nu| h_plus(nu) - h_minus(nu))
        .sum())
}

/// Relative entropy of coherence in the given log base: entropic distance
/// from the state to the product of thermal states with the same mode
/// occupations,
///
/// ```text
/// C(σ) = −S(σ) + Σ_k [(n̄_k + 1)·ln(n̄_k + 1) − n̄_k·ln n̄_k]
/// ```
///
/// with `n̄_k = (σ_kk − 1)/2`. Base 2 gives bits.
pub fn relative_entropy_of_coherence(sigma: &CovarianceMatrix, base: f64) -> Result<f64> {
    if base.is_nan() || base <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "log base must exceed 1, got {base}"
        )));
    }
    let mut c = -von_neumann_entropy(sigma)?;
    for mode in 0..sigma.n_modes() {
        let n = number_expectation(sigma, mode)?.max(0.0);
        c += x_ln_x(n + 1.0) - x_ln_x(n);
    }
    Ok(c / base.ln())
}

/// Pairwise coherence of two modes and derived quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    /// `⟨a_m† a_n⟩ = σ_nm / 2` (real part; exactly real for the states
    /// produced in this crate).
    pub pair_coherence: f64,
    /// Normalized first-order coherence
    /// `g⁽¹⁾ = ⟨a_m† a_n⟩ / √(⟨n_m⟩⟨n_n⟩)`; zero if either mode is empty.
    pub g1: f64,
    /// Single-particle density matrix
    /// `½ [[σ_mm − 1, σ_nm], [σ_mn, σ_nn − 1]]`.
    pub spdm: Matrix2<C64>,
    /// Relative entropy of coherence of the reduced two-mode state, in bits.
    pub relative_entropy_coherence: f64,
}

/// First-order coherence between modes `m` and `n` of a physical state.
pub fn first_order_coherence(
    sigma: &CovarianceMatrix,
    m: usize,
    n: usize,
) -> Result<CoherenceReport> {
    let nm = sigma.n_modes();
    if m >= nm || n >= nm {
        return Err(Error::ModeOutOfRange {
            index: m.max(n),
            n_modes: nm,
        });
    }
    if m == n {
        return Err(Error::InvalidParameter(
            "coherence requires two distinct modes".into(),
        ));
    }
    let mat = sigma.matrix();
    let pair = mat[(n, m)] / 2.0;
    let occ_m = number_expectation(sigma, m)?.max(0.0);
    let occ_n = number_expectation(sigma, n)?.max(0.0);
    let g1 = if occ_m * occ_n > 0.0 {
        pair.re / (occ_m * occ_n).sqrt()
    } else {
        0.0
    };
    let spdm = Matrix2::new(
        C64::new(occ_m, 0.0),
        pair,
        mat[(m, n)] / 2.0,
        C64::new(occ_n, 0.0),
    );
    let (lo, hi) = (m.min(n), m.max(n));
    let reduced = sigma.partial_trace(&[lo, hi])?;
    let c = relative_entropy_of_coherence(&reduced, 2.0)?;
    Ok(CoherenceReport {
        pair_coherence: pair.re,
        g1,
        spdm,
        relative_entropy_coherence: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::{
        bisqueezed_state_from_nus, decouple, covariance_elements, PumpParameters,
    };
    use crate::symplectic::SymplecticTransform;
    use nalgebra::DMatrix;

    fn tms(r: f64) -> CovarianceMatrix {
        let ch = C64::new((2.0 * r).cosh(), 0.0);
        let sh = C64::new((2.0 * r).sinh(), 0.0);
        let mut m = DMatrix::<C64>::zeros(4, 4);
        for i in 0..4 {
            m[(i, i)] = ch;
        }
        m[(0, 3)] = sh;
        m[(3, 0)] = sh;
        m[(1, 2)] = sh;
        m[(2, 1)] = sh;
        CovarianceMatrix::new(m).unwrap()
    }

    #[test]
    fn two_mode_squeezed_measures() {
        let rep = negativity(&tms(1.0)).unwrap();
        assert!((rep.nu_tilde_minus - (-2.0f64).exp()).abs() < 1e-12);
        assert!((rep.log_negativity - 2.0).abs() < 1e-10);
        assert!(rep.negativity > 0.0);
        assert!(rep.entanglement_of_formation > 0.0);
        assert!(rep.symmetric);
    }

    #[test]
    fn vacuum_has_no_entanglement() {
        let rep = negativity(&CovarianceMatrix::vacuum(2)).unwrap();
        assert!((rep.nu_tilde_minus - 1.0).abs() < 1e-12);
        assert_eq!(rep.negativity, 0.0);
        assert_eq!(rep.log_negativity, 0.0);
        assert_eq!(rep.entanglement_of_formation, 0.0);
    }

    #[test]
    fn measures_vanish_together() {
        for &nu in &[0.2, 0.6, 0.9999, 1.0, 1.2, 3.0] {
            let rep = report_from_nu(nu, true);
            let zero = rep.negativity == 0.0;
            assert_eq!(rep.log_negativity == 0.0, zero);
            assert_eq!(rep.entanglement_of_formation == 0.0, zero);
            assert_eq!(nu >= 1.0, zero);
        }
        // strictly decreasing on (0, 1)
        let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        for w in grid.windows(2) {
            let lo = report_from_nu(w[0], true);
            let hi = report_from_nu(w[1], true);
            assert!(lo.negativity > hi.negativity);
            assert!(lo.log_negativity > hi.log_negativity);
            assert!(lo.entanglement_of_formation > hi.entanglement_of_formation);
        }
    }

    #[test]
    fn negativity_rejects_bad_input() {
        assert!(matches!(
            negativity(&CovarianceMatrix::vacuum(3)),
            Err(Error::ModeMismatch { .. })
        ));
        let sub = CovarianceMatrix::from_williamson(&[0.5, 1.0]);
        assert!(matches!(negativity(&sub), Err(Error::NotPhysical { .. })));
    }

    #[test]
    fn analytic_pair_eigenvalues_match_numerical() {
        let p = PumpParameters::new(0.8, 1.2).unwrap();
        let d = decouple(p);
        for nus in [[1.0, 1.0, 1.0], [1.3, 1.05, 1.6]] {
            let sigma = bisqueezed_state_from_nus(p, nus).unwrap();
            let e = covariance_elements(&d, nus);
            for pair in [ModePair::Ab, ModePair::Bc, ModePair::Ac] {
                let (i, j) = pair.indices();
                let reduced = sigma.partial_trace(&[i, j]).unwrap();
                let numeric = *reduced
                    .partial_transpose(1)
                    .unwrap()
                    .symplectic_eigenvalues()
                    .unwrap()
                    .last()
                    .unwrap();
                let analytic = reduced_nu_minus_analytic(&e, pair);
                assert!(
                    (numeric - analytic).abs() < 1e-10,
                    "{pair:?}: {numeric} vs {analytic}"
                );
            }
        }
    }

    #[test]
    fn thermal_pair_eigenvalue_is_smaller_occupation() {
        let d = decouple(PumpParameters::new(0.0, 0.0).unwrap());
        let e = covariance_elements(&d, [1.4, 1.1, 1.8]);
        assert!((reduced_nu_minus_analytic(&e, ModePair::Ab) - 1.1).abs() < 1e-12);
        assert!((reduced_nu_minus_analytic(&e, ModePair::Bc) - 1.1).abs() < 1e-12);
        assert!((reduced_nu_minus_analytic(&e, ModePair::Ac) - 1.4).abs() < 1e-12);
    }

    #[test]
    fn outer_pair_never_entangled() {
        for &(ra, rb) in &[(0.3, 0.3), (1.0, 0.5), (2.0, 2.0)] {
            let p = PumpParameters::new(ra, rb).unwrap();
            let sigma = bisqueezed_state_from_nus(p, [1.0, 1.0, 1.0]).unwrap();
            let ac = sigma.partial_trace(&[0, 2]).unwrap();
            let rep = negativity(&ac).unwrap();
            assert_eq!(rep.negativity, 0.0, "at ({ra},{rb})");
        }
    }

    #[test]
    fn tripartite_negativity_thermal_is_zero() {
        let sigma = CovarianceMatrix::from_williamson(&[1.2, 1.5, 1.1]);
        assert_eq!(tripartite_negativity(&sigma).unwrap(), 0.0);
    }

    #[test]
    fn number_expectations() {
        assert_eq!(
            number_expectation(&CovarianceMatrix::vacuum(2), 0).unwrap(),
            0.0
        );
        let p = PumpParameters::new(0.5, 0.5).unwrap();
        let sigma = bisqueezed_state_from_nus(p, [1.0, 1.0, 1.0]).unwrap();
        let d = decouple(p);
        let sh_ab = d.r_ab.sinh().powi(2);
        let sh_bc = d.r_bc.sinh().powi(2);
        let na = number_expectation(&sigma, 0).unwrap();
        let nb = number_expectation(&sigma, 1).unwrap();
        let nc = number_expectation(&sigma, 2).unwrap();
        assert!((na - sh_ab).abs() < 1e-12);
        assert!((nb - (sh_ab + sh_bc + sh_ab * sh_bc)).abs() < 1e-12);
        assert!((nc - sh_bc * (1.0 + sh_ab)).abs() < 1e-12);
        assert!(number_expectation(&sigma, 3).is_err());
    }

    #[test]
    fn entropy_of_pure_and_thermal_states() {
        assert!(von_neumann_entropy(&CovarianceMatrix::vacuum(2)).unwrap() < 1e-12);
        let s = von_neumann_entropy(&CovarianceMatrix::from_williamson(&[1.7])).unwrap();
        assert!(s > 0.0);

        // reduced mode of a two-mode squeezed state: Gaussian entropy vs the
        // geometric photon-number distribution with ratio tanh²r
        let r = 1.0f64;
        let reduced = tms(r).partial_trace(&[0]).unwrap();
        let s = von_neumann_entropy(&reduced).unwrap();
        let q = r.tanh().powi(2);
        let mut oracle = 0.0;
        for n in 0..400 {
            let p = (1.0 - q) * q.powi(n);
            oracle -= p * p.ln();
        }
        assert!((s - oracle).abs() < 1e-10, "{s} vs {oracle}");
        assert!((s - 1.6198220928977025).abs() < 1e-12);
    }

    #[test]
    fn coherence_of_thermal_state_vanishes() {
        let sigma = CovarianceMatrix::from_williamson(&[1.3, 2.0, 1.1]);
        let c = relative_entropy_of_coherence(&sigma, 2.0).unwrap();
        assert!(c.abs() < 1e-10);
    }

    #[test]
    fn coherence_of_two_mode_squeezed_state() {
        for &r in &[0.3, 1.0, 1.5] {
            let c = relative_entropy_of_coherence(&tms(r), 2.0).unwrap();
            let expect =
                4.0 * (r.cosh().powi(2) * r.cosh().log2() - r.sinh().powi(2) * r.sinh().log2());
            assert!((c - expect).abs() < 1e-10, "r={r}: {c} vs {expect}");
        }
    }

    #[test]
    fn pair_coherence_of_outer_modes() {
        let p = PumpParameters::new(0.5, 0.5).unwrap();
        let sigma = bisqueezed_state_from_nus(p, [1.0, 1.0, 1.0]).unwrap();
        let e = CovarianceElements::from_state(&sigma).unwrap();
        let rep = first_order_coherence(&sigma, 0, 2).unwrap();
        assert!((rep.pair_coherence - e.delta / 2.0).abs() < 1e-12);
        let want_g1 = e.delta / ((e.alpha - 1.0) * (e.gamma - 1.0)).sqrt();
        assert!((rep.g1 - want_g1).abs() < 1e-12);
        assert!((rep.g1 - 1.0).abs() < 1e-10, "pure-state visibility");
        assert!((rep.spdm[(0, 0)].re - (e.alpha - 1.0) / 2.0).abs() < 1e-12);
        assert!((rep.spdm[(0, 1)].re - e.delta / 2.0).abs() < 1e-12);
        assert!(rep.relative_entropy_coherence > 0.0);
    }

    #[test]
    fn squeezed_pair_has_no_first_order_coherence() {
        let rep = first_order_coherence(&tms(0.8), 0, 1).unwrap();
        assert!(rep.pair_coherence.abs() < 1e-13);
        assert!(rep.g1.abs() < 1e-12);
    }

    #[test]
    fn thermal_state_has_no_pair_coherence() {
        let sigma = CovarianceMatrix::from_williamson(&[1.5, 1.2, 1.9]);
        for (m, n) in [(0, 1), (1, 2), (0, 2)] {
            let rep = first_order_coherence(&sigma, m, n).unwrap();
            assert_eq!(rep.pair_coherence, 0.0);
            assert_eq!(rep.g1, 0.0);
        }
        assert!(first_order_coherence(&sigma, 1, 1).is_err());
    }

    #[test]
    fn williamson_invariance_under_symplectic_conjugation() {
        let p = PumpParameters::new(0.9, 0.4).unwrap();
        let sigma = CovarianceMatrix::from_williamson(&[1.4, 1.2, 2.0]);
        let s = crate::generation::bisqueezing_transform(p);
        let moved = sigma.apply(&s).unwrap();
        let before = sigma.symplectic_eigenvalues().unwrap();
        let after = moved.symplectic_eigenvalues().unwrap();
        for (b, a) in before.iter().zip(&after) {
            assert!((b - a).abs() < 1e-9);
        }
        assert!(moved.is_physical());
        let _ = SymplecticTransform::identity(3);
    }
}
