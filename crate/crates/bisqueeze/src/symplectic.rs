//! Covariance matrices and symplectic transformations.
//!
//! The operator vector is ordered `(a₁, …, a_N, a₁†, …, a_N†)`, so the
//! symplectic form satisfies `iΩ = diag(𝟙, −𝟙)` and a symplectic matrix has
//! the Bogoliubov block structure `S = [[α, β], [β*, α*]]` with
//! `S Ω S† = Ω`. Covariance matrices are Hermitian with block structure
//! `σ = [[W, V], [V*, W*]]`, `W = W†`, `V = Vᵀ`, and the vacuum is the
//! identity. A state is physical iff `σ + iΩ ≥ 0`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Default absolute tolerance for symplectic / physicality checks.
/// Scaled by the matrix magnitude when entries grow past O(1).
pub const CHECK_TOL: f64 = 1e-10;

const HERMITICITY_TOL: f64 = 1e-12;

/// Symplectic eigenvalue pairs `±ν` must cancel to this accuracy.
const PAIRING_TOL: f64 = 1e-8;

fn scale_of(m: &DMatrix<C64>) -> f64 {
    m.camax().max(1.0)
}

/// The symplectic form `Ω` for `n` modes: `iΩ = diag(𝟙, −𝟙)`.
pub fn symplectic_form(n_modes: usize) -> DMatrix<C64> {
    assert!(n_modes >= 1, "need at least one mode");
    DMatrix::from_fn(2 * n_modes, 2 * n_modes, |i, j| {
        if i != j {
            C64::ZERO
        } else if i < n_modes {
            C64::new(0.0, -1.0)
        } else {
            C64::new(0.0, 1.0)
        }
    })
}

/// `iΩ` as a real diagonal matrix, `diag(𝟙, −𝟙)`.
fn i_omega_diagonal(n_modes: usize) -> DMatrix<C64> {
    DMatrix::from_fn(2 * n_modes, 2 * n_modes, |i, j| {
        if i != j {
            C64::ZERO
        } else if i < n_modes {
            C64::ONE
        } else {
            -C64::ONE
        }
    })
}

/// A `2N×2N` symplectic matrix in the Bogoliubov block form.
#[derive(Clone, Debug)]
pub struct SymplecticTransform {
    n_modes: usize,
    data: DMatrix<C64>,
}

impl SymplecticTransform {
    /// Validates `S Ω S† = Ω`, the block structure, and `det S = 1`.
    pub fn new(data: DMatrix<C64>) -> Result<Self> {
        let n = even_modes(&data).map_err(Error::NotSymplectic)?;
        require_finite(&data).map_err(Error::NotSymplectic)?;
        let scale = scale_of(&data);
        // block structure [[α, β], [β*, α*]]
        for i in 0..n {
            for j in 0..n {
                let a = data[(i, j)] - data[(i + n, j + n)].conj();
                let b = data[(i, j + n)] - data[(i + n, j)].conj();
                if a.norm().max(b.norm()) > HERMITICITY_TOL * scale {
                    return Err(Error::NotSymplectic(
                        "Bogoliubov block structure violated".into(),
                    ));
                }
            }
        }
        let omega = symplectic_form(n);
        let dev = (&data * &omega * data.adjoint() - &omega).camax();
        let tol = CHECK_TOL * scale * scale;
        if dev > tol {
            return Err(Error::NotSymplectic(format!(
                "S Omega S^dag deviates from Omega by {dev:.3e}"
            )));
        }
        let det = data.clone().determinant();
        if (det - C64::ONE).norm() > tol.max(1e-10) {
            return Err(Error::NotSymplectic(format!("det(S) = {det} != 1")));
        }
        Ok(Self { n_modes: n, data })
    }

    /// Builds from a real matrix (imaginary parts zero).
    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            n_modes,
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    /// Matrix product `self · other` (apply `other` first under `σ ↦ S†σS`).
    pub fn compose(&self, other: &SymplecticTransform) -> Result<SymplecticTransform> {
        if self.n_modes != other.n_modes {
            return Err(Error::ModeMismatch {
                left: self.n_modes,
                right: other.n_modes,
            });
        }
        Ok(SymplecticTransform {
            n_modes: self.n_modes,
            data: &self.data * &other.data,
        })
    }

    /// Group inverse `S⁻¹ = −Ω S† Ω`.
    pub fn inverse(&self) -> SymplecticTransform {
        let omega = symplectic_form(self.n_modes);
        SymplecticTransform {
            n_modes: self.n_modes,
            data: -(&omega * self.data.adjoint() * &omega),
        }
    }

    /// Residual `‖SΩS† − Ω‖_∞`.
    pub fn symplectic_defect(&self) -> f64 {
        let omega = symplectic_form(self.n_modes);
        (&self.data * &omega * self.data.adjoint() - &omega).camax()
    }
}

/// A `2N×2N` covariance matrix in the annihilation/creation basis,
/// vacuum-normalized (`σ_vac = 𝟙`).
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: DMatrix<C64>,
}

fn even_modes(m: &DMatrix<C64>) -> std::result::Result<usize, String> {
    if !m.is_square() || m.nrows() == 0 || !m.nrows().is_multiple_of(2) {
        return Err(format!("expected square 2N x 2N matrix, got {}x{}", m.nrows(), m.ncols()));
    }
    Ok(m.nrows() / 2)
}

fn require_finite(m: &DMatrix<C64>) -> std::result::Result<(), String> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err("matrix contains non-finite entries".into())
    }
}

impl CovarianceMatrix {
    /// Validates Hermiticity and the `[[W, V], [V*, W*]]` block structure.
    /// Physicality is not enforced here; see [`CovarianceMatrix::is_physical`].
    pub fn new(data: DMatrix<C64>) -> Result<Self> {
        let n = even_modes(&data).map_err(Error::InvalidCovariance)?;
        require_finite(&data).map_err(Error::InvalidCovariance)?;
        let tol = HERMITICITY_TOL * scale_of(&data);
        let herm_dev = (&data - data.adjoint()).camax();
        if herm_dev > tol {
            return Err(Error::InvalidCovariance(format!(
                "not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let d = data[(i + n, j + n)] - data[(i, j)].conj();
                let v = data[(i, j + n)] - data[(j, i + n)];
                if d.norm() > tol || v.norm() > tol {
                    return Err(Error::InvalidCovariance(
                        "conjugate block structure violated".into(),
                    ));
                }
            }
        }
        Ok(Self { n_modes: n, data })
    }

    /// The vacuum state: the identity matrix.
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            n_modes,
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    /// A state already in Williamson form, `diag(ν₁…ν_N; ν₁…ν_N)`.
    pub fn from_williamson(nus: &[f64]) -> Self {
        let n = nus.len();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (k, &nu) in nus.iter().enumerate() {
            m[(k, k)] = C64::new(nu, 0.0);
            m[(k + n, k + n)] = C64::new(nu, 0.0);
        }
        Self { n_modes: n, data: m }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.data
    }

    /// Heisenberg update `σ ↦ S† σ S`.
    pub fn apply(&self, s: &SymplecticTransform) -> Result<CovarianceMatrix> {
        if self.n_modes != s.n_modes {
            return Err(Error::ModeMismatch {
                left: self.n_modes,
                right: s.n_modes,
            });
        }
        CovarianceMatrix::new(s.data.adjoint() * &self.data * &s.data)
    }

    /// Symplectic eigenvalues (the non-negative members of the `±ν` pairs of
    /// the spectrum of `iΩσ`), in descending order.
    ///
    /// Computed through the Hermitian similarity `σ^½ (iΩ) σ^½`, which is
    /// stable for positive semidefinite `σ`; the resulting spectrum is
    /// symmetric, and the `±` pairs are matched by magnitude and averaged.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let scale = scale_of(&self.data);
        let eig = SymmetricEigen::new(self.data.clone());
        let min = eig.eigenvalues.min();
        if min < -CHECK_TOL * scale {
            return Err(Error::InvalidCovariance(format!(
                "matrix is not positive semidefinite (min eigenvalue {min:.3e})"
            )));
        }
        let sqrt_diag =
            DMatrix::<C64>::from_diagonal(&eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0)));
        let sqrt = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.adjoint();
        let m = &sqrt * i_omega_diagonal(self.n_modes) * &sqrt;
        let mut lambda: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        lambda.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = self.n_modes;
        let mut nus = Vec::with_capacity(n);
        for i in 0..n {
            let lo = lambda[i];
            let hi = lambda[2 * n - 1 - i];
            if (lo + hi).abs() > PAIRING_TOL * scale {
                return Err(Error::Numerical(format!(
                    "symplectic eigenvalue pairing mismatch: {lo:.6e} vs {hi:.6e}"
                )));
            }
            nus.push((hi - lo) / 2.0);
        }
        nus.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(nus)
    }

    /// Smallest eigenvalue of `σ + iΩ`; non-negative (up to tolerance) for
    /// physical states.
    pub fn min_physicality_eigenvalue(&self) -> f64 {
        let m = &self.data + i_omega_diagonal(self.n_modes);
        SymmetricEigen::new(m).eigenvalues.min()
    }

    /// `σ + iΩ ≥ 0` within the default tolerance.
    pub fn is_physical(&self) -> bool {
        self.is_physical_within(CHECK_TOL)
    }

    /// `σ + iΩ ≥ −tol` (tolerance scaled by the matrix magnitude).
    pub fn is_physical_within(&self, tol: f64) -> bool {
        self.min_physicality_eigenvalue() >= -tol * scale_of(&self.data)
    }

    fn require_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::NotPhysical {
                min_eigenvalue: self.min_physicality_eigenvalue(),
            })
        }
    }

    /// Trace out everything but `keep` (strictly increasing mode indices):
    /// deletes the rows and columns of the discarded modes.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidModes("empty mode subset".into()));
        }
        if !keep.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidModes(
                "mode subset must be strictly increasing".into(),
            ));
        }
        if *keep.last().unwrap() >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                index: *keep.last().unwrap(),
                n_modes: self.n_modes,
            });
        }
        let idx: Vec<usize> = keep
            .iter()
            .copied()
            .chain(keep.iter().map(|&k| k + self.n_modes))
            .collect();
        let sub = self.data.select_rows(idx.iter()).select_columns(idx.iter());
        Ok(CovarianceMatrix {
            n_modes: keep.len(),
            data: sub,
        })
    }

    /// Partial transpose of one mode: swaps that mode's annihilation and
    /// creation rows and columns (`σ̃ = P σ P`). Involutive.
    pub fn partial_transpose(&self, mode: usize) -> Result<CovarianceMatrix> {
        if mode >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                index: mode,
                n_modes: self.n_modes,
            });
        }
        let mut m = self.data.clone();
        m.swap_rows(mode, mode + self.n_modes);
        m.swap_columns(mode, mode + self.n_modes);
        Ok(CovarianceMatrix {
            n_modes: self.n_modes,
            data: m,
        })
    }

    /// Product of squared symplectic eigenvalues, `Π ν_m²`; equals `det σ`
    /// and `1` exactly for pure states, growing with mixedness.
    pub fn purity(&self) -> Result<f64> {
        self.require_physical()?;
        Ok(self
            .symplectic_eigenvalues()?
            .iter()
            .map(|nu| nu * nu)
            .product())
    }

    /// Change of basis to interleaved quadratures `(q, p)` per mode with the
    /// given mode order; carries the convention `σ' = K σ K†`, `K K† = 2·𝟙`,
    /// so the vacuum maps to `2·𝟙`.
    pub fn to_quadrature(&self, mode_order: &[usize]) -> Result<QuadratureCovariance> {
        validate_order(mode_order, self.n_modes)?;
        let k = quadrature_map(mode_order, self.n_modes);
        let full = &k * &self.data * k.adjoint();
        let imag = full.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if imag > 1e-9 * scale_of(&self.data) {
            return Err(Error::Numerical(format!(
                "quadrature form has imaginary residue {imag:.3e}"
            )));
        }
        Ok(QuadratureCovariance {
            mode_order: mode_order.to_vec(),
            data: full.map(|z| z.re),
        })
    }

    /// Quadrature form with the measured mode moved to the last position and
    /// the remaining modes kept in order.
    pub fn to_quadrature_measured_last(&self, measured: usize) -> Result<QuadratureCovariance> {
        if measured >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                index: measured,
                n_modes: self.n_modes,
            });
        }
        let mut order: Vec<usize> = (0..self.n_modes).filter(|&m| m != measured).collect();
        order.push(measured);
        self.to_quadrature(&order)
    }
}

fn validate_order(order: &[usize], n_modes: usize) -> Result<()> {
    let mut seen = vec![false; n_modes];
    if order.len() != n_modes {
        return Err(Error::InvalidModes(format!(
            "mode order has {} entries for {} modes",
            order.len(),
            n_modes
        )));
    }
    for &m in order {
        if m >= n_modes {
            return Err(Error::ModeOutOfRange {
                index: m,
                n_modes,
            });
        }
        if seen[m] {
            return Err(Error::InvalidModes(format!("duplicate mode {m}")));
        }
        seen[m] = true;
    }
    Ok(())
}

/// The linear map `K` with rows `q_m = a_m + a_m†`, `p_m = −i(a_m − a_m†)`
/// in the given mode order. `K K† = 2·𝟙`, so `K⁻¹ = K†/2`.
fn quadrature_map(order: &[usize], n_modes: usize) -> DMatrix<C64> {
    let mut k = DMatrix::<C64>::zeros(2 * n_modes, 2 * n_modes);
    for (row, &m) in order.iter().enumerate() {
        k[(2 * row, m)] = C64::ONE;
        k[(2 * row, m + n_modes)] = C64::ONE;
        k[(2 * row + 1, m)] = C64::new(0.0, -1.0);
        k[(2 * row + 1, m + n_modes)] = C64::new(0.0, 1.0);
    }
    k
}

/// A real symmetric covariance matrix in interleaved `(q, p)` ordering,
/// carrying the overall factor 2 of the `σ' = K σ K†` convention.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureCovariance {
    mode_order: Vec<usize>,
    data: DMatrix<f64>,
}

impl QuadratureCovariance {
    pub fn new(mode_order: Vec<usize>, data: DMatrix<f64>) -> Result<Self> {
        let n = mode_order.len();
        if data.nrows() != 2 * n || data.ncols() != 2 * n {
            return Err(Error::InvalidCovariance(format!(
                "expected {}x{} quadrature matrix, got {}x{}",
                2 * n,
                2 * n,
                data.nrows(),
                data.ncols()
            )));
        }
        validate_order(&mode_order, n)?;
        let dev = (&data - data.transpose()).amax();
        if dev > HERMITICITY_TOL * data.amax().max(1.0) {
            return Err(Error::InvalidCovariance(format!(
                "quadrature matrix not symmetric (deviation {dev:.3e})"
            )));
        }
        Ok(Self { mode_order, data })
    }

    pub fn n_modes(&self) -> usize {
        self.mode_order.len()
    }

    pub fn mode_order(&self) -> &[usize] {
        &self.mode_order
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// Inverse basis change `σ = ¼ K† σ' K`, restoring the natural mode
    /// order.
    pub fn to_covariance(&self) -> Result<CovarianceMatrix> {
        let n = self.n_modes();
        let k = quadrature_map(&self.mode_order, n);
        let complexified = self.data.map(|x| C64::new(x, 0.0));
        let sigma = k.adjoint() * complexified * &k * C64::new(0.25, 0.0);
        CovarianceMatrix::new(sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::{beam_splitter_ac, two_mode_squeezer, SqueezerPair};

    fn tms_state(r: f64) -> CovarianceMatrix {
        let ch = (2.0 * r).cosh();
        let sh = (2.0 * r).sinh();
        let mut m = DMatrix::<C64>::identity(4, 4) * C64::new(ch, 0.0);
        m[(0, 3)] = C64::new(sh, 0.0);
        m[(3, 0)] = C64::new(sh, 0.0);
        m[(1, 2)] = C64::new(sh, 0.0);
        m[(2, 1)] = C64::new(sh, 0.0);
        CovarianceMatrix::new(m).unwrap()
    }

    fn two_mode_squeezer_4x4(r: f64) -> SymplecticTransform {
        let ch = C64::new(r.cosh(), 0.0);
        let sh = C64::new(r.sinh(), 0.0);
        let mut m = DMatrix::<C64>::zeros(4, 4);
        for i in 0..4 {
            m[(i, i)] = ch;
        }
        m[(0, 3)] = sh;
        m[(3, 0)] = sh;
        m[(1, 2)] = sh;
        m[(2, 1)] = sh;
        SymplecticTransform::new(m).unwrap()
    }

    #[test]
    fn symplectic_form_blocks() {
        let omega = symplectic_form(1);
        assert_eq!(omega[(0, 0)], C64::new(0.0, -1.0));
        assert_eq!(omega[(1, 1)], C64::new(0.0, 1.0));
        for n in 1..=3 {
            let omega = symplectic_form(n);
            let sq = &omega * &omega;
            let minus_one = -DMatrix::<C64>::identity(2 * n, 2 * n);
            assert!((sq - minus_one).camax() < 1e-15);
            assert!((omega.adjoint() + &omega).camax() < 1e-15, "anti-Hermitian");
        }
    }

    #[test]
    fn vacuum_under_two_mode_squeezer_gives_squeezed_state() {
        for &r in &[0.1, 0.5, 1.0, 2.0] {
            let s = two_mode_squeezer_4x4(r);
            let out = CovarianceMatrix::vacuum(2).apply(&s).unwrap();
            let expect = tms_state(r);
            assert!((out.matrix() - expect.matrix()).camax() < 1e-12 * (2.0 * r).cosh());
        }
    }

    #[test]
    fn identity_transform_leaves_state() {
        let sigma = tms_state(0.7);
        let out = sigma.apply(&SymplecticTransform::identity(2)).unwrap();
        assert!((out.matrix() - sigma.matrix()).camax() < 1e-14);
    }

    #[test]
    fn beam_splitter_on_equal_thermal_modes_is_trivial() {
        // direct 6x6 multiplication oracle: S† σ S computed explicitly
        let sigma = CovarianceMatrix::from_williamson(&[1.4, 1.9, 1.4]);
        let s = beam_splitter_ac(0.83);
        let direct = CovarianceMatrix::new(
            s.matrix().adjoint() * sigma.matrix() * s.matrix(),
        )
        .unwrap();
        let via = sigma.apply(&s).unwrap();
        assert!((via.matrix() - direct.matrix()).camax() < 1e-14);
        assert!((via.matrix() - sigma.matrix()).camax() < 1e-12);
    }

    #[test]
    fn apply_transform_rejects_dimension_mismatch() {
        let sigma = CovarianceMatrix::vacuum(2);
        let s = beam_splitter_ac(0.3); // three modes
        assert!(matches!(
            sigma.apply(&s),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn symplectic_eigenvalues_of_simple_states() {
        let nus = CovarianceMatrix::vacuum(3).symplectic_eigenvalues().unwrap();
        assert!(nus.iter().all(|&nu| (nu - 1.0).abs() < 1e-12));

        // pure two-mode squeezed state stays pure
        for &r in &[0.3, 1.0, 2.0] {
            let nus = tms_state(r).symplectic_eigenvalues().unwrap();
            assert!(nus.iter().all(|&nu| (nu - 1.0).abs() < 1e-9), "{nus:?}");
        }

        let nus = CovarianceMatrix::from_williamson(&[1.1, 2.5, 1.7])
            .symplectic_eigenvalues()
            .unwrap();
        assert_eq!(nus.len(), 3);
        assert!((nus[0] - 2.5).abs() < 1e-12);
        assert!((nus[1] - 1.7).abs() < 1e-12);
        assert!((nus[2] - 1.1).abs() < 1e-12);
    }

    #[test]
    fn physicality_checks() {
        let vac = CovarianceMatrix::vacuum(1);
        assert!(vac.is_physical());
        // eigenvalues of vacuum + iΩ are {0, 2}
        assert!(vac.min_physicality_eigenvalue().abs() < 1e-12);

        let sub = CovarianceMatrix::from_williamson(&[0.5]);
        assert!(!sub.is_physical());
        assert!((sub.min_physicality_eigenvalue() + 0.5).abs() < 1e-12);
        assert!(matches!(sub.purity(), Err(Error::NotPhysical { .. })));
    }

    #[test]
    fn partial_trace_keeps_submatrix() {
        let sigma = tms_state(0.8);
        let a = sigma.partial_trace(&[0]).unwrap();
        let ch = (1.6f64).cosh();
        assert!((a.matrix()[(0, 0)].re - ch).abs() < 1e-12);
        assert!((a.matrix()[(1, 1)].re - ch).abs() < 1e-12);
        assert!(a.matrix()[(0, 1)].norm() < 1e-14);

        let all = sigma.partial_trace(&[0, 1]).unwrap();
        assert!((all.matrix() - sigma.matrix()).camax() < 1e-15);

        assert!(sigma.partial_trace(&[]).is_err());
        assert!(sigma.partial_trace(&[0, 2]).is_err());
        assert!(sigma.partial_trace(&[1, 0]).is_err());
    }

    #[test]
    fn partial_transpose_spectrum_and_involution() {
        for &r in &[0.1, 0.5, 1.0, 2.0] {
            let sigma = tms_state(r);
            let pt = sigma.partial_transpose(1).unwrap();
            let nus = pt.symplectic_eigenvalues().unwrap();
            assert!((nus[0] - (2.0 * r).exp()).abs() < 1e-9 * (2.0 * r).exp());
            assert!((nus[1] - (-2.0 * r).exp()).abs() < 1e-9);

            let back = pt.partial_transpose(1).unwrap();
            assert!((back.matrix() - sigma.matrix()).camax() < 1e-15);
        }
        // separable product state: all PT eigenvalues at least 1
        let prod = CovarianceMatrix::from_williamson(&[1.3, 1.05]);
        let nus = prod.partial_transpose(0).unwrap().symplectic_eigenvalues().unwrap();
        assert!(nus.iter().all(|&nu| nu >= 1.0 - 1e-12));

        assert!(prod.partial_transpose(2).is_err());
    }

    #[test]
    fn purity_of_thermal_products() {
        assert!((CovarianceMatrix::vacuum(2).purity().unwrap() - 1.0).abs() < 1e-12);
        let nus = [1.3, 1.7, 2.1];
        let p = CovarianceMatrix::from_williamson(&nus).purity().unwrap();
        let expect: f64 = nus.iter().map(|nu| nu * nu).product();
        assert!((p - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn quadrature_round_trip_and_vacuum_scaling() {
        let vac = CovarianceMatrix::vacuum(3).to_quadrature(&[0, 1, 2]).unwrap();
        let two_id = DMatrix::<f64>::identity(6, 6) * 2.0;
        assert!((vac.matrix() - two_id).amax() < 1e-14);

        let sigma = CovarianceMatrix::vacuum(3)
            .apply(&two_mode_squeezer(SqueezerPair::Ab, 0.9))
            .unwrap()
            .apply(&beam_splitter_ac(0.4))
            .unwrap();
        let q = sigma.to_quadrature_measured_last(1).unwrap();
        assert_eq!(q.mode_order(), &[0, 2, 1]);
        let back = q.to_covariance().unwrap();
        assert!((back.matrix() - sigma.matrix()).camax() < 1e-12);
    }

    #[test]
    fn transform_validation_rejects_garbage() {
        let m = DMatrix::<C64>::from_fn(4, 4, |i, j| C64::new((i + 2 * j) as f64, 0.0));
        assert!(SymplecticTransform::new(m).is_err());
        let m = DMatrix::<C64>::from_fn(3, 3, |_, _| C64::ONE);
        assert!(SymplecticTransform::new(m).is_err());
    }

    #[test]
    fn covariance_validation_rejects_non_hermitian() {
        let mut m = DMatrix::<C64>::identity(4, 4);
        m[(0, 1)] = C64::new(0.5, 0.0);
        assert!(CovarianceMatrix::new(m).is_err());
    }

    #[test]
    fn covariance_validation_rejects_non_finite_entries() {
        let mut m = DMatrix::<C64>::identity(4, 4);
        m[(0, 0)] = C64::new(f64::NAN, 0.0);
        assert!(CovarianceMatrix::new(m).is_err());
        let mut m = DMatrix::<C64>::identity(4, 4);
        m[(1, 1)] = C64::new(f64::INFINITY, 0.0);
        assert!(CovarianceMatrix::new(m).is_err());
    }
}
