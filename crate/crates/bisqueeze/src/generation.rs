//! Construction of the bi-squeezed three-mode state.
//!
//! Two simultaneous two-mode squeezing interactions, `(a,b)` with strength
//! `R_ab` and `(b,c)` with strength `R_bc`, act together on a thermal input.
//! The combined evolution factorizes exactly into a beam splitter on `(a,c)`
//! followed by the two squeezers,
//!
//! ```text
//! exp(R_ab·K_ab + R_bc·K_bc) = S_ac(θ_ac) · S_ab(r_ab) · S_bc(r_bc),
//! ```
//!
//! with `(r_ab, r_bc, θ_ac)` given in closed form by [`decouple`]. The final
//! state is available both as the matrix product and as closed-form entries
//! ([`covariance_elements`]); the two routes agree entrywise.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::constants::{HBAR, K_B};
use crate::symplectic::{CovarianceMatrix, SymplecticTransform};
use crate::{Error, Result};

/// Dimensionless squeezing strengths of the two pump processes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PumpParameters {
    pub r_ab: f64,
    pub r_bc: f64,
}

impl PumpParameters {
    pub fn new(r_ab: f64, r_bc: f64) -> Result<Self> {
        if !r_ab.is_finite() || !r_bc.is_finite() {
            return Err(Error::InvalidParameter(
                "pump strengths must be finite".into(),
            ));
        }
        Ok(Self { r_ab, r_bc })
    }
}

/// Output of the exact factorization: squeezer strengths, beam-splitter
/// angle, and the polar intermediates `ρ = √(R_ab² + R_bc²)`,
/// `tan φ = R_bc / R_ab`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoupledParameters {
    pub r_ab: f64,
    pub r_bc: f64,
    pub theta_ac: f64,
    pub rho: f64,
    pub phi: f64,
}

/// Exact factorization of the combined two-pump evolution,
///
/// ```text
/// r_ab  = asinh(cos φ · sinh ρ)
/// r_bc  = atanh(sin φ · tanh ρ)
/// θ_ac  = atan2(sin φ, cos φ · cosh ρ) − φ
/// ```
///
/// The two-argument arctangent keeps θ_ac continuous through `R_ab ≤ 0`;
/// at `R_ab = R_bc = 0` everything is zero.
pub fn decouple(p: PumpParameters) -> DecoupledParameters {
    let rho = p.r_ab.hypot(p.r_bc);
    if rho == 0.0 {
        return DecoupledParameters {
            r_ab: 0.0,
            r_bc: 0.0,
            theta_ac: 0.0,
            rho: 0.0,
            phi: 0.0,
        };
    }
    let phi = p.r_bc.atan2(p.r_ab);
    let r_ab = (phi.cos() * rho.sinh()).asinh();
    let r_bc = (phi.sin() * rho.tanh()).atanh();
    let theta_ac = phi.sin().atan2(phi.cos() * rho.cosh()) - phi;
    DecoupledParameters {
        r_ab,
        r_bc,
        theta_ac,
        rho,
        phi,
    }
}

/// Mode frequencies (rad/s) and temperature (K) of the thermal input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalSpec {
    pub omega_a: f64,
    pub omega_b: f64,
    pub omega_c: f64,
    pub temperature: f64,
}

impl ThermalSpec {
    pub fn new(omega_a: f64, omega_b: f64, omega_c: f64, temperature: f64) -> Result<Self> {
        for (name, omega) in [("omega_a", omega_a), ("omega_b", omega_b), ("omega_c", omega_c)] {
            if !omega.is_finite() || omega <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a positive frequency, got {omega}"
                )));
            }
        }
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "temperature must be non-negative, got {temperature}"
            )));
        }
        Ok(Self {
            omega_a,
            omega_b,
            omega_c,
            temperature,
        })
    }

    /// Thermal occupations `ν_m = coth(ħω_m / 2k_B T)`; exactly 1 at `T = 0`.
    pub fn nus(&self) -> [f64; 3] {
        [
            thermal_nu(self.omega_a, self.temperature),
            thermal_nu(self.omega_b, self.temperature),
            thermal_nu(self.omega_c, self.temperature),
        ]
    }
}

/// `coth(ħω / 2k_B T)`, evaluated as `1 + 2/(e^{ħω/k_B T} − 1)` so that large
/// arguments saturate cleanly at 1.
pub fn thermal_nu(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 1.0;
    }
    let big_omega = HBAR * omega / (K_B * temperature);
    1.0 + 2.0 / (big_omega.exp_m1())
}

/// Thermal state `diag(ν_a, ν_b, ν_c; ν_a, ν_b, ν_c)`.
pub fn thermal_state(spec: &ThermalSpec) -> CovarianceMatrix {
    CovarianceMatrix::from_williamson(&spec.nus())
}

/// Which mode pair a two-mode squeezer acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqueezerPair {
    Ab,
    Bc,
}

impl SqueezerPair {
    fn modes(self) -> (usize, usize) {
        match self {
            SqueezerPair::Ab => (0, 1),
            SqueezerPair::Bc => (1, 2),
        }
    }
}

/// Two-mode squeezer on three modes: `cosh r` on the pair's diagonal and
/// `sinh r` coupling each mode to the partner's conjugate.
pub fn two_mode_squeezer(pair: SqueezerPair, r: f64) -> SymplecticTransform {
    let (i, j) = pair.modes();
    let ch = C64::new(r.cosh(), 0.0);
    let sh = C64::new(r.sinh(), 0.0);
    let mut m = DMatrix::<C64>::identity(6, 6);
    m[(i, i)] = ch;
    m[(j, j)] = ch;
    m[(i + 3, i + 3)] = ch;
    m[(j + 3, j + 3)] = ch;
    m[(i, j + 3)] = sh;
    m[(j, i + 3)] = sh;
    m[(i + 3, j)] = sh;
    m[(j + 3, i)] = sh;
    SymplecticTransform::new(m).expect("squeezer is symplectic by construction")
}

/// Beam splitter mixing modes `a` and `c` by angle θ; identity on `b`.
pub fn beam_splitter_ac(theta: f64) -> SymplecticTransform {
    let c = C64::new(theta.cos(), 0.0);
    let s = C64::new(theta.sin(), 0.0);
    let mut m = DMatrix::<C64>::identity(6, 6);
    for base in [0, 3] {
        m[(base, base)] = c;
        m[(base, base + 2)] = s;
        m[(base + 2, base)] = -s;
        m[(base + 2, base + 2)] = c;
    }
    SymplecticTransform::new(m).expect("beam splitter is symplectic by construction")
}

/// Generator of [`two_mode_squeezer`]: its derivative at `r = 0`.
pub fn squeezer_generator(pair: SqueezerPair) -> DMatrix<f64> {
    let (i, j) = pair.modes();
    let mut m = DMatrix::<f64>::zeros(6, 6);
    m[(i, j + 3)] = 1.0;
    m[(j, i + 3)] = 1.0;
    m[(i + 3, j)] = 1.0;
    m[(j + 3, i)] = 1.0;
    m
}

/// Generator of [`beam_splitter_ac`]: its derivative at `θ = 0`.
pub fn beam_splitter_generator() -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(6, 6);
    for base in [0, 3] {
        m[(base, base + 2)] = 1.0;
        m[(base + 2, base)] = -1.0;
    }
    m
}

/// `M = R_ab·K_ab + R_bc·K_bc`; `exp(M)` is the symplectic representation of
/// the combined two-pump evolution and must equal the factored product
/// `S_ac(θ_ac)·S_ab(r_ab)·S_bc(r_bc)`.
pub fn combined_generator(p: PumpParameters) -> DMatrix<f64> {
    squeezer_generator(SqueezerPair::Ab) * p.r_ab + squeezer_generator(SqueezerPair::Bc) * p.r_bc
}

/// The factored symplectic transform `S_ac(θ_ac)·S_ab(r_ab)·S_bc(r_bc)`.
pub fn bisqueezing_transform(p: PumpParameters) -> SymplecticTransform {
    let d = decouple(p);
    beam_splitter_ac(d.theta_ac)
        .compose(&two_mode_squeezer(SqueezerPair::Ab, d.r_ab))
        .and_then(|s| s.compose(&two_mode_squeezer(SqueezerPair::Bc, d.r_bc)))
        .expect("factors share mode count")
}

/// Bi-squeezed state `σ = S† σ_th S` from the thermal input.
pub fn bisqueezed_state(p: PumpParameters, spec: &ThermalSpec) -> Result<CovarianceMatrix> {
    thermal_state(spec).apply(&bisqueezing_transform(p))
}

/// Bi-squeezed state from given thermal occupations.
pub fn bisqueezed_state_from_nus(p: PumpParameters, nus: [f64; 3]) -> Result<CovarianceMatrix> {
    CovarianceMatrix::from_williamson(&nus).apply(&bisqueezing_transform(p))
}

/// The six scalars parameterizing the bi-squeezed state,
///
/// ```text
///     ⎛ α 0 δ   0 ε 0 ⎞
///     ⎜ 0 β 0   ε 0 ζ ⎟
/// σ = ⎜ δ 0 γ   0 ζ 0 ⎟
///     ⎜ 0 ε 0   α 0 δ ⎟
///     ⎜ ε 0 ζ   0 β 0 ⎟
///     ⎝ 0 ζ 0   δ 0 γ ⎠
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceElements {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub zeta: f64,
}

impl CovarianceElements {
    /// Assembles the full 6×6 state.
    pub fn assemble(&self) -> CovarianceMatrix {
        let z = C64::ZERO;
        let c = |x: f64| C64::new(x, 0.0);
        let (al, be, ga) = (c(self.alpha), c(self.beta), c(self.gamma));
        let (de, ep, ze) = (c(self.delta), c(self.epsilon), c(self.zeta));
        #[rustfmt::skip]
        let rows = [
            [al, z, de,  z, ep, z],
            [z, be,  z, ep,  z, ze],
            [de, z, ga,  z, ze, z],
            [z, ep,  z, al,  z, de],
            [ep, z, ze,  z, be, z],
            [z, ze,  z, de,  z, ga],
        ];
        let m = DMatrix::from_fn(6, 6, |i, j| rows[i][j]);
        CovarianceMatrix::new(m).expect("pattern is Hermitian by construction")
    }

    /// Reads the six entries back out of a three-mode state with the
    /// bi-squeezed zero pattern.
    pub fn from_state(sigma: &CovarianceMatrix) -> Result<Self> {
        if sigma.n_modes() != 3 {
            return Err(Error::ModeMismatch {
                left: sigma.n_modes(),
                right: 3,
            });
        }
        let m = sigma.matrix();
        Ok(Self {
            alpha: m[(0, 0)].re,
            beta: m[(1, 1)].re,
            gamma: m[(2, 2)].re,
            delta: m[(0, 2)].re,
            epsilon: m[(0, 4)].re,
            zeta: m[(1, 5)].re,
        })
    }
}

/// Closed-form entries of the bi-squeezed state for thermal occupations
/// `(ν_a, ν_b, ν_c)`. Agrees entrywise with the matrix-product route.
pub fn covariance_elements(d: &DecoupledParameters, nus: [f64; 3]) -> CovarianceElements {
    let [nu_a, nu_b, nu_c] = nus;
    let (ch1, sh1) = (d.r_ab.cosh(), d.r_ab.sinh());
    let (ch2, sh2) = (d.r_bc.cosh(), d.r_bc.sinh());
    let sh1_2 = (2.0 * d.r_ab).sinh();
    let sh2_2 = (2.0 * d.r_bc).sinh();
    let ch2_2 = (2.0 * d.r_bc).cosh();
    let sin_sq = d.theta_ac.sin().powi(2);
    let sin_2t = (2.0 * d.theta_ac).sin();
    let cos_2t = (2.0 * d.theta_ac).cos();
    let dd = nu_c - nu_a;
    // ν_a dressed by the beam-splitter rotation toward ν_c
    let mixed = nu_a + dd * sin_sq;

    let alpha = mixed * ch1 * ch1 + nu_b * sh1 * sh1;
    let beta = nu_b * ch1 * ch1 * ch2 * ch2 + mixed * sh1 * sh1 * ch2 * ch2
        - 0.5 * dd * sin_2t * sh1 * sh2_2
        + (nu_c - dd * sin_sq) * sh2 * sh2;
    let gamma = (nu_c - dd * sin_sq) * ch2 * ch2 - 0.5 * dd * sin_2t * sh1 * sh2_2
        + nu_b * ch1 * ch1 * sh2 * sh2
        + mixed * sh1 * sh1 * sh2 * sh2;
    let delta = -0.5 * dd * sin_2t * ch2 * ch1 + 0.5 * (nu_b + mixed) * sh1_2 * sh2;
    let epsilon = 0.5 * (nu_b + mixed) * sh1_2 * ch2 - 0.5 * dd * sin_2t * sh2 * ch1;
    let zeta = 0.25
        * (-2.0 * dd * ch2_2 * sin_2t * sh1 + (nu_a + 2.0 * nu_b + nu_c) * ch1 * ch1 * sh2_2
            - dd * cos_2t * (sh1 * sh1 - 1.0) * sh2_2);

    CovarianceElements {
        alpha,
        beta,
        gamma,
        delta,
        epsilon,
        zeta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    const GHZ: f64 = 2.0 * PI * 1e9;

    #[test]
    fn decouple_single_pump_limits() {
        let d = decouple(PumpParameters::new(0.8, 0.0).unwrap());
        assert!((d.r_ab - 0.8).abs() < 1e-15);
        assert_eq!(d.r_bc, 0.0);
        assert_eq!(d.theta_ac, 0.0);

        let d = decouple(PumpParameters::new(0.0, 1.3).unwrap());
        assert!(d.r_ab.abs() < 1e-15);
        assert!((d.r_bc - 1.3).abs() < 1e-12);
        assert!(d.theta_ac.abs() < 1e-15);

        let d = decouple(PumpParameters::new(0.0, 0.0).unwrap());
        assert_eq!((d.r_ab, d.r_bc, d.theta_ac, d.rho, d.phi), (0.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn decouple_symmetric_point() {
        // frozen from an independent matrix-exponential evaluation
        let d = decouple(PumpParameters::new(0.5, 0.5).unwrap());
        assert!((d.r_ab - 0.519092526149672).abs() < 1e-12);
        assert!((d.r_bc - 0.460545354139323).abs() < 1e-12);
        assert!((d.theta_ac - -0.114769351148315).abs() < 1e-12);
        assert!((d.rho - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((d.phi - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn decouple_internal_relations() {
        for &(ra, rb) in &[(0.5, 0.5), (1.7, -0.4), (-1.2, 0.9), (-0.3, -2.0), (2.0, 2.0)] {
            let d = decouple(PumpParameters::new(ra, rb).unwrap());
            assert!((d.r_ab.sinh() - d.phi.cos() * d.rho.sinh()).abs() < 1e-12);
            assert!(
                ((d.phi + d.theta_ac).sin() - d.phi.sin() / d.r_ab.cosh()).abs() < 1e-12,
                "at ({ra},{rb})"
            );
        }
    }

    #[test]
    fn thermal_state_reference_points() {
        let spec = ThermalSpec::new(4.99 * GHZ, 5.0 * GHZ, 5.01 * GHZ, 0.0).unwrap();
        let sigma = thermal_state(&spec);
        assert!((sigma.matrix() - CovarianceMatrix::vacuum(3).matrix()).camax() == 0.0);

        // 5 GHz at 15 mK
        let spec = ThermalSpec::new(5.0 * GHZ, 5.0 * GHZ, 5.0 * GHZ, 0.015).unwrap();
        let big_omega = HBAR * 5.0 * GHZ / (K_B * 0.015);
        assert!((big_omega - 16.0).abs() < 0.05, "{big_omega}");
        let nu = spec.nus()[0];
        assert!((nu - 1.000000225639).abs() < 1e-10, "{nu:.12}");
        assert!((nu - (1.0 + 2.0 * (-big_omega).exp())).abs() < 1e-12);

        // optical: 5.64e5 GHz at 300 K
        let omega = 2.0 * PI * 5.64e14;
        let big_omega = HBAR * omega / (K_B * 300.0);
        assert!((big_omega - 90.0).abs() < 0.5, "{big_omega}");

        assert!(ThermalSpec::new(-1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ThermalSpec::new(1.0, 1.0, 1.0, -0.2).is_err());
    }

    #[test]
    fn squeezer_reduces_to_two_mode_matrix() {
        let r = 0.73;
        let s = two_mode_squeezer(SqueezerPair::Ab, r);
        let m = s.matrix();
        let idx = [0usize, 1, 3, 4]; // rows/cols of modes a, b
        let (ch, sh) = (r.cosh(), r.sinh());
        let expect = [
            [ch, 0.0, 0.0, sh],
            [0.0, ch, sh, 0.0],
            [0.0, sh, ch, 0.0],
            [sh, 0.0, 0.0, ch],
        ];
        for (i, &ri) in idx.iter().enumerate() {
            for (j, &rj) in idx.iter().enumerate() {
                assert!((m[(ri, rj)].re - expect[i][j]).abs() < 1e-15);
            }
        }
        // untouched mode stays identity
        assert_eq!(m[(2, 2)], C64::ONE);
        assert_eq!(m[(5, 5)], C64::ONE);
    }

    #[test]
    fn squeezer_group_properties() {
        let s = two_mode_squeezer(SqueezerPair::Bc, 0.0);
        assert!((s.matrix() - DMatrix::<C64>::identity(6, 6)).camax() < 1e-15);

        let s = two_mode_squeezer(SqueezerPair::Ab, 0.9)
            .compose(&two_mode_squeezer(SqueezerPair::Ab, -0.9))
            .unwrap();
        assert!((s.matrix() - DMatrix::<C64>::identity(6, 6)).camax() < 1e-14);
    }

    #[test]
    fn beam_splitter_group_properties() {
        let s = beam_splitter_ac(0.0);
        assert!((s.matrix() - DMatrix::<C64>::identity(6, 6)).camax() < 1e-15);

        // π/2 swaps a and c up to sign
        let s = beam_splitter_ac(FRAC_PI_2);
        assert!((s.matrix()[(0, 2)].re - 1.0).abs() < 1e-15);
        assert!((s.matrix()[(2, 0)].re + 1.0).abs() < 1e-15);
        assert!(s.matrix()[(0, 0)].norm() < 1e-15);

        // one-parameter group
        let lhs = beam_splitter_ac(0.4).compose(&beam_splitter_ac(0.7)).unwrap();
        let rhs = beam_splitter_ac(1.1);
        assert!((lhs.matrix() - rhs.matrix()).camax() < 1e-14);
    }

    #[test]
    fn generators_are_derivatives_at_zero() {
        let h = 1e-6;
        for pair in [SqueezerPair::Ab, SqueezerPair::Bc] {
            let fd = (two_mode_squeezer(pair, h).matrix() - two_mode_squeezer(pair, -h).matrix())
                .map(|z| z.re)
                / (2.0 * h);
            assert!((fd - squeezer_generator(pair)).amax() < 1e-9);
        }
        let fd = (beam_splitter_ac(h).matrix() - beam_splitter_ac(-h).matrix()).map(|z| z.re)
            / (2.0 * h);
        assert!((fd - beam_splitter_generator()).amax() < 1e-9);
    }

    #[test]
    fn generator_commutator_closes_on_beam_splitter() {
        let kab = squeezer_generator(SqueezerPair::Ab);
        let kbc = squeezer_generator(SqueezerPair::Bc);
        let comm = &kab * &kbc - &kbc * &kab;
        assert!((comm - beam_splitter_generator()).amax() < 1e-15);
    }

    #[test]
    fn combined_generator_single_pump_exponential() {
        let p = PumpParameters::new(0.85, 0.0).unwrap();
        let e = combined_generator(p).exp();
        let s = two_mode_squeezer(SqueezerPair::Ab, 0.85);
        assert!((e.map(|x| C64::new(x, 0.0)) - s.matrix()).camax() < 1e-12);
    }

    #[test]
    fn bisqueezed_zero_pump_is_thermal() {
        let spec = ThermalSpec::new(4.99 * GHZ, 5.0 * GHZ, 5.01 * GHZ, 0.015).unwrap();
        let sigma = bisqueezed_state(PumpParameters::new(0.0, 0.0).unwrap(), &spec).unwrap();
        assert!((sigma.matrix() - thermal_state(&spec).matrix()).camax() < 1e-14);
    }

    #[test]
    fn bisqueezed_single_pump_vacuum_is_two_mode_squeezed() {
        let r = 0.62;
        let sigma =
            bisqueezed_state_from_nus(PumpParameters::new(r, 0.0).unwrap(), [1.0, 1.0, 1.0])
                .unwrap();
        let ab = sigma.partial_trace(&[0, 1]).unwrap();
        let (ch2, sh2) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        assert!((ab.matrix()[(0, 0)].re - ch2).abs() < 1e-12);
        assert!((ab.matrix()[(1, 1)].re - ch2).abs() < 1e-12);
        assert!((ab.matrix()[(0, 3)].re - sh2).abs() < 1e-12);
        assert!((ab.matrix()[(1, 2)].re - sh2).abs() < 1e-12);
        assert!(ab.matrix()[(0, 1)].norm() < 1e-13);
        // mode c left in vacuum
        let c = sigma.partial_trace(&[2]).unwrap();
        assert!((c.matrix() - CovarianceMatrix::vacuum(1).matrix()).camax() < 1e-13);
    }

    #[test]
    fn bisqueezed_zero_pattern() {
        let sigma =
            bisqueezed_state_from_nus(PumpParameters::new(0.7, 0.4).unwrap(), [1.3, 1.1, 1.7])
                .unwrap();
        for (i, j) in [(0, 1), (0, 3), (0, 5), (1, 2), (2, 3), (2, 5)] {
            assert!(
                sigma.matrix()[(i, j)].norm() < 1e-12,
                "entry ({i},{j}) = {}",
                sigma.matrix()[(i, j)]
            );
        }
    }

    #[test]
    fn closed_form_elements_match_matrix_product() {
        let p = PumpParameters::new(1.1, 0.6).unwrap();
        let d = decouple(p);
        for nus in [[1.0, 1.0, 1.0], [1.2, 1.1, 1.4], [2.0, 1.0, 1.5]] {
            let sigma = bisqueezed_state_from_nus(p, nus).unwrap();
            let got = CovarianceElements::from_state(&sigma).unwrap();
            let want = covariance_elements(&d, nus);
            for (g, w) in [
                (got.alpha, want.alpha),
                (got.beta, want.beta),
                (got.gamma, want.gamma),
                (got.delta, want.delta),
                (got.epsilon, want.epsilon),
                (got.zeta, want.zeta),
            ] {
                assert!((g - w).abs() < 1e-10, "{g} vs {w} at {nus:?}");
            }
        }
    }

    #[test]
    fn closed_form_elements_equal_nu_reduction() {
        // at ν_a = ν_b = ν_c all (ν_c − ν_a) terms drop out
        let d = decouple(PumpParameters::new(0.5, 0.5).unwrap());
        let nu = 1.25;
        let e = covariance_elements(&d, [nu, nu, nu]);
        assert!((e.alpha - nu * (2.0 * d.r_ab).cosh()).abs() < 1e-12);
        let delta_expect = nu * (2.0 * d.r_ab).sinh() * d.r_bc.sinh();
        assert!((e.delta - delta_expect).abs() < 1e-12);
        // frozen from the matrix-product oracle at ν = 1
        let e1 = covariance_elements(&d, [1.0, 1.0, 1.0]);
        assert!((e1.delta - 0.5890917783042854).abs() < 1e-12);
    }

    #[test]
    fn quadrature_form_sign_pattern() {
        // with the idler last, the quadrature rendering interleaves the six
        // elements as 2α, 2δ, ±2ε, ±2ζ with the ε/ζ signs split between the
        // q and p rows
        let p = PumpParameters::new(0.7, 0.4).unwrap();
        let nus = [1.3, 1.1, 1.7];
        let sigma = bisqueezed_state_from_nus(p, nus).unwrap();
        let e = CovarianceElements::from_state(&sigma).unwrap();
        let q = sigma.to_quadrature_measured_last(1).unwrap();
        let m = q.matrix();
        let expect = [
            [e.alpha, 0.0, e.delta, 0.0, e.epsilon, 0.0],
            [0.0, e.alpha, 0.0, e.delta, 0.0, -e.epsilon],
            [e.delta, 0.0, e.gamma, 0.0, e.zeta, 0.0],
            [0.0, e.delta, 0.0, e.gamma, 0.0, -e.zeta],
            [e.epsilon, 0.0, e.zeta, 0.0, e.beta, 0.0],
            [0.0, -e.epsilon, 0.0, -e.zeta, 0.0, e.beta],
        ];
        for i in 0..6 {
            for j in 0..6 {
                assert!(
                    (m[(i, j)] - 2.0 * expect[i][j]).abs() < 1e-12,
                    "entry ({i},{j}): {} vs {}",
                    m[(i, j)],
                    2.0 * expect[i][j]
                );
            }
        }
    }

    #[test]
    fn elements_assemble_round_trip() {
        let p = PumpParameters::new(0.9, 1.4).unwrap();
        let sigma = bisqueezed_state_from_nus(p, [1.05, 1.1, 1.2]).unwrap();
        let e = CovarianceElements::from_state(&sigma).unwrap();
        assert!((e.assemble().matrix() - sigma.matrix()).camax() < 1e-12);
    }

    #[test]
    fn pump_parameters_reject_non_finite() {
        assert!(PumpParameters::new(f64::NAN, 0.0).is_err());
        assert!(PumpParameters::new(0.0, f64::INFINITY).is_err());
    }
}
