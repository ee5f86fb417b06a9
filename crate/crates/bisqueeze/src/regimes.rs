//! Closely-spaced-frequency and low-temperature approximations.
//!
//! With dimensionless frequencies `Ω_m = ħω_m / k_B T` nearly equal, all
//! three thermal occupations collapse to a single `ν = coth(Ω/2)` and every
//! figure of merit reduces to a closed form in `sinh²r_ab`, `sinh²r_bc`.
//! This layer is a verification target, not a fast path: the exact pipeline
//! stays authoritative and these formulas reproduce it at equal occupations.

use crate::constants::{HBAR, K_B};
use crate::generation::CovarianceElements;
use crate::measures::ModePair;
use crate::{Error, Result};

/// Dimensionless reference frequency `Ω` and shift `δΩ`
/// (`Ω_a = Ω − δΩ`, `Ω_c = Ω + δΩ`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeSpec {
    pub omega: f64,
    pub delta_omega: f64,
}

impl RegimeSpec {
    pub fn new(omega: f64, delta_omega: f64) -> Result<Self> {
        if omega.is_nan() || omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dimensionless frequency must be positive, got {omega}"
            )));
        }
        if delta_omega.is_nan() || delta_omega.abs() > omega {
            return Err(Error::InvalidParameter(format!(
                "|delta_omega| must not exceed omega ({delta_omega} vs {omega})"
            )));
        }
        Ok(Self { omega, delta_omega })
    }

    /// Common occupation `ν = coth(Ω/2)`.
    pub fn nu(&self) -> f64 {
        1.0 / (self.omega / 2.0).tanh()
    }

    /// First-order occupations `ν_∓ = coth(Ω/2)·(1 ± δΩ/sinh Ω)`,
    /// approximating `coth((Ω ∓ δΩ)/2)` to second order in `δΩ`.
    pub fn nu_expansion(&self) -> (f64, f64) {
        let nu = self.nu();
        let shift = self.delta_omega / self.omega.sinh();
        (nu * (1.0 + shift), nu * (1.0 - shift))
    }

    /// Exact occupations `(coth(Ω_a/2), coth(Ω/2), coth(Ω_c/2))`.
    pub fn exact_nus(&self) -> (f64, f64, f64) {
        let coth = |x: f64| 1.0 / (x / 2.0).tanh();
        (
            coth(self.omega - self.delta_omega),
            coth(self.omega),
            coth(self.omega + self.delta_omega),
        )
    }
}

fn require_nu(nu: f64) -> Result<()> {
    if nu >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "thermal occupation must satisfy nu >= 1, got {nu}"
        )))
    }
}

/// Equal-occupation covariance elements:
///
/// ```text
/// α = ν·cosh 2r_ab                                ε = ν·sinh 2r_ab·cosh r_bc
/// β = ν·(cosh 2r_ab·cosh²r_bc + sinh²r_bc)        ζ = ν·cosh²r_ab·sinh 2r_bc
/// γ = ν·(cosh 2r_ab·sinh²r_bc + cosh²r_bc)        δ = ν·sinh 2r_ab·sinh r_bc
/// ```
pub fn equal_frequency_elements(nu: f64, r_ab: f64, r_bc: f64) -> Result<CovarianceElements> {
    require_nu(nu)?;
    let ch2ab = (2.0 * r_ab).cosh();
    Ok(CovarianceElements {
        alpha: nu * ch2ab,
        beta: nu * (ch2ab * r_bc.cosh().powi(2) + r_bc.sinh().powi(2)),
        gamma: nu * (ch2ab * r_bc.sinh().powi(2) + r_bc.cosh().powi(2)),
        delta: nu * (2.0 * r_ab).sinh() * r_bc.sinh(),
        epsilon: nu * (2.0 * r_ab).sinh() * r_bc.cosh(),
        zeta: nu * r_ab.cosh().powi(2) * (2.0 * r_bc).sinh(),
    })
}

/// Closed-form smallest PPT symplectic eigenvalue of a reduced pair at equal
/// occupations, in `s₁ = sinh²r_ab`, `s₂ = sinh²r_bc`.
pub fn equal_frequency_nu_minus(nu: f64, r_ab: f64, r_bc: f64, pair: ModePair) -> Result<f64> {
    require_nu(nu)?;
    let s1 = r_ab.sinh().powi(2);
    let s2 = r_bc.sinh().powi(2);
    Ok(match pair {
        ModePair::Ab => {
            let radicand = 4.0 * s1
                + 4.0 * s1 * s1
                + s2 * s2
                + 4.0 * s1 * s2
                + 2.0 * s1 * s2 * s2
                + 4.0 * s1 * s1 * s2
                + s1 * s1 * s2 * s2;
            nu * (1.0 + 2.0 * s1 + s2 + s1 * s2 - radicand.sqrt())
        }
        ModePair::Bc => {
            let radicand = s1 * s1 + 4.0 * (1.0 + s1).powi(2) * s2 * (1.0 + s2);
            nu * (1.0 + s1 + 2.0 * s2 + 2.0 * s1 * s2 - radicand.sqrt())
        }
        ModePair::Ac => {
            // (1+s₁)²(1+s₂)² − 4s₁s₂(1+s₁), expanded
            let radicand = 1.0
                + 2.0 * s1
                + 2.0 * s2
                + s1 * s1
                + s2 * s2
                + 2.0 * s1 * s2 * s2
                - 2.0 * s1 * s1 * s2
                + s1 * s1 * s2 * s2;
            nu * (radicand.sqrt() - (s1 - s2 - s1 * s2).abs())
        }
    })
}

/// Whether each reduced pair (and the conditional pair after homodyne) is
/// entangled at equal occupations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntanglementConditions {
    pub ab: bool,
    pub bc: bool,
    pub ac: bool,
    pub ac_after_homodyne: bool,
}

/// Entanglement-onset conditions, each exactly equivalent to `ν̃₋ < 1` of the
/// corresponding closed-form eigenvalue:
///
/// ```text
/// ab:  4ν·s₁ > (ν−1)² + 2ν(ν−1)·s₂(1+s₁)
/// bc:  2ν·(1+s₁)(1+2s₂) > 1 + ν²(1+2s₁)
/// ac:  (1−ν²)/ν² > 2(s₁+s₂+s₁s₂) − (2/ν)·|s₁−s₂−s₁s₂|   (never, for ν ≥ 1)
/// out: (1+s₁)s₁s₂ / (1+2s₁+2s₂+2s₁s₂) > ((ν²−1)/4ν)²
/// ```
///
/// At `ν = 1` these reduce to `s₁ > 0`, `s₂ > 0`, never, and `s₁s₂ > 0`.
pub fn entanglement_conditions(nu: f64, r_ab: f64, r_bc: f64) -> Result<EntanglementConditions> {
    require_nu(nu)?;
    let s1 = r_ab.sinh().powi(2);
    let s2 = r_bc.sinh().powi(2);
    let ab = 4.0 * nu * s1 > (nu - 1.0).powi(2) + 2.0 * nu * (nu - 1.0) * s2 * (1.0 + s1);
    let bc = 2.0 * nu * (1.0 + s1) * (1.0 + 2.0 * s2) > 1.0 + nu * nu * (1.0 + 2.0 * s1);
    let m = (s1 - s2 - s1 * s2).abs();
    let ac = (1.0 - nu * nu) / (nu * nu) > 2.0 * (s1 + s2 + s1 * s2) - 2.0 * m / nu;
    let denom = 1.0 + 2.0 * s1 + 2.0 * s2 + 2.0 * s1 * s2;
    let ac_after_homodyne =
        (1.0 + s1) * s1 * s2 / denom > ((nu * nu - 1.0) / (4.0 * nu)).powi(2);
    Ok(EntanglementConditions {
        ab,
        bc,
        ac,
        ac_after_homodyne,
    })
}

/// Local temperature of the idler after the squeezers acted on vacuum:
/// `T_b = (ħω/k_B) / ln((1 + Σ)/Σ)` with
/// `Σ = sinh²r_ab + sinh²r_bc + sinh²r_ab·sinh²r_bc` (its mean occupation).
/// Zero squeezing gives `T_b = 0`.
pub fn local_temperature_b(omega: f64, r_ab: f64, r_bc: f64) -> Result<f64> {
    if omega.is_nan() || omega <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "frequency must be positive, got {omega}"
        )));
    }
    let s1 = r_ab.sinh().powi(2);
    let s2 = r_bc.sinh().powi(2);
    let occupation = s1 + s2 + s1 * s2;
    if occupation == 0.0 {
        return Ok(0.0);
    }
    Ok(HBAR * omega / (K_B * ((1.0 + occupation) / occupation).ln()))
}

/// First-order coherence of the outer pair at equal occupations,
///
/// ```text
/// g⁽¹⁾ = 2ν·sh_ab·sh_bc·ch_ab / √[(ν−1+2ν·sh²_ab)(ν−1+2ν·sh²_bc·ch²_ab)],
/// ```
///
/// exactly 1 at `ν = 1`.
pub fn g1_equal_frequency(nu: f64, r_ab: f64, r_bc: f64) -> Result<f64> {
    require_nu(nu)?;
    let sh1 = r_ab.sinh();
    let sh2 = r_bc.sinh();
    let ch1 = r_ab.cosh();
    let num = 2.0 * nu * sh1 * sh2 * ch1;
    let den = ((nu - 1.0 + 2.0 * nu * sh1 * sh1)
        * (nu - 1.0 + 2.0 * nu * sh2 * sh2 * ch1 * ch1))
        .sqrt();
    Ok(num / den)
}

/// Low-temperature expansion of the same coherence,
/// `g⁽¹⁾ = 1 − ½·(1/sh²_ab + 1/(sh²_bc·ch²_ab))·e^{−Ω}`.
///
/// Invalid once either squeezing parameter drops below `e^{−Ω}`: the
/// expansion orders cross there and the formula loses meaning.
pub fn g1_low_temperature(omega: f64, r_ab: f64, r_bc: f64) -> Result<f64> {
    if omega.is_nan() || omega <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dimensionless frequency must be positive, got {omega}"
        )));
    }
    let floor = (-omega).exp();
    if r_ab.abs() <= floor || r_bc.abs() <= floor {
        return Err(Error::InvalidParameter(format!(
            "squeezing below the expansion validity floor e^-omega = {floor:.3e}"
        )));
    }
    let s1 = r_ab.sinh().powi(2);
    let s2ch = r_bc.sinh().powi(2) * r_ab.cosh().powi(2);
    Ok(1.0 - 0.5 * (1.0 / s1 + 1.0 / s2ch) * floor)
}
