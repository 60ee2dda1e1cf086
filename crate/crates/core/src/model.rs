//! Dimensionless interaction parameters, molecule/field unit conversions,
//! and crossing-locus arithmetic.
//!
//! The rotational constant B is fixed to 1 throughout: energies are in units
//! of B and the field strengths are the dimensionless η (orienting, −η cosθ)
//! and ζ (aligning, −ζ cos²θ).

use crate::error::{Error, Result};
use crate::math;
use alloc::format;

/// Physical constants, CODATA 2018 exact values, frozen here so unit
/// conversions are bit-stable across platforms.
pub mod constants {
    /// Planck constant, J·s
    pub const PLANCK_H: f64 = 6.626_070_15e-34;
    /// Speed of light in vacuum, m/s
    pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
    /// Vacuum electric permittivity, F/m (2018 adjusted value)
    pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
    /// 1 debye in C·m
    pub const DEBYE: f64 = 1e-21 / SPEED_OF_LIGHT;
    /// 1 cm⁻¹ in J
    pub const WAVENUMBER_J: f64 = PLANCK_H * SPEED_OF_LIGHT * 100.0;
    /// 1 Å³ polarizability volume in SI polarizability units, C²·m²/J
    pub const ANG3_POLARIZABILITY: f64 =
        4.0 * core::f64::consts::PI * EPSILON_0 * 1e-30;
}

/// Dimensionless field strengths (rotational-constant units).
///
/// ζ ≥ 0 always. η may be negative internally (Case 1₊ SUSY points with
/// m ≥ 2 yield η = −2β); the physical convention η > 0 is restored by the
/// mirror map θ → π−θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionParams {
    pub eta: f64,
    pub zeta: f64,
}

impl InteractionParams {
    pub fn new(eta: f64, zeta: f64) -> Result<Self> {
        if !eta.is_finite() || !zeta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite interaction parameters eta={eta}, zeta={zeta}"
            )));
        }
        if zeta < 0.0 {
            return Err(Error::InvalidInput(format!("zeta must be >= 0, got {zeta}")));
        }
        Ok(Self { eta, zeta })
    }

    pub fn free_rotor() -> Self {
        Self { eta: 0.0, zeta: 0.0 }
    }
}

/// Molecular parameters feeding the two unit conversions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoleculeSpec {
    /// permanent dipole moment, debye
    pub dipole: f64,
    /// rotational constant, cm⁻¹
    pub rot_const: f64,
    /// parallel polarizability volume, Å³
    pub alpha_par: f64,
    /// perpendicular polarizability volume, Å³
    pub alpha_perp: f64,
    /// static field strength ε₁, kV/cm
    pub field_static: f64,
    /// laser intensity I, W/cm²
    pub intensity: f64,
}

impl MoleculeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.rot_const <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "rot_const must be > 0 cm^-1, got {}",
                self.rot_const
            )));
        }
        if self.alpha_par < self.alpha_perp {
            return Err(Error::InvalidInput(format!(
                "alpha_par ({}) < alpha_perp ({}) would give zeta < 0",
                self.alpha_par, self.alpha_perp
            )));
        }
        if self.alpha_perp < 0.0 {
            return Err(Error::InvalidInput("polarizabilities must be >= 0".into()));
        }
        if self.field_static < 0.0 || self.intensity < 0.0 {
            return Err(Error::InvalidInput("field/intensity must be >= 0".into()));
        }
        Ok(())
    }
}

/// η = μ·ε₁ / B as a dimensionless number.
pub fn eta_from_molecule(spec: &MoleculeSpec) -> Result<f64> {
    spec.validate()?;
    let mu = spec.dipole * constants::DEBYE; // C·m
    let eps1 = spec.field_static * 1e5; // kV/cm -> V/m
    let b = spec.rot_const * constants::WAVENUMBER_J; // J
    Ok(mu * eps1 / b)
}

/// ζ = Δα·ε₂² / (2B); the field ε₂ comes either from `field_static`
/// (kV/cm) or from the intensity via ε₂ = (2I/(c·ε₀))^{1/2}.
///
/// Exactly one of `field_static` / `intensity` must be nonzero (both zero
/// is allowed and gives ζ = 0).
pub fn zeta_from_molecule(spec: &MoleculeSpec) -> Result<f64> {
    spec.validate()?;
    if spec.field_static > 0.0 && spec.intensity > 0.0 {
        return Err(Error::InvalidInput(
            "supply either field_static or intensity as the zeta field source, not both".into(),
        ));
    }
    let d_alpha = (spec.alpha_par - spec.alpha_perp) * constants::ANG3_POLARIZABILITY;
    let eps2_sq = if spec.intensity > 0.0 {
        // I in W/cm² -> W/m², then ε₂² = 2I/(c ε₀)
        2.0 * (spec.intensity * 1e4) / (constants::SPEED_OF_LIGHT * constants::EPSILON_0)
    } else {
        let e = spec.field_static * 1e5;
        e * e
    };
    let b = spec.rot_const * constants::WAVENUMBER_J;
    Ok(d_alpha * eps2_sq / (2.0 * b))
}

/// Crossing locus η = 2k√ζ (signed by k).
pub fn locus_eta(k: i32, zeta: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("topological index k must be nonzero".into()));
    }
    if zeta < 0.0 {
        return Err(Error::InvalidInput(format!("zeta must be >= 0, got {zeta}")));
    }
    Ok(2.0 * k as f64 * math::sqrt(zeta))
}
