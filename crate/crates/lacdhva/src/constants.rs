//! Physical constants, the effective-unit convention and per-system scales.
//!
//! All arithmetic is done in SI base units. The synthetic magnetic field
//! B_AC = rho0/epsilon0 is carried in the effective tesla
//! T_eff = N/(C·m); no other unit system is supported.
//!
//! The constants are frozen at the values below (not user-configurable) so
//! that tabulated outputs stay byte-stable. Operations take the constant set
//! as an argument, which doubles as the override hook for tests.

use crate::error::{Error, Result};

/// Fixed constant set used by every computation in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Planck constant h = 2π·hbar (J·s).
    pub h: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Vacuum permittivity (F/m).
    pub epsilon0: f64,
    /// Bohr magneton (J/T).
    pub mu_bohr: f64,
}

/// Frozen constant set; identical values on every call.
pub fn load_constants() -> PhysicalConstants {
    let hbar = 1.0546e-34;
    PhysicalConstants {
        hbar,
        h: 2.0 * std::f64::consts::PI * hbar,
        c: 2.997_924_58e8,
        epsilon0: 8.854e-12,
        mu_bohr: 9.274e-24,
    }
}

/// Published threshold printed for the field-strength condition, in T_eff.
///
/// The formula 2·hbar·c²/|mu| evaluates to ≈ 4.09e4 T_eff for the bundled
/// ⁸⁷Rb parameters, a factor ~10³ above this value. The validate report
/// shows both; neither is silently preferred.
pub const MIN_FIELD_REFERENCE_TEFF: f64 = 40.93;

/// Synthetic field strength in effective tesla (N/(C·m)).
///
/// Strictly positive: the sign of the dynamics is carried by the revolution
/// sign sigma, never by the field magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveField(f64);

impl EffectiveField {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Domain(format!(
                "effective field must be finite and > 0, got {value}"
            )));
        }
        Ok(EffectiveField(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Per-system scales derived from the constants and a field configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// Effective Bohr magneton hbar·|mu|/(2·M·c²) (J·s/T).
    pub mu_b_eff: f64,
    /// Degeneracy-per-field factor rho = |mu|·A/(c²·h); D = rho·B.
    pub rho_flux: f64,
    /// Magnetic length a_AC = sqrt(hbar/(M·|omega_AC|)) at the configured field (m).
    pub a_ac: f64,
    /// Level spacing hbar·|omega_AC| at the configured field (J).
    pub hbar_omega: f64,
}

impl DerivedScales {
    /// Builds the scale set for a (mass, mu, area, b_eff) system.
    pub fn new(
        consts: &PhysicalConstants,
        mass: f64,
        mu: f64,
        area: f64,
        b_eff: EffectiveField,
    ) -> Result<Self> {
        let mu_b_eff = effective_bohr_magneton(consts, mu, mass)?;
        let rho_flux = flux_density_factor(consts, mu, area)?;
        let omega_abs = mu.abs() * b_eff.value() / (mass * consts.c * consts.c);
        let a_ac = (consts.hbar / (mass * omega_abs)).sqrt();
        Ok(DerivedScales {
            mu_b_eff,
            rho_flux,
            a_ac,
            hbar_omega: consts.hbar * omega_abs,
        })
    }
}

/// Effective Bohr magneton hbar·|mu|/(2·mass·c²).
pub fn effective_bohr_magneton(consts: &PhysicalConstants, mu: f64, mass: f64) -> Result<f64> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "magnetic moment must be nonzero and finite, got {mu}"
        )));
    }
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::Domain(format!("mass must be > 0, got {mass}")));
    }
    Ok(consts.hbar * mu.abs() / (2.0 * mass * consts.c * consts.c))
}

/// Degeneracy-per-field factor rho = |mu|·area/(c²·h).
///
/// The level degeneracy at field B is D = rho·B with B in T_eff.
pub fn flux_density_factor(consts: &PhysicalConstants, mu: f64, area: f64) -> Result<f64> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "magnetic moment must be nonzero and finite, got {mu}"
        )));
    }
    if !area.is_finite() || area <= 0.0 {
        return Err(Error::Domain(format!("area must be > 0, got {area}")));
    }
    Ok(mu.abs() * area / (consts.c * consts.c * consts.h))
}

/// Field-strength threshold 2·hbar·c²/|mu| (T_eff) below which the analytic
/// bound-state regime is invalid. Configurations should sit far above it.
pub fn min_field(consts: &PhysicalConstants, mu: f64) -> Result<f64> {
    if mu == 0.0 || !mu.is_finite() {
        return Err(Error::Domain(format!(
            "magnetic moment must be nonzero and finite, got {mu}"
        )));
    }
    Ok(2.0 * consts.hbar * consts.c * consts.c / mu.abs())
}
