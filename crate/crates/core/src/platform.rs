//! Shipped GaAs microcavity platforms.
//!
//! Each preset keeps the wavelength at which its quality factor was measured
//! separately from the design wavelength λ_b used for feasibility estimates.
//! All three presets place λ_b at 1.5 μm, where |χ⁽²⁾| = 200 pm/V.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// |χ⁽²⁾| of GaAs near 1.5 μm (m/V).
pub const CHI2_GAAS: f64 = 200e-12;

/// Refractive index assumed for GaAs in the paper-default assumption set.
pub const N_GAAS: f64 = 3.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Platform {
    Pcdmc,
    Micropillar,
    Microdisk,
}

impl Platform {
    pub const ALL: [Platform; 3] = [Platform::Pcdmc, Platform::Micropillar, Platform::Microdisk];

    pub fn preset(self) -> PlatformPreset {
        match self {
            Platform::Pcdmc => PlatformPreset {
                name: self,
                quality_factor: 18_000.0,
                measured_wavelength: 1.0e-6,
                reference_wavelength: 1.5e-6,
                mode_volume_factor: 0.7,
                chi2_magnitude: CHI2_GAAS,
                refractive_index: N_GAAS,
                quoted: QuotedEstimates {
                    lifetime: 9.5e-12,
                    tau_eff: 4.8e-12,
                    half_period_coeff: 5e-9,
                    photon_threshold: 1e6,
                    unseeded_half_period: 18e-9,
                    unseeded_gap_orders: "3",
                },
            },
            Platform::Micropillar => PlatformPreset {
                name: self,
                quality_factor: 27_700.0,
                measured_wavelength: 930e-9,
                reference_wavelength: 1.5e-6,
                mode_volume_factor: 100.0,
                chi2_magnitude: CHI2_GAAS,
                refractive_index: N_GAAS,
                quoted: QuotedEstimates {
                    lifetime: 13.6e-12,
                    tau_eff: 8.0e-12,
                    half_period_coeff: 44e-9,
                    photon_threshold: 3e7,
                    unseeded_half_period: 177e-9,
                    unseeded_gap_orders: "4",
                },
            },
            Platform::Microdisk => PlatformPreset {
                name: self,
                quality_factor: 360_000.0,
                measured_wavelength: 1.4e-6,
                reference_wavelength: 1.5e-6,
                mode_volume_factor: 6.0,
                chi2_magnitude: CHI2_GAAS,
                refractive_index: N_GAAS,
                quoted: QuotedEstimates {
                    lifetime: 267.3e-12,
                    tau_eff: 95e-12,
                    half_period_coeff: 37e-9,
                    photon_threshold: 76e3,
                    unseeded_half_period: 148e-9,
                    unseeded_gap_orders: "2",
                },
            },
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Platform::Pcdmc => "pcdmc",
            Platform::Micropillar => "micropillar",
            Platform::Microdisk => "microdisk",
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Platform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pcdmc" => Ok(Platform::Pcdmc),
            "micropillar" => Ok(Platform::Micropillar),
            "microdisk" => Ok(Platform::Microdisk),
            other => Err(Error::Domain(format!("unknown platform '{other}'"))),
        }
    }
}

/// Published estimates for a platform, kept alongside the preset so reports
/// can show computed and quoted numbers side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotedEstimates {
    /// Confinement time at the measured wavelength (s).
    pub lifetime: f64,
    pub tau_eff: f64,
    /// Seeded τ_R/2 at n = f_c = 1 (s).
    pub half_period_coeff: f64,
    /// Photon number per f_c at which strong coupling is reached.
    pub photon_threshold: f64,
    pub unseeded_half_period: f64,
    pub unseeded_gap_orders: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlatformPreset {
    pub name: Platform,
    pub quality_factor: f64,
    /// Wavelength at which the quality factor was demonstrated (m).
    pub measured_wavelength: f64,
    /// Design wavelength of mode b (m).
    pub reference_wavelength: f64,
    /// Mode volume in units of (λ/n)³.
    pub mode_volume_factor: f64,
    /// |χ⁽²⁾| (m/V).
    pub chi2_magnitude: f64,
    pub refractive_index: f64,
    pub quoted: QuotedEstimates,
}
