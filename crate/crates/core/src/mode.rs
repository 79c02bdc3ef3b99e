//! Cavity modes, coupling schemes and the coupled-system record.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::C;
use crate::error::{domain, require_positive, require_positive_or_inf, Result};

/// Which of the two conversion processes a system describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// One photon in `a` converts to two photons in `b` (ω_a ≈ 2ω_b).
    TwoMode,
    /// One photon in `a` converts to one photon in `b`, stimulated by a
    /// coherent seed in `c` (ω_a ≈ ω_b + ω_c).
    ThreeMode,
}

/// Photon lifetime τ = Q/ω = Qλ/(2πc).
pub fn lifetime_from_q(q: f64, wavelength: f64) -> Result<f64> {
    require_positive("quality factor", q)?;
    require_positive("wavelength", wavelength)?;
    Ok(q * wavelength / (2.0 * PI * C))
}

/// Mode volume expressed as a multiple of the cubic material wavelength, `factor·(λ/n)³`.
pub fn mode_volume(wavelength: f64, refractive_index: f64, factor: f64) -> Result<f64> {
    require_positive("wavelength", wavelength)?;
    require_positive("refractive index", refractive_index)?;
    require_positive("volume factor", factor)?;
    Ok(factor * (wavelength / refractive_index).powi(3))
}

/// 1/e decay time of the Rabi oscillation envelope.
///
/// Two-mode: `1/τ_eff = 1/(2τ_a) + 1/τ_b`. Three-mode: `1/τ_eff = 1/τ_a + 1/τ_b`.
/// Either lifetime may be `+inf` (lossless channel).
pub fn effective_lifetime(scheme: Scheme, tau_a: f64, tau_b: f64) -> Result<f64> {
    require_positive_or_inf("tau_a", tau_a)?;
    require_positive_or_inf("tau_b", tau_b)?;
    let rate = match scheme {
        Scheme::TwoMode => 0.5 / tau_a + 1.0 / tau_b,
        Scheme::ThreeMode => 1.0 / tau_a + 1.0 / tau_b,
    };
    Ok(1.0 / rate)
}

/// A single optical cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityMode {
    /// Vacuum wavelength (m).
    pub wavelength: f64,
    pub quality_factor: f64,
    pub refractive_index: f64,
    /// Mode volume (m³).
    pub mode_volume: f64,
}

impl CavityMode {
    pub fn new(wavelength: f64, quality_factor: f64, refractive_index: f64, mode_volume: f64) -> Result<Self> {
        require_positive("wavelength", wavelength)?;
        require_positive("quality factor", quality_factor)?;
        if !(refractive_index >= 1.0 && refractive_index.is_finite()) {
            return domain(format!("refractive index must be >= 1, got {refractive_index}"));
        }
        require_positive("mode volume", mode_volume)?;
        Ok(Self {
            wavelength,
            quality_factor,
            refractive_index,
            mode_volume,
        })
    }

    /// Builds a mode whose volume is `factor·(λ/n)³`.
    pub fn with_volume_factor(
        wavelength: f64,
        quality_factor: f64,
        refractive_index: f64,
        factor: f64,
    ) -> Result<Self> {
        let volume = mode_volume(wavelength, refractive_index, factor)?;
        Self::new(wavelength, quality_factor, refractive_index, volume)
    }

    /// ω = 2πc/λ (rad/s).
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * C / self.wavelength
    }

    /// τ = Q/ω (s).
    pub fn lifetime(&self) -> f64 {
        self.quality_factor / self.angular_frequency()
    }
}

/// A two- or three-mode configuration together with its coupling constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupledSystem {
    pub scheme: Scheme,
    pub mode_a: CavityMode,
    pub mode_b: CavityMode,
    pub mode_c: Option<CavityMode>,
    /// Ω (rad/s), non-negative.
    pub omega_coupling: f64,
    /// |α|; zero for the two-mode scheme.
    pub seed_amplitude: f64,
    /// Δ (rad/s), recomputed from the modes on construction.
    pub detuning: f64,
}

impl CoupledSystem {
    pub fn two_mode(mode_a: CavityMode, mode_b: CavityMode, omega_coupling: f64) -> Result<Self> {
        check_coupling(omega_coupling)?;
        let detuning = mode_a.angular_frequency() - 2.0 * mode_b.angular_frequency();
        Ok(Self {
            scheme: Scheme::TwoMode,
            mode_a,
            mode_b,
            mode_c: None,
            omega_coupling: omega_coupling.abs(),
            seed_amplitude: 0.0,
            detuning,
        })
    }

    pub fn three_mode(
        mode_a: CavityMode,
        mode_b: CavityMode,
        mode_c: CavityMode,
        omega_coupling: f64,
        seed_amplitude: f64,
    ) -> Result<Self> {
        check_coupling(omega_coupling)?;
        if !(seed_amplitude >= 0.0 && seed_amplitude.is_finite()) {
            return domain(format!("seed amplitude must be >= 0, got {seed_amplitude}"));
        }
        let detuning = mode_a.angular_frequency() - mode_b.angular_frequency() - mode_c.angular_frequency();
        Ok(Self {
            scheme: Scheme::ThreeMode,
            mode_a,
            mode_b,
            mode_c: Some(mode_c),
            omega_coupling: omega_coupling.abs(),
            seed_amplitude,
            detuning,
        })
    }

    /// Same system with a different coupling constant.
    pub fn with_coupling(&self, omega_coupling: f64) -> Result<Self> {
        check_coupling(omega_coupling)?;
        Ok(Self {
            omega_coupling: omega_coupling.abs(),
            ..self.clone()
        })
    }

    /// Detuning implied by the mode frequencies.
    pub fn recomputed_detuning(&self) -> f64 {
        let wa = self.mode_a.angular_frequency();
        let wb = self.mode_b.angular_frequency();
        match (self.scheme, &self.mode_c) {
            (Scheme::TwoMode, _) => wa - 2.0 * wb,
            (Scheme::ThreeMode, Some(c)) => wa - wb - c.angular_frequency(),
            (Scheme::ThreeMode, None) => f64::NAN,
        }
    }

    /// Checks the record's invariants; useful after deserialization.
    pub fn validate(&self) -> Result<()> {
        check_coupling(self.omega_coupling)?;
        match (self.scheme, &self.mode_c) {
            (Scheme::TwoMode, Some(_)) => return domain("two-mode system carries a mode c"),
            (Scheme::ThreeMode, None) => return domain("three-mode system lacks mode c"),
            _ => {}
        }
        let expected = self.recomputed_detuning();
        let scale = self.mode_a.angular_frequency();
        if (expected - self.detuning).abs() > 1e-12 * scale {
            return domain(format!(
                "stored detuning {} does not match mode frequencies ({expected})",
                self.detuning
            ));
        }
        Ok(())
    }

    /// Lifetimes (τ_a, τ_b).
    pub fn lifetimes(&self) -> (f64, f64) {
        (self.mode_a.lifetime(), self.mode_b.lifetime())
    }

    pub fn effective_lifetime(&self) -> f64 {
        let (ta, tb) = self.lifetimes();
        // lifetimes of a validated mode are positive and finite
        effective_lifetime(self.scheme, ta, tb).expect("valid lifetimes")
    }
}

fn check_coupling(omega: f64) -> Result<()> {
    if omega.is_finite() {
        Ok(())
    } else {
        domain(format!("coupling constant must be finite, got {omega}"))
    }
}
