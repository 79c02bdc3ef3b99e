use num_complex::Complex64;

use crate::constants::{EPS0, HBAR};
use crate::error::{domain, Result};
use crate::mode::{CavityMode, CoupledSystem, Scheme};

use super::grid::FieldGrid;
use super::tensor::Chi2Tensor;

/// ∫dV χ_ijk E_a^i E_b^j E_c^k by the midpoint rule, before taking the real part.
///
/// For the two-mode process pass the `b` field twice.
pub fn overlap_integral_complex(
    tensor: &Chi2Tensor,
    fa: &FieldGrid,
    fb: &FieldGrid,
    fc: &FieldGrid,
) -> Result<Complex64> {
    if !fa.same_geometry(fb) || !fa.same_geometry(fc) {
        return domain("field grids do not share origin, spacing and dims");
    }
    let sum: Complex64 = fa
        .values()
        .iter()
        .zip(fb.values())
        .zip(fc.values())
        .map(|((a, b), c)| tensor.contract_complex(a, b, c))
        .sum();
    Ok(sum * fa.cell_volume())
}

/// Real part of [`overlap_integral_complex`], in m³·(m/V).
pub fn overlap_integral(tensor: &Chi2Tensor, fa: &FieldGrid, fb: &FieldGrid, fc: &FieldGrid) -> Result<f64> {
    overlap_integral_complex(tensor, fa, fb, fc).map(|z| z.re)
}

/// Overlap assumed by the platform estimates when the modes overlap well:
/// `fraction·|χ⁽²⁾|·V_a` (the estimates use `fraction = 0.5`).
pub fn overlap_shortcut(chi2_magnitude: f64, volume_a: f64, fraction: f64) -> f64 {
    fraction * chi2_magnitude * volume_a
}

/// Vacuum field amplitude per photon, √(ħω / (2ε₀n²V)).
pub fn field_per_photon(mode: &CavityMode) -> f64 {
    let n = mode.refractive_index;
    (HBAR * mode.angular_frequency() / (2.0 * EPS0 * n * n * mode.mode_volume)).sqrt()
}

/// Ω (rad/s) from the mode parameters and an overlap integral.
///
/// Two-mode: `ħΩ = ε₀·𝓔_a·𝓔_b²·overlap`; three-mode: `ħΩ = ε₀·𝓔_a·𝓔_b·𝓔_c·overlap`,
/// where 𝓔 is [`field_per_photon`]. The magnitude is returned.
pub fn coupling_constant(system: &CoupledSystem, overlap: f64) -> Result<f64> {
    if !overlap.is_finite() {
        return domain(format!("overlap must be finite, got {overlap}"));
    }
    let ea = field_per_photon(&system.mode_a);
    let eb = field_per_photon(&system.mode_b);
    let product = match system.scheme {
        Scheme::TwoMode => ea * eb * eb,
        Scheme::ThreeMode => {
            let c = system
                .mode_c
                .as_ref()
                .ok_or_else(|| crate::Error::Domain("three-mode system lacks mode c".into()))?;
            ea * eb * field_per_photon(c)
        }
    };
    Ok((EPS0 / HBAR * product * overlap).abs())
}
