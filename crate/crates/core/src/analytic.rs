//! Closed-form results for the reduced two-level model: dressed energies,
//! decay eigenvalues, damped Rabi frequency, strong-coupling criteria,
//! dressed-state linewidths and the two-Lorentzian emission spectrum.
//!
//! Both conversion schemes reduce to the same two coupled states |1⟩, |2⟩
//! with coupling `g`, population decay rates `γ₁`, `γ₂` and detuning `Δ`:
//!
//! | scheme     | g       | γ₁    | γ₂    |
//! |------------|---------|-------|-------|
//! | two-mode   | √2·Ω    | 1/τ_a | 2/τ_b |
//! | three-mode | \|α\|·Ω | 1/τ_a | 1/τ_b |

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::HBAR;
use crate::error::{domain, require_positive_or_inf, Result};
use crate::mode::{CoupledSystem, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedModel {
    pub scheme: Scheme,
    /// Coupling between |1⟩ and |2⟩ (rad/s).
    pub g: f64,
    /// Population decay rate of |1⟩ (1/s).
    pub gamma1: f64,
    /// Population decay rate of |2⟩ (1/s).
    pub gamma2: f64,
    /// Δ (rad/s).
    pub detuning: f64,
}

impl ReducedModel {
    pub fn new(scheme: Scheme, g: f64, gamma1: f64, gamma2: f64, detuning: f64) -> Result<Self> {
        for (name, v) in [("g", g), ("gamma1", gamma1), ("gamma2", gamma2)] {
            if !(v >= 0.0 && v.is_finite()) {
                return domain(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        if !detuning.is_finite() {
            return domain(format!("detuning must be finite, got {detuning}"));
        }
        Ok(Self {
            scheme,
            g,
            gamma1,
            gamma2,
            detuning,
        })
    }

    /// Lifetimes may be `+inf` for a lossless channel.
    pub fn two_mode(tau_a: f64, tau_b: f64, omega: f64, detuning: f64) -> Result<Self> {
        require_positive_or_inf("tau_a", tau_a)?;
        require_positive_or_inf("tau_b", tau_b)?;
        Self::new(
            Scheme::TwoMode,
            2f64.sqrt() * omega.abs(),
            1.0 / tau_a,
            2.0 / tau_b,
            detuning,
        )
    }

    pub fn three_mode(tau_a: f64, tau_b: f64, omega: f64, seed_amplitude: f64, detuning: f64) -> Result<Self> {
        require_positive_or_inf("tau_a", tau_a)?;
        require_positive_or_inf("tau_b", tau_b)?;
        if !(seed_amplitude >= 0.0) {
            return domain(format!("seed amplitude must be >= 0, got {seed_amplitude}"));
        }
        Self::new(
            Scheme::ThreeMode,
            seed_amplitude * omega.abs(),
            1.0 / tau_a,
            1.0 / tau_b,
            detuning,
        )
    }

    pub fn from_system(system: &CoupledSystem) -> Result<Self> {
        let (ta, tb) = system.lifetimes();
        match system.scheme {
            Scheme::TwoMode => Self::two_mode(ta, tb, system.omega_coupling, system.detuning),
            Scheme::ThreeMode => {
                Self::three_mode(ta, tb, system.omega_coupling, system.seed_amplitude, system.detuning)
            }
        }
    }

    pub fn with_g(self, g: f64) -> Result<Self> {
        Self::new(self.scheme, g, self.gamma1, self.gamma2, self.detuning)
    }

    pub fn with_detuning(self, detuning: f64) -> Result<Self> {
        Self::new(self.scheme, self.g, self.gamma1, self.gamma2, detuning)
    }

    /// τ_a (s).
    pub fn tau_a(&self) -> f64 {
        1.0 / self.gamma1
    }

    /// τ_b (s).
    pub fn tau_b(&self) -> f64 {
        match self.scheme {
            Scheme::TwoMode => 2.0 / self.gamma2,
            Scheme::ThreeMode => 1.0 / self.gamma2,
        }
    }

    /// Coupling constant Ω of the underlying Hamiltonian, given the seed
    /// amplitude for the three-mode scheme.
    pub fn bare_coupling(&self, seed_amplitude: f64) -> f64 {
        match self.scheme {
            Scheme::TwoMode => self.g / 2f64.sqrt(),
            Scheme::ThreeMode => self.g / seed_amplitude,
        }
    }

    /// Effective lifetime entering the strong-coupling criteria.
    ///
    /// Two-mode: `(1/(2τ_a) + 1/τ_b)⁻¹ = 2/(γ₁+γ₂)`, the 1/e time of the
    /// oscillation envelope. Three-mode: `(1/τ_a + 1/τ_b)⁻¹ = 1/(γ₁+γ₂)`,
    /// half the envelope time (see [`ReducedModel::envelope_time`]).
    pub fn tau_eff(&self) -> f64 {
        match self.scheme {
            Scheme::TwoMode => 2.0 / (self.gamma1 + self.gamma2),
            Scheme::ThreeMode => 1.0 / (self.gamma1 + self.gamma2),
        }
    }

    /// 1/e time of the damped oscillation, `1/|λ₀| = 2/(γ₁+γ₂)`.
    pub fn envelope_time(&self) -> f64 {
        2.0 / (self.gamma1 + self.gamma2)
    }

    /// Generalized Rabi frequency Ω' = √((2g)² + Δ²).
    pub fn omega_prime(&self) -> f64 {
        (2.0 * self.g).hypot(self.detuning)
    }

    /// τ_R/2 = 2π/(2g), the time of the first population revival.
    pub fn half_rabi_period(&self) -> f64 {
        PI / self.g
    }
}

/// E± (J) for the two-mode system: `ħ/2 (ω_a + 2ω_b) ± ħ/2 √((2√2Ω)² + Δ²)`.
pub fn dressed_energies_two_mode(omega_a: f64, omega_b: f64, omega: f64) -> (f64, f64) {
    let delta = omega_a - 2.0 * omega_b;
    let centre = 0.5 * (omega_a + 2.0 * omega_b);
    let half = 0.5 * (2.0 * 2f64.sqrt() * omega).hypot(delta);
    (HBAR * (centre + half), HBAR * (centre - half))
}

/// E± (J) for either scheme; the three-mode centre is `(ω_a + ω_b + ω_c)/2`.
pub fn dressed_energies(system: &CoupledSystem) -> Result<(f64, f64)> {
    let model = ReducedModel::from_system(system)?;
    let centre = bare_centre(system);
    let half = 0.5 * model.omega_prime();
    Ok((HBAR * (centre + half), HBAR * (centre - half)))
}

fn bare_centre(system: &CoupledSystem) -> f64 {
    let wa = system.mode_a.angular_frequency();
    let wb = system.mode_b.angular_frequency();
    match &system.mode_c {
        Some(c) if system.scheme == Scheme::ThreeMode => 0.5 * (wa + wb + c.angular_frequency()),
        _ => 0.5 * (wa + 2.0 * wb),
    }
}

/// Eigenvalues `(λ₀, λ₊, λ₋)` of the generator of {ρ₁₁, ρ₂₂, V} at zero detuning:
/// `λ₀ = -(γ₁+γ₂)/2`, `λ± = λ₀ ± √(((γ₁-γ₂)/2)² - (2g)²)`.
pub fn decay_eigenvalues(model: &ReducedModel) -> (Complex64, Complex64, Complex64) {
    let centre = -0.5 * (model.gamma1 + model.gamma2);
    let half_diff = 0.5 * (model.gamma1 - model.gamma2).abs();
    let two_g = 2.0 * model.g;
    // factored to avoid cancellation near critical damping
    let disc = (half_diff - two_g) * (half_diff + two_g);
    let root = if disc >= 0.0 {
        Complex64::new(disc.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-disc).sqrt())
    };
    let l0 = Complex64::new(centre, 0.0);
    (l0, l0 + root, l0 - root)
}

/// Angular frequency 2Ω_R of the damped oscillation, or `None` when the
/// eigenvalues are real (`2g <= |γ₁-γ₂|/2`).
pub fn damped_rabi_frequency(model: &ReducedModel) -> Option<f64> {
    let half_diff = 0.5 * (model.gamma1 - model.gamma2).abs();
    let two_g = 2.0 * model.g;
    if two_g > half_diff {
        Some(((two_g - half_diff) * (two_g + half_diff)).sqrt())
    } else {
        None
    }
}

/// Outcome of a strong-coupling test; `margin >= 1` passes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub passes: bool,
    pub margin: f64,
}

impl Verdict {
    fn from_margin(margin: f64) -> Self {
        Self {
            passes: margin >= 1.0,
            margin,
        }
    }
}

/// Time-domain criterion `τ_eff >= τ_R/2 = 2π/(2g)`; margin `τ_eff/(τ_R/2)`.
pub fn strong_coupling_time_criterion(model: &ReducedModel) -> Result<Verdict> {
    if model.g <= 0.0 {
        return domain("strong-coupling criterion is undefined for g = 0");
    }
    Ok(Verdict::from_margin(model.tau_eff() / model.half_rabi_period()))
}

/// Spectral criterion `π·τ_eff >= τ_R/2`; margin `π·τ_eff/(τ_R/2)`.
pub fn strong_coupling_spectral_criterion(model: &ReducedModel) -> Result<Verdict> {
    let time = strong_coupling_time_criterion(model)?;
    Ok(Verdict::from_margin(PI * time.margin))
}

/// Dressed-state linewidths (Γ₊, Γ₋) in 1/s.
///
/// `Γ± = (Γ_a/2)(Ω'±Δ)/(2Ω') + Γ_b(Ω'∓Δ)/(2Ω')` with `Γ_a/2 = γ₁/2` and
/// `Γ_b = γ₂/2` (for the two-mode scheme `Γ_a = 1/τ_a`, `Γ_b = 1/τ_b`).
pub fn effective_linewidths(model: &ReducedModel) -> Result<(f64, f64)> {
    let op = model.omega_prime();
    if op <= 0.0 {
        return domain("linewidths undefined when g = 0 and Δ = 0");
    }
    let ka = 0.5 * model.gamma1;
    let kb = 0.5 * model.gamma2;
    let wp = (op + model.detuning) / (2.0 * op);
    let wm = (op - model.detuning) / (2.0 * op);
    Ok((ka * wp + kb * wm, ka * wm + kb * wp))
}

/// Dressed energies with their linewidths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DressedSpectrum {
    /// E₊ (J).
    pub e_plus: f64,
    /// E₋ (J).
    pub e_minus: f64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub omega_prime: f64,
}

impl DressedSpectrum {
    /// Places the dressed pair symmetrically about `centre` (rad/s).
    pub fn new(model: &ReducedModel, centre: f64) -> Result<Self> {
        let (gamma_plus, gamma_minus) = effective_linewidths(model)?;
        let op = model.omega_prime();
        Ok(Self {
            e_plus: HBAR * (centre + 0.5 * op),
            e_minus: HBAR * (centre - 0.5 * op),
            gamma_plus,
            gamma_minus,
            omega_prime: op,
        })
    }

    pub fn from_system(system: &CoupledSystem) -> Result<Self> {
        Self::new(&ReducedModel::from_system(system)?, bare_centre(system))
    }

    /// Line centres E±/ħ (rad/s).
    pub fn line_centres(&self) -> (f64, f64) {
        (self.e_plus / HBAR, self.e_minus / HBAR)
    }
}

/// Sum of two unit-height Lorentzians at E±/ħ with FWHM Γ±, sampled at `omegas`.
pub fn transmission_spectrum(spectrum: &DressedSpectrum, omegas: &[f64]) -> Result<Vec<f64>> {
    if !(spectrum.gamma_plus > 0.0 && spectrum.gamma_minus > 0.0) {
        return domain("linewidths must be positive to form a spectrum");
    }
    let (wp, wm) = spectrum.line_centres();
    Ok(omegas
        .iter()
        .map(|&w| lorentzian(w, wp, spectrum.gamma_plus) + lorentzian(w, wm, spectrum.gamma_minus))
        .collect())
}

/// Unit-height Lorentzian with full width at half maximum `fwhm`.
pub fn lorentzian(omega: f64, centre: f64, fwhm: f64) -> f64 {
    let hw = 0.5 * fwhm;
    hw * hw / ((omega - centre).powi(2) + hw * hw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Matrix3;
    use proptest::prelude::*;

    fn two(g: f64, g1: f64, g2: f64) -> ReducedModel {
        ReducedModel::new(Scheme::TwoMode, g, g1, g2, 0.0).unwrap()
    }

    #[test]
    fn degenerate_without_coupling() {
        let wb = 1.2e15;
        let (p, m) = dressed_energies_two_mode(2.0 * wb, wb, 0.0);
        assert_eq!(p, m);
        assert_relative_eq!(p, HBAR * 2.0 * wb, max_relative = 1e-15);
    }

    #[test]
    fn zero_detuning_splitting() {
        let wb = 1.2e15;
        let omega = 3e10;
        let (p, m) = dressed_energies_two_mode(2.0 * wb, wb, omega);
        assert_relative_eq!(p - m, HBAR * 2.0 * 2f64.sqrt() * omega, max_relative = 1e-6);
    }

    #[test]
    fn large_detuning_asymptote() {
        let omega = 1e9;
        let delta = 20.0 * 2.0 * 2f64.sqrt() * omega;
        let wb = 1e15;
        let (p, m) = dressed_energies_two_mode(2.0 * wb + delta, wb, omega);
        let split = (p - m) / HBAR;
        let series = delta * (1.0 + 4.0 * omega * omega / (delta * delta));
        assert!((split - series).abs() / series < 0.01);
        assert!((split - delta).abs() / delta < 0.01);
    }

    #[test]
    fn uncoupled_eigenvalues() {
        let (l0, lp, lm) = decay_eigenvalues(&two(0.0, 3.0, 1.0));
        assert_relative_eq!(l0.re, -2.0);
        let mut pair = [lp.re, lm.re];
        pair.sort_by(f64::total_cmp);
        assert_relative_eq!(pair[0], -3.0);
        assert_relative_eq!(pair[1], -1.0);
        assert_eq!(lp.im, 0.0);
    }

    #[test]
    fn lossless_eigenvalues() {
        let (l0, lp, lm) = decay_eigenvalues(&two(1.5, 0.0, 0.0));
        assert_eq!(l0, Complex64::new(0.0, 0.0));
        assert_relative_eq!(lp.im, 3.0);
        assert_relative_eq!(lm.im, -3.0);
    }

    #[test]
    fn eigenvalues_match_generator() {
        let m = two(0.7, 2.3, 0.4);
        let gen = Matrix3::new(
            -m.gamma1,
            0.0,
            -m.g,
            0.0,
            -m.gamma2,
            m.g,
            2.0 * m.g,
            -2.0 * m.g,
            -0.5 * (m.gamma1 + m.gamma2),
        );
        let mut numeric: Vec<Complex64> = gen.complex_eigenvalues().iter().copied().collect();
        let (a, b, c) = decay_eigenvalues(&m);
        for lam in [a, b, c] {
            let (idx, dist) = numeric
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - lam).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(dist < 1e-12, "{lam} vs {numeric:?}");
            numeric.remove(idx);
        }
    }

    #[test]
    fn rabi_frequency_cases() {
        assert_relative_eq!(damped_rabi_frequency(&two(2.0, 0.0, 0.0)).unwrap(), 4.0);
        // equal population decay rates: the oscillation survives any loss level
        for g in [1e-6, 1e-3, 1.0] {
            let m = ReducedModel::two_mode(1.0, 2.0, g / 2f64.sqrt(), 0.0).unwrap();
            assert_relative_eq!(damped_rabi_frequency(&m).unwrap(), 2.0 * m.g, max_relative = 1e-12);
        }
        assert_eq!(damped_rabi_frequency(&two(0.5, 3.0, 1.0)), None);
    }

    #[test]
    fn criteria() {
        assert!(strong_coupling_time_criterion(&two(0.0, 1.0, 1.0)).is_err());
        // τ_eff = 1 s and τ_R/2 = 0.5 s
        let m = two(2.0 * PI, 1.0, 1.0);
        let t = strong_coupling_time_criterion(&m).unwrap();
        assert!(t.passes);
        assert_relative_eq!(t.margin, 2.0, max_relative = 1e-14);
        let s = strong_coupling_spectral_criterion(&m).unwrap();
        assert_relative_eq!(s.margin, 2.0 * PI, max_relative = 1e-14);
    }

    #[test]
    fn pcdmc_seeded_margin() {
        // τ_R/2 = 5 ns/√n at n = 10⁶, τ_eff = 4.8 ps
        let n: f64 = 1e6;
        let omega = PI / 5e-9;
        let m = ReducedModel::three_mode(7.2e-12, 14.4e-12, omega, n.sqrt(), 0.0).unwrap();
        assert_relative_eq!(m.tau_eff(), 4.8e-12, max_relative = 1e-12);
        let v = strong_coupling_time_criterion(&m).unwrap();
        assert_relative_eq!(v.margin, 0.96, max_relative = 1e-9);
        assert!(!v.passes);
        let m4 = ReducedModel::three_mode(7.2e-12, 14.4e-12, omega, (4.0 * n).sqrt(), 0.0).unwrap();
        assert_relative_eq!(
            strong_coupling_time_criterion(&m4).unwrap().margin,
            2.0 * v.margin,
            max_relative = 1e-12
        );
    }

    #[test]
    fn linewidths_at_zero_detuning() {
        let m = ReducedModel::two_mode(2.0, 5.0, 1.0, 0.0).unwrap();
        let (p, q) = effective_linewidths(&m).unwrap();
        let expected = 1.0 / 2.0 / 4.0 + 1.0 / 5.0 / 2.0;
        assert_relative_eq!(p, expected, max_relative = 1e-15);
        assert_relative_eq!(q, expected, max_relative = 1e-15);
        assert_relative_eq!(p, 1.0 / (2.0 * m.tau_eff()), max_relative = 1e-15);
    }

    #[test]
    fn linewidths_far_detuned() {
        let (ta, tb) = (2.0, 5.0);
        let m = ReducedModel::two_mode(ta, tb, 1e-3, 1e6).unwrap();
        let (p, q) = effective_linewidths(&m).unwrap();
        assert_relative_eq!(p, 0.5 / ta, max_relative = 1e-10);
        assert_relative_eq!(q, 1.0 / tb, max_relative = 1e-10);
        assert!(effective_linewidths(&two(0.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn rayleigh_dip() {
        let gamma = 2.0;
        let spec = DressedSpectrum {
            e_plus: HBAR * gamma / 2.0,
            e_minus: -HBAR * gamma / 2.0,
            gamma_plus: gamma,
            gamma_minus: gamma,
            omega_prime: gamma,
        };
        let grid: Vec<f64> = (0..=200_000).map(|i| -2.0 + 4.0 * i as f64 / 200_000.0).collect();
        let s = transmission_spectrum(&spec, &grid).unwrap();
        let peak = s.iter().cloned().fold(0.0, f64::max);
        let mid = transmission_spectrum(&spec, &[0.0]).unwrap()[0];
        // closed form: the peak of the sum is (1 + √2)/2
        assert_relative_eq!(mid, 1.0, max_relative = 1e-12);
        assert_relative_eq!(peak, 0.5 * (1.0 + 2f64.sqrt()), max_relative = 1e-9);
        assert_relative_eq!(mid / peak, 2.0 * (2f64.sqrt() - 1.0), max_relative = 1e-9);
    }

    #[test]
    fn narrow_lines_vanish_off_peak() {
        let spec = DressedSpectrum {
            e_plus: HBAR,
            e_minus: -HBAR,
            gamma_plus: 1e-9,
            gamma_minus: 1e-9,
            omega_prime: 2.0,
        };
        let s = transmission_spectrum(&spec, &[0.0, 0.5, 3.0]).unwrap();
        assert!(s.iter().all(|&v| v < 1e-17));
        let zero = DressedSpectrum {
            gamma_plus: 0.0,
            ..spec
        };
        assert!(transmission_spectrum(&zero, &[0.0]).is_err());
    }

    #[test]
    fn resolved_peaks_located() {
        let m = ReducedModel::two_mode(1.0, 2.0, 100.0, 30.0).unwrap();
        let spec = DressedSpectrum::new(&m, 0.0).unwrap();
        let (wp, wm) = spec.line_centres();
        let n = 400_001;
        let grid: Vec<f64> = (0..n).map(|i| -400.0 + 800.0 * i as f64 / (n - 1) as f64).collect();
        let s = transmission_spectrum(&spec, &grid).unwrap();
        let mut peaks = Vec::new();
        for i in 1..n - 1 {
            if s[i] > s[i - 1] && s[i] >= s[i + 1] {
                peaks.push(grid[i]);
            }
        }
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0] - wm).abs() < spec.gamma_minus / 10.0);
        assert!((peaks[1] - wp).abs() < spec.gamma_plus / 10.0);
    }

    fn arb_model() -> impl Strategy<Value = ReducedModel> {
        (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -4.0f64..4.0).prop_map(|(lg, l1, l2, d)| {
            ReducedModel::new(
                Scheme::TwoMode,
                10f64.powf(lg),
                10f64.powf(l1),
                10f64.powf(l2),
                d.signum() * 10f64.powf(d.abs() - 1.0),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn eigenvalue_trace_structure(m in arb_model()) {
            let (l0, lp, lm) = decay_eigenvalues(&m);
            let scale = m.gamma1 + m.gamma2 + m.g;
            prop_assert!((lp.re + lm.re - 2.0 * l0.re).abs() <= 1e-12 * scale);
            if let Some(w) = damped_rabi_frequency(&m) {
                prop_assert!((lp.im - w).abs() <= 1e-12 * scale);
                prop_assert!((lm.im + w).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn linewidth_sum_is_constant(m in arb_model()) {
            let (p, q) = effective_linewidths(&m).unwrap();
            let total = 0.5 * (m.gamma1 + m.gamma2);
            prop_assert!(((p + q) - total).abs() <= 1e-12 * total);
        }

        #[test]
        fn energies_match_rotating_frame_eigenproblem(d in -5.0f64..5.0, g in 0.0f64..5.0) {
            // H/ħ in the frame rotating at 2ω_b, shifted by -2ω_b
            let h = nalgebra::Matrix2::new(d, g, g, 0.0);
            let eig = h.symmetric_eigenvalues();
            let (hi, lo) = (eig.max(), eig.min());
            let m = ReducedModel::new(Scheme::TwoMode, g, 0.0, 0.0, d).unwrap();
            let centre = 0.5 * d;
            prop_assert!((hi - (centre + 0.5 * m.omega_prime())).abs() < 1e-12);
            prop_assert!((lo - (centre - 0.5 * m.omega_prime())).abs() < 1e-12);
        }

        #[test]
        fn margins_increase_with_coupling(m in arb_model(), f in 1.001f64..10.0) {
            let a = strong_coupling_time_criterion(&m).unwrap().margin;
            let b = strong_coupling_time_criterion(&m.with_g(m.g * f).unwrap()).unwrap().margin;
            prop_assert!(b > a);
            let slower = ReducedModel::new(m.scheme, m.g, m.gamma1 / f, m.gamma2 / f, m.detuning).unwrap();
            prop_assert!(strong_coupling_spectral_criterion(&slower).unwrap().margin > strong_coupling_spectral_criterion(&m).unwrap().margin);
        }
    }
}
