use std::f64::consts::PI;

use crate::analytic::ReducedModel;
use crate::error::{domain, Result};
use crate::mode::{CoupledSystem, Scheme};

use super::subsystem::evolve_subsystem;
use super::trace::{SimulationTrace, SubsystemState};

/// Result of driving the seed for half a population cycle.
#[derive(Debug, Clone)]
pub struct PiPulse {
    /// π/(2|α|Ω) (s).
    pub duration: f64,
    /// ρ₂₂ when the seed switches off.
    pub fidelity: f64,
    pub trace: SimulationTrace,
}

/// Converts a photon in `a` into a photon in `b` by holding the seed at
/// `amplitude` for `π/(2|α|Ω)`.
pub fn pi_pulse(system: &CoupledSystem, amplitude: f64) -> Result<PiPulse> {
    if system.scheme != Scheme::ThreeMode {
        return domain("a π-pulse needs the seeded three-mode scheme");
    }
    let (ta, tb) = system.lifetimes();
    let model = ReducedModel::three_mode(ta, tb, system.omega_coupling, amplitude, system.detuning)?;
    pi_pulse_model(&model)
}

/// As [`pi_pulse`], from reduced-model parameters (`g = |α|Ω`).
pub fn pi_pulse_model(model: &ReducedModel) -> Result<PiPulse> {
    if !(model.g > 0.0) {
        return domain("|α|Ω must be positive; the pulse would never end");
    }
    let duration = PI / (2.0 * model.g);
    let trace = evolve_subsystem(model, &SubsystemState::excited(), duration, f64::INFINITY)?;
    let fidelity = trace.last().map(|s| s.rho22).unwrap_or(0.0);
    Ok(PiPulse {
        duration,
        fidelity,
        trace,
    })
}
