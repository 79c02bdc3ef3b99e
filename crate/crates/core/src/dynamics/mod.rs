//! Time evolution: the closed few-state model, the full master equation on a
//! truncated Fock space, and the π-pulse conversion protocol.

mod lindblad;
mod pulse;
mod rk4;
mod subsystem;
mod trace;

pub use lindblad::{build_lindblad, DensityMatrix, LindbladGenerator, Truncation};
pub use pulse::{pi_pulse, pi_pulse_model, PiPulse};
pub use rk4::{rk4_step, LinearState};
pub use subsystem::{evolve_subsystem, evolve_subsystem_strided, subsystem_generator, Feeds, SubsystemGenerator};
pub use trace::{csv_row, fmt_full, SimulationTrace, SubsystemState, TraceMetadata, TRACE_CSV_HEADER};

use crate::analytic::ReducedModel;
use crate::error::{domain, Error, Result};

/// Largest number of integration steps a single run may take.
pub const MAX_STEPS: f64 = 1e8;

/// Steps per shortest timescale of the model.
pub const STEPS_PER_TIMESCALE: f64 = 50.0;

/// Uniform step schedule covering `[0, t_final]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPlan {
    pub step: f64,
    pub steps: usize,
}

impl StepPlan {
    /// The step is at most `dt_max` and at most 1/50 of the shortest of
    /// 1/γ₁, 1/γ₂, 1/(2g) and 1/|Δ|, shrunk so it divides `t_final` evenly.
    pub fn new(model: &ReducedModel, t_final: f64, dt_max: f64) -> Result<Self> {
        if !(t_final.is_finite() && t_final > 0.0) {
            return domain(format!("t_final must be positive, got {t_final}"));
        }
        if !(dt_max > 0.0) {
            return domain(format!("dt_max must be positive, got {dt_max}"));
        }
        let fastest = [model.gamma1, model.gamma2, 2.0 * model.g, model.detuning.abs()]
            .into_iter()
            .fold(0.0, f64::max);
        let mut step = dt_max;
        if fastest > 0.0 {
            step = step.min(1.0 / (STEPS_PER_TIMESCALE * fastest));
        }
        let count = (t_final / step).ceil();
        if count > MAX_STEPS {
            return Err(Error::Resource(format!(
                "{count:e} steps needed (limit {MAX_STEPS:e}); increase dt_max or shorten t_final"
            )));
        }
        let steps = (count as usize).max(1);
        Ok(Self {
            step: t_final / steps as f64,
            steps,
        })
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }
}
