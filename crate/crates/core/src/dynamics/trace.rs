use std::io::Write;

use serde::Serialize;

use crate::analytic::ReducedModel;
use crate::error::Result;

/// Density-matrix elements in the few-state basis reached from |1⟩.
///
/// Two-mode: |1⟩=|1,0⟩, |2⟩=|0,2⟩, |3⟩=|0,1⟩, |4⟩=|0,0⟩.
/// Three-mode: |1⟩=|1,0⟩, |2⟩=|0,1⟩, |3⟩=|0,0⟩, and `rho44` stays 0.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SubsystemState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    /// Im V with V = ρ₁₂ − ρ₂₁ (V is purely imaginary at zero detuning).
    pub v: f64,
    /// ρ₁₂ + ρ₂₁ = 2 Re ρ₁₂; driven only by detuning.
    pub u: f64,
}

impl SubsystemState {
    /// All population in |1⟩.
    pub fn excited() -> Self {
        Self {
            rho11: 1.0,
            ..Self::default()
        }
    }

    pub fn total_population(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33 + self.rho44
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceMetadata {
    pub model: ReducedModel,
    pub integrator: &'static str,
    pub step: f64,
    pub steps: usize,
}

/// Time series produced by an evolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationTrace {
    pub times: Vec<f64>,
    pub states: Vec<SubsystemState>,
    pub metadata: TraceMetadata,
}

pub const TRACE_CSV_HEADER: &str = "t,rho11,rho22,rho33,rho44,imV,trace_total";

/// Formats with 17 significant digits.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

impl SimulationTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&SubsystemState> {
        self.states.last()
    }

    pub fn rho11(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.rho11).collect()
    }

    /// Times of local maxima of ρ₁₁ after t = 0.
    pub fn revivals(&self) -> Vec<f64> {
        let r = self.rho11();
        (1..r.len().saturating_sub(1))
            .filter(|&i| r[i] > r[i - 1] && r[i] >= r[i + 1])
            .map(|i| self.times[i])
            .collect()
    }

    /// One CSV row per sample, columns [`TRACE_CSV_HEADER`].
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for (t, s) in self.times.iter().zip(&self.states) {
            writeln!(w, "{}", csv_row(*t, s))?;
        }
        Ok(())
    }
}

pub fn csv_row(t: f64, s: &SubsystemState) -> String {
    [t, s.rho11, s.rho22, s.rho33, s.rho44, s.v, s.total_population()]
        .iter()
        .map(|&x| fmt_full(x))
        .collect::<Vec<_>>()
        .join(",")
}
