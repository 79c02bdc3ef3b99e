use nalgebra::{Matrix3, SVector};

use crate::analytic::ReducedModel;
use crate::error::{domain, Result};
use crate::mode::Scheme;

use super::rk4::rk4_step;
use super::trace::{SimulationTrace, SubsystemState, TraceMetadata};
use super::StepPlan;

/// Linear generator of the closed {ρ₁₁, ρ₂₂, Im V} block plus the rates that
/// feed the lower states.
///
/// With `V = i·v` the block is real:
/// `M = [[-γ₁, 0, -g], [0, -γ₂, g], [2g, -2g, -(γ₁+γ₂)/2]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemGenerator {
    pub scheme: Scheme,
    pub matrix: Matrix3<f64>,
    pub detuning: f64,
    pub feeds: Feeds,
}

/// Population flow into and out of the lower states.
///
/// Two-mode: `ρ̇₃₃ = γ₂ρ₂₂ − (γ₂/2)ρ₃₃`, `ρ̇₄₄ = γ₁ρ₁₁ + (γ₂/2)ρ₃₃`.
/// Three-mode: `ρ̇₃₃ = γ₁ρ₁₁ + γ₂ρ₂₂` (vacuum), no ρ₄₄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feeds {
    pub gamma1: f64,
    pub gamma2: f64,
}

pub fn subsystem_generator(model: &ReducedModel) -> SubsystemGenerator {
    let (g, g1, g2) = (model.g, model.gamma1, model.gamma2);
    let s = 0.5 * (g1 + g2);
    SubsystemGenerator {
        scheme: model.scheme,
        #[rustfmt::skip]
        matrix: Matrix3::new(
            -g1, 0.0, -g,
            0.0, -g2, g,
            2.0 * g, -2.0 * g, -s,
        ),
        detuning: model.detuning,
        feeds: Feeds { gamma1: g1, gamma2: g2 },
    }
}

/// Packed as [ρ₁₁, ρ₂₂, v, u, ρ₃₃, ρ₄₄].
type Packed = SVector<f64, 6>;

fn pack(s: &SubsystemState) -> Packed {
    Packed::from([s.rho11, s.rho22, s.v, s.u, s.rho33, s.rho44])
}

fn unpack(x: &Packed) -> SubsystemState {
    SubsystemState {
        rho11: x[0],
        rho22: x[1],
        v: x[2],
        u: x[3],
        rho33: x[4],
        rho44: x[5],
    }
}

impl SubsystemGenerator {
    /// Time derivative of the packed state.
    fn derivative(&self, x: &Packed) -> Packed {
        let m = &self.matrix;
        let d = self.detuning;
        let s = -m[(2, 2)];
        let block = m * nalgebra::Vector3::new(x[0], x[1], x[2]);
        let (g1, g2) = (self.feeds.gamma1, self.feeds.gamma2);
        let (r33, r44) = match self.scheme {
            Scheme::TwoMode => (g2 * x[1] - 0.5 * g2 * x[4], g1 * x[0] + 0.5 * g2 * x[4]),
            Scheme::ThreeMode => (g1 * x[0] + g2 * x[1], 0.0),
        };
        Packed::from([block[0], block[1], block[2] - d * x[3], d * x[2] - s * x[3], r33, r44])
    }

    pub fn apply(&self, state: &SubsystemState) -> SubsystemState {
        unpack(&self.derivative(&pack(state)))
    }
}

fn check_initial(initial: &SubsystemState) -> Result<()> {
    let pops = [initial.rho11, initial.rho22, initial.rho33, initial.rho44];
    if pops.iter().any(|p| !(-1e-12..=1.0 + 1e-12).contains(p)) || initial.total_population() > 1.0 + 1e-12 {
        return domain(format!("initial populations out of range: {initial:?}"));
    }
    if !(initial.v.is_finite() && initial.u.is_finite()) {
        return domain("initial coherence is not finite");
    }
    Ok(())
}

/// Integrates the few-state model with RK4 and records every step.
pub fn evolve_subsystem(
    model: &ReducedModel,
    initial: &SubsystemState,
    t_final: f64,
    dt_max: f64,
) -> Result<SimulationTrace> {
    evolve_subsystem_strided(model, initial, t_final, dt_max, 1)
}

/// As [`evolve_subsystem`], recording every `stride`-th step and the final one.
pub fn evolve_subsystem_strided(
    model: &ReducedModel,
    initial: &SubsystemState,
    t_final: f64,
    dt_max: f64,
    stride: usize,
) -> Result<SimulationTrace> {
    check_initial(initial)?;
    let plan = StepPlan::new(model, t_final, dt_max)?;
    let gen = subsystem_generator(model);
    let f = |_t: f64, x: &Packed| gen.derivative(x);
    let stride = stride.max(1);
    let capacity = plan.steps / stride + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    let mut x = pack(initial);
    times.push(0.0);
    states.push(*initial);
    for i in 0..plan.steps {
        x = rk4_step(&f, plan.time(i), &x, plan.step);
        let done = i + 1;
        if done % stride == 0 || done == plan.steps {
            times.push(plan.time(done));
            states.push(unpack(&x));
        }
    }
    Ok(SimulationTrace {
        times,
        states,
        metadata: TraceMetadata {
            model: *model,
            integrator: "rk4",
            step: plan.step,
            steps: plan.steps,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::decay_eigenvalues;
    use approx::assert_relative_eq;

    #[test]
    fn uncoupled_decay() {
        let m = ReducedModel::two_mode(2.0, 3.0, 0.0, 0.0).unwrap();
        let tr = evolve_subsystem(&m, &SubsystemState::excited(), 5.0, 0.01).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!((s.rho11 - (-t / 2.0).exp()).abs() < 1e-10);
            assert!((s.rho44 - (1.0 - (-t / 2.0).exp())).abs() < 1e-10);
        }
    }

    #[test]
    fn lossless_cosine_squared() {
        let g = 3.0;
        let m = ReducedModel::new(Scheme::TwoMode, g, 0.0, 0.0, 0.0).unwrap();
        let tr = evolve_subsystem(&m, &SubsystemState::excited(), 4.0, 1e-3).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!((s.rho11 - (g * t).cos().powi(2)).abs() < 1e-9);
        }
    }

    #[test]
    fn generator_spectrum_matches_closed_form() {
        let m = ReducedModel::new(Scheme::TwoMode, 0.8, 1.7, 0.3, 0.0).unwrap();
        let gen = subsystem_generator(&m);
        let mut numeric: Vec<_> = gen.matrix.complex_eigenvalues().iter().copied().collect();
        let (a, b, c) = decay_eigenvalues(&m);
        for lam in [a, b, c] {
            let pos = numeric
                .iter()
                .position(|z| (z - lam).norm() < 1e-12)
                .expect("eigenvalue present");
            numeric.remove(pos);
        }
    }

    #[test]
    fn population_conserved() {
        for scheme in [Scheme::TwoMode, Scheme::ThreeMode] {
            let m = ReducedModel::new(scheme, 2.0, 0.7, 1.3, 0.5).unwrap();
            let tr = evolve_subsystem(&m, &SubsystemState::excited(), 10.0, 0.01).unwrap();
            for s in &tr.states {
                assert!((s.total_population() - 1.0).abs() < 1e-12);
            }
            let end = tr.last().unwrap();
            let ground = if scheme == Scheme::TwoMode {
                end.rho44
            } else {
                end.rho33
            };
            assert!(ground > 0.99);
        }
    }

    #[test]
    fn ground_population_monotone() {
        let m = ReducedModel::new(Scheme::TwoMode, 5.0, 0.4, 0.9, 0.0).unwrap();
        let tr = evolve_subsystem(&m, &SubsystemState::excited(), 10.0, 0.01).unwrap();
        for w in tr.states.windows(2) {
            assert!(w[1].rho44 >= w[0].rho44 - 1e-15);
        }
    }

    #[test]
    fn detuned_lossless_contrast() {
        let (g, d) = (1.0, 1.5);
        let m = ReducedModel::new(Scheme::TwoMode, g, 0.0, 0.0, d).unwrap();
        let op = m.omega_prime();
        let tr = evolve_subsystem(&m, &SubsystemState::excited(), 10.0, 1e-3).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            let expected = 1.0 - (2.0 * g / op).powi(2) * (0.5 * op * t).sin().powi(2);
            assert!((s.rho11 - expected).abs() < 1e-9);
        }
        let min = tr.states.iter().map(|s| s.rho11).fold(1.0, f64::min);
        assert_relative_eq!(1.0 - min, (2.0 * g / op).powi(2), max_relative = 1e-5);
    }

    #[test]
    fn rejects_bad_initial_state() {
        let m = ReducedModel::new(Scheme::TwoMode, 1.0, 1.0, 1.0, 0.0).unwrap();
        let bad = SubsystemState {
            rho11: 1.2,
            ..Default::default()
        };
        assert!(evolve_subsystem(&m, &bad, 1.0, 0.1).is_err());
        assert!(evolve_subsystem(&m, &SubsystemState::excited(), -1.0, 0.1).is_err());
    }

    #[test]
    fn step_budget_exceeded() {
        let m = ReducedModel::new(Scheme::TwoMode, 1e6, 0.0, 0.0, 0.0).unwrap();
        let err = evolve_subsystem(&m, &SubsystemState::excited(), 1e3, 1.0).unwrap_err();
        assert!(matches!(err, crate::Error::Resource(_)));
    }

    #[test]
    fn step_halving_order() {
        // exact solution for g = 0: ρ₁₁ = e^{-γ₁ t}
        let m = ReducedModel::new(Scheme::TwoMode, 0.0, 1.0, 0.5, 0.0).unwrap();
        let err = |dt: f64| {
            let tr = evolve_subsystem(&m, &SubsystemState::excited(), 2.0, dt).unwrap();
            (tr.last().unwrap().rho11 - (-2.0f64).exp()).abs()
        };
        let order = (err(0.02) / err(0.01)).log2();
        assert!((order - 4.0).abs() < 0.2, "order {order}");
    }
}
