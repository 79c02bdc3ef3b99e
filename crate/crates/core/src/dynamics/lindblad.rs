//! Master equation with photon loss from both cavities, on a truncated Fock space.
//!
//! Working in the frame rotating with the bare modes, the Hamiltonian (in rad/s) is
//! `H = Δ a†a + (g/√2)(a b†² + a† b²)` for the two-mode scheme and
//! `H = Δ a†a + g(a b† + a† b)` for the three-mode scheme, and the generator is
//! `ρ̇ = -i[H, ρ] + Σ_k r_k (L_k ρ L_k† - ½{L_k†L_k, ρ})` with `L = a` at rate
//! 1/τ_a and `L = b` at rate 1/τ_b.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::analytic::ReducedModel;
use crate::error::{domain, Result};
use crate::mode::{CoupledSystem, Scheme};

use super::rk4::rk4_step;
use super::trace::{SimulationTrace, SubsystemState, TraceMetadata};
use super::StepPlan;

type CMat = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Highest photon number kept in each mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub na: usize,
    pub nb: usize,
}

impl Truncation {
    /// Smallest truncation closed under the dynamics started from |1,0⟩.
    pub fn minimal(scheme: Scheme) -> Self {
        match scheme {
            Scheme::TwoMode => Self { na: 1, nb: 2 },
            Scheme::ThreeMode => Self { na: 1, nb: 1 },
        }
    }

    pub fn dim(&self) -> usize {
        (self.na + 1) * (self.nb + 1)
    }

    /// Basis index of |n_a, n_b⟩.
    pub fn index(&self, na: usize, nb: usize) -> usize {
        na * (self.nb + 1) + nb
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub trunc: Truncation,
    pub data: CMat,
}

impl DensityMatrix {
    /// Pure Fock state |n_a, n_b⟩⟨n_a, n_b|.
    pub fn fock(trunc: Truncation, na: usize, nb: usize) -> Result<Self> {
        if na > trunc.na || nb > trunc.nb {
            return domain(format!(
                "state |{na},{nb}> lies outside truncation ({}, {})",
                trunc.na, trunc.nb
            ));
        }
        let mut data = CMat::zeros(trunc.dim(), trunc.dim());
        let k = trunc.index(na, nb);
        data[(k, k)] = Complex64::new(1.0, 0.0);
        Ok(Self { trunc, data })
    }

    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        self.data[(self.trunc.index(bra.0, bra.1), self.trunc.index(ket.0, ket.1))]
    }

    pub fn population(&self, na: usize, nb: usize) -> f64 {
        self.element((na, nb), (na, nb)).re
    }

    pub fn trace(&self) -> f64 {
        self.data.trace().re
    }

    /// max |ρ - ρ†|.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.data - self.data.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.data + self.data.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }

    /// ⟨a†a⟩.
    pub fn mean_photons_a(&self) -> f64 {
        let mut acc = 0.0;
        for na in 0..=self.trunc.na {
            for nb in 0..=self.trunc.nb {
                acc += na as f64 * self.population(na, nb);
            }
        }
        acc
    }

    /// Projects onto the few-state basis used by the closed model.
    pub fn subsystem_state(&self, scheme: Scheme) -> SubsystemState {
        let pop = |na, nb| {
            if na <= self.trunc.na && nb <= self.trunc.nb {
                self.population(na, nb)
            } else {
                0.0
            }
        };
        let two = match scheme {
            Scheme::TwoMode => (0, 2),
            Scheme::ThreeMode => (0, 1),
        };
        let rho12 = if two.1 <= self.trunc.nb {
            self.element((1, 0), two)
        } else {
            ZERO
        };
        let (rho33, rho44) = match scheme {
            Scheme::TwoMode => (pop(0, 1), pop(0, 0)),
            Scheme::ThreeMode => (pop(0, 0), 0.0),
        };
        SubsystemState {
            rho11: pop(1, 0),
            rho22: pop(two.0, two.1),
            rho33,
            rho44,
            v: 2.0 * rho12.im,
            u: 2.0 * rho12.re,
        }
    }
}

fn destroy(n_max: usize) -> CMat {
    let mut m = CMat::zeros(n_max + 1, n_max + 1);
    for n in 1..=n_max {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    m
}

/// Row, column and value of one matrix entry.
type Entry = (usize, usize, Complex64);

fn nonzeros(m: &CMat) -> Vec<Entry> {
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// The master-equation right-hand side for one parameter set.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    pub scheme: Scheme,
    pub trunc: Truncation,
    model: ReducedModel,
    hamiltonian: CMat,
    /// H - (i/2) Σ r L†L
    h_eff: CMat,
    /// Jump operators as (rate, non-zero entries); ladder operators are sparse.
    jumps: Vec<(f64, Vec<Entry>)>,
}

/// Builds the generator from the reduced-model parameters.
pub fn build_lindblad(model: &ReducedModel, trunc: Truncation) -> Result<LindbladGenerator> {
    let min = Truncation::minimal(model.scheme);
    if trunc.na < min.na || trunc.nb < min.nb {
        return domain(format!(
            "truncation ({}, {}) too small; need at least ({}, {})",
            trunc.na, trunc.nb, min.na, min.nb
        ));
    }
    let a = kron(&destroy(trunc.na), &CMat::identity(trunc.nb + 1, trunc.nb + 1));
    let b = kron(&CMat::identity(trunc.na + 1, trunc.na + 1), &destroy(trunc.nb));
    let ad = a.adjoint();
    let bd = b.adjoint();
    let number_a = &ad * &a;
    let coupling = match model.scheme {
        Scheme::TwoMode => {
            let op = &a * &bd * &bd;
            (&op + op.adjoint()) * Complex64::new(model.g / 2f64.sqrt(), 0.0)
        }
        Scheme::ThreeMode => {
            let op = &a * &bd;
            (&op + op.adjoint()) * Complex64::new(model.g, 0.0)
        }
    };
    let hamiltonian = &number_a * Complex64::new(model.detuning, 0.0) + coupling;
    let rate_a = model.gamma1;
    let rate_b = match model.scheme {
        Scheme::TwoMode => 0.5 * model.gamma2,
        Scheme::ThreeMode => model.gamma2,
    };
    let mut h_eff = hamiltonian.clone();
    for (rate, l) in [(rate_a, &a), (rate_b, &b)] {
        h_eff -= (l.adjoint() * l) * Complex64::new(0.0, 0.5 * rate);
    }
    let jumps = [(rate_a, &a), (rate_b, &b)]
        .into_iter()
        .filter(|(rate, _)| *rate != 0.0)
        .map(|(rate, l)| (rate, nonzeros(l)))
        .collect();
    Ok(LindbladGenerator {
        scheme: model.scheme,
        trunc,
        model: *model,
        hamiltonian,
        h_eff,
        jumps,
    })
}

impl LindbladGenerator {
    pub fn from_system(system: &CoupledSystem, trunc: Truncation) -> Result<Self> {
        build_lindblad(&ReducedModel::from_system(system)?, trunc)
    }

    pub fn hamiltonian(&self) -> &CMat {
        &self.hamiltonian
    }

    /// ρ̇ for the given ρ.
    pub fn apply(&self, rho: &CMat) -> CMat {
        let h_rho = &self.h_eff * rho;
        let mut out = (&h_rho - h_rho.adjoint()) * (-I);
        for (rate, l) in &self.jumps {
            // r · L ρ L†, summed over the non-zero entries of L
            for &(i, k, lik) in l {
                for &(j, m, ljm) in l {
                    out[(i, j)] += lik * rho[(k, m)] * ljm.conj() * *rate;
                }
            }
        }
        out
    }

    /// Model whose timescales bound the fastest matrix element of this truncation.
    fn stepping_model(&self) -> ReducedModel {
        let mut g = 0.0f64;
        for i in 0..self.hamiltonian.nrows() {
            for j in 0..self.hamiltonian.ncols() {
                if i != j {
                    g = g.max(self.hamiltonian[(i, j)].norm());
                }
            }
        }
        let scale_b = match self.scheme {
            Scheme::TwoMode => 0.5 * self.trunc.nb as f64,
            Scheme::ThreeMode => self.trunc.nb as f64,
        };
        ReducedModel {
            g,
            gamma1: self.model.gamma1 * self.trunc.na as f64,
            gamma2: self.model.gamma2 * scale_b,
            ..self.model
        }
    }

    /// Integrates with RK4, calling `observe(t, ρ)` at t = 0, every `stride`
    /// steps and at the end; returns the final state.
    pub fn evolve<F>(
        &self,
        initial: &DensityMatrix,
        t_final: f64,
        dt_max: f64,
        stride: usize,
        mut observe: F,
    ) -> Result<DensityMatrix>
    where
        F: FnMut(f64, &DensityMatrix),
    {
        if initial.trunc != self.trunc {
            return domain("initial state truncation differs from the generator's");
        }
        let plan = StepPlan::new(&self.stepping_model(), t_final, dt_max)?;
        let stride = stride.max(1);
        let f = |_t: f64, rho: &CMat| self.apply(rho);
        let mut rho = initial.clone();
        observe(0.0, &rho);
        for i in 0..plan.steps {
            rho.data = rk4_step(&f, plan.time(i), &rho.data, plan.step);
            let done = i + 1;
            if done % stride == 0 || done == plan.steps {
                observe(plan.time(done), &rho);
            }
        }
        Ok(rho)
    }

    /// Evolves from |1,0⟩ and projects each sample onto the few-state basis.
    pub fn evolve_trace(&self, t_final: f64, dt_max: f64, stride: usize) -> Result<SimulationTrace> {
        let initial = DensityMatrix::fock(self.trunc, 1, 0)?;
        let mut times = Vec::new();
        let mut states = Vec::new();
        self.evolve(&initial, t_final, dt_max, stride, |t, rho| {
            times.push(t);
            states.push(rho.subsystem_state(self.scheme));
        })?;
        let plan = StepPlan::new(&self.stepping_model(), t_final, dt_max)?;
        Ok(SimulationTrace {
            times,
            states,
            metadata: TraceMetadata {
                model: self.model,
                integrator: "rk4-lindblad",
                step: plan.step,
                steps: plan.steps,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve_subsystem, SubsystemState};

    #[test]
    fn truncation_checks() {
        let m = ReducedModel::new(Scheme::TwoMode, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(build_lindblad(&m, Truncation { na: 1, nb: 1 }).is_err());
        assert!(DensityMatrix::fock(Truncation { na: 1, nb: 2 }, 2, 0).is_err());
    }

    #[test]
    fn uncoupled_photon_decay() {
        let m = ReducedModel::two_mode(0.5, 1.0, 0.0, 0.0).unwrap();
        let gen = build_lindblad(&m, Truncation { na: 2, nb: 2 }).unwrap();
        let rho0 = DensityMatrix::fock(gen.trunc, 1, 0).unwrap();
        let mut worst: f64 = 0.0;
        gen.evolve(&rho0, 3.0, 0.005, 1, |t, rho| {
            worst = worst.max((rho.mean_photons_a() - (-t / 0.5).exp()).abs());
        })
        .unwrap();
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn minimal_truncation_reproduces_closed_model() {
        let m = ReducedModel::new(Scheme::TwoMode, 2.0, 0.6, 1.1, 0.0).unwrap();
        let gen = build_lindblad(&m, Truncation::minimal(Scheme::TwoMode)).unwrap();
        let full = gen.evolve_trace(5.0, 0.01, 1).unwrap();
        let reduced = evolve_subsystem(&m, &SubsystemState::excited(), 5.0, 0.01).unwrap();
        assert_eq!(full.times.len(), reduced.times.len());
        for (a, b) in full.states.iter().zip(&reduced.states) {
            for (x, y) in [
                (a.rho11, b.rho11),
                (a.rho22, b.rho22),
                (a.rho33, b.rho33),
                (a.rho44, b.rho44),
                (a.v, b.v),
            ] {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn larger_truncation_changes_nothing_from_single_photon() {
        let m = ReducedModel::new(Scheme::TwoMode, 1.3, 0.2, 0.5, 0.4).unwrap();
        let small = build_lindblad(&m, Truncation { na: 1, nb: 2 })
            .unwrap()
            .evolve_trace(3.0, 0.01, 10)
            .unwrap();
        let big = build_lindblad(&m, Truncation { na: 2, nb: 4 }).unwrap();
        let rho0 = DensityMatrix::fock(big.trunc, 1, 0).unwrap();
        let end = big.evolve(&rho0, 3.0, 0.01, 1, |_, _| {}).unwrap();
        let s = end.subsystem_state(Scheme::TwoMode);
        let t = small.last().unwrap();
        assert!((s.rho11 - t.rho11).abs() < 1e-7);
        assert!((s.rho22 - t.rho22).abs() < 1e-7);
    }

    #[test]
    fn physicality_preserved() {
        let m = ReducedModel::new(Scheme::TwoMode, 1.0, 0.3, 0.8, 0.7).unwrap();
        let gen = build_lindblad(&m, Truncation { na: 2, nb: 3 }).unwrap();
        let mut rho0 = DensityMatrix::fock(gen.trunc, 1, 1).unwrap();
        // mix in a coherent superposition of |1,1⟩ and |0,3⟩
        let (i, j) = (gen.trunc.index(1, 1), gen.trunc.index(0, 3));
        rho0.data[(i, i)] = Complex64::new(0.5, 0.0);
        rho0.data[(j, j)] = Complex64::new(0.5, 0.0);
        rho0.data[(i, j)] = Complex64::new(0.0, 0.5);
        rho0.data[(j, i)] = Complex64::new(0.0, -0.5);
        let mut worst_herm: f64 = 0.0;
        let mut worst_eig: f64 = 0.0;
        let mut worst_trace: f64 = 0.0;
        gen.evolve(&rho0, 6.0, 0.01, 20, |_, rho| {
            worst_herm = worst_herm.max(rho.hermiticity_defect());
            worst_eig = worst_eig.min(rho.min_eigenvalue());
            worst_trace = worst_trace.max((rho.trace() - 1.0).abs());
        })
        .unwrap();
        assert!(worst_herm < 1e-10);
        assert!(worst_eig > -1e-8);
        assert!(worst_trace < 1e-8);
    }
}
