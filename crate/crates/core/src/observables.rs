// SPDX-License-Identifier: Apache-2.0

//! Populations, fidelities and leakage read off a state or a whole run.

use num_complex::Complex64;

use crate::dynamics::{QuantumState, Trajectory};
use crate::model::{eff4_embedding, lift_density, lift_state, singlet_target, LogicBasis};
use crate::numerics::{Basis, CVector, DensityMatrix, StateVector};
use crate::{Error, Result};

/// Logic states other than |1>, |3>, |7>, as 1-based labels.
pub const INTERMEDIATE_STATES: [usize; 6] = [2, 4, 5, 6, 8, 9];

/// Anything a population can be read from.
pub trait Observed {
    fn basis(&self) -> Basis;
    /// <v|state|v>
    fn weight_along(&self, v: &CVector) -> f64;
    /// norm squared or trace
    fn total_weight(&self) -> f64;
}

impl Observed for StateVector {
    fn basis(&self) -> Basis {
        StateVector::basis(self)
    }

    fn weight_along(&self, v: &CVector) -> f64 {
        v.dotc(self.amplitudes()).norm_sqr()
    }

    fn total_weight(&self) -> f64 {
        self.norm_squared()
    }
}

impl Observed for DensityMatrix {
    fn basis(&self) -> Basis {
        DensityMatrix::basis(self)
    }

    fn weight_along(&self, v: &CVector) -> f64 {
        v.dotc(&(self.entries() * v)).re
    }

    fn total_weight(&self) -> f64 {
        self.trace().re
    }
}

impl Observed for QuantumState {
    fn basis(&self) -> Basis {
        QuantumState::basis(self)
    }

    fn weight_along(&self, v: &CVector) -> f64 {
        match self {
            QuantumState::Pure(s) => s.weight_along(v),
            QuantumState::Mixed(r) => r.weight_along(v),
        }
    }

    fn total_weight(&self) -> f64 {
        self.weight()
    }
}

/// Vector in the state's own basis whose overlap gives the amplitude on |k>.
fn logic_probe(basis: Basis, logic: &LogicBasis, k: usize) -> Result<CVector> {
    match basis {
        Basis::Logic9 => {
            let mut v = CVector::zeros(9);
            v[k] = Complex64::new(1.0, 0.0);
            Ok(v)
        }
        Basis::Full27 => Ok(logic.embedding().column(k).into_owned()),
        Basis::Eff4 => Ok(eff4_embedding().row(k).adjoint()),
        other => Err(Error::BasisMismatch {
            left: other,
            right: Basis::Logic9,
        }),
    }
}

/// P_1..P_9 (index 0 is |1>).
pub fn populations<S: Observed + ?Sized>(state: &S, logic: &LogicBasis) -> Result<[f64; 9]> {
    let basis = state.basis();
    let mut out = [0.0; 9];
    for (k, p) in out.iter_mut().enumerate() {
        *p = state.weight_along(&logic_probe(basis, logic, k)?);
    }
    Ok(out)
}

/// Weight outside the logic sector; zero by construction outside full27.
pub fn leakage<S: Observed + ?Sized>(state: &S, logic: &LogicBasis) -> Result<f64> {
    if state.basis() != Basis::Full27 {
        populations(state, logic)?;
        return Ok(0.0);
    }
    let inside: f64 = populations(state, logic)?.iter().sum();
    Ok((state.total_weight() - inside).max(0.0))
}

/// |<target|psi>|^2 or <target|rho|target>.
///
/// Whichever side lives in the smaller model space is embedded into the
/// other one first.
pub fn fidelity(state: &QuantumState, target: &StateVector) -> Result<f64> {
    let basis = state.basis();
    if let Ok(t) = lift_state(target, basis) {
        return Ok(state.weight_along(t.amplitudes()));
    }
    let lifted = match state {
        QuantumState::Pure(s) => QuantumState::Pure(lift_state(s, target.basis())?),
        QuantumState::Mixed(r) => QuantumState::Mixed(lift_density(r, target.basis())?),
    };
    Ok(lifted.weight_along(target.amplitudes()))
}

pub fn pure_fidelity(state: &StateVector, target: &StateVector) -> Result<f64> {
    fidelity(&QuantumState::Pure(state.clone()), target)
}

pub fn mixed_fidelity(rho: &DensityMatrix, target: &StateVector) -> Result<f64> {
    fidelity(&QuantumState::Mixed(rho.clone()), target)
}

/// Observables at every stored sample of a run, measured against the singlet.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    /// pump and Stokes envelopes in units of Ω₀
    pub omega01: Vec<f64>,
    pub omega02: Vec<f64>,
    pub populations: Vec<[f64; 9]>,
    pub fidelity: Vec<f64>,
    pub leakage: Vec<f64>,
    pub norm_or_trace: Vec<f64>,
}

impl ObservableSeries {
    pub fn from_trajectory(traj: &Trajectory) -> Result<Self> {
        if traj.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        let logic = crate::model::logic_embedding();
        let target = singlet_target(traj.states[0].basis())?;
        let schedule = traj.params.schedule();
        let mut series = ObservableSeries::default();
        for (&t, state) in traj.times.iter().zip(&traj.states) {
            series.times.push(t);
            series.omega01.push(schedule.pump(t));
            series.omega02.push(schedule.stokes(t));
            series.populations.push(populations(state, &logic)?);
            series.fidelity.push(fidelity(state, &target)?);
            series.leakage.push(leakage(state, &logic)?);
            series.norm_or_trace.push(state.total_weight());
        }
        Ok(series)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// max over samples of |sum P_k + leakage - norm|
    pub fn completeness_defect(&self) -> f64 {
        self.populations
            .iter()
            .zip(&self.leakage)
            .zip(&self.norm_or_trace)
            .map(|((p, l), n)| (p.iter().sum::<f64>() + l - n).abs())
            .fold(0.0, f64::max)
    }

    /// Population in the intermediate logic states at each sample.
    pub fn intermediate_total(&self) -> Vec<f64> {
        self.populations
            .iter()
            .map(|p| INTERMEDIATE_STATES.iter().map(|&k| p[k - 1]).sum())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySummary {
    pub final_fidelity: f64,
    pub final_populations: [f64; 9],
    /// peak over time of P2, P4, P5, P6, P8, P9 individually
    pub peak_intermediate: [f64; 6],
    /// peak over time of P2 + P4 + P5 + P6 + P8 + P9
    pub peak_intermediate_total: f64,
    pub max_leakage: f64,
    /// worst |norm - 1| seen by the integrator or at any sample
    pub norm_drift: f64,
}

pub fn trajectory_summary(traj: &Trajectory) -> Result<TrajectorySummary> {
    let series = ObservableSeries::from_trajectory(traj)?;
    let mut peak_intermediate = [0.0f64; 6];
    for p in &series.populations {
        for (slot, &k) in peak_intermediate.iter_mut().zip(&INTERMEDIATE_STATES) {
            *slot = slot.max(p[k - 1]);
        }
    }
    let sampled_drift = series
        .norm_or_trace
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(TrajectorySummary {
        final_fidelity: *series.fidelity.last().expect("nonempty"),
        final_populations: *series.populations.last().expect("nonempty"),
        peak_intermediate,
        peak_intermediate_total: series.intermediate_total().into_iter().fold(0.0, f64::max),
        max_leakage: series.leakage.iter().copied().fold(0.0, f64::max),
        norm_drift: sampled_drift.max(traj.diagnostics.max_drift),
    })
}
