// SPDX-License-Identifier: Apache-2.0

//! Time evolution.
//!
//! Both production integrators are classical fixed-step RK4 so that a given
//! parameter set always produces the same samples. The step is the largest
//! value not exceeding `dt_over_T` that divides the window evenly.

mod adiabatic;
mod lindblad;
mod reference;
mod schrodinger;

use crate::model::{collapse_operators, lift_state, Dissipation, PulsedHamiltonian, SimulationParams};
use crate::numerics::{Basis, DensityMatrix, StateVector};
use crate::Result;

pub use adiabatic::{adiabaticity_profile, AdiabaticityProfile};
pub use lindblad::{integrate_lindblad, integrate_lindblad_with_form, DissipatorForm};
pub use reference::reference_integrate;
pub use schrodinger::integrate_schrodinger;

/// Drift beyond which an integration is abandoned.
pub const ABORT_DRIFT: f64 = 1e-4;
/// Drift the integrators are expected to stay under at default settings.
pub const TARGET_DRIFT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn basis(&self) -> Basis {
        match self {
            QuantumState::Pure(s) => s.basis(),
            QuantumState::Mixed(r) => r.basis(),
        }
    }

    /// ||psi||^2 or Re Tr(rho).
    pub fn weight(&self) -> f64 {
        match self {
            QuantumState::Pure(s) => s.norm_squared(),
            QuantumState::Mixed(r) => r.trace().re,
        }
    }
}

/// How many states a run keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputStride {
    /// About this many evenly spaced samples, always including both ends.
    Samples(usize),
    EveryStep,
}

impl Default for OutputStride {
    fn default() -> Self {
        OutputStride::Samples(200)
    }
}

impl OutputStride {
    /// Step indices (0..=steps) at which a sample is stored.
    pub(crate) fn indices(self, steps: usize) -> Vec<usize> {
        match self {
            OutputStride::EveryStep => (0..=steps).collect(),
            OutputStride::Samples(n) => {
                let n = n.max(2);
                let mut idx: Vec<usize> = (0..n)
                    .map(|k| ((k as f64) * steps as f64 / (n - 1) as f64).round() as usize)
                    .collect();
                idx.dedup();
                idx
            }
        }
    }
}

/// Worst-case health figures accumulated over a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub steps: usize,
    pub step: f64,
    /// max |norm - 1| (pure) or |Tr rho - 1| (mixed) over every step
    pub max_drift: f64,
    /// max entrywise |rho - rho^dagger| at sampled times (mixed only)
    pub max_hermiticity_defect: f64,
    /// smallest eigenvalue of rho at sampled times (mixed only)
    pub min_eigenvalue: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
    pub params: SimulationParams,
    pub diagnostics: Diagnostics,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> Option<&QuantumState> {
        self.states.last()
    }

    /// The last sample as a pure state, if this was a pure run.
    pub fn final_pure(&self) -> Option<&StateVector> {
        match self.states.last()? {
            QuantumState::Pure(s) => Some(s),
            QuantumState::Mixed(_) => None,
        }
    }

    pub fn final_mixed(&self) -> Option<&DensityMatrix> {
        match self.states.last()? {
            QuantumState::Mixed(r) => Some(r),
            QuantumState::Pure(_) => None,
        }
    }
}

/// Logic state |3> in whichever model space `basis` names.
pub fn initial_state(basis: Basis) -> Result<StateVector> {
    match basis {
        Basis::Eff4 => Ok(StateVector::basis_state(Basis::Eff4, 1)),
        Basis::Logic9 | Basis::Full27 => lift_state(&StateVector::basis_state(Basis::Logic9, 2), basis),
        other => Err(crate::Error::Precondition(format!("no protocol start state on {other}"))),
    }
}

/// Run the transfer protocol described by `params` from |3>.
///
/// Pure-state runs use the model named in `params`; dissipative runs evolve
/// |3><3| embedded in the full space.
pub fn simulate(params: &SimulationParams, stride: OutputStride) -> Result<Trajectory> {
    params.validate()?;
    let h = PulsedHamiltonian::for_model(params);
    let psi0 = initial_state(params.basis())?;
    match params.dissipation {
        Dissipation::None => integrate_schrodinger(&h, &psi0, params, stride),
        Dissipation::Lindblad => {
            integrate_lindblad(&h, &collapse_operators(params), &psi0.to_density(), params, stride)
        }
    }
}
