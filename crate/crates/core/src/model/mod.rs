// SPDX-License-Identifier: Apache-2.0

//! Everything the protocol defines: parameters, pulses, bases, Hamiltonians,
//! target and dark states, jump operators.

pub mod dissipation;
pub mod hamiltonian;
pub mod params;
pub mod pulses;
pub mod regime;
pub mod states;

pub use dissipation::{collapse_operators, CollapseOperator};
pub use hamiltonian::{
    build_effective_hamiltonian, build_full_hamiltonian, build_logic_hamiltonian, effective_hamiltonian,
    full_hamiltonian, logic_hamiltonian, AtomDrives, FnHamiltonian, PulsedHamiltonian, StaticHamiltonian,
    TimeDependentHamiltonian,
};
pub use params::{Dissipation, ModelKind, SimulationParams};
pub use pulses::{gaussian_pulse, PulseKind, PulseSchedule, RabiFrequencies};
pub use regime::{blockade_regime_report, RegimeReport};
pub use states::{
    dark_state, eff4_embedding, eta_basis_change, lift_density, lift_state, logic_embedding, mixing_angle, product_index,
    singlet_state, singlet_target, swap_atoms, Level, LogicBasis,
};
