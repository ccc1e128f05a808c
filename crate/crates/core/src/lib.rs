// SPDX-License-Identifier: Apache-2.0

//! Preparation of the three-atom, three-level singlet state with Rydberg
//! blockade and adiabatic passage.
//!
//! The crate is layered bottom-up:
//!
//! * [`numerics`]: basis-labeled dense complex states and operators.
//! * [`model`]: pulses, the 27-, 9- and 4-dimensional Hamiltonians, the logic
//!   basis, dark and singlet states, spontaneous-emission jump operators.
//! * [`dynamics`]: fixed-step RK4 Schrödinger and Lindblad integrators, an
//!   exponential-propagator reference integrator, adiabaticity diagnostics.
//! * [`observables`]: populations, fidelity, leakage, trajectory summaries.
//! * [`config`], [`sweep`], [`plot`], [`validate`]: the batch layer behind the
//!   `rydberg-singlet` binary.

pub mod config;
pub mod dynamics;
mod error;
pub mod model;
pub mod numerics;
pub mod observables;
pub mod plot;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
