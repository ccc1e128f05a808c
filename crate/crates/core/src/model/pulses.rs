// SPDX-License-Identifier: Apache-2.0

//! Gaussian pump and Stokes envelopes.
//!
//! The pump Ω₀₁ (= Ω₁₁) drives atom 1 and is a single Gaussian centred at +τ.
//! The Stokes Ω₀₂ (= Ω₁₂ = Ω₀₃ = Ω₁₃) drives atoms 2 and 3 and is the sum of
//! Gaussians at ±τ, so it arrives first and outlasts the pump. Envelopes are in
//! units of Ω₀, time in units of T.

use crate::model::params::SimulationParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PulseKind {
    /// Ω₀₁(t)
    Pump01,
    /// Ω₀₂(t)
    Stokes02,
}

pub fn gaussian_pulse(t: f64, params: &SimulationParams, which: PulseKind) -> f64 {
    params.schedule().envelope(which, t)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSchedule {
    tau: f64,
}

impl PulseSchedule {
    pub fn new(tau_over_t: f64) -> Self {
        Self { tau: tau_over_t }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn pump(&self, t: f64) -> f64 {
        (-(t - self.tau).powi(2)).exp()
    }

    pub fn stokes(&self, t: f64) -> f64 {
        (-(t - self.tau).powi(2)).exp() + (-(t + self.tau).powi(2)).exp()
    }

    pub fn pump_derivative(&self, t: f64) -> f64 {
        -2.0 * (t - self.tau) * self.pump(t)
    }

    pub fn stokes_derivative(&self, t: f64) -> f64 {
        -2.0 * (t - self.tau) * (-(t - self.tau).powi(2)).exp()
            - 2.0 * (t + self.tau) * (-(t + self.tau).powi(2)).exp()
    }

    pub fn envelope(&self, which: PulseKind, t: f64) -> f64 {
        match which {
            PulseKind::Pump01 => self.pump(t),
            PulseKind::Stokes02 => self.stokes(t),
        }
    }

    /// All four Rabi frequencies at `t`, in units of 1/T.
    pub fn rabi(&self, t: f64, rabi_scale: f64) -> RabiFrequencies {
        let pump = rabi_scale * self.pump(t);
        let stokes = rabi_scale * self.stokes(t);
        RabiFrequencies {
            omega01: pump,
            omega11: pump,
            omega02: stokes,
            omega12: stokes,
        }
    }
}

/// Instantaneous Rabi frequencies. Index `mk` is ground level m, atom k;
/// atom 3 always mirrors atom 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiFrequencies {
    pub omega01: f64,
    pub omega11: f64,
    pub omega02: f64,
    pub omega12: f64,
}

impl RabiFrequencies {
    pub fn max(&self) -> f64 {
        self.omega01
            .abs()
            .max(self.omega11.abs())
            .max(self.omega02.abs())
            .max(self.omega12.abs())
    }
}
