// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use crate::model::pulses::PulseSchedule;
use crate::numerics::Basis;
use crate::{Error, Result};

/// Which Hamiltonian the dynamics runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Nine-state antisymmetric sector including the two doubly-excited states.
    Logic9,
    /// Complete three-atom product space.
    Full27,
    /// Four-state effective model {|1>, |3>, |7>, |eta+>}.
    Eff4,
}

impl ModelKind {
    pub fn basis(self) -> Basis {
        match self {
            ModelKind::Logic9 => Basis::Logic9,
            ModelKind::Full27 => Basis::Full27,
            ModelKind::Eff4 => Basis::Eff4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Logic9 => "logic9",
            ModelKind::Full27 => "full27",
            ModelKind::Eff4 => "eff4",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "logic9" => Ok(ModelKind::Logic9),
            "full27" => Ok(ModelKind::Full27),
            "eff4" => Ok(ModelKind::Eff4),
            other => Err(format!("unknown model `{other}` (expected logic9, full27 or eff4)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dissipation {
    None,
    Lindblad,
}

impl Dissipation {
    pub fn as_str(self) -> &'static str {
        match self {
            Dissipation::None => "none",
            Dissipation::Lindblad => "lindblad",
        }
    }
}

impl fmt::Display for Dissipation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dissipation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Dissipation::None),
            "lindblad" => Ok(Dissipation::Lindblad),
            other => Err(format!("unknown dissipation `{other}` (expected none or lindblad)")),
        }
    }
}

/// Dimensionless protocol parameters.
///
/// Time is measured in units of the pulse width T and every frequency in
/// units of 1/T, so a Rabi amplitude of one Ω₀ is `omega0_t` internally.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationParams {
    pub omega0_t: f64,
    pub tau_over_t: f64,
    pub u_over_omega0: f64,
    pub delta_over_omega0: f64,
    pub gamma_e_over_omega0: f64,
    pub t_start_over_t: f64,
    pub t_end_over_t: f64,
    pub dt_over_t: f64,
    pub model: ModelKind,
    pub dissipation: Dissipation,
}

impl Default for SimulationParams {
    /// The ideal-condition population-transfer example: Ω₀T = 10, τ = 0.7T,
    /// U = 10Ω₀, δ = Ω₀, no decay, window [-4T, 4T].
    fn default() -> Self {
        Self {
            omega0_t: 10.0,
            tau_over_t: 0.7,
            u_over_omega0: 10.0,
            delta_over_omega0: 1.0,
            gamma_e_over_omega0: 0.0,
            t_start_over_t: -4.0,
            t_end_over_t: 4.0,
            dt_over_t: 1e-3,
            model: ModelKind::Logic9,
            dissipation: Dissipation::None,
        }
    }
}

impl SimulationParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega0_T", self.omega0_t),
            ("tau_over_T", self.tau_over_t),
            ("U_over_omega0", self.u_over_omega0),
            ("delta_over_omega0", self.delta_over_omega0),
            ("gamma_e_over_omega0", self.gamma_e_over_omega0),
            ("t_start_over_T", self.t_start_over_t),
            ("t_end_over_T", self.t_end_over_t),
            ("dt_over_T", self.dt_over_t),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::param(name, format!("must be finite, got {value}")));
            }
        }
        if self.omega0_t <= 0.0 {
            return Err(Error::param("omega0_T", "must be > 0"));
        }
        if self.u_over_omega0 < 0.0 {
            return Err(Error::param("U_over_omega0", "must be >= 0"));
        }
        if self.gamma_e_over_omega0 < 0.0 {
            return Err(Error::param("gamma_e_over_omega0", "must be >= 0"));
        }
        if self.t_start_over_t >= self.t_end_over_t {
            return Err(Error::param(
                "t_end_over_T",
                format!(
                    "window end {} must exceed start {}",
                    self.t_end_over_t, self.t_start_over_t
                ),
            ));
        }
        if self.dt_over_t <= 0.0 {
            return Err(Error::param("dt_over_T", format!("must be > 0, got {}", self.dt_over_t)));
        }
        if self.dt_over_t > self.t_end_over_t - self.t_start_over_t {
            return Err(Error::param("dt_over_T", "must not exceed the integration window"));
        }
        if self.dissipation == Dissipation::Lindblad && self.model != ModelKind::Full27 {
            return Err(Error::param(
                "dissipation",
                format!("lindblad requires model = full27, got {}", self.model),
            ));
        }
        Ok(())
    }

    /// Ω₀ in units of 1/T.
    pub fn rabi_scale(&self) -> f64 {
        self.omega0_t
    }

    /// U in units of 1/T.
    pub fn blockade_shift(&self) -> f64 {
        self.u_over_omega0 * self.omega0_t
    }

    /// δ in units of 1/T.
    pub fn detuning(&self) -> f64 {
        self.delta_over_omega0 * self.omega0_t
    }

    /// γ_e in units of 1/T.
    pub fn emission_rate(&self) -> f64 {
        self.gamma_e_over_omega0 * self.omega0_t
    }

    pub fn schedule(&self) -> PulseSchedule {
        PulseSchedule::new(self.tau_over_t)
    }

    /// Number of integrator steps. The step is shrunk (never enlarged) so the
    /// last step lands exactly on `t_end`.
    pub fn step_count(&self) -> usize {
        let span = self.t_end_over_t - self.t_start_over_t;
        ((span / self.dt_over_t) - 1e-9).ceil().max(1.0) as usize
    }

    pub fn effective_step(&self) -> f64 {
        (self.t_end_over_t - self.t_start_over_t) / self.step_count() as f64
    }

    pub fn basis(&self) -> Basis {
        self.model.basis()
    }
}
