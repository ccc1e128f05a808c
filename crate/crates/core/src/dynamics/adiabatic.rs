// SPDX-License-Identifier: Apache-2.0

use crate::model::{mixing_angle, SimulationParams};

/// Mixing angle of the dark state along the pulse sequence and how fast it
/// turns relative to the gap sqrt(2Ω₀₁² + Ω₀₂²).
#[derive(Clone, Debug, Default)]
pub struct AdiabaticityProfile {
    pub times: Vec<f64>,
    /// radians
    pub theta: Vec<f64>,
    /// dθ/dt in units of 1/T
    pub theta_dot: Vec<f64>,
    /// sqrt(2Ω₀₁² + Ω₀₂²) in units of Ω₀
    pub gap: Vec<f64>,
    /// |dθ/dt| / gap, both in units of 1/T
    pub margin: Vec<f64>,
}

impl AdiabaticityProfile {
    pub fn max_margin(&self) -> f64 {
        self.margin.iter().copied().fold(0.0, f64::max)
    }
}

/// Evaluate θ(t) = atan(sqrt(2) Ω₀₁/Ω₀₂) and its analytic derivative on the
/// integration grid.
pub fn adiabaticity_profile(params: &SimulationParams) -> AdiabaticityProfile {
    let schedule = params.schedule();
    let steps = params.step_count();
    let dt = params.effective_step();
    let mut profile = AdiabaticityProfile::default();
    for k in 0..=steps {
        let t = params.t_start_over_t + k as f64 * dt;
        let (p, s) = (schedule.pump(t), schedule.stokes(t));
        let (dp, ds) = (schedule.pump_derivative(t), schedule.stokes_derivative(t));
        let ratio = std::f64::consts::SQRT_2 * p / s;
        let ratio_dot = std::f64::consts::SQRT_2 * (dp * s - p * ds) / (s * s);
        let theta_dot = ratio_dot / (1.0 + ratio * ratio);
        let gap = (2.0 * p * p + s * s).sqrt();
        profile.times.push(t);
        profile.theta.push(mixing_angle(p, s));
        profile.theta_dot.push(theta_dot);
        profile.gap.push(gap);
        profile.margin.push(theta_dot.abs() / (gap * params.rabi_scale()));
    }
    profile
}
