// SPDX-License-Identifier: Apache-2.0

use crate::model::params::SimulationParams;

/// Below these ratios the blockade or the ground-state splitting no longer
/// dominates the drive.
pub const BLOCKADE_WARN_RATIO: f64 = 5.0;
pub const DETUNING_WARN_RATIO: f64 = 0.5;

/// How well a parameter set satisfies the strong-blockade and detuning
/// assumptions. Ratios are dimensionless; Rabi frequencies in units of Ω₀.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeReport {
    pub max_rabi: f64,
    pub t_at_max: f64,
    pub blockade_over_rabi: f64,
    pub detuning_over_rabi: f64,
    pub blockade_over_detuning: f64,
    pub weak_blockade: bool,
    pub weak_detuning: bool,
}

impl RegimeReport {
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.weak_blockade {
            w.push(format!(
                "U / max Ω = {:.3} < {BLOCKADE_WARN_RATIO}: blockade is not strong",
                self.blockade_over_rabi
            ));
        }
        if self.weak_detuning {
            w.push(format!(
                "|δ| / max Ω = {:.3} < {DETUNING_WARN_RATIO}: ground states are nearly degenerate",
                self.detuning_over_rabi
            ));
        }
        w
    }
}

/// Scan the window for the largest drive and compare U and δ against it.
/// Never fails; weak regimes are flagged, not rejected.
pub fn blockade_regime_report(params: &SimulationParams) -> RegimeReport {
    let schedule = params.schedule();
    let step = params.dt_over_t.min(1e-3);
    let n = ((params.t_end_over_t - params.t_start_over_t) / step).ceil() as usize;
    let (t_at_max, max_rabi) = (0..=n)
        .map(|k| (params.t_start_over_t + k as f64 * step).min(params.t_end_over_t))
        .map(|t| (t, schedule.pump(t).max(schedule.stokes(t))))
        .fold((params.t_start_over_t, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });

    let ratio = |x: f64, y: f64| if y > 0.0 { x / y } else { f64::INFINITY };
    let blockade_over_rabi = ratio(params.u_over_omega0, max_rabi);
    let detuning_over_rabi = ratio(params.delta_over_omega0.abs(), max_rabi);
    RegimeReport {
        max_rabi,
        t_at_max,
        blockade_over_rabi,
        detuning_over_rabi,
        blockade_over_detuning: ratio(params.u_over_omega0, params.delta_over_omega0.abs()),
        weak_blockade: blockade_over_rabi < BLOCKADE_WARN_RATIO,
        weak_detuning: detuning_over_rabi < DETUNING_WARN_RATIO,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters_are_in_regime() {
        let r = blockade_regime_report(&SimulationParams::default());
        // the two-Gaussian Stokes envelope peaks at t = 0 with 2 exp(-0.49)
        assert!((r.max_rabi - 1.225_252_788_368_832).abs() < 1e-9);
        assert!(r.t_at_max.abs() < 1e-9);
        assert!((r.blockade_over_rabi - 8.161_581_099_8).abs() < 1e-6);
        assert!(!r.weak_blockade);
        assert!(!r.weak_detuning);
        assert!(r.warnings().is_empty());
    }

    #[test]
    fn zero_blockade_is_flagged() {
        let r = blockade_regime_report(&SimulationParams {
            u_over_omega0: 0.0,
            ..Default::default()
        });
        assert!(r.weak_blockade);
        assert_eq!(r.blockade_over_rabi, 0.0);
    }

    #[test]
    fn zero_detuning_is_flagged() {
        let r = blockade_regime_report(&SimulationParams {
            delta_over_omega0: 0.0,
            ..Default::default()
        });
        assert!(r.weak_detuning);
        assert!(!r.weak_blockade);
        assert_eq!(r.blockade_over_detuning, f64::INFINITY);
        assert_eq!(r.warnings().len(), 1);
    }
}
