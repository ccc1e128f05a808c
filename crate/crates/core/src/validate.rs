// SPDX-License-Identifier: Apache-2.0

//! Self-checks of a build: algebraic identities, analytic oracles and
//! conservation laws, reported as JSON.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::dynamics::{
    adiabaticity_profile, integrate_lindblad_with_form, integrate_schrodinger, reference_integrate,
    simulate, DissipatorForm, OutputStride, QuantumState,
};
use crate::model::{
    build_effective_hamiltonian, build_full_hamiltonian, build_logic_hamiltonian, collapse_operators,
    dark_state, effective_hamiltonian, lift_state, logic_embedding, singlet_state, singlet_target,
    swap_atoms, Dissipation, ModelKind, PulsedHamiltonian, RabiFrequencies,
    SimulationParams, StaticHamiltonian,
};
use crate::numerics::{inner_product, real, Basis, CMatrix, Operator, StateVector, ALGEBRAIC_TOL};
use crate::observables::ObservableSeries;
use crate::Result;

const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// the measured defect or figure of merit
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    /// Passes when `value <= tolerance`.
    fn at_most(name: &str, value: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: value <= tolerance,
            value,
            tolerance,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, tolerance: f64, r: Result<(f64, String)>) -> Self {
        match r {
            Ok((value, detail)) => Self::at_most(name, value, tolerance, detail),
            Err(e) => Self {
                name: name.to_string(),
                passed: false,
                value: f64::NAN,
                tolerance,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        Self {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn random_times(n: usize) -> Vec<f64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(SEED);
    (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect()
}

pub fn check_hermiticity() -> CheckResult {
    let params = SimulationParams::default();
    let worst = random_times(10)
        .into_iter()
        .map(|t| {
            let eff = build_effective_hamiltonian(&params, t).map(|h| h.hermiticity_defect())?;
            Ok(build_full_hamiltonian(&params, t)
                .hermiticity_defect()
                .max(build_logic_hamiltonian(&params, t).hermiticity_defect())
                .max(eff))
        })
        .try_fold(0.0f64, |acc, d: Result<f64>| Ok(acc.max(d?)));
    CheckResult::from_result(
        "hermiticity",
        ALGEBRAIC_TOL,
        worst.map(|w| (w, "max |H - H^dagger| over full27, logic9, eff4 at 10 times".into())),
    )
}

/// max |P^dagger H_full P - H'| at 10 times, with H' from `logic`.
pub fn check_sector_restriction(logic: &dyn Fn(&SimulationParams, f64) -> Operator) -> CheckResult {
    let params = SimulationParams::default();
    let basis = logic_embedding();
    let worst = random_times(10).into_iter().try_fold(0.0f64, |acc, t| {
        let restricted = basis.restrict(&build_full_hamiltonian(&params, t))?;
        Ok(acc.max(restricted.max_abs_diff(&logic(&params, t))?))
    });
    CheckResult::from_result(
        "sector_restriction",
        ALGEBRAIC_TOL,
        worst.map(|w| (w, "max |P^dagger H_full P - H'| at 10 times".into())),
    )
}

pub fn check_exchange_symmetry() -> CheckResult {
    let params = SimulationParams::default();
    let swap = swap_atoms(1, 2);
    let worst = random_times(5).into_iter().try_fold(0.0f64, |acc, t| {
        let h = build_full_hamiltonian(&params, t);
        let ab = h.compose(&swap)?;
        let ba = swap.compose(&h)?;
        Ok(acc.max(ab.max_abs_diff(&ba)?))
    });
    CheckResult::from_result(
        "exchange_symmetry",
        ALGEBRAIC_TOL,
        worst.map(|w| (w, "max |[H_full, SWAP_23]|".into())),
    )
}

pub fn check_dark_state() -> CheckResult {
    let mut rng = rand::rngs::StdRng::seed_from_u64(SEED);
    let worst = (0..20).try_fold(0.0f64, |acc, _| {
        let (a, b) = (rng.gen_range(0.0..5.0), rng.gen_range(0.01..5.0));
        let r = RabiFrequencies {
            omega01: a,
            omega11: a,
            omega02: b,
            omega12: b,
        };
        let h = effective_hamiltonian(&r, rng.gen_range(-2.0..2.0))?;
        Ok(acc.max(h.apply(&dark_state(a, b)?)?.norm()))
    });
    CheckResult::from_result(
        "dark_state",
        ALGEBRAIC_TOL,
        worst.map(|w| (w, "max |H_eff D| at 20 random pulse values".into())),
    )
}

fn window(t_start: f64, t_end: f64, dt: f64) -> SimulationParams {
    SimulationParams {
        t_start_over_t: t_start,
        t_end_over_t: t_end,
        dt_over_t: dt,
        ..Default::default()
    }
}

pub fn check_rabi() -> CheckResult {
    let omega = 2.0;
    let mut h = CMatrix::zeros(2, 2);
    h[(0, 1)] = real(omega);
    h[(1, 0)] = real(omega);
    let run = || -> Result<(f64, String)> {
        let h = StaticHamiltonian(Operator::new(Basis::Generic(2), h)?);
        let params = window(0.0, 1.0, 1e-3);
        let psi0 = StateVector::basis_state(Basis::Generic(2), 0);
        let traj = integrate_schrodinger(&h, &psi0, &params, OutputStride::Samples(41))?;
        let worst = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(&t, s)| match s {
                QuantumState::Pure(p) => (p.amplitudes()[1].norm_sqr() - (omega * t).sin().powi(2)).abs(),
                QuantumState::Mixed(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max);
        Ok((worst, "max |P_e - sin^2(Ωt)| on [0, 1]".into()))
    };
    CheckResult::from_result("rabi_oscillation", 1e-8, run())
}

pub fn check_decay() -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let params = SimulationParams {
            model: ModelKind::Full27,
            dissipation: Dissipation::Lindblad,
            gamma_e_over_omega0: 0.05,
            ..window(0.0, 2.0, 1e-3)
        };
        let gamma = params.emission_rate();
        // atom 1 excited, atoms 2 and 3 in g0
        let psi0 = StateVector::basis_state(Basis::Full27, 18);
        let h = StaticHamiltonian(Operator::zeros(Basis::Full27));
        let traj = integrate_lindblad_with_form(
            &h,
            &collapse_operators(&params),
            &psi0.to_density(),
            &params,
            OutputStride::Samples(21),
            DissipatorForm::Standard,
        )?;
        let worst = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(&t, s)| match s {
                QuantumState::Mixed(r) => (r.entries()[(18, 18)].re - (-gamma * t).exp()).abs(),
                QuantumState::Pure(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max);
        Ok((worst, "max |rho_ee - exp(-γ_e t)| for one excited atom".into()))
    };
    CheckResult::from_result("spontaneous_decay", 1e-8, run())
}

pub fn check_boundary_limits() -> CheckResult {
    let prof = adiabaticity_profile(&SimulationParams::default());
    let start = prof.theta[0];
    let end = (prof.theta.last().copied().unwrap_or(f64::NAN) - 2f64.sqrt().atan()).abs();
    let monotone = prof.theta.windows(2).all(|w| w[1] >= w[0]);
    let mut c = CheckResult::at_most(
        "boundary_limits",
        start.max(end),
        1e-3,
        format!("θ(start) = {start:.3e}, |θ(end) - atan√2| = {end:.3e}, monotone = {monotone}"),
    );
    c.passed &= monotone;
    c
}

pub fn check_singlet_embedding() -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let direct = singlet_state(3)?.relabel(Basis::Full27)?;
        let embedded = lift_state(&singlet_target(Basis::Logic9)?, Basis::Full27)?;
        let diff = (direct.amplitudes() - embedded.amplitudes()).camax();
        Ok((diff, "max |S_3 - P (|3> - |1> - |7>)/√3|".into()))
    };
    CheckResult::from_result("singlet_embedding", ALGEBRAIC_TOL, run())
}

/// Worst violation among trace drift (1e-6), Hermiticity (1e-9) and
/// negativity (1e-6) for a dissipative run using `form`, scaled so that any
/// failure pushes the value above 1.
pub fn check_lindblad_conservation(form: DissipatorForm) -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let params = SimulationParams {
            model: ModelKind::Full27,
            dissipation: Dissipation::Lindblad,
            u_over_omega0: 5.0,
            gamma_e_over_omega0: 0.05,
            ..window(-2.5, 2.5, 1e-3)
        };
        let h = PulsedHamiltonian::for_model(&params);
        let rho0 = crate::dynamics::initial_state(Basis::Full27)?.to_density();
        let traj = integrate_lindblad_with_form(
            &h,
            &collapse_operators(&params),
            &rho0,
            &params,
            OutputStride::Samples(50),
            form,
        )?;
        let d = &traj.diagnostics;
        let negativity = (-d.min_eigenvalue.unwrap_or(0.0)).max(0.0);
        let score = (d.max_drift / 1e-6)
            .max(d.max_hermiticity_defect / 1e-9)
            .max(negativity / 1e-6);
        Ok((
            score,
            format!(
                "trace drift {:.2e}, hermiticity defect {:.2e}, min eigenvalue {:.2e}",
                d.max_drift,
                d.max_hermiticity_defect,
                d.min_eigenvalue.unwrap_or(f64::NAN)
            ),
        ))
    };
    CheckResult::from_result("lindblad_conservation", 1.0, run())
}

fn overlap_defect(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(1.0 - inner_product(a, b)?.norm_sqr())
}

pub fn check_sector_equivalence() -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let logic = simulate(&SimulationParams::default(), OutputStride::Samples(2))?;
        let full = simulate(
            &SimulationParams {
                model: ModelKind::Full27,
                ..Default::default()
            },
            OutputStride::Samples(2),
        )?;
        let lifted = lift_state(logic.final_pure().expect("pure run"), Basis::Full27)?;
        let d = overlap_defect(&lifted, full.final_pure().expect("pure run"))?;
        Ok((d, "1 - |<P psi_logic9 | psi_full27>|^2 at t_end".into()))
    };
    CheckResult::from_result("sector_equivalence", 1e-6, run())
}

pub fn check_reference_agreement() -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let params = SimulationParams::default();
        let h = PulsedHamiltonian::for_model(&params);
        let psi0 = crate::dynamics::initial_state(params.basis())?;
        let main = integrate_schrodinger(&h, &psi0, &params, OutputStride::Samples(2))?;
        let reference = reference_integrate(&h, &psi0, &params, OutputStride::Samples(2))?;
        let d = overlap_defect(main.final_pure().expect("pure"), reference.final_pure().expect("pure"))?;
        Ok((d, "1 - |<psi_rk4 | psi_reference>|^2 at t_end".into()))
    };
    CheckResult::from_result("reference_agreement", 1e-6, run())
}

pub fn check_unitary_conservation() -> CheckResult {
    let run = || -> Result<(f64, String)> {
        let traj = simulate(&SimulationParams::default(), OutputStride::default())?;
        let series = ObservableSeries::from_trajectory(&traj)?;
        let out_of_range = series
            .populations
            .iter()
            .flatten()
            .chain(&series.fidelity)
            .any(|&v| !(0.0..=1.0 + 1e-9).contains(&v));
        let drift = traj.diagnostics.max_drift;
        Ok((
            if out_of_range { f64::INFINITY } else { drift },
            format!("norm drift {drift:.2e}, populations in range = {}", !out_of_range),
        ))
    };
    CheckResult::from_result("unitary_conservation", 1e-6, run())
}

/// Sign-flipped ⟨1|H'|9⟩, used to show the restriction check has teeth.
pub fn flipped_logic_hamiltonian(params: &SimulationParams, t: f64) -> Operator {
    let mut m = build_logic_hamiltonian(params, t).into_entries();
    m[(0, 8)] = -m[(0, 8)];
    m[(8, 0)] = -m[(8, 0)];
    Operator::new(Basis::Logic9, m).expect("9x9")
}

/// Every check with production builders.
pub fn validate_suite() -> ValidationReport {
    let checks: Vec<Box<dyn Fn() -> CheckResult + Send + Sync>> = vec![
        Box::new(check_hermiticity),
        Box::new(|| check_sector_restriction(&build_logic_hamiltonian)),
        Box::new(check_exchange_symmetry),
        Box::new(check_dark_state),
        Box::new(check_rabi),
        Box::new(check_decay),
        Box::new(check_boundary_limits),
        Box::new(check_singlet_embedding),
        Box::new(|| check_lindblad_conservation(DissipatorForm::Standard)),
        Box::new(check_sector_equivalence),
        Box::new(check_reference_agreement),
        Box::new(check_unitary_conservation),
    ];
    use rayon::prelude::*;
    ValidationReport::new(checks.par_iter().map(|c| c()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebraic_checks_pass() {
        for c in [
            check_hermiticity(),
            check_sector_restriction(&build_logic_hamiltonian),
            check_exchange_symmetry(),
            check_dark_state(),
            check_singlet_embedding(),
            check_boundary_limits(),
            check_rabi(),
        ] {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn flipped_coupling_is_caught() {
        let c = check_sector_restriction(&flipped_logic_hamiltonian);
        assert!(!c.passed);
        assert!(c.value > 1.0);
    }

    #[test]
    fn report_serializes() {
        let r = ValidationReport::new(vec![check_singlet_embedding()]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["checks"][0]["name"], "singlet_embedding");
    }
}
