// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use crate::dynamics::schrodinger::check_inputs;
use crate::dynamics::{Diagnostics, OutputStride, QuantumState, Trajectory, ABORT_DRIFT};
use crate::model::{CollapseOperator, SimulationParams, TimeDependentHamiltonian};
use crate::numerics::{CMatrix, DensityMatrix, I, ZERO};
use crate::{Error, Result};

/// How the anticommutator part of the dissipator is assembled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DissipatorForm {
    /// γ (L ρ L† - ½ L†L ρ - ½ ρ L†L)
    #[default]
    Standard,
    /// γ (L ρ L† - L†L ρ): both halves applied from the left. Keeps the trace
    /// but not Hermiticity; only used to check that validation catches it.
    LeftDuplicated,
}

type Triplets = Vec<(usize, usize, Complex64)>;

fn nonzeros(m: &CMatrix, out: &mut Triplets) {
    out.clear();
    let d = m.nrows();
    for j in 0..m.ncols() {
        for i in 0..d {
            let v = m[(i, j)];
            if v != ZERO {
                out.push((i, j, v));
            }
        }
    }
}

struct Generator {
    d: usize,
    /// ½ Σ γ L†L
    decay: CMatrix,
    jumps: Vec<(f64, Triplets)>,
    left_decay: f64,
    right_decay: f64,
}

struct Scratch {
    left: CMatrix,
    right: CMatrix,
    left_nz: Triplets,
    right_nz: Triplets,
}

impl Generator {
    fn new(d: usize, jumps: &[CollapseOperator], form: DissipatorForm) -> Self {
        let mut decay = CMatrix::zeros(d, d);
        let mut sparse = Vec::new();
        for j in jumps {
            if j.rate == 0.0 {
                continue;
            }
            let l = j.operator.entries();
            decay += (l.adjoint() * l).scale(0.5 * j.rate);
            let mut nz = Vec::new();
            nonzeros(l, &mut nz);
            sparse.push((j.rate, nz));
        }
        let (left_decay, right_decay) = match form {
            DissipatorForm::Standard => (1.0, 1.0),
            DissipatorForm::LeftDuplicated => (2.0, 0.0),
        };
        Self {
            d,
            decay,
            jumps: sparse,
            left_decay,
            right_decay,
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            left: CMatrix::zeros(self.d, self.d),
            right: CMatrix::zeros(self.d, self.d),
            left_nz: Vec::new(),
            right_nz: Vec::new(),
        }
    }

    /// Prepare A, B so that the coherent and anticommutator parts read A ρ + ρ B.
    fn prepare(&self, h: &CMatrix, s: &mut Scratch) {
        for ((l, r), (hv, kv)) in s
            .left
            .iter_mut()
            .zip(s.right.iter_mut())
            .zip(h.iter().zip(self.decay.iter()))
        {
            *l = -I * hv - kv * self.left_decay;
            *r = I * hv - kv * self.right_decay;
        }
        nonzeros(&s.left, &mut s.left_nz);
        nonzeros(&s.right, &mut s.right_nz);
    }

    fn apply(&self, s: &Scratch, rho: &CMatrix, out: &mut CMatrix) {
        let d = self.d;
        let rho = rho.as_slice();
        let out = out.as_mut_slice();
        out.fill(ZERO);
        for &(i, k, v) in &s.left_nz {
            for j in 0..d {
                out[i + j * d] += v * rho[k + j * d];
            }
        }
        for &(k, j, v) in &s.right_nz {
            let (dst, src) = (j * d, k * d);
            for i in 0..d {
                out[dst + i] += rho[src + i] * v;
            }
        }
        for (rate, nz) in &self.jumps {
            for &(a, i, la) in nz {
                for &(b, j, lb) in nz {
                    out[a + b * d] += la * rho[i + j * d] * lb.conj() * rate;
                }
            }
        }
    }
}

/// Integrate the master equation with the standard dissipator.
pub fn integrate_lindblad(
    h: &dyn TimeDependentHamiltonian,
    jumps: &[CollapseOperator],
    rho0: &DensityMatrix,
    params: &SimulationParams,
    stride: OutputStride,
) -> Result<Trajectory> {
    integrate_lindblad_with_form(h, jumps, rho0, params, stride, DissipatorForm::Standard)
}

/// dρ/dt = -i[H, ρ] + Σ γ (L ρ L† - ½{L†L, ρ}) by RK4.
///
/// Trace drift is checked every step and Hermiticity and positivity at every
/// sample; trace drift or negativity beyond 1e-4 aborts the run.
pub fn integrate_lindblad_with_form(
    h: &dyn TimeDependentHamiltonian,
    jumps: &[CollapseOperator],
    rho0: &DensityMatrix,
    params: &SimulationParams,
    stride: OutputStride,
    form: DissipatorForm,
) -> Result<Trajectory> {
    check_inputs(h, rho0.basis(), params)?;
    rho0.validate()?;
    let basis = rho0.basis();
    for j in jumps {
        if j.operator.basis() != basis {
            return Err(Error::BasisMismatch {
                left: j.operator.basis(),
                right: basis,
            });
        }
        if j.rate.is_nan() || j.rate < 0.0 {
            return Err(Error::param("rate", format!("{} has negative rate {}", j.label, j.rate)));
        }
    }

    let d = basis.dim();
    let generator = Generator::new(d, jumps, form);
    let steps = params.step_count();
    let dt = params.effective_step();
    let t0 = params.t_start_over_t;
    let samples = stride.indices(steps);

    let mut h_start = CMatrix::zeros(d, d);
    let mut h_mid = CMatrix::zeros(d, d);
    let mut h_end = CMatrix::zeros(d, d);
    h.write_at(t0, &mut h_start);
    let mut s_start = generator.scratch();
    let mut s_mid = generator.scratch();
    let mut s_end = generator.scratch();
    generator.prepare(&h_start, &mut s_start);

    let mut rho = rho0.entries().clone();
    let mut k1 = CMatrix::zeros(d, d);
    let mut k2 = CMatrix::zeros(d, d);
    let mut k3 = CMatrix::zeros(d, d);
    let mut k4 = CMatrix::zeros(d, d);
    let mut tmp = CMatrix::zeros(d, d);

    let mut diag = Diagnostics {
        steps,
        step: dt,
        min_eigenvalue: Some(f64::INFINITY),
        ..Default::default()
    };
    let mut times = Vec::with_capacity(samples.len());
    let mut states = Vec::with_capacity(samples.len());
    let mut next = 0;

    let mut record = |k: usize, rho: &CMatrix, next: &mut usize, diag: &mut Diagnostics| -> Result<()> {
        if *next < samples.len() && samples[*next] == k {
            let t = t0 + k as f64 * dt;
            let state = DensityMatrix::new(basis, rho.clone())?;
            let min = state.min_eigenvalue();
            diag.max_hermiticity_defect = diag.max_hermiticity_defect.max(state.hermiticity_defect());
            diag.min_eigenvalue = diag.min_eigenvalue.map(|m| m.min(min));
            if min < -ABORT_DRIFT {
                return Err(Error::IntegratorAbort {
                    t,
                    reason: format!("density matrix eigenvalue {min:.3e} below -{ABORT_DRIFT:e}; reduce dt_over_T"),
                });
            }
            times.push(t);
            states.push(QuantumState::Mixed(state));
            *next += 1;
        }
        Ok(())
    };
    record(0, &rho, &mut next, &mut diag)?;

    let axpy = |dst: &mut CMatrix, base: &CMatrix, a: f64, x: &CMatrix| {
        for ((o, b), v) in dst.iter_mut().zip(base.iter()).zip(x.iter()) {
            *o = b + v * a;
        }
    };

    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        h.write_at(t + 0.5 * dt, &mut h_mid);
        h.write_at(t + dt, &mut h_end);
        generator.prepare(&h_mid, &mut s_mid);
        generator.prepare(&h_end, &mut s_end);

        generator.apply(&s_start, &rho, &mut k1);
        axpy(&mut tmp, &rho, 0.5 * dt, &k1);
        generator.apply(&s_mid, &tmp, &mut k2);
        axpy(&mut tmp, &rho, 0.5 * dt, &k2);
        generator.apply(&s_mid, &tmp, &mut k3);
        axpy(&mut tmp, &rho, dt, &k3);
        generator.apply(&s_end, &tmp, &mut k4);

        let w = dt / 6.0;
        for ((((r, a), b), c), e) in rho
            .iter_mut()
            .zip(k1.iter())
            .zip(k2.iter())
            .zip(k3.iter())
            .zip(k4.iter())
        {
            *r += (a + (b + c) * 2.0 + e) * w;
        }

        std::mem::swap(&mut s_start, &mut s_end);

        let drift = (rho.trace() - 1.0).norm();
        diag.max_drift = diag.max_drift.max(drift);
        if drift.is_nan() || drift > ABORT_DRIFT {
            return Err(Error::IntegratorAbort {
                t: t + dt,
                reason: format!(
                    "trace drift {drift:.3e} exceeds {ABORT_DRIFT:e} with step {dt:e} T; reduce dt_over_T"
                ),
            });
        }
        record(k + 1, &rho, &mut next, &mut diag)?;
    }

    Ok(Trajectory {
        times,
        states,
        params: params.clone(),
        diagnostics: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::integrate_schrodinger;
    use crate::model::{collapse_operators, product_index, Level, PulsedHamiltonian, StaticHamiltonian};
    use crate::numerics::{max_abs_diff, Basis, Operator, StateVector};

    fn excited_atom_one() -> DensityMatrix {
        StateVector::basis_state(Basis::Full27, product_index([Level::E, Level::G0, Level::G0])).to_density()
    }

    #[test]
    fn isolated_excited_atom_decays_at_emission_rate() {
        let params = SimulationParams {
            model: crate::model::ModelKind::Full27,
            dissipation: crate::model::Dissipation::Lindblad,
            gamma_e_over_omega0: 0.05,
            t_start_over_t: 0.0,
            t_end_over_t: 3.0,
            ..Default::default()
        };
        let gamma_e = params.emission_rate();
        let h = StaticHamiltonian(Operator::zeros(Basis::Full27));
        let traj = integrate_lindblad(
            &h,
            &collapse_operators(&params),
            &excited_atom_one(),
            &params,
            OutputStride::Samples(31),
        )
        .unwrap();
        let e = product_index([Level::E, Level::G0, Level::G0]);
        for (t, s) in traj.times.iter().zip(&traj.states) {
            let QuantumState::Mixed(rho) = s else { unreachable!() };
            let p_e = rho.entries()[(e, e)].re;
            assert!((p_e - (-gamma_e * t).exp()).abs() < 1e-8, "t = {t}: {p_e}");
            // both ground channels fill equally
            let g0 = rho.entries()[(product_index([Level::G0, Level::G0, Level::G0]), product_index([Level::G0, Level::G0, Level::G0]))].re;
            assert!((g0 - 0.5 * (1.0 - p_e)).abs() < 1e-8);
        }
        assert!(traj.diagnostics.max_drift < 1e-12);
    }

    #[test]
    fn no_decay_reproduces_unitary_run() {
        let params = SimulationParams {
            model: crate::model::ModelKind::Full27,
            t_end_over_t: -1.0,
            ..Default::default()
        };
        let h = PulsedHamiltonian::full27(&params);
        let psi0 = crate::model::logic_embedding().vector(3).clone();
        let pure = integrate_schrodinger(&h, &psi0, &params, OutputStride::Samples(5)).unwrap();
        let mixed = integrate_lindblad(&h, &[], &psi0.to_density(), &params, OutputStride::Samples(5)).unwrap();
        let psi = pure.final_pure().unwrap().to_density();
        let rho = mixed.final_mixed().unwrap();
        assert!(max_abs_diff(psi.entries(), rho.entries()) < 1e-8);
    }

    #[test]
    fn left_duplicated_form_breaks_hermiticity_not_trace() {
        let params = SimulationParams {
            model: crate::model::ModelKind::Full27,
            dissipation: crate::model::Dissipation::Lindblad,
            gamma_e_over_omega0: 0.05,
            t_end_over_t: 0.0,
            ..Default::default()
        };
        let h = PulsedHamiltonian::full27(&params);
        let rho0 = crate::model::logic_embedding().vector(3).to_density();
        let traj = integrate_lindblad_with_form(
            &h,
            &collapse_operators(&params),
            &rho0,
            &params,
            OutputStride::Samples(10),
            DissipatorForm::LeftDuplicated,
        )
        .unwrap();
        assert!(traj.diagnostics.max_drift < 1e-9);
        assert!(traj.diagnostics.max_hermiticity_defect > 1e-3);
    }

    #[test]
    fn rejects_invalid_initial_state() {
        let params = SimulationParams {
            model: crate::model::ModelKind::Full27,
            ..Default::default()
        };
        let h = StaticHamiltonian(Operator::zeros(Basis::Full27));
        let bad = DensityMatrix::new(Basis::Full27, CMatrix::zeros(27, 27)).unwrap();
        assert!(integrate_lindblad(&h, &[], &bad, &params, OutputStride::default()).is_err());
    }
}
