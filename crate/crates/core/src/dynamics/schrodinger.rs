// SPDX-License-Identifier: Apache-2.0

use crate::dynamics::{Diagnostics, OutputStride, QuantumState, Trajectory, ABORT_DRIFT};
use crate::model::{SimulationParams, TimeDependentHamiltonian};
use crate::numerics::{CMatrix, CVector, StateVector, I, INTEGRATED_TOL};
use crate::{Error, Result};

pub(crate) fn check_inputs(
    h: &dyn TimeDependentHamiltonian,
    basis: crate::numerics::Basis,
    params: &SimulationParams,
) -> Result<()> {
    params.validate()?;
    if h.basis() != basis {
        return Err(Error::BasisMismatch {
            left: h.basis(),
            right: basis,
        });
    }
    Ok(())
}

/// Integrate i dpsi/dt = H(t) psi over the parameter window with RK4.
///
/// The state is never renormalized; the worst norm drift is reported in the
/// diagnostics and a drift above 1e-4 aborts the run.
pub fn integrate_schrodinger(
    h: &dyn TimeDependentHamiltonian,
    psi0: &StateVector,
    params: &SimulationParams,
    stride: OutputStride,
) -> Result<Trajectory> {
    check_inputs(h, psi0.basis(), params)?;
    let norm0 = psi0.norm();
    if (norm0 - 1.0).abs() > INTEGRATED_TOL {
        return Err(Error::Precondition(format!("initial state has norm {norm0}")));
    }

    let basis = psi0.basis();
    let d = basis.dim();
    let steps = params.step_count();
    let dt = params.effective_step();
    let t0 = params.t_start_over_t;
    let samples = stride.indices(steps);

    let mut h_start = CMatrix::zeros(d, d);
    let mut h_mid = CMatrix::zeros(d, d);
    let mut h_end = CMatrix::zeros(d, d);
    h.write_at(t0, &mut h_start);

    let minus_i = -I;
    let rhs = |m: &CMatrix, y: &CVector, out: &mut CVector| {
        out.gemv(minus_i, m, y, num_complex::Complex64::new(0.0, 0.0));
    };

    let mut psi = psi0.amplitudes().clone();
    let (mut k1, mut k2, mut k3, mut k4) = (
        CVector::zeros(d),
        CVector::zeros(d),
        CVector::zeros(d),
        CVector::zeros(d),
    );
    let mut tmp = CVector::zeros(d);

    let mut times = Vec::with_capacity(samples.len());
    let mut states = Vec::with_capacity(samples.len());
    let mut next_sample = 0;
    let mut diag = Diagnostics {
        steps,
        step: dt,
        ..Default::default()
    };

    let mut record = |k: usize, psi: &CVector, next: &mut usize| {
        if *next < samples.len() && samples[*next] == k {
            times.push(t0 + k as f64 * dt);
            states.push(QuantumState::Pure(
                StateVector::new(basis, psi.clone()).expect("dimension preserved"),
            ));
            *next += 1;
        }
    };
    record(0, &psi, &mut next_sample);

    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        h.write_at(t + 0.5 * dt, &mut h_mid);
        h.write_at(t + dt, &mut h_end);

        rhs(&h_start, &psi, &mut k1);
        tmp.copy_from(&psi);
        tmp.axpy((0.5 * dt).into(), &k1, 1.0.into());
        rhs(&h_mid, &tmp, &mut k2);
        tmp.copy_from(&psi);
        tmp.axpy((0.5 * dt).into(), &k2, 1.0.into());
        rhs(&h_mid, &tmp, &mut k3);
        tmp.copy_from(&psi);
        tmp.axpy(dt.into(), &k3, 1.0.into());
        rhs(&h_end, &tmp, &mut k4);

        let w = dt / 6.0;
        psi.axpy(w.into(), &k1, 1.0.into());
        psi.axpy((2.0 * w).into(), &k2, 1.0.into());
        psi.axpy((2.0 * w).into(), &k3, 1.0.into());
        psi.axpy(w.into(), &k4, 1.0.into());

        std::mem::swap(&mut h_start, &mut h_end);

        let drift = (psi.norm() - 1.0).abs();
        diag.max_drift = diag.max_drift.max(drift);
        if drift.is_nan() || drift > ABORT_DRIFT {
            return Err(Error::IntegratorAbort {
                t: t + dt,
                reason: format!(
                    "norm drift {drift:.3e} exceeds {ABORT_DRIFT:e} with step {dt:e} T; reduce dt_over_T"
                ),
            });
        }
        record(k + 1, &psi, &mut next_sample);
    }

    Ok(Trajectory {
        times,
        states,
        params: params.clone(),
        diagnostics: diag,
    })
}
