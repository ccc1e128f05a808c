// SPDX-License-Identifier: Apache-2.0

//! Independent check on the RK4 path: piecewise-constant midpoint Hamiltonian
//! with an exact exponential per step, at half the main step.

use crate::dynamics::schrodinger::check_inputs;
use crate::dynamics::{Diagnostics, OutputStride, QuantumState, Trajectory};
use crate::model::{SimulationParams, TimeDependentHamiltonian};
use crate::numerics::{expm, CMatrix, StateVector, I};
use crate::Result;

/// Samples land on the same times as [`integrate_schrodinger`] would use.
///
/// [`integrate_schrodinger`]: crate::dynamics::integrate_schrodinger
pub fn reference_integrate(
    h: &dyn TimeDependentHamiltonian,
    psi0: &StateVector,
    params: &SimulationParams,
    stride: OutputStride,
) -> Result<Trajectory> {
    check_inputs(h, psi0.basis(), params)?;
    let basis = psi0.basis();
    let d = basis.dim();
    let main_steps = params.step_count();
    let steps = 2 * main_steps;
    let dt = params.effective_step() / 2.0;
    let t0 = params.t_start_over_t;
    let samples: Vec<usize> = stride.indices(main_steps).into_iter().map(|k| 2 * k).collect();

    let mut hm = CMatrix::zeros(d, d);
    let mut psi = psi0.amplitudes().clone();
    let mut times = Vec::with_capacity(samples.len());
    let mut states = Vec::with_capacity(samples.len());
    let mut next = 0;
    let mut max_drift: f64 = 0.0;

    for k in 0..=steps {
        if next < samples.len() && samples[next] == k {
            times.push(t0 + k as f64 * dt);
            states.push(QuantumState::Pure(StateVector::new(basis, psi.clone())?));
            next += 1;
        }
        if k == steps {
            break;
        }
        h.write_at(t0 + (k as f64 + 0.5) * dt, &mut hm);
        let propagator = expm(&(&hm * (-I * dt)));
        psi = propagator * psi;
        max_drift = max_drift.max((psi.norm() - 1.0).abs());
    }

    Ok(Trajectory {
        times,
        states,
        params: params.clone(),
        diagnostics: Diagnostics {
            steps,
            step: dt,
            max_drift,
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::integrate_schrodinger;
    use crate::model::{FnHamiltonian, StaticHamiltonian};
    use crate::numerics::{real, Basis, Operator};
    use rand::{Rng, SeedableRng};

    fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
        let mut m = CMatrix::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = real(rng.gen_range(-2.0..2.0));
            for j in i + 1..d {
                let z = num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn exact_for_constant_hamiltonian() {
        // closed form through the spectral decomposition, independent of the Padé route
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let hm = random_hermitian(&mut rng, 3);
            let psi0 = StateVector::from_slice(
                Basis::Generic(3),
                &[real(0.6), num_complex::Complex64::new(0.0, 0.48), real(0.64)],
            )
            .unwrap();
            let t_end = 1.7;
            let params = SimulationParams {
                t_start_over_t: 0.0,
                t_end_over_t: t_end,
                dt_over_t: 0.01,
                ..Default::default()
            };
            let eig = hm.clone().symmetric_eigen();
            let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|e| (-I * e * t_end).exp()));
            let v = eig.eigenvectors.clone();
            let exact = &v * phases * v.adjoint() * psi0.amplitudes();

            let h = StaticHamiltonian(Operator::new(Basis::Generic(3), hm).unwrap());
            let traj = reference_integrate(&h, &psi0, &params, OutputStride::Samples(2)).unwrap();
            let got = traj.final_pure().unwrap().amplitudes();
            assert!((got - exact).norm() < 1e-10);
        }
    }

    fn chirped_two_level() -> impl TimeDependentHamiltonian {
        FnHamiltonian::new(Basis::Generic(2), |t: f64| {
            let mut m = CMatrix::zeros(2, 2);
            let drive = 4.0 * (-(t * t)).exp();
            m[(0, 1)] = real(drive);
            m[(1, 0)] = real(drive);
            m[(0, 0)] = real(1.5 * t);
            m[(1, 1)] = real(-1.5 * t);
            m
        })
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        let h = chirped_two_level();
        let psi0 = StateVector::basis_state(Basis::Generic(2), 0);
        let run = |dt: f64| {
            let params = SimulationParams {
                t_start_over_t: -3.0,
                t_end_over_t: 3.0,
                dt_over_t: dt,
                ..Default::default()
            };
            integrate_schrodinger(&h, &psi0, &params, OutputStride::Samples(2))
                .unwrap()
                .final_pure()
                .unwrap()
                .amplitudes()
                .clone()
        };
        let exact = run(1e-4);
        let coarse = (run(0.04) - &exact).norm();
        let fine = (run(0.02) - &exact).norm();
        let ratio = coarse / fine;
        assert!((12.0..20.0).contains(&ratio), "error ratio {ratio}");
    }

    #[test]
    fn reference_agrees_with_rk4_on_smooth_problem() {
        let h = chirped_two_level();
        let psi0 = StateVector::basis_state(Basis::Generic(2), 0);
        let params = SimulationParams {
            t_start_over_t: -3.0,
            t_end_over_t: 3.0,
            dt_over_t: 1e-3,
            ..Default::default()
        };
        let a = integrate_schrodinger(&h, &psi0, &params, OutputStride::Samples(7)).unwrap();
        let b = reference_integrate(&h, &psi0, &params, OutputStride::Samples(7)).unwrap();
        assert_eq!(a.times, b.times);
        let overlap = crate::numerics::inner_product(a.final_pure().unwrap(), b.final_pure().unwrap())
            .unwrap()
            .norm_sqr();
        assert!(overlap > 1.0 - 1e-8);
    }
}
