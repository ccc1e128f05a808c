// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rydberg_singlet::model::{
    build_full_hamiltonian, build_logic_hamiltonian, dark_state, effective_hamiltonian, logic_embedding,
    RabiFrequencies, SimulationParams,
};
use rydberg_singlet::numerics::{
    dagger, inner_product, tensor_product, Basis, CMatrix, Operator, StateVector, ALGEBRAIC_TOL,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn operator(d: usize) -> impl Strategy<Value = Operator> {
    proptest::collection::vec(complex(), d * d).prop_map(move |v| {
        Operator::new(Basis::Generic(d), DMatrix::from_vec(d, d, v)).unwrap()
    })
}

fn state(d: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec(complex(), d).prop_map(move |v| StateVector::from_slice(Basis::Generic(d), &v).unwrap())
}

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    (a - b).iter().all(|z| z.norm() <= tol)
}

proptest! {
    #[test]
    fn kronecker_is_associative(a in operator(2), b in operator(3), c in operator(2)) {
        let left = tensor_product(&tensor_product(&a, &b).unwrap(), &c).unwrap();
        let right = tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left.basis(), Basis::Generic(12));
        prop_assert!(close(left.entries(), right.entries(), 1e-12));
    }

    #[test]
    fn kronecker_mixed_product(a in operator(3), b in operator(2), x in state(3), y in state(2)) {
        let lhs = tensor_product(&a, &b).unwrap().apply(&tensor_product(&x, &y).unwrap()).unwrap();
        let rhs = tensor_product(&a.apply(&x).unwrap(), &b.apply(&y).unwrap()).unwrap();
        prop_assert!((lhs.amplitudes() - rhs.amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn dagger_is_an_involution(a in operator(4)) {
        prop_assert_eq!(dagger(&dagger(&a)), a);
    }

    #[test]
    fn inner_product_is_conjugate_symmetric(x in state(5), y in state(5)) {
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-14);
    }

    #[test]
    fn hamiltonians_are_hermitian(t in -4.0..4.0f64, u in 0.0..20.0f64, delta in -2.0..2.0f64) {
        let params = SimulationParams { u_over_omega0: u, delta_over_omega0: delta, ..Default::default() };
        prop_assert!(build_full_hamiltonian(&params, t).hermiticity_defect() <= ALGEBRAIC_TOL);
        prop_assert!(build_logic_hamiltonian(&params, t).hermiticity_defect() <= ALGEBRAIC_TOL);
    }

    #[test]
    fn full_space_restricts_to_logic_sector(
        t in -4.0..4.0f64,
        tau in 0.0..1.5f64,
        u in 0.0..20.0f64,
        delta in -2.0..2.0f64,
    ) {
        let params = SimulationParams {
            tau_over_t: tau,
            u_over_omega0: u,
            delta_over_omega0: delta,
            ..Default::default()
        };
        let restricted = logic_embedding().restrict(&build_full_hamiltonian(&params, t)).unwrap();
        let diff = restricted.max_abs_diff(&build_logic_hamiltonian(&params, t)).unwrap();
        prop_assert!(diff <= ALGEBRAIC_TOL, "diff {diff}");
    }

    #[test]
    fn dark_state_is_annihilated(a in 0.0..5.0f64, b in 1e-3..5.0f64, delta in -3.0..3.0f64) {
        let r = RabiFrequencies { omega01: a, omega11: a, omega02: b, omega12: b };
        let h = effective_hamiltonian(&r, delta).unwrap();
        prop_assert!(h.apply(&dark_state(a, b).unwrap()).unwrap().norm() <= ALGEBRAIC_TOL);
    }
}
