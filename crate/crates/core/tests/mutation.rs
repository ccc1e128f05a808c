// SPDX-License-Identifier: Apache-2.0

//! The validation checks must notice deliberately broken physics.

use rydberg_singlet::dynamics::DissipatorForm;
use rydberg_singlet::model::build_logic_hamiltonian;
use rydberg_singlet::validate::{
    check_lindblad_conservation, check_sector_restriction, flipped_logic_hamiltonian, validate_suite,
};

#[test]
fn suite_passes() {
    let report = validate_suite();
    assert!(report.passed, "{}", report.to_json());
}

#[test]
fn flipped_coupling_fails_sector_restriction() {
    assert!(check_sector_restriction(&build_logic_hamiltonian).passed);
    let mutated = check_sector_restriction(&flipped_logic_hamiltonian);
    assert!(!mutated.passed);
    // 2 Ω₀₁ at the sampled times
    assert!(mutated.value > 1e-3);
}

#[test]
fn duplicated_dissipator_fails_conservation() {
    assert!(check_lindblad_conservation(DissipatorForm::Standard).passed);
    let mutated = check_lindblad_conservation(DissipatorForm::LeftDuplicated);
    assert!(!mutated.passed, "{mutated:?}");
    // the trace survives, Hermiticity does not
    assert!(mutated.detail.contains("trace drift"), "{}", mutated.detail);
}
