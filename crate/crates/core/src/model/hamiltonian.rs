// SPDX-License-Identifier: Apache-2.0

//! Hamiltonians at three levels of reduction.
//!
//! * full27: three Λ atoms with pairwise blockade shift U, ground-level
//!   detunings ±δ and the two drives per atom, in the rotating frame.
//! * logic9: the restriction of full27 to the exchange-antisymmetric sector
//!   spanned by |1>..|9>, written out entry by entry.
//! * eff4: the reduced model on {|1>, |3>, |7>, |eta+>}.
//!
//! All frequencies are in units of 1/T (see [`SimulationParams`]).

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::model::params::{ModelKind, SimulationParams};
use crate::model::pulses::{PulseSchedule, RabiFrequencies};
use crate::model::states::Level;
use crate::numerics::{real, Basis, CMatrix, Operator};
use crate::{Error, Result};

/// Per-atom Rabi frequencies on the g0 <-> e and g1 <-> e transitions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomDrives {
    pub g0: [f64; 3],
    pub g1: [f64; 3],
}

impl AtomDrives {
    pub const NONE: AtomDrives = AtomDrives {
        g0: [0.0; 3],
        g1: [0.0; 3],
    };

    /// Atom 3 driven identically to atom 2.
    pub fn symmetric(r: &RabiFrequencies) -> Self {
        Self {
            g0: [r.omega01, r.omega02, r.omega02],
            g1: [r.omega11, r.omega12, r.omega12],
        }
    }
}

fn single_atom(row: Level, col: Level) -> CMatrix {
    let mut m = CMatrix::zeros(3, 3);
    m[(row.index(), col.index())] = real(1.0);
    m
}

/// Lift a single-atom operator onto `atom` (0-based) of the three-atom space.
fn on_atom(op: &CMatrix, atom: usize) -> CMatrix {
    let id = CMatrix::identity(3, 3);
    let factors: [&CMatrix; 3] = match atom {
        0 => [op, &id, &id],
        1 => [&id, op, &id],
        2 => [&id, &id, op],
        _ => unreachable!("three atoms"),
    };
    factors[0].kronecker(factors[1]).kronecker(factors[2])
}

/// H = Σ_{j<k} U |ee><ee|_{jk} + δ Σ_k (|g0><g0| - |g1><g1|)_k
///     + Σ_k (Ω0k |g0><e| + Ω1k |g1><e| + h.c.)_k
///
/// The blockade shift is counted once per unordered pair of excited atoms.
pub fn full_hamiltonian(drives: &AtomDrives, blockade: f64, detuning: f64) -> Operator {
    let p_e = single_atom(Level::E, Level::E);
    let p_g0 = single_atom(Level::G0, Level::G0);
    let p_g1 = single_atom(Level::G1, Level::G1);
    let g0_e = single_atom(Level::G0, Level::E);
    let g1_e = single_atom(Level::G1, Level::E);

    let mut h = CMatrix::zeros(27, 27);
    if blockade != 0.0 {
        for (j, k) in [(0, 1), (0, 2), (1, 2)] {
            h += (on_atom(&p_e, j) * on_atom(&p_e, k)).scale(blockade);
        }
    }
    for atom in 0..3 {
        if detuning != 0.0 {
            h += on_atom(&(&p_g0 - &p_g1), atom).scale(detuning);
        }
        let drive = g0_e.scale(drives.g0[atom]) + g1_e.scale(drives.g1[atom]);
        let lifted = on_atom(&drive, atom);
        h += &lifted + lifted.adjoint();
    }
    Operator::new(Basis::Full27, h).expect("27x27")
}

/// The full27 Hamiltonian at time `t` under the protocol's pulse schedule.
pub fn build_full_hamiltonian(params: &SimulationParams, t: f64) -> Operator {
    let rabi = params.schedule().rabi(t, params.rabi_scale());
    full_hamiltonian(
        &AtomDrives::symmetric(&rabi),
        params.blockade_shift(),
        params.detuning(),
    )
}

/// The antisymmetric-sector Hamiltonian with the two doubly excited states.
///
/// Diagonal (0, δ, 0, 2δ, -δ, -2δ, 0, U+δ, U-δ). The couplings into |8>, |9>
/// use the drive that actually connects the two states; with Ω₁ₖ = Ω₀ₖ they
/// reduce to the familiar symmetric-pulse table.
pub fn logic_hamiltonian(r: &RabiFrequencies, blockade: f64, detuning: f64) -> Operator {
    let d = detuning;
    let u = blockade;
    let diag = [0.0, d, 0.0, 2.0 * d, -d, -2.0 * d, 0.0, u + d, u - d];
    // (k, l, <k|H|l>) with 1-based labels
    let couplings = [
        (1, 2, r.omega02),
        (2, 3, r.omega01),
        (2, 4, r.omega12),
        (3, 5, r.omega11),
        (5, 6, r.omega02),
        (5, 7, r.omega12),
        (1, 9, -r.omega01),
        (3, 8, r.omega12),
        (3, 9, -r.omega02),
        (4, 8, r.omega01),
        (6, 9, -r.omega11),
        (7, 8, r.omega11),
    ];
    let mut h = CMatrix::zeros(9, 9);
    for (k, &v) in diag.iter().enumerate() {
        h[(k, k)] = real(v);
    }
    for (k, l, v) in couplings {
        h[(k - 1, l - 1)] += real(v);
        h[(l - 1, k - 1)] += real(v);
    }
    Operator::new(Basis::Logic9, h).expect("9x9")
}

pub fn build_logic_hamiltonian(params: &SimulationParams, t: f64) -> Operator {
    let rabi = params.schedule().rabi(t, params.rabi_scale());
    logic_hamiltonian(&rabi, params.blockade_shift(), params.detuning())
}

/// The four-state model on (|1>, |3>, |7>, |eta+>).
///
/// Requires Ω₁₁ = Ω₀₁ and Ω₁₂ = Ω₀₂. At Ω₀₁ = 0 the couplings take their
/// continuous limit (Ω₀₁/N -> 1/sqrt(2)).
pub fn effective_hamiltonian(r: &RabiFrequencies, detuning: f64) -> Result<Operator> {
    let scale = r.max().max(1.0);
    if (r.omega11 - r.omega01).abs() > 1e-12 * scale || (r.omega12 - r.omega02).abs() > 1e-12 * scale {
        return Err(Error::Precondition(format!(
            "effective model needs Ω₁₁ = Ω₀₁ and Ω₁₂ = Ω₀₂, got {r:?}"
        )));
    }
    let n = r.omega01.hypot(r.omega11);
    let (c01, c11) = if n > 0.0 {
        (r.omega01 / n, r.omega11 / n)
    } else {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    };
    let eta_energy = if n > 0.0 {
        detuning * (r.omega01 * r.omega01 - r.omega11 * r.omega11) / (n * n)
    } else {
        0.0
    };

    let (one, three, seven, eta) = (0, 1, 2, 3);
    let mut h = CMatrix::zeros(4, 4);
    h[(eta, eta)] = real(eta_energy);
    let mut couple = |a: usize, b: usize, v: f64| {
        h[(a, b)] += real(v);
        h[(b, a)] += real(v);
    };
    couple(one, eta, r.omega02 * c01);
    couple(eta, three, n);
    couple(eta, seven, r.omega12 * c11);
    Operator::new(Basis::Eff4, h)
}

pub fn build_effective_hamiltonian(params: &SimulationParams, t: f64) -> Result<Operator> {
    let rabi = params.schedule().rabi(t, params.rabi_scale());
    effective_hamiltonian(&rabi, params.detuning())
}

/// A Hamiltonian that can be evaluated at any time.
pub trait TimeDependentHamiltonian: Sync {
    fn basis(&self) -> Basis;

    /// Overwrite `out` with H(t).
    fn write_at(&self, t: f64, out: &mut CMatrix);

    fn at(&self, t: f64) -> Operator {
        let d = self.basis().dim();
        let mut m = CMatrix::zeros(d, d);
        self.write_at(t, &mut m);
        Operator::new(self.basis(), m).expect("builder returns its own dimension")
    }
}

/// H(t) = H_static + Ω₀₁(t) H_pump + Ω₀₂(t) H_stokes.
///
/// All three models are linear in the two envelopes once Ω₁ₖ = Ω₀ₖ, so the
/// pieces are assembled once and the integrator only forms a weighted sum.
#[derive(Clone, Debug)]
pub struct PulsedHamiltonian {
    basis: Basis,
    static_part: CMatrix,
    pump_part: CMatrix,
    stokes_part: CMatrix,
    schedule: PulseSchedule,
    rabi_scale: f64,
}

impl PulsedHamiltonian {
    pub fn for_model(params: &SimulationParams) -> Self {
        match params.model {
            ModelKind::Full27 => Self::full27(params),
            ModelKind::Logic9 => Self::logic9(params),
            ModelKind::Eff4 => Self::eff4(params),
        }
    }

    pub fn full27(params: &SimulationParams) -> Self {
        let pump = AtomDrives {
            g0: [1.0, 0.0, 0.0],
            g1: [1.0, 0.0, 0.0],
        };
        let stokes = AtomDrives {
            g0: [0.0, 1.0, 1.0],
            g1: [0.0, 1.0, 1.0],
        };
        Self {
            basis: Basis::Full27,
            static_part: full_hamiltonian(&AtomDrives::NONE, params.blockade_shift(), params.detuning())
                .into_entries(),
            pump_part: full_hamiltonian(&pump, 0.0, 0.0).into_entries(),
            stokes_part: full_hamiltonian(&stokes, 0.0, 0.0).into_entries(),
            schedule: params.schedule(),
            rabi_scale: params.rabi_scale(),
        }
    }

    pub fn logic9(params: &SimulationParams) -> Self {
        let zero = RabiFrequencies {
            omega01: 0.0,
            omega11: 0.0,
            omega02: 0.0,
            omega12: 0.0,
        };
        let pump = RabiFrequencies {
            omega01: 1.0,
            omega11: 1.0,
            ..zero
        };
        let stokes = RabiFrequencies {
            omega02: 1.0,
            omega12: 1.0,
            ..zero
        };
        Self {
            basis: Basis::Logic9,
            static_part: logic_hamiltonian(&zero, params.blockade_shift(), params.detuning()).into_entries(),
            pump_part: logic_hamiltonian(&pump, 0.0, 0.0).into_entries(),
            stokes_part: logic_hamiltonian(&stokes, 0.0, 0.0).into_entries(),
            schedule: params.schedule(),
            rabi_scale: params.rabi_scale(),
        }
    }

    pub fn eff4(params: &SimulationParams) -> Self {
        // with Ω₁ₖ = Ω₀ₖ: N = sqrt(2) Ω₀₁, no eta+ shift,
        // <1|H|eta+> = <7|H|eta+> = Ω₀₂/sqrt(2), <eta+|H|3> = sqrt(2) Ω₀₁
        let mut pump = CMatrix::zeros(4, 4);
        pump[(3, 1)] = real(SQRT_2);
        pump[(1, 3)] = real(SQRT_2);
        let mut stokes = CMatrix::zeros(4, 4);
        for k in [0, 2] {
            stokes[(k, 3)] = real(FRAC_1_SQRT_2);
            stokes[(3, k)] = real(FRAC_1_SQRT_2);
        }
        Self {
            basis: Basis::Eff4,
            static_part: CMatrix::zeros(4, 4),
            pump_part: pump,
            stokes_part: stokes,
            schedule: params.schedule(),
            rabi_scale: params.rabi_scale(),
        }
    }
}

impl TimeDependentHamiltonian for PulsedHamiltonian {
    fn basis(&self) -> Basis {
        self.basis
    }

    fn write_at(&self, t: f64, out: &mut CMatrix) {
        let a = self.rabi_scale * self.schedule.pump(t);
        let b = self.rabi_scale * self.schedule.stokes(t);
        for (((o, s), p), q) in out
            .iter_mut()
            .zip(self.static_part.iter())
            .zip(self.pump_part.iter())
            .zip(self.stokes_part.iter())
        {
            *o = s + p * a + q * b;
        }
    }
}

/// Adapter for an arbitrary closure `t -> H(t)`.
pub struct FnHamiltonian<F> {
    basis: Basis,
    f: F,
}

impl<F> FnHamiltonian<F>
where
    F: Fn(f64) -> CMatrix + Sync,
{
    pub fn new(basis: Basis, f: F) -> Self {
        Self { basis, f }
    }
}

impl<F> TimeDependentHamiltonian for FnHamiltonian<F>
where
    F: Fn(f64) -> CMatrix + Sync,
{
    fn basis(&self) -> Basis {
        self.basis
    }

    fn write_at(&self, t: f64, out: &mut CMatrix) {
        out.copy_from(&(self.f)(t));
    }
}

/// A constant Hamiltonian.
#[derive(Clone, Debug)]
pub struct StaticHamiltonian(pub Operator);

impl TimeDependentHamiltonian for StaticHamiltonian {
    fn basis(&self) -> Basis {
        self.0.basis()
    }

    fn write_at(&self, _t: f64, out: &mut CMatrix) {
        out.copy_from(self.0.entries());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::states::{dark_state, eta_basis_change, logic_embedding, product_index, swap_atoms};
    use crate::numerics::{max_abs_diff, ALGEBRAIC_TOL};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    fn elem(h: &Operator, row: [Level; 3], col: [Level; 3]) -> Complex64 {
        h.get(product_index(row), product_index(col))
    }

    #[test]
    fn full_diagonal_and_drive_entries() {
        use Level::*;
        let p = SimulationParams::default();
        let t = 0.37;
        let h = build_full_hamiltonian(&p, t);
        let delta = p.detuning();
        let u = p.blockade_shift();
        let omega01 = p.rabi_scale() * p.schedule().pump(t);

        assert!((elem(&h, [G0, G0, G0], [G0, G0, G0]) - real(3.0 * delta)).norm() < 1e-12);
        assert!((elem(&h, [E, G1, G0], [G0, G1, G0]) - real(omega01)).norm() < 1e-12);
        assert!((elem(&h, [E, E, G1], [E, E, G1]) - real(u - delta)).norm() < 1e-12);
        assert!((elem(&h, [E, E, E], [E, E, E]) - real(3.0 * u)).norm() < 1e-12);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        let mut rng = rng();
        let p = SimulationParams::default();
        for _ in 0..20 {
            let t = rng.gen_range(-4.0..4.0);
            assert!(build_full_hamiltonian(&p, t).is_hermitian(ALGEBRAIC_TOL));
            assert!(build_logic_hamiltonian(&p, t).is_hermitian(ALGEBRAIC_TOL));
            assert!(build_effective_hamiltonian(&p, t).unwrap().is_hermitian(ALGEBRAIC_TOL));
        }
    }

    #[test]
    fn printed_logic_entries() {
        let p = SimulationParams::default();
        let h = build_logic_hamiltonian(&p, 0.1);
        assert_eq!(h.get(1, 1), real(p.detuning()));
        assert_eq!(h.get(7, 7), real(p.blockade_shift() + p.detuning()));
        assert_eq!(h.get(8, 8), real(p.blockade_shift() - p.detuning()));
        let omega01 = p.rabi_scale() * p.schedule().pump(0.1);
        assert_eq!(h.get(0, 8), real(-omega01));
    }

    #[test]
    fn sector_restriction_matches_logic_hamiltonian() {
        let basis = logic_embedding();
        let mut rng = rng();
        for _ in 0..10 {
            let p = SimulationParams {
                u_over_omega0: rng.gen_range(0.0..20.0),
                delta_over_omega0: rng.gen_range(-2.0..2.0),
                tau_over_t: rng.gen_range(0.1..1.5),
                ..Default::default()
            };
            let t = rng.gen_range(-4.0..4.0);
            let restricted = basis.restrict(&build_full_hamiltonian(&p, t)).unwrap();
            let direct = build_logic_hamiltonian(&p, t);
            assert!(restricted.max_abs_diff(&direct).unwrap() < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn restriction_with_independent_drives() {
        // holds for arbitrary Ω₀ₖ, Ω₁ₖ as long as atom 3 mirrors atom 2
        let basis = logic_embedding();
        let mut rng = rng();
        for _ in 0..10 {
            let r = RabiFrequencies {
                omega01: rng.gen_range(0.0..3.0),
                omega11: rng.gen_range(0.0..3.0),
                omega02: rng.gen_range(0.0..3.0),
                omega12: rng.gen_range(0.0..3.0),
            };
            let (u, d) = (rng.gen_range(0.0..20.0), rng.gen_range(-2.0..2.0));
            let restricted = basis
                .restrict(&full_hamiltonian(&AtomDrives::symmetric(&r), u, d))
                .unwrap();
            let direct = logic_hamiltonian(&r, u, d);
            assert!(restricted.max_abs_diff(&direct).unwrap() < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn exchange_symmetry_commutator() {
        let swap = swap_atoms(1, 2);
        let p = SimulationParams::default();
        for t in [-2.0, -0.3, 0.0, 0.9, 2.5] {
            let h = build_full_hamiltonian(&p, t);
            let comm = h.compose(&swap).unwrap().entries() - swap.compose(&h).unwrap().entries();
            assert!(comm.norm() < ALGEBRAIC_TOL);
        }
        let asym = AtomDrives {
            g0: [1.0, 1.0, 0.5],
            g1: [1.0, 1.0, 1.0],
        };
        let h = full_hamiltonian(&asym, 5.0, 1.0);
        let comm = h.compose(&swap).unwrap().entries() - swap.compose(&h).unwrap().entries();
        assert!(comm.norm() > 0.1);
    }

    #[test]
    fn pulsed_builders_match_direct_construction() {
        let mut rng = rng();
        let p = SimulationParams {
            u_over_omega0: 7.0,
            delta_over_omega0: 0.6,
            ..Default::default()
        };
        let full = PulsedHamiltonian::full27(&p);
        let logic = PulsedHamiltonian::logic9(&p);
        let eff = PulsedHamiltonian::eff4(&p);
        for _ in 0..10 {
            let t = rng.gen_range(-4.0..4.0);
            assert!(full.at(t).max_abs_diff(&build_full_hamiltonian(&p, t)).unwrap() < ALGEBRAIC_TOL);
            assert!(logic.at(t).max_abs_diff(&build_logic_hamiltonian(&p, t)).unwrap() < ALGEBRAIC_TOL);
            let direct = build_effective_hamiltonian(&p, t).unwrap();
            assert!(eff.at(t).max_abs_diff(&direct).unwrap() < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn effective_coupling_to_three() {
        let r = RabiFrequencies {
            omega01: 0.8,
            omega11: 0.8,
            omega02: 1.9,
            omega12: 1.9,
        };
        let h = effective_hamiltonian(&r, 1.0).unwrap();
        assert!((h.get(3, 1) - real(SQRT_2 * 0.8)).norm() < 1e-15);
        assert_eq!(h.get(3, 3), real(0.0));
    }

    #[test]
    fn effective_rejects_unequal_drives() {
        let r = RabiFrequencies {
            omega01: 0.8,
            omega11: 0.5,
            omega02: 1.9,
            omega12: 1.9,
        };
        assert!(matches!(effective_hamiltonian(&r, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn effective_without_pump_keeps_only_stokes_couplings() {
        let r = RabiFrequencies {
            omega01: 0.0,
            omega11: 0.0,
            omega02: 1.5,
            omega12: 1.5,
        };
        let h = effective_hamiltonian(&r, 1.0).unwrap();
        assert_eq!(h.get(3, 1), real(0.0));
        assert!((h.get(0, 3) - real(1.5 * FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((h.get(2, 3) - real(1.5 * FRAC_1_SQRT_2)).norm() < 1e-15);
        // |3> stays dark
        let three = crate::numerics::StateVector::basis_state(Basis::Eff4, 1);
        assert!(h.apply(&three).unwrap().norm() < 1e-15);
    }

    #[test]
    fn dark_state_is_annihilated() {
        let mut rng = rng();
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
            let r = RabiFrequencies {
                omega01: a,
                omega11: a,
                omega02: b,
                omega12: b,
            };
            let h = effective_hamiltonian(&r, rng.gen_range(-2.0..2.0)).unwrap();
            let d = dark_state(a, b).unwrap();
            assert!(h.apply(&d).unwrap().norm() < ALGEBRAIC_TOL);
        }
    }

    #[test]
    fn eta_rotation_reproduces_reduced_couplings() {
        let mut rng = rng();
        for _ in 0..10 {
            let r = RabiFrequencies {
                omega01: rng.gen_range(0.1..3.0),
                omega11: rng.gen_range(0.1..3.0),
                omega02: rng.gen_range(0.1..3.0),
                omega12: rng.gen_range(0.1..3.0),
            };
            let delta = rng.gen_range(-2.0..2.0);
            let n = r.omega01.hypot(r.omega11);
            let h = logic_hamiltonian(&r, 0.0, delta);
            let u = eta_basis_change(r.omega01, r.omega11).unwrap();
            let rotated = u.dagger().compose(&h).unwrap().compose(&u).unwrap();
            let (one, eta_p, three, four, eta_m, six, seven) = (0, 1, 2, 3, 4, 5, 6);
            let expect = |a: usize, b: usize, v: f64| {
                assert!(
                    (rotated.get(a, b) - real(v)).norm() < ALGEBRAIC_TOL,
                    "<{a}|H|{b}> = {} expected {v}",
                    rotated.get(a, b)
                );
            };
            let shift = delta * (r.omega01.powi(2) - r.omega11.powi(2)) / (n * n);
            expect(eta_p, eta_p, shift);
            expect(eta_m, eta_m, -shift);
            expect(eta_p, eta_m, 2.0 * delta * r.omega01 * r.omega11 / (n * n));
            expect(one, eta_p, r.omega02 * r.omega01 / n);
            expect(one, eta_m, r.omega02 * r.omega11 / n);
            expect(eta_p, three, n);
            expect(eta_m, three, 0.0);
            expect(eta_p, four, r.omega12 * r.omega01 / n);
            expect(eta_m, four, r.omega12 * r.omega11 / n);
            expect(eta_p, six, r.omega02 * r.omega11 / n);
            expect(eta_m, six, -r.omega02 * r.omega01 / n);
            expect(eta_p, seven, r.omega12 * r.omega11 / n);
            expect(eta_m, seven, -r.omega12 * r.omega01 / n);
            expect(four, four, 2.0 * delta);
            expect(six, six, -2.0 * delta);
        }
    }

    #[test]
    fn restricted_block_matches_full_in_eta_frame() {
        // eff4 block of the rotated logic Hamiltonian equals the effective model
        let p = SimulationParams::default();
        let t = 0.4;
        let r = p.schedule().rabi(t, p.rabi_scale());
        let h = build_logic_hamiltonian(&p, t);
        let u = eta_basis_change(r.omega01, r.omega11).unwrap();
        let rotated = u.dagger().compose(&h).unwrap().compose(&u).unwrap();
        let keep = [0, 2, 6, 1];
        let mut block = CMatrix::zeros(4, 4);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                block[(a, b)] = rotated.get(i, j);
            }
        }
        let eff = build_effective_hamiltonian(&p, t).unwrap();
        assert!(max_abs_diff(&block, eff.entries()) < ALGEBRAIC_TOL);
    }
}
