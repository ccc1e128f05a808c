// SPDX-License-Identifier: Apache-2.0

//! Atomic levels, the logic basis and the named states of the protocol.

use itertools::Itertools;

use crate::numerics::{real, Basis, CMatrix, CVector, DensityMatrix, Operator, StateVector};
use crate::{Error, Result};

/// Single-atom level. The discriminant is the local index in the product basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    G0 = 0,
    G1 = 1,
    E = 2,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::G0, Level::G1, Level::E];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Index of |l1 l2 l3> in the 27-dimensional product basis, atom 1 slowest.
pub fn product_index(levels: [Level; 3]) -> usize {
    levels[0].index() * 9 + levels[1].index() * 3 + levels[2].index()
}

/// Each logic state |k> is |a>_1 (|b c> - |c b>)_23 / sqrt(2); entry k-1 holds (a, b, c).
const LOGIC_TABLE: [(Level, Level, Level); 9] = [
    (Level::G0, Level::E, Level::G1),
    (Level::G0, Level::G0, Level::G1),
    (Level::E, Level::G0, Level::G1),
    (Level::G0, Level::G0, Level::E),
    (Level::G1, Level::G0, Level::G1),
    (Level::G1, Level::E, Level::G1),
    (Level::G1, Level::G0, Level::E),
    (Level::E, Level::G0, Level::E),
    (Level::E, Level::G1, Level::E),
];

/// The nine logic states embedded in the 27-dimensional product space.
#[derive(Clone, Debug)]
pub struct LogicBasis {
    vectors: Vec<StateVector>,
    embedding: CMatrix,
}

pub fn logic_embedding() -> LogicBasis {
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let mut embedding = CMatrix::zeros(27, 9);
    for (k, &(a, b, c)) in LOGIC_TABLE.iter().enumerate() {
        embedding[(product_index([a, b, c]), k)] = real(amp);
        embedding[(product_index([a, c, b]), k)] = real(-amp);
    }
    let vectors = (0..9)
        .map(|k| {
            StateVector::new(Basis::Full27, embedding.column(k).into_owned())
                .expect("27-dimensional column")
        })
        .collect();
    LogicBasis { vectors, embedding }
}

impl LogicBasis {
    /// |k> for k in 1..=9.
    pub fn vector(&self, k: usize) -> &StateVector {
        assert!((1..=9).contains(&k), "logic states are labeled 1..=9, got {k}");
        &self.vectors[k - 1]
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// The 27x9 isometry P whose columns are |1>..|9>.
    pub fn embedding(&self) -> &CMatrix {
        &self.embedding
    }

    pub fn gram(&self) -> CMatrix {
        self.embedding.adjoint() * &self.embedding
    }

    /// P^dagger A P for a full27 operator.
    pub fn restrict(&self, op: &Operator) -> Result<Operator> {
        require(op.basis(), Basis::Full27)?;
        Operator::new(
            Basis::Logic9,
            self.embedding.adjoint() * op.entries() * &self.embedding,
        )
    }

    /// Components of a full27 state along |1>..|9>.
    pub fn project(&self, state: &StateVector) -> Result<StateVector> {
        require(state.basis(), Basis::Full27)?;
        StateVector::new(Basis::Logic9, self.embedding.adjoint() * state.amplitudes())
    }
}

fn require(got: Basis, want: Basis) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            left: got,
            right: want,
        })
    }
}

/// 9x4 isometry taking (|1>, |3>, |7>, |eta+>) into the logic basis with
/// |eta+> = (|2> + |5>)/sqrt(2), i.e. the bright state when Ω₁₁ = Ω₀₁.
pub fn eff4_embedding() -> CMatrix {
    let mut m = CMatrix::zeros(9, 4);
    m[(0, 0)] = real(1.0);
    m[(2, 1)] = real(1.0);
    m[(6, 2)] = real(1.0);
    m[(1, 3)] = real(std::f64::consts::FRAC_1_SQRT_2);
    m[(4, 3)] = real(std::f64::consts::FRAC_1_SQRT_2);
    m
}

fn lift_matrix(from: Basis, to: Basis) -> Result<Option<CMatrix>> {
    let logic = || logic_embedding().embedding().clone();
    Ok(match (from, to) {
        _ if from == to => None,
        (Basis::Eff4, Basis::Logic9) => Some(eff4_embedding()),
        (Basis::Logic9, Basis::Full27) => Some(logic()),
        (Basis::Eff4, Basis::Full27) => Some(logic() * eff4_embedding()),
        _ => {
            return Err(Error::BasisMismatch {
                left: from,
                right: to,
            })
        }
    })
}

/// Embed a state into a larger model space (eff4 -> logic9 -> full27).
pub fn lift_state(state: &StateVector, to: Basis) -> Result<StateVector> {
    match lift_matrix(state.basis(), to)? {
        None => Ok(state.clone()),
        Some(m) => StateVector::new(to, m * state.amplitudes()),
    }
}

pub fn lift_density(rho: &DensityMatrix, to: Basis) -> Result<DensityMatrix> {
    match lift_matrix(rho.basis(), to)? {
        None => Ok(rho.clone()),
        Some(m) => DensityMatrix::new(to, &m * rho.entries() * m.adjoint()),
    }
}

/// Permutation operator exchanging atoms `j` and `k` (0-based) in full27.
pub fn swap_atoms(j: usize, k: usize) -> Operator {
    assert!(j < 3 && k < 3);
    let mut m = CMatrix::zeros(27, 27);
    for levels in itertools::iproduct!(Level::ALL, Level::ALL, Level::ALL) {
        let from = [levels.0, levels.1, levels.2];
        let mut to = from;
        to.swap(j, k);
        m[(product_index(to), product_index(from))] = real(1.0);
    }
    Operator::new(Basis::Full27, m).expect("27x27")
}

/// The N-particle, N-level totally antisymmetric state, dimension N^N.
pub fn singlet_state(n: usize) -> Result<StateVector> {
    if !(2..=6).contains(&n) {
        return Err(Error::param("n", format!("must lie in 2..=6, got {n}")));
    }
    let dim = n.pow(n as u32);
    let count: usize = (1..=n).product();
    let weight = 1.0 / (count as f64).sqrt();
    let mut amps = CVector::zeros(dim);
    for perm in (0..n).permutations(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let index = perm.iter().fold(0, |acc, &digit| acc * n + digit);
        amps[index] = real(sign * weight);
    }
    StateVector::new(Basis::Generic(dim), amps)
}

/// The three-atom singlet (|3> - |1> - |7>)/sqrt(3) expressed in `basis`.
pub fn singlet_target(basis: Basis) -> Result<StateVector> {
    let s = 1.0 / 3f64.sqrt();
    match basis {
        Basis::Logic9 => {
            StateVector::from_real(basis, &[-s, 0.0, s, 0.0, 0.0, 0.0, -s, 0.0, 0.0])
        }
        Basis::Eff4 => StateVector::from_real(basis, &[-s, s, -s, 0.0]),
        // level order (g0, g1, e) <-> (0, 1, 2)
        Basis::Full27 => singlet_state(3)?.relabel(Basis::Full27),
        other => Err(Error::Precondition(format!("no singlet target defined on {other}"))),
    }
}

/// Adiabatic dark state cosθ|3> - sinθ(|1> + |7>)/sqrt(2), tanθ = sqrt(2)Ω₀₁/Ω₀₂.
///
/// Ω₀₂ = 0 takes the θ = π/2 branch.
pub fn dark_state(omega01: f64, omega02: f64) -> Result<StateVector> {
    if omega01 == 0.0 && omega02 == 0.0 {
        return Err(Error::Precondition(
            "dark state undefined when both Rabi frequencies vanish".into(),
        ));
    }
    let theta = mixing_angle(omega01, omega02);
    let side = -theta.sin() * std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_real(Basis::Eff4, &[side, theta.cos(), side, 0.0])
}

pub fn mixing_angle(omega01: f64, omega02: f64) -> f64 {
    (std::f64::consts::SQRT_2 * omega01).atan2(omega02)
}

/// Unitary on logic9 replacing |2>, |5> with
/// |eta+> = (Ω₀₁|2> + Ω₁₁|5>)/N and |eta-> = (Ω₁₁|2> - Ω₀₁|5>)/N.
///
/// Conjugating a logic9 operator as `U^dagger A U` puts eta+ in slot 2 and eta- in slot 5.
pub fn eta_basis_change(omega01: f64, omega11: f64) -> Result<Operator> {
    let norm = omega01.hypot(omega11);
    if norm == 0.0 {
        return Err(Error::Precondition(
            "eta basis needs a nonzero normalizer sqrt(Ω₀₁² + Ω₁₁²)".into(),
        ));
    }
    let mut u = CMatrix::identity(9, 9);
    let (c, s) = (omega01 / norm, omega11 / norm);
    u[(1, 1)] = real(c);
    u[(4, 1)] = real(s);
    u[(1, 4)] = real(s);
    u[(4, 4)] = real(-c);
    Operator::new(Basis::Logic9, u)
}
