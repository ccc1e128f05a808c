// SPDX-License-Identifier: Apache-2.0

//! Basis-labeled dense complex linear algebra.
//!
//! Every state and operator carries a [`Basis`] tag so that a 9-dimensional
//! logic-sector vector can never be silently combined with a 27-dimensional
//! product-basis one. Dimensions are tiny (at most a few hundred), so storage
//! is dense throughout.

mod expm;

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub use self::expm::expm;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Exact algebraic identities (Hermiticity, sector restriction, dark-state annihilation).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Quantities produced by time integration.
pub const INTEGRATED_TOL: f64 = 1e-9;
/// Allowed negativity of density-matrix eigenvalues.
pub const POSITIVITY_TOL: f64 = 1e-6;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Which Hilbert space a state or operator lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The nine exchange-antisymmetric logic states |1>..|9>.
    Logic9,
    /// Three three-level atoms, levels ordered (g0, g1, e), atom 1 most significant.
    Full27,
    /// The reduced basis {|1>, |3>, |7>, |eta+>}.
    Eff4,
    /// Anything else, identified by dimension only.
    Generic(usize),
}

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::Logic9 => 9,
            Basis::Full27 => 27,
            Basis::Eff4 => 4,
            Basis::Generic(d) => d,
        }
    }

    fn check_dim(self, got: usize) -> Result<()> {
        if self.dim() == got {
            Ok(())
        } else {
            Err(Error::Dimension {
                basis: self,
                expected: self.dim(),
                got,
            })
        }
    }

    fn require_same(self, other: Basis) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Logic9 => f.write_str("logic9"),
            Basis::Full27 => f.write_str("full27"),
            Basis::Eff4 => f.write_str("eff4"),
            Basis::Generic(d) => write!(f, "generic-{d}"),
        }
    }
}

/// A pure state (or any ket) over a declared basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(basis: Basis, amplitudes: CVector) -> Result<Self> {
        basis.check_dim(amplitudes.len())?;
        Ok(Self { basis, amplitudes })
    }

    pub fn from_slice(basis: Basis, amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(basis, CVector::from_column_slice(amplitudes))
    }

    pub fn from_real(basis: Basis, amplitudes: &[f64]) -> Result<Self> {
        Self::new(basis, CVector::from_iterator(amplitudes.len(), amplitudes.iter().map(|&x| real(x))))
    }

    /// The computational basis vector with a one at `index`.
    pub fn basis_state(basis: Basis, index: usize) -> Self {
        assert!(index < basis.dim(), "index {index} out of range for {basis}");
        let mut amplitudes = CVector::zeros(basis.dim());
        amplitudes[index] = ONE;
        Self { basis, amplitudes }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        Self {
            basis: self.basis,
            amplitudes: self.amplitudes.normalize(),
        }
    }

    /// Reinterpret the amplitudes in another basis of the same dimension.
    pub fn relabel(self, basis: Basis) -> Result<Self> {
        Self::new(basis, self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            basis: self.basis,
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// A mixed state. Construction only checks shape; use
/// [`DensityMatrix::validate`] for the physical invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    basis: Basis,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(basis: Basis, entries: CMatrix) -> Result<Self> {
        basis.check_dim(entries.nrows())?;
        basis.check_dim(entries.ncols())?;
        Ok(Self { basis, entries })
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            entries: CMatrix::identity(d, d).scale(1.0 / d as f64),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.entries + self.entries.adjoint()).scale(0.5);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Hermitian within 1e-9, unit trace within 1e-9, eigenvalues >= -1e-6.
    pub fn validate(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > INTEGRATED_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > INTEGRATED_TOL {
            return Err(Error::Precondition(format!("density matrix trace {tr} != 1")));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::Precondition(format!(
                "density matrix has eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn relabel(self, basis: Basis) -> Result<Self> {
        Self::new(basis, self.entries)
    }
}

/// A dense square operator (Hamiltonian, jump operator, projector, unitary).
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    basis: Basis,
    entries: CMatrix,
}

impl Operator {
    pub fn new(basis: Basis, entries: CMatrix) -> Result<Self> {
        basis.check_dim(entries.nrows())?;
        basis.check_dim(entries.ncols())?;
        Ok(Self { basis, entries })
    }

    pub fn identity(basis: Basis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            entries: CMatrix::identity(d, d),
        }
    }

    pub fn zeros(basis: Basis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            entries: CMatrix::zeros(d, d),
        }
    }

    /// |row><col|
    pub fn transition(basis: Basis, row: usize, col: usize) -> Self {
        let mut op = Self::zeros(basis);
        op.entries[(row, col)] = ONE;
        op
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self {
            basis: self.basis,
            entries: self.entries.adjoint(),
        }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.basis.require_same(state.basis)?;
        Ok(StateVector {
            basis: self.basis,
            amplitudes: &self.entries * &state.amplitudes,
        })
    }

    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        self.basis.require_same(rhs.basis)?;
        Ok(Operator {
            basis: self.basis,
            entries: &self.entries * &rhs.entries,
        })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        self.basis.require_same(other.basis)?;
        Ok(max_abs_diff(&self.entries, &other.entries))
    }

    pub fn relabel(self, basis: Basis) -> Result<Self> {
        Self::new(basis, self.entries)
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Kronecker product with the first factor as the slow index.
pub trait TensorProduct: Sized {
    fn tensor(&self, rhs: &Self) -> Result<Self>;
}

impl TensorProduct for Operator {
    fn tensor(&self, rhs: &Self) -> Result<Self> {
        let d = generic_product_dim(self.basis, rhs.basis)?;
        Ok(Operator {
            basis: Basis::Generic(d),
            entries: self.entries.kronecker(&rhs.entries),
        })
    }
}

impl TensorProduct for StateVector {
    fn tensor(&self, rhs: &Self) -> Result<Self> {
        let d = generic_product_dim(self.basis, rhs.basis)?;
        Ok(StateVector {
            basis: Basis::Generic(d),
            amplitudes: self.amplitudes.kronecker(&rhs.amplitudes),
        })
    }
}

fn generic_product_dim(a: Basis, b: Basis) -> Result<usize> {
    match (a, b) {
        (Basis::Generic(x), Basis::Generic(y)) => Ok(x * y),
        (Basis::Generic(_), other) | (other, _) => Err(Error::NonGenericTensor(other)),
    }
}

/// `a ⊗ b`. Both operands must be of the same kind; mixing an operator with
/// a vector does not type-check.
pub fn tensor_product<T: TensorProduct>(a: &T, b: &T) -> Result<T> {
    a.tensor(b)
}

pub fn dagger(a: &Operator) -> Operator {
    a.dagger()
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.basis.require_same(b.basis)?;
    Ok(a.amplitudes.dotc(&b.amplitudes))
}

/// Anything an observable can be evaluated on.
pub trait Expectation {
    fn basis(&self) -> Basis;
    /// Unchecked `<psi|A|psi>` or `Tr(A rho)`.
    fn raw_expectation(&self, op: &CMatrix) -> Complex64;
}

impl Expectation for StateVector {
    fn basis(&self) -> Basis {
        self.basis
    }

    fn raw_expectation(&self, op: &CMatrix) -> Complex64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }
}

impl Expectation for DensityMatrix {
    fn basis(&self) -> Basis {
        self.basis
    }

    fn raw_expectation(&self, op: &CMatrix) -> Complex64 {
        // Tr(A rho) = sum_ij A_ij rho_ji
        let n = op.nrows();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += op[(i, j)] * self.entries[(j, i)];
            }
        }
        acc
    }
}

/// Real expectation value of a Hermitian observable. The imaginary part is
/// checked against 1e-9 and then dropped.
pub fn expectation_value<S: Expectation>(op: &Operator, state: &S) -> Result<f64> {
    op.basis.require_same(state.basis())?;
    let scale = op.entries.norm().max(1.0);
    let defect = op.hermiticity_defect();
    if defect > ALGEBRAIC_TOL * scale {
        return Err(Error::NotHermitian(defect));
    }
    let value = state.raw_expectation(&op.entries);
    if value.im.abs() > INTEGRATED_TOL * scale {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_kron_identity() {
        let a = Operator::identity(Basis::Generic(2));
        let b = Operator::identity(Basis::Generic(3));
        let c = tensor_product(&a, &b).unwrap();
        assert_eq!(c, Operator::identity(Basis::Generic(6)));
    }

    #[test]
    fn slow_first_vector_placement() {
        let x = StateVector::from_real(Basis::Generic(2), &[1.0, 0.0]).unwrap();
        let y = StateVector::from_real(Basis::Generic(2), &[0.0, 1.0]).unwrap();
        let z = tensor_product(&x, &y).unwrap();
        assert_eq!(z, StateVector::from_real(Basis::Generic(4), &[0.0, 1.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn tensor_rejects_labeled_bases() {
        let a = Operator::identity(Basis::Logic9);
        let b = Operator::identity(Basis::Generic(2));
        assert!(matches!(
            tensor_product(&a, &b),
            Err(Error::NonGenericTensor(Basis::Logic9))
        ));
        assert!(tensor_product(&b, &a).is_err());
    }

    #[test]
    fn dagger_of_raising_is_lowering() {
        let raise = Operator::transition(Basis::Generic(2), 1, 0);
        let lower = Operator::transition(Basis::Generic(2), 0, 1);
        assert_eq!(dagger(&raise), lower);
        assert_eq!(dagger(&Operator::identity(Basis::Eff4)), Operator::identity(Basis::Eff4));
    }

    #[test]
    fn inner_product_basics() {
        let e0 = StateVector::basis_state(Basis::Logic9, 0);
        let e1 = StateVector::basis_state(Basis::Logic9, 1);
        assert_eq!(inner_product(&e0, &e0).unwrap(), ONE);
        assert_eq!(inner_product(&e0, &e1).unwrap(), ZERO);
        let other = StateVector::basis_state(Basis::Full27, 0);
        assert!(matches!(inner_product(&e0, &other), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn expectation_on_basis_states() {
        let s2 = StateVector::basis_state(Basis::Logic9, 1);
        let proj = Operator::transition(Basis::Logic9, 1, 1);
        assert_eq!(expectation_value(&proj, &s2).unwrap(), 1.0);
        assert_eq!(expectation_value(&Operator::identity(Basis::Logic9), &s2).unwrap(), 1.0);
        assert_eq!(expectation_value(&proj, &s2.to_density()).unwrap(), 1.0);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let s = StateVector::basis_state(Basis::Generic(2), 0);
        let raise = Operator::transition(Basis::Generic(2), 1, 0);
        assert!(matches!(expectation_value(&raise, &s), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn dimension_checked_on_construction() {
        let v = CVector::zeros(8);
        assert!(matches!(
            StateVector::new(Basis::Logic9, v),
            Err(Error::Dimension { expected: 9, got: 8, .. })
        ));
    }

    #[test]
    fn maximally_mixed_is_valid() {
        let rho = DensityMatrix::maximally_mixed(Basis::Logic9);
        rho.validate().unwrap();
        assert!((rho.min_eigenvalue() - 1.0 / 9.0).abs() < 1e-14);
    }
}
