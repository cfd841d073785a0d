// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense complex linear algebra for small qubit registers.

mod density;
mod linalg;
mod matrix;
mod state;

pub use density::DensityMatrix;
pub use linalg::{hermitian_eigenvalues, singular_values};
pub use matrix::CMatrix;
pub use state::{StateVector, MAX_QUBITS};
pub(crate) use state::check_targets;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One- or two-qubit unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate<T> {
    arity: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> UnitaryGate<T> {
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let arity = match (matrix.rows(), matrix.cols()) {
            (2, 2) => 1,
            (4, 4) => 2,
            (r, _) => return Err(Error::DimensionMismatch { expected: 4, found: r }),
        };
        let deviation = matrix.unitarity_deviation();
        if deviation > T::tolerance() {
            return Err(Error::NotUnitary { deviation: deviation.to_f64_lossy() });
        }
        Ok(Self { arity, matrix })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Full-register operator with the gate on `targets` and identity elsewhere.
    pub fn embed(&self, num_qubits: usize, targets: &[usize]) -> Result<CMatrix<T>> {
        embed_operator(&self.matrix, num_qubits, targets)
    }
}

/// Lifts a `2^k × 2^k` operator on `targets` to the whole register.
pub fn embed_operator<T: Real>(op: &CMatrix<T>, num_qubits: usize, targets: &[usize]) -> Result<CMatrix<T>> {
    let dim = 1usize << num_qubits;
    let mut full = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let image = StateVector::basis(num_qubits, col)?.apply_matrix(op, targets)?;
        for (row, z) in image.amplitudes().iter().enumerate() {
            full.set(row, col, *z);
        }
    }
    Ok(full)
}

pub fn tensor_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<StateVector<T>> {
    a.tensor(b)
}

pub fn apply_gate<T: Real>(state: &StateVector<T>, gate: &UnitaryGate<T>, targets: &[usize]) -> Result<StateVector<T>> {
    state.apply_gate(gate, targets)
}

pub fn reduced_density<T: Real>(state: &StateVector<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    state.reduced_density(keep)
}

pub fn schmidt_rank<T: Real>(state: &StateVector<T>, left: &[usize], tol: T) -> Result<usize> {
    state.schmidt_rank(left, tol)
}

/// `⟨ψ|ρ|ψ⟩` for a pure target and a mixed state of the same size.
///
/// The imaginary part must vanish within tolerance. Values that overshoot
/// `[0, 1]` by no more than the tolerance are clamped; anything further out
/// is returned as is so that broken inputs stay visible.
pub fn fidelity<T: Real>(target: &StateVector<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if target.num_qubits() != rho.num_qubits() {
        return Err(Error::DimensionMismatch { expected: target.num_qubits(), found: rho.num_qubits() });
    }
    let v = rho.matrix().matvec(target.amplitudes())?;
    let f: Complex<T> = target.amplitudes().iter().zip(&v).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
        acc + a.conj() * *b
    });
    let tol = T::tolerance();
    let value = f.re;
    if value < T::zero() && value >= -tol {
        Ok(T::zero())
    } else if value > T::one() && value <= T::one() + tol {
        Ok(T::one())
    } else {
        Ok(value)
    }
}

/// Pure-state fidelity `|⟨a|b⟩|²`.
pub fn pure_fidelity<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<T> {
    Ok(a.inner(b)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn fidelity_examples() {
        let psi = StateVector::<f64>::qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert!((fidelity(&psi, &rho).unwrap() - 1.0).abs() < 1e-15);
        let zero = StateVector::<f64>::basis(1, 0).unwrap();
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        assert_eq!(fidelity(&zero, &mixed).unwrap(), 0.5);
        let two = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(fidelity(&zero, &two), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn non_unitary_gate_rejected() {
        let m = CMatrix::<f64>::from_real([[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(UnitaryGate::new(m), Err(Error::NotUnitary { .. })));
        let m = CMatrix::<f64>::identity(8);
        assert!(matches!(UnitaryGate::new(m), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn embed_matches_kron() {
        let x = UnitaryGate::<f64>::pauli_x();
        let full = x.embed(2, &[1]).unwrap();
        assert_eq!(full, CMatrix::identity(2).kron(x.matrix()));
    }
}
