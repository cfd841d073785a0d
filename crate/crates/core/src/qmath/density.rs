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

use num_complex::Complex;
use num_traits::Zero;

use super::linalg::hermitian_eigenvalues;
use super::matrix::CMatrix;
use super::state::{check_register, check_targets, StateVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mixed state of a qubit register, same index convention as [`StateVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    num_qubits: usize,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validated constructor: Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn new(num_qubits: usize, matrix: CMatrix<T>, tol: T) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(num_qubits, matrix)?;
        if !rho.is_valid(tol) {
            return Err(Error::Parse("matrix is not a valid density matrix".into()));
        }
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(num_qubits: usize, matrix: CMatrix<T>) -> Result<Self> {
        check_register(num_qubits)?;
        let dim = 1usize << num_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.rows() });
        }
        Ok(Self { num_qubits, matrix })
    }

    pub fn from_pure(state: &StateVector<T>) -> Self {
        Self { num_qubits: state.num_qubits(), matrix: CMatrix::outer(state.amplitudes(), state.amplitudes()) }
    }

    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let dim = 1usize << num_qubits;
        let m = CMatrix::identity(dim).scale(Complex::new(T::one() / T::lit(dim as f64), T::zero()));
        Ok(Self { num_qubits, matrix: m })
    }

    /// Convex combination `Σ w_i ρ_i`; weights are used as given.
    pub fn mixture(parts: &[(T, Self)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptySubsystem)?;
        let n = first.1.num_qubits;
        let dim = 1usize << n;
        let mut acc = CMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.num_qubits != n {
                return Err(Error::DimensionMismatch { expected: n, found: rho.num_qubits });
            }
            acc = &acc + &rho.matrix.scale(Complex::new(*w, T::zero()));
        }
        Ok(Self { num_qubits: n, matrix: acc })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.matrix.get(r, c)
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> T {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn is_valid(&self, tol: T) -> bool {
        self.matrix.is_hermitian(tol)
            && (self.trace() - T::one()).abs() <= tol
            && self.eigenvalues().iter().all(|&e| e >= -tol)
    }

    /// `Σ_k K ρ K†` for operators on the whole register.
    pub fn apply_kraus(&self, ops: &[CMatrix<T>]) -> Result<Self> {
        let dim = 1usize << self.num_qubits;
        let mut acc = CMatrix::zeros(dim, dim);
        for k in ops {
            if k.rows() != dim || k.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: k.rows() });
            }
            acc = &acc + &(&(k * &self.matrix) * &k.dagger());
        }
        Ok(Self { num_qubits: self.num_qubits, matrix: acc })
    }

    /// Traces out every qubit not in `keep`; kept qubits in ascending order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySubsystem);
        }
        check_targets(keep, self.num_qubits)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let n = self.num_qubits;
        let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let pos = |q: usize| n - 1 - q;
        let compose = |k: usize, e: usize| {
            let mut idx = 0usize;
            for (j, &q) in keep.iter().enumerate() {
                idx |= ((k >> (keep.len() - 1 - j)) & 1) << pos(q);
            }
            for (j, &q) in rest.iter().enumerate() {
                idx |= ((e >> (rest.len() - 1 - j)) & 1) << pos(q);
            }
            idx
        };
        let kd = 1usize << keep.len();
        let ed = 1usize << rest.len();
        let mut out = CMatrix::zeros(kd, kd);
        for i in 0..kd {
            for j in 0..kd {
                let v = (0..ed).fold(Complex::zero(), |acc, e| acc + self.matrix.get(compose(i, e), compose(j, e)));
                out.set(i, j, v);
            }
        }
        Ok(Self { num_qubits: keep.len(), matrix: out })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix.max_abs_diff(&other.matrix)
    }
}
