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
use num_traits::{One, Zero};

use super::density::DensityMatrix;
use super::linalg::singular_values;
use super::matrix::CMatrix;
use super::UnitaryGate;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 16;

/// Pure state of an ordered qubit register.
///
/// Qubit 0 is the most significant bit of the amplitude index, so the ket
/// `|q0 q1 ... q(n-1)⟩` reads left to right as a binary number.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

pub(crate) fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(Error::EmptyRegister);
    }
    if num_qubits > MAX_QUBITS {
        return Err(Error::RegisterTooLarge { num_qubits, max: MAX_QUBITS });
    }
    Ok(())
}

/// Validates a list of qubit indices against a register size.
pub(crate) fn check_targets(targets: &[usize], num_qubits: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(Error::QubitOutOfRange { index: t, num_qubits });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateQubit(t));
        }
    }
    Ok(())
}

#[inline]
fn bit_position(qubit: usize, num_qubits: usize) -> usize {
    num_qubits - 1 - qubit
}

/// Splits a register index into (subsystem index, complement index).
///
/// The subsystem bits are packed in the order given by `part`; the
/// complement keeps ascending qubit order.
fn split_index(idx: usize, part: &[usize], rest: &[usize], num_qubits: usize) -> (usize, usize) {
    let gather = |qubits: &[usize]| {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((idx >> bit_position(q, num_qubits)) & 1))
    };
    (gather(part), gather(rest))
}

fn complement(part: &[usize], num_qubits: usize) -> Vec<usize> {
    (0..num_qubits).filter(|q| !part.contains(q)).collect()
}

impl<T: Real> StateVector<T> {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_register(num_qubits)?;
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch { expected, found: amplitudes.len() });
        }
        if !amplitudes.iter().all(is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Infers the register size from the amplitude count.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthMismatch { expected: len.next_power_of_two().max(2), found: len });
        }
        Self::new(len.trailing_zeros() as usize, amplitudes)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_register(num_qubits)?;
        if index >= 1 << num_qubits {
            return Err(Error::InvalidBasisLabel { x: index as u64, n: num_qubits });
        }
        let mut amplitudes = vec![Complex::zero(); 1 << num_qubits];
        amplitudes[index] = Complex::one();
        Ok(Self { num_qubits, amplitudes })
    }

    /// Single qubit `a|0⟩ + b|1⟩`.
    pub fn qubit(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        Self::new(1, vec![a, b])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm_sqr() - T::one()).abs() <= tol
    }

    /// Returns the state rescaled to unit norm, or `ZeroNorm`.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::min_positive_value() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex::new(T::one() / n, T::zero())))
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self { num_qubits: self.num_qubits, amplitudes: self.amplitudes.iter().map(|a| *a * factor).collect() }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    /// `self ⊗ other`; `self` takes the high-order (leftmost) qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let num_qubits = self.num_qubits + other.num_qubits;
        check_register(num_qubits)?;
        let amplitudes =
            self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| *a * *b)).collect();
        Ok(Self { num_qubits, amplitudes })
    }

    /// Applies an arbitrary `2^k × 2^k` matrix to the listed qubits.
    ///
    /// `targets[0]` is the most significant qubit of the matrix's own index.
    pub fn apply_matrix(&self, matrix: &CMatrix<T>, targets: &[usize]) -> Result<Self> {
        check_targets(targets, self.num_qubits)?;
        let k = targets.len();
        let sub = 1usize << k;
        if matrix.rows() != sub || matrix.cols() != sub {
            return Err(Error::DimensionMismatch { expected: sub, found: matrix.rows() });
        }
        let masks: Vec<usize> = targets.iter().map(|&t| 1 << bit_position(t, self.num_qubits)).collect();
        let target_mask = masks.iter().fold(0, |acc, m| acc | m);
        let offsets: Vec<usize> = (0..sub)
            .map(|s| {
                masks.iter().enumerate().fold(0, |acc, (j, m)| if (s >> (k - 1 - j)) & 1 == 1 { acc | m } else { acc })
            })
            .collect();

        let mut out = vec![Complex::zero(); self.dim()];
        let mut local = vec![Complex::zero(); sub];
        for base in (0..self.dim()).filter(|i| i & target_mask == 0) {
            for (s, off) in offsets.iter().enumerate() {
                local[s] = self.amplitudes[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                out[base | off] =
                    matrix.row(r).iter().zip(&local).fold(Complex::zero(), |acc, (m, v)| acc + *m * *v);
            }
        }
        Ok(Self { num_qubits: self.num_qubits, amplitudes: out })
    }

    pub fn apply_gate(&self, gate: &UnitaryGate<T>, targets: &[usize]) -> Result<Self> {
        if targets.len() != gate.arity() {
            return Err(Error::ArityMismatch { arity: gate.arity(), given: targets.len() });
        }
        self.apply_matrix(gate.matrix(), targets)
    }

    /// Partial inner product `(⟨bra|_qubits ⊗ I)|self⟩`.
    ///
    /// The result lives on the remaining qubits in ascending order and is not
    /// renormalized.
    pub fn contract(&self, qubits: &[usize], bra: &Self) -> Result<Self> {
        check_targets(qubits, self.num_qubits)?;
        if bra.num_qubits != qubits.len() {
            return Err(Error::DimensionMismatch { expected: qubits.len(), found: bra.num_qubits });
        }
        if qubits.len() == self.num_qubits {
            return Err(Error::EmptySubsystem);
        }
        let rest = complement(qubits, self.num_qubits);
        let mut out = vec![Complex::zero(); 1 << rest.len()];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let (k, e) = split_index(idx, qubits, &rest, self.num_qubits);
            out[e] += bra.amplitudes[k].conj() * *amp;
        }
        Ok(Self { num_qubits: rest.len(), amplitudes: out })
    }

    /// Coefficient matrix across the cut `left | rest`, rows indexed by `left`.
    pub fn coefficient_matrix(&self, left: &[usize]) -> Result<CMatrix<T>> {
        check_targets(left, self.num_qubits)?;
        if left.is_empty() || left.len() == self.num_qubits {
            return Err(Error::DegenerateBipartition);
        }
        let rest = complement(left, self.num_qubits);
        let mut m = CMatrix::zeros(1 << left.len(), 1 << rest.len());
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let (l, r) = split_index(idx, left, &rest, self.num_qubits);
            m.set(l, r, *amp);
        }
        Ok(m)
    }

    /// Reduced state of the `keep` qubits, in ascending qubit order.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        if keep.is_empty() {
            return Err(Error::EmptySubsystem);
        }
        check_targets(keep, self.num_qubits)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let rest = complement(&keep, self.num_qubits);
        let dim = 1usize << keep.len();
        let mut rho = CMatrix::zeros(dim, dim);
        if rest.is_empty() {
            rho = CMatrix::outer(&self.amplitudes, &self.amplitudes);
        } else {
            let m = self.coefficient_matrix(&keep)?;
            for i in 0..dim {
                for j in 0..dim {
                    let v = m.row(i).iter().zip(m.row(j)).fold(Complex::zero(), |acc, (a, b)| acc + *a * b.conj());
                    rho.set(i, j, v);
                }
            }
        }
        DensityMatrix::from_matrix_unchecked(keep.len(), rho)
    }

    /// Schmidt coefficients across `left | rest`, descending.
    pub fn schmidt_coefficients(&self, left: &[usize]) -> Result<Vec<T>> {
        Ok(singular_values(&self.coefficient_matrix(left)?))
    }

    pub fn schmidt_rank(&self, left: &[usize], tol: T) -> Result<usize> {
        Ok(self.schmidt_coefficients(left)?.into_iter().filter(|s| *s > tol).count())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.dim() != other.dim() {
            return T::infinity();
        }
        self.amplitudes.iter().zip(&other.amplitudes).fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Equality up to a global phase.
    ///
    /// The phase is fixed by the largest-modulus amplitude of `self`; after
    /// aligning `other` to it the states must agree entrywise within `tol`.
    pub fn eq_up_to_phase(&self, other: &Self, tol: T) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let (k, pivot) = self
            .amplitudes
            .iter()
            .enumerate()
            .fold((0, T::zero()), |(bk, bv), (i, z)| if z.norm() > bv { (i, z.norm()) } else { (bk, bv) });
        if pivot <= tol {
            return other.amplitudes.iter().all(|z| z.norm() <= tol);
        }
        let ratio = other.amplitudes[k] / self.amplitudes[k];
        if ratio.norm() <= T::min_positive_value() {
            return false;
        }
        let phase = ratio / ratio.norm();
        self.scaled(phase).approx_eq(other, tol)
    }
}
