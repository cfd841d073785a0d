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

//! Controlled teleportation of n-qubit states α|x⟩ ± β|x̄⟩.
//!
//! Alice runs a CNOT ladder from her first qubit onto the others, which maps
//! both |x⟩ and |x̄⟩ to the same basis string on qubits 1..n; a Pauli X on
//! qubit 0 (when x starts with 1) leaves the logical qubit α|0⟩ ± β|1⟩.
//! That qubit goes through the ordinary three-party protocol and Bob rebuilds
//! the register with the mirrored ladder.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use super::{derive_correction_table, protocol_branches, BranchKey, CorrectionTable};
use crate::error::{Error, Result};
use crate::measure::measure_computational_branches;
use crate::qmath::{pure_fidelity, StateVector, UnitaryGate};
use crate::scalar::Real;

/// Largest n; the simulated register holds n + 3 qubits.
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedState<T> {
    n: usize,
    x: u64,
    sign: Sign,
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> GeneralizedState<T> {
    pub fn new(n: usize, x: u64, sign: Sign, alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        Self::with_tolerance(n, x, sign, alpha, beta, T::tolerance())
    }

    pub fn with_tolerance(n: usize, x: u64, sign: Sign, alpha: Complex<T>, beta: Complex<T>, tol: T) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidQubitCount { n, max: MAX_N });
        }
        if x >= 1 << n {
            return Err(Error::InvalidBasisLabel { x, n });
        }
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sqr - T::one()).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr: norm_sqr.to_f64_lossy() });
        }
        Ok(Self { n, x, sign, alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// x̄ = x XOR 1…1 over n bits.
    pub fn complement(&self) -> u64 {
        self.x ^ ((1u64 << self.n) - 1)
    }

    fn signed_beta(&self) -> Complex<T> {
        match self.sign {
            Sign::Plus => self.beta,
            Sign::Minus => -self.beta,
        }
    }

    pub fn state(&self) -> StateVector<T> {
        let mut amps = vec![Complex::zero(); 1 << self.n];
        amps[self.x as usize] = self.alpha;
        amps[self.complement() as usize] = self.signed_beta();
        StateVector::new(self.n, amps).expect("valid register")
    }

    fn leading_bit(&self) -> u64 {
        (self.x >> (self.n - 1)) & 1
    }

    /// Bits of x ⊕ x₀ on qubits 1..n, i.e. what the ladder leaves there.
    fn residual(&self) -> usize {
        let mask = (1u64 << (self.n - 1)) - 1;
        let lead = if self.leading_bit() == 1 { mask } else { 0 };
        ((self.x & mask) ^ lead) as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedReport<T> {
    /// (branch, probability, fidelity of Bob's n-qubit output).
    pub branches: Vec<(BranchKey, T, T)>,
    pub min_fidelity: T,
    /// Probability-weighted mean fidelity.
    pub mean_fidelity: T,
}

/// Applies the CNOT ladder from qubit `base` and the X frame on `base`.
fn ladder_frame<T: Real>(state: StateVector<T>, n: usize, base: usize, flip: bool, disentangle: bool) -> Result<StateVector<T>> {
    let cx = UnitaryGate::cnot();
    let x = UnitaryGate::pauli_x();
    let ladder = |s: StateVector<T>| (1..n).try_fold(s, |s, i| s.apply_gate(&cx, &[base, base + i]));
    let frame = |s: StateVector<T>| if flip { s.apply_gate(&x, &[base]) } else { Ok(s) };
    if disentangle {
        frame(ladder(state)?)
    } else {
        ladder(frame(state)?)
    }
}

pub fn generalized_teleport<T: Real>(state: &GeneralizedState<T>, channel: &StateVector<T>) -> Result<GeneralizedReport<T>> {
    let table = derive_correction_table(channel)?;
    generalized_teleport_with_table(state, channel, &table)
}

/// Runs every protocol branch on the full register and scores Bob's output.
pub fn generalized_teleport_with_table<T: Real>(
    state: &GeneralizedState<T>,
    channel: &StateVector<T>,
    table: &CorrectionTable<T>,
) -> Result<GeneralizedReport<T>> {
    super::check_channel(channel)?;
    let n = state.n;
    let input = state.state();
    let flip = state.leading_bit() == 1;
    let residual = state.residual();

    // Alice: disentangle onto qubit 0, then read off the now-classical qubits 1..n
    let mut register = ladder_frame(input.tensor(channel)?, n, 0, flip, true)?;
    for i in 1..n {
        let bit = (residual >> (n - 1 - i)) & 1;
        let [b0, b1] = measure_computational_branches(&register, 1)?;
        let branch = if bit == 0 { b0 } else { b1 };
        register = branch.post_state.ok_or(Error::ZeroNorm)?;
    }

    let mut branches = Vec::with_capacity(8);
    for b in protocol_branches(&register)? {
        let Some(bob) = b.bob_state else { continue };
        let logical = bob.apply_gate(&table.get(b.key).gate(), &[0])?;
        let rebuilt = if n > 1 { logical.tensor(&StateVector::basis(n - 1, residual)?)? } else { logical };
        let output = ladder_frame(rebuilt, n, 0, flip, false)?;
        branches.push((b.key, b.probability, pure_fidelity(&input, &output)?));
    }
    let min_fidelity = branches.iter().fold(T::infinity(), |m, b| m.min(b.2));
    let mean_fidelity = branches.iter().fold(T::zero(), |acc, b| acc + b.1 * b.2);
    Ok(GeneralizedReport { branches, min_fidelity, mean_fidelity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::yang_channel;
    use crate::scalar::c;

    #[test]
    fn complement_of_five_is_two() {
        let s = GeneralizedState::<f64>::new(3, 5, Sign::Plus, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        assert_eq!(s.complement(), 2);
        assert_eq!(s.residual(), 0b10);
    }

    #[test]
    fn range_checks() {
        assert!(matches!(
            GeneralizedState::<f64>::new(13, 0, Sign::Plus, c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::InvalidQubitCount { n: 13, .. })
        ));
        assert!(matches!(
            GeneralizedState::<f64>::new(2, 4, Sign::Plus, c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::InvalidBasisLabel { x: 4, n: 2 })
        ));
        assert!(matches!(
            GeneralizedState::<f64>::new(2, 1, Sign::Plus, c(0.5, 0.0), c(0.5, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn encode_then_decode_is_identity() {
        let s = GeneralizedState::<f64>::new(3, 6, Sign::Minus, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let there = ladder_frame(s.state(), 3, 0, true, true).unwrap();
        let back = ladder_frame(there, 3, 0, true, false).unwrap();
        assert!(back.approx_eq(&s.state(), 1e-15));
    }

    #[test]
    fn single_qubit_case() {
        let s = GeneralizedState::<f64>::new(1, 0, Sign::Plus, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let r = generalized_teleport(&s, &yang_channel()).unwrap();
        assert_eq!(r.branches.len(), 8);
        assert!((r.min_fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_qubits_x_five_minus() {
        let s = GeneralizedState::<f64>::new(3, 5, Sign::Minus, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let r = generalized_teleport(&s, &yang_channel()).unwrap();
        assert!((r.min_fidelity - 1.0).abs() < 1e-12);
        assert!((r.mean_fidelity - 1.0).abs() < 1e-12);
    }
}
