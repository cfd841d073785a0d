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

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("register of {num_qubits} qubits exceeds the limit of {max}")]
    RegisterTooLarge { num_qubits: usize, max: usize },

    #[error("register must hold at least one qubit")]
    EmptyRegister,

    #[error("non-finite amplitude or matrix entry")]
    NonFinite,

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("gate acts on {arity} qubits but {given} targets were given")]
    ArityMismatch { arity: usize, given: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (max deviation of U†U from I is {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("kept subsystem must be non-empty")]
    EmptySubsystem,

    #[error("bipartition must split the register into two non-empty parts")]
    DegenerateBipartition,

    #[error("state has zero norm; no measurement outcome is possible")]
    ZeroNorm,

    #[error("branch probabilities do not form a distribution (sum {sum})")]
    DegenerateDistribution { sum: f64 },

    #[error(
        "|alpha|^2 + |beta|^2 = {norm_sqr} violates the normalization constraint |alpha|^2 + |beta|^2 = 1"
    )]
    NotNormalized { norm_sqr: f64 },

    #[error("bell_for_zero and bell_for_one are both {0}; the state would be biseparable")]
    IdenticalBellPair(crate::circuit::BellKind),

    #[error("no Pauli correction recovers the input on branch (Alice {bell}, Charlie {charlie})")]
    NoCorrectionFound { bell: crate::circuit::BellKind, charlie: u8 },

    #[error("basis label {x} out of range for n = {n}")]
    InvalidBasisLabel { x: u64, n: usize },

    #[error("n = {n} outside the supported range 1..={max}")]
    InvalidQubitCount { n: usize, max: usize },

    #[error("branch (Alice {bell}, Charlie {charlie}) has zero probability for this input")]
    ImpossibleBranch { bell: crate::circuit::BellKind, charlie: u8 },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
