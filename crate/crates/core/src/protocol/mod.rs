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

//! Controlled teleportation through a three-qubit GHZ-like channel.
//!
//! Register layout of the four-qubit protocol state:
//!
//! | qubit | holder  | role                          |
//! |-------|---------|-------------------------------|
//! | 0     | Alice   | unknown qubit α|0⟩ + β|1⟩     |
//! | 1     | Alice   | channel qubit                 |
//! | 2     | Bob     | channel qubit, receives state |
//! | 3     | Charlie | channel qubit, controller     |

pub(crate) mod generalized;
mod noncoop;
mod table;
mod teleport;

pub use generalized::{generalized_teleport, generalized_teleport_with_table, GeneralizedReport, GeneralizedState, Sign};
pub use noncoop::{
    noncooperative_analysis, closed_form_weighted_fidelities, refute_separability, NoncoopReport, NoncoopRow,
    SeparabilityVerdict,
};
pub use table::{derive_correction_table, derive_correction_table_with, CorrectionTable, DerivationConfig};
pub use teleport::{
    average_bob_state_branches, average_bob_state_density, run_teleportation, teleport_all_branches, BranchChoice,
    TeleportRun,
};

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::circuit::{bell_state, BellKind};
use crate::error::{Error, Result};
use crate::measure::{measure_bell_branches, measure_computational_branches, Outcome};
use crate::qmath::{StateVector, UnitaryGate};
use crate::scalar::Real;

pub const ALICE_UNKNOWN: usize = 0;
pub const ALICE_CHANNEL: usize = 1;
pub const BOB: usize = 2;
pub const CHARLIE: usize = 3;

/// The state to teleport, α|0⟩ + β|1⟩ with |α|² + |β|² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnknownQubit<T> {
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> UnknownQubit<T> {
    /// Rejects amplitudes that violate |α|² + |β|² = 1 within the scalar tolerance.
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        Self::with_tolerance(alpha, beta, T::tolerance())
    }

    pub fn with_tolerance(alpha: Complex<T>, beta: Complex<T>, tol: T) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sqr - T::one()).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr: norm_sqr.to_f64_lossy() });
        }
        Ok(Self { alpha, beta })
    }

    /// Draws a state uniformly on the Bloch sphere with a random global phase.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let cos_theta: f64 = rng.random_range(-1.0..=1.0);
        let half = cos_theta.acos() / 2.0;
        let pa: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let pb: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let alpha = Complex::from_polar(T::lit(half.cos()), T::lit(pa));
        let beta = Complex::from_polar(T::lit(half.sin()), T::lit(pb));
        Self { alpha, beta }
    }

    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    pub fn state(&self) -> StateVector<T> {
        StateVector::qubit(self.alpha, self.beta).expect("finite amplitudes")
    }

    /// The real coherence term α*β + β*α.
    pub fn coherence(&self) -> T {
        (self.alpha.conj() * self.beta + self.beta.conj() * self.alpha).re
    }
}

/// Bob's correction unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PauliCorrection {
    I,
    X,
    Z,
    ZX,
}

impl PauliCorrection {
    pub const ALL: [PauliCorrection; 4] = [PauliCorrection::I, PauliCorrection::X, PauliCorrection::Z, PauliCorrection::ZX];

    pub fn gate<T: Real>(self) -> UnitaryGate<T> {
        match self {
            PauliCorrection::I => UnitaryGate::identity(),
            PauliCorrection::X => UnitaryGate::pauli_x(),
            PauliCorrection::Z => UnitaryGate::pauli_z(),
            PauliCorrection::ZX => UnitaryGate::zx(),
        }
    }
}

impl fmt::Display for PauliCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PauliCorrection::I => "I",
            PauliCorrection::X => "X",
            PauliCorrection::Z => "Z",
            PauliCorrection::ZX => "ZX",
        };
        f.pad(s)
    }
}

/// Alice's Bell outcome together with Charlie's bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BranchKey {
    pub bell: BellKind,
    pub charlie: u8,
}

impl BranchKey {
    /// Table order: Charlie 1 rows first, each in ψ⁺, ψ⁻, φ⁺, φ⁻ order.
    pub const ALL: [BranchKey; 8] = [
        BranchKey { bell: BellKind::PsiPlus, charlie: 1 },
        BranchKey { bell: BellKind::PsiMinus, charlie: 1 },
        BranchKey { bell: BellKind::PhiPlus, charlie: 1 },
        BranchKey { bell: BellKind::PhiMinus, charlie: 1 },
        BranchKey { bell: BellKind::PsiPlus, charlie: 0 },
        BranchKey { bell: BellKind::PsiMinus, charlie: 0 },
        BranchKey { bell: BellKind::PhiPlus, charlie: 0 },
        BranchKey { bell: BellKind::PhiMinus, charlie: 0 },
    ];

    pub fn index(self) -> usize {
        (1 - self.charlie as usize) * 4 + self.bell.index()
    }
}

impl fmt::Display for BranchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.bell, self.charlie)
    }
}

fn check_channel<T: Real>(channel: &StateVector<T>) -> Result<()> {
    if channel.num_qubits() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: channel.num_qubits() });
    }
    if !channel.is_normalized(T::tolerance()) {
        return Err(Error::NotNormalized { norm_sqr: channel.norm_sqr().to_f64_lossy() });
    }
    Ok(())
}

/// Unknown qubit on qubit 0, channel on qubits 1–3.
pub fn build_product_state<T: Real>(unknown: &UnknownQubit<T>, channel: &StateVector<T>) -> Result<StateVector<T>> {
    check_channel(channel)?;
    unknown.state().tensor(channel)
}

/// One term of the Bell-basis expansion of the product state.
#[derive(Debug, Clone, PartialEq)]
pub struct BellComponent<T> {
    pub key: BranchKey,
    /// Norm of the component.
    pub coefficient: T,
    /// Bob's normalized state in this component; `None` when the component vanishes.
    pub bob_state: Option<StateVector<T>>,
}

/// Decomposes a four-qubit protocol state as
/// `Σ coefficient · |bell⟩₀₁ ⊗ |bob⟩₂ ⊗ |charlie⟩₃`.
pub fn expand_bell_branches<T: Real>(product: &StateVector<T>) -> Result<Vec<BellComponent<T>>> {
    if product.num_qubits() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: product.num_qubits() });
    }
    BranchKey::ALL
        .iter()
        .map(|&key| {
            let bra = bell_state::<T>(key.bell).tensor(&StateVector::basis(1, key.charlie as usize)?)?;
            let v = product.contract(&[ALICE_UNKNOWN, ALICE_CHANNEL, CHARLIE], &bra)?;
            let coefficient = v.norm();
            let bob_state = if coefficient > T::tolerance() { v.normalized().ok() } else { None };
            Ok(BellComponent { key, coefficient, bob_state })
        })
        .collect()
}

/// Inverse of [`expand_bell_branches`].
pub fn reassemble<T: Real>(components: &[BellComponent<T>]) -> Result<StateVector<T>> {
    let mut acc = StateVector::new(4, vec![Complex::new(T::zero(), T::zero()); 16])?;
    for comp in components {
        let Some(bob) = &comp.bob_state else { continue };
        let term = bell_state::<T>(comp.key.bell)
            .tensor(bob)?
            .tensor(&StateVector::basis(1, comp.key.charlie as usize)?)?
            .scaled(Complex::new(comp.coefficient, T::zero()));
        let amps = acc.amplitudes().iter().zip(term.amplitudes()).map(|(a, b)| *a + *b).collect();
        acc = StateVector::new(4, amps)?;
    }
    Ok(acc)
}

/// Outcome of Charlie's and Alice's measurements, before Bob acts.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ProtocolBranch<T> {
    pub key: BranchKey,
    pub probability: T,
    pub bob_state: Option<StateVector<T>>,
}

/// Bob's uncorrected state after Alice's pair has collapsed onto `bell`.
pub(crate) fn bob_state_after_bell<T: Real>(post: &StateVector<T>, bell: BellKind) -> Result<StateVector<T>> {
    post.contract(&[ALICE_UNKNOWN, ALICE_CHANNEL], &bell_state(bell))?.normalized()
}

/// Charlie measures qubit 3, then Alice Bell-measures qubits (0, 1).
/// Branches come back in [`BranchKey::ALL`] order.
pub(crate) fn protocol_branches<T: Real>(product: &StateVector<T>) -> Result<Vec<ProtocolBranch<T>>> {
    let charlie = measure_computational_branches(product, CHARLIE)?;
    let mut out = vec![None; 8];
    for cb in &charlie {
        let Outcome::Bit(bit) = cb.outcome else { unreachable!() };
        let alice = match &cb.post_state {
            Some(post) => Some(measure_bell_branches(post, ALICE_UNKNOWN, ALICE_CHANNEL)?),
            None => None,
        };
        for (i, bell) in BellKind::ALL.into_iter().enumerate() {
            let key = BranchKey { bell, charlie: bit };
            let branch = match &alice {
                Some(ab) => {
                    let bob_state = match &ab[i].post_state {
                        Some(post) => Some(bob_state_after_bell(post, bell)?),
                        None => None,
                    };
                    ProtocolBranch { key, probability: cb.probability * ab[i].probability, bob_state }
                }
                None => ProtocolBranch { key, probability: T::zero(), bob_state: None },
            };
            out[key.index()] = Some(branch);
        }
    }
    Ok(out.into_iter().map(|b| b.expect("all eight branches filled")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::yang_channel;
    use crate::scalar::c;

    #[test]
    fn unknown_qubit_normalization() {
        assert!(UnknownQubit::<f64>::new(c(0.6, 0.0), c(0.0, 0.8)).is_ok());
        let err = UnknownQubit::<f64>::new(c(0.5, 0.0), c(0.5, 0.0)).unwrap_err();
        assert_eq!(err, Error::NotNormalized { norm_sqr: 0.5 });
        assert!(err.to_string().contains("normalization constraint"));
        assert_eq!(UnknownQubit::<f64>::new(c(f64::NAN, 0.0), c(1.0, 0.0)), Err(Error::NonFinite));
    }

    #[test]
    fn branch_key_order_and_index() {
        for (i, k) in BranchKey::ALL.iter().enumerate() {
            assert_eq!(k.index(), i);
        }
    }

    #[test]
    fn zx_matrix_entries() {
        let m = PauliCorrection::ZX.gate::<f64>();
        assert_eq!(m.matrix().get(0, 1), c(1.0, 0.0));
        assert_eq!(m.matrix().get(1, 0), c(-1.0, 0.0));
        let zx = UnitaryGate::<f64>::pauli_z().matrix() * UnitaryGate::<f64>::pauli_x().matrix();
        assert_eq!(&zx, m.matrix());
    }

    #[test]
    fn product_state_with_alpha_one() {
        let u = UnknownQubit::<f64>::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let p = build_product_state(&u, &yang_channel()).unwrap();
        for (i, a) in p.amplitudes().iter().enumerate() {
            let expected = if [0b0001, 0b0010, 0b0100, 0b0111].contains(&i) { 0.5 } else { 0.0 };
            assert!((a - c(expected, 0.0)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn product_state_rejects_bad_channel() {
        let u = UnknownQubit::<f64>::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let two = StateVector::basis(2, 0).unwrap();
        assert!(matches!(build_product_state(&u, &two), Err(Error::DimensionMismatch { .. })));
        let unnormalized = StateVector::new(3, vec![c(1.0, 0.0); 8]).unwrap();
        assert!(matches!(build_product_state(&u, &unnormalized), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn branch_probabilities_are_an_eighth_on_yang() {
        let u = UnknownQubit::<f64>::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let p = build_product_state(&u, &yang_channel()).unwrap();
        let branches = protocol_branches(&p).unwrap();
        assert_eq!(branches.len(), 8);
        for b in &branches {
            assert!((b.probability - 0.125).abs() < 1e-15);
        }
    }
}
