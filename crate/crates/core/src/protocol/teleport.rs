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
use num_traits::One;

use super::{
    build_product_state, protocol_branches, BranchKey, CorrectionTable, UnknownQubit, ALICE_CHANNEL, ALICE_UNKNOWN,
    BOB, CHARLIE,
};
use crate::circuit::bell_state;
use crate::error::{Error, Result};
use crate::measure::{measure_bell_branches, measure_computational_branches, sample_branch, Outcome, RandomSeed};
use crate::qmath::{embed_operator, fidelity, CMatrix, DensityMatrix, StateVector};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchChoice {
    /// Force a particular outcome pair.
    Branch(BranchKey),
    /// Sample Charlie's bit and then Alice's outcome from the seed.
    Seeded(RandomSeed),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportRun<T> {
    pub key: BranchKey,
    pub probability: T,
    /// Bob's qubit after his correction.
    pub bob_state: StateVector<T>,
    pub fidelity: T,
    /// Seed state after sampling; `None` for a forced branch.
    pub next_seed: Option<RandomSeed>,
}

fn finish_run<T: Real>(
    unknown: &UnknownQubit<T>,
    table: &CorrectionTable<T>,
    key: BranchKey,
    probability: T,
    bob: &StateVector<T>,
    next_seed: Option<RandomSeed>,
) -> Result<TeleportRun<T>> {
    let bob_state = bob.apply_gate(&table.get(key).gate(), &[0])?;
    let fidelity = fidelity(&unknown.state(), &DensityMatrix::from_pure(&bob_state))?;
    Ok(TeleportRun { key, probability, bob_state, fidelity, next_seed })
}

/// One protocol instance: Charlie measures, Alice Bell-measures, Bob corrects.
pub fn run_teleportation<T: Real>(
    unknown: &UnknownQubit<T>,
    channel: &StateVector<T>,
    table: &CorrectionTable<T>,
    choice: BranchChoice,
) -> Result<TeleportRun<T>> {
    let product = build_product_state(unknown, channel)?;
    match choice {
        BranchChoice::Branch(key) => {
            let branch = protocol_branches(&product)?.swap_remove(key.index());
            let bob = branch.bob_state.ok_or(Error::ImpossibleBranch { bell: key.bell, charlie: key.charlie })?;
            finish_run(unknown, table, key, branch.probability, &bob, None)
        }
        BranchChoice::Seeded(seed) => {
            let charlie = measure_computational_branches(&product, CHARLIE)?;
            let (cb, seed) = sample_branch(&charlie, seed)?;
            let Outcome::Bit(bit) = cb.outcome else { unreachable!() };
            let post = cb.post_state.expect("sampled branch has nonzero probability");
            let alice = measure_bell_branches(&post, ALICE_UNKNOWN, ALICE_CHANNEL)?;
            let (ab, seed) = sample_branch(&alice, seed)?;
            let Outcome::Bell(bell) = ab.outcome else { unreachable!() };
            let post = ab.post_state.expect("sampled branch has nonzero probability");
            let bob = super::bob_state_after_bell(&post, bell)?;
            let key = BranchKey { bell, charlie: bit };
            finish_run(unknown, table, key, cb.probability * ab.probability, &bob, Some(seed))
        }
    }
}

/// Every branch that can occur, in [`BranchKey::ALL`] order.
pub fn teleport_all_branches<T: Real>(
    unknown: &UnknownQubit<T>,
    channel: &StateVector<T>,
    table: &CorrectionTable<T>,
) -> Result<Vec<TeleportRun<T>>> {
    let product = build_product_state(unknown, channel)?;
    protocol_branches(&product)?
        .into_iter()
        .filter_map(|b| b.bob_state.map(|bob| finish_run(unknown, table, b.key, b.probability, &bob, None)))
        .collect()
}

/// Bob's average state from the enumerated branches, `Σ p_k |bob_k⟩⟨bob_k|`.
///
/// With `table = None` Bob applies nothing.
pub fn average_bob_state_branches<T: Real>(
    unknown: &UnknownQubit<T>,
    channel: &StateVector<T>,
    table: Option<&CorrectionTable<T>>,
) -> Result<DensityMatrix<T>> {
    let product = build_product_state(unknown, channel)?;
    let parts = protocol_branches(&product)?
        .into_iter()
        .filter_map(|b| {
            let bob = b.bob_state?;
            let bob = match table {
                Some(t) => bob.apply_gate(&t.get(b.key).gate(), &[0]),
                None => Ok(bob),
            };
            Some(bob.map(|s| (b.probability, DensityMatrix::from_pure(&s))))
        })
        .collect::<Result<Vec<_>>>()?;
    DensityMatrix::mixture(&parts)
}

/// Bob's average state computed on the full density matrix.
///
/// The measurements and the outcome-conditioned correction form one quantum
/// channel with Kraus operators `K_k = U_k ⊗ (|bell⟩⟨bell| ⊗ |c⟩⟨c|)`; the
/// result is the partial trace of `Σ K_k ρ K_k†` onto Bob's qubit. No state
/// vector is collapsed along the way.
pub fn average_bob_state_density<T: Real>(
    unknown: &UnknownQubit<T>,
    channel: &StateVector<T>,
    table: Option<&CorrectionTable<T>>,
) -> Result<DensityMatrix<T>> {
    let rho = DensityMatrix::from_pure(&build_product_state(unknown, channel)?);
    let kraus = BranchKey::ALL
        .iter()
        .map(|&key| {
            let b = bell_state::<T>(key.bell);
            let bell_proj = embed_operator(&CMatrix::outer(b.amplitudes(), b.amplitudes()), 4, &[ALICE_UNKNOWN, ALICE_CHANNEL])?;
            let mut bit = CMatrix::zeros(2, 2);
            bit.set(key.charlie as usize, key.charlie as usize, Complex::one());
            let charlie_proj = embed_operator(&bit, 4, &[CHARLIE])?;
            let correction = match table {
                Some(t) => t.get(key).gate::<T>().embed(4, &[BOB])?,
                None => CMatrix::identity(16),
            };
            Ok(&(&correction * &bell_proj) * &charlie_proj)
        })
        .collect::<Result<Vec<_>>>()?;
    rho.apply_kraus(&kraus)?.partial_trace(&[BOB])
}
