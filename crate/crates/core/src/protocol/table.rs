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
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{build_product_state, check_channel, protocol_branches, BranchKey, PauliCorrection, UnknownQubit};
use crate::error::{Error, Result};
use crate::qmath::{pure_fidelity, StateVector};
use crate::scalar::Real;

/// Bob's correction for each of the eight (Alice, Charlie) outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable<T> {
    entries: [PauliCorrection; 8],
    verified: bool,
    sweep_size: usize,
    max_deviation: T,
}

impl<T: Real> CorrectionTable<T> {
    /// An unverified table with the given entries, in [`BranchKey::ALL`] order.
    pub fn from_entries(entries: [PauliCorrection; 8]) -> Self {
        Self { entries, verified: false, sweep_size: 0, max_deviation: T::infinity() }
    }

    pub fn get(&self, key: BranchKey) -> PauliCorrection {
        self.entries[key.index()]
    }

    pub fn with_entry(mut self, key: BranchKey, correction: PauliCorrection) -> Self {
        self.entries[key.index()] = correction;
        self.verified = false;
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (BranchKey, PauliCorrection)> + '_ {
        BranchKey::ALL.iter().map(move |&k| (k, self.entries[k.index()]))
    }

    pub fn corrections(&self) -> [PauliCorrection; 8] {
        self.entries
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn sweep_size(&self) -> usize {
        self.sweep_size
    }

    /// Largest `1 - F` seen during the randomized sweep.
    pub fn max_deviation(&self) -> T {
        self.max_deviation
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivationConfig<T> {
    pub sweep_size: usize,
    pub seed: u64,
    pub tolerance: T,
}

impl<T: Real> Default for DerivationConfig<T> {
    fn default() -> Self {
        Self { sweep_size: 1000, seed: 0x7ab1e, tolerance: T::tolerance() }
    }
}

/// |0⟩, |+⟩ and |+i⟩: enough to tell I, X, Z and ZX apart up to phase.
fn probe_inputs<T: Real>() -> [UnknownQubit<T>; 3] {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    [
        UnknownQubit::new(Complex::new(T::one(), z), Complex::new(z, z)).unwrap(),
        UnknownQubit::new(Complex::new(h, z), Complex::new(h, z)).unwrap(),
        UnknownQubit::new(Complex::new(h, z), Complex::new(z, h)).unwrap(),
    ]
}

pub fn derive_correction_table<T: Real>(channel: &StateVector<T>) -> Result<CorrectionTable<T>> {
    derive_correction_table_with(channel, &DerivationConfig::default())
}

/// Searches {I, X, Z, ZX} per branch, then confirms on a seeded random sweep.
///
/// A branch that never occurs for any probe input accepts any correction and
/// is assigned `I`.
pub fn derive_correction_table_with<T: Real>(
    channel: &StateVector<T>,
    config: &DerivationConfig<T>,
) -> Result<CorrectionTable<T>> {
    check_channel(channel)?;
    let tol = config.tolerance;
    let probes: Vec<(UnknownQubit<T>, Vec<_>)> = probe_inputs::<T>()
        .into_iter()
        .map(|u| Ok((u, protocol_branches(&build_product_state(&u, channel)?)?)))
        .collect::<Result<_>>()?;

    let mut entries = [PauliCorrection::I; 8];
    for key in BranchKey::ALL {
        let found = PauliCorrection::ALL.into_iter().find(|corr| {
            let gate = corr.gate::<T>();
            probes.iter().all(|(u, branches)| match &branches[key.index()].bob_state {
                Some(bob) => bob.apply_gate(&gate, &[0]).map(|s| s.eq_up_to_phase(&u.state(), tol)).unwrap_or(false),
                None => true,
            })
        });
        entries[key.index()] = found.ok_or(Error::NoCorrectionFound { bell: key.bell, charlie: key.charlie })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let gates: Vec<_> = entries.iter().map(|c| c.gate::<T>()).collect();
    let mut max_deviation = T::zero();
    for _ in 0..config.sweep_size {
        let u = UnknownQubit::<T>::random(&mut rng);
        let target = u.state();
        for branch in protocol_branches(&build_product_state(&u, channel)?)? {
            if let Some(bob) = branch.bob_state {
                let corrected = bob.apply_gate(&gates[branch.key.index()], &[0])?;
                let f = pure_fidelity(&target, &corrected)?;
                max_deviation = max_deviation.max((T::one() - f).abs());
            }
        }
    }

    Ok(CorrectionTable {
        entries,
        verified: config.sweep_size > 0 && max_deviation <= tol,
        sweep_size: config.sweep_size,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{yang_channel, BellKind};

    #[test]
    fn unverified_until_swept() {
        let t = CorrectionTable::<f64>::from_entries([PauliCorrection::I; 8]);
        assert!(!t.is_verified());
        let cfg = DerivationConfig { sweep_size: 0, ..DerivationConfig::default() };
        let t = derive_correction_table_with(&yang_channel::<f64>(), &cfg).unwrap();
        assert!(!t.is_verified());
    }

    #[test]
    fn editing_an_entry_clears_verification() {
        let t = derive_correction_table(&yang_channel::<f64>()).unwrap();
        assert!(t.is_verified());
        let key = BranchKey { bell: BellKind::PsiPlus, charlie: 1 };
        let t = t.with_entry(key, PauliCorrection::X);
        assert!(!t.is_verified());
        assert_eq!(t.get(key), PauliCorrection::X);
    }
}
