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

//! Projective measurement.
//!
//! Exhaustive branch enumeration is the primary interface; sampling picks one
//! of the enumerated branches.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{bell_state, BellKind};
use crate::error::{Error, Result};
use crate::qmath::{CMatrix, StateVector};
use crate::scalar::Real;

/// Generator used for every sampled run; recorded in reports.
pub const PRNG_ALGORITHM: &str = "chacha8 (rand_chacha::ChaCha8Rng::seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Bit(u8),
    Bell(BellKind),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Bit(b) => write!(f, "{b}"),
            Outcome::Bell(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch<T> {
    pub outcome: Outcome,
    pub probability: T,
    /// Renormalized post-measurement state; `None` for a branch that cannot occur.
    pub post_state: Option<StateVector<T>>,
}

impl<T: Real> MeasurementBranch<T> {
    pub fn is_possible(&self) -> bool {
        self.post_state.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RandomSeed(pub u64);

fn finish<T: Real>(outcome: Outcome, weight: T, total: T, unnormalized: StateVector<T>) -> MeasurementBranch<T> {
    let probability = weight / total;
    let post_state = if probability > T::tolerance() {
        unnormalized.normalized().ok()
    } else {
        None
    };
    MeasurementBranch { outcome, probability, post_state }
}

/// Measures one qubit in the computational basis.
///
/// The measured qubit is removed from the post-states, except for a
/// single-qubit register where the collapsed basis state is kept.
pub fn measure_computational_branches<T: Real>(
    state: &StateVector<T>,
    qubit: usize,
) -> Result<[MeasurementBranch<T>; 2]> {
    let n = state.num_qubits();
    if qubit >= n {
        return Err(Error::QubitOutOfRange { index: qubit, num_qubits: n });
    }
    let residuals: Vec<StateVector<T>> = (0..2)
        .map(|b| {
            if n == 1 {
                let mut amps = vec![Complex::new(T::zero(), T::zero()); 2];
                amps[b] = state.amplitude(b);
                StateVector::new(1, amps)
            } else {
                state.contract(&[qubit], &StateVector::basis(1, b)?)
            }
        })
        .collect::<Result<_>>()?;
    let weights: Vec<T> = residuals.iter().map(|r| r.norm_sqr()).collect();
    let total = weights[0] + weights[1];
    if total <= T::min_positive_value() {
        return Err(Error::ZeroNorm);
    }
    let mut it = residuals.into_iter().zip(weights).enumerate().map(|(b, (r, w))| finish(Outcome::Bit(b as u8), w, total, r));
    Ok([it.next().unwrap(), it.next().unwrap()])
}

/// Measures qubits `(q1, q2)` in the Bell basis, in [`BellKind::ALL`] order.
///
/// Post-states keep every qubit, with the measured pair collapsed onto the
/// observed Bell state (`q1` as the high qubit of the pair).
pub fn measure_bell_branches<T: Real>(
    state: &StateVector<T>,
    q1: usize,
    q2: usize,
) -> Result<[MeasurementBranch<T>; 4]> {
    crate::qmath::check_targets(&[q1, q2], state.num_qubits())?;
    let mut projected = Vec::with_capacity(4);
    for kind in BellKind::ALL {
        let b = bell_state::<T>(kind);
        let projector = CMatrix::outer(b.amplitudes(), b.amplitudes());
        let p = state.apply_matrix(&projector, &[q1, q2])?;
        let w = p.norm_sqr();
        projected.push((kind, p, w));
    }
    let total = projected.iter().fold(T::zero(), |acc, (_, _, w)| acc + *w);
    if total <= T::min_positive_value() {
        return Err(Error::ZeroNorm);
    }
    let mut it = projected.into_iter().map(|(k, p, w)| finish(Outcome::Bell(k), w, total, p));
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// Picks a branch by inverse CDF over the listed order.
///
/// Returns the chosen branch and the seed for the next draw.
pub fn sample_branch<T: Real>(
    branches: &[MeasurementBranch<T>],
    seed: RandomSeed,
) -> Result<(MeasurementBranch<T>, RandomSeed)> {
    let probs: Vec<f64> = branches.iter().map(|b| b.probability.to_f64_lossy()).collect();
    let sum: f64 = probs.iter().sum();
    if branches.is_empty() || probs.iter().any(|p| !p.is_finite() || *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::DegenerateDistribution { sum });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let u: f64 = rng.random::<f64>() * sum;
    let next = RandomSeed(rng.next_u64());
    let mut acc = 0.0;
    let mut chosen = None;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc && *p > 0.0 {
            chosen = Some(i);
            break;
        }
    }
    // u can land on the rounding gap at the top of the CDF
    let i = chosen.unwrap_or_else(|| probs.iter().rposition(|p| *p > 0.0).unwrap_or(branches.len() - 1));
    Ok((branches[i].clone(), next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    type S = StateVector<f64>;

    #[test]
    fn computational_measurement_of_basis_state() {
        let [zero, one] = measure_computational_branches(&S::basis(1, 0).unwrap(), 0).unwrap();
        assert_eq!(zero.probability, 1.0);
        assert_eq!(one.probability, 0.0);
        assert!(one.post_state.is_none());
        assert_eq!(zero.post_state.unwrap(), S::basis(1, 0).unwrap());
    }

    #[test]
    fn computational_measurement_shrinks_register() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = S::new(2, vec![c(0.0, 0.0), c(h, 0.0), c(0.0, h), c(0.0, 0.0)]).unwrap();
        let [b0, b1] = measure_computational_branches(&s, 0).unwrap();
        assert!((b0.probability - 0.5).abs() < 1e-15);
        assert_eq!(b0.post_state.unwrap().num_qubits(), 1);
        assert!(b1.post_state.unwrap().approx_eq(&S::basis(1, 0).unwrap().scaled(c(0.0, 1.0)), 1e-15));
    }

    #[test]
    fn zero_state_rejected() {
        let s = S::new(1, vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(measure_computational_branches(&s, 0), Err(Error::ZeroNorm));
        let s2 = S::new(2, vec![c(0.0, 0.0); 4]).unwrap();
        assert_eq!(measure_bell_branches(&s2, 0, 1), Err(Error::ZeroNorm));
    }

    #[test]
    fn bell_eigenstate_measures_deterministically() {
        let s = bell_state::<f64>(BellKind::PsiPlus);
        let branches = measure_bell_branches(&s, 0, 1).unwrap();
        assert!((branches[0].probability - 1.0).abs() < 1e-15);
        assert_eq!(branches[0].outcome, Outcome::Bell(BellKind::PsiPlus));
        assert!(branches[1..].iter().all(|b| b.probability < 1e-15 && b.post_state.is_none()));
    }

    #[test]
    fn bell_measurement_index_errors() {
        let s = S::basis(3, 0).unwrap();
        assert_eq!(measure_bell_branches(&s, 1, 1), Err(Error::DuplicateQubit(1)));
        assert!(matches!(measure_bell_branches(&s, 0, 3), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn sampling_contracts() {
        let s = S::basis(1, 1).unwrap();
        let branches = measure_computational_branches(&s, 0).unwrap();
        let (b, _) = sample_branch(&branches, RandomSeed(1)).unwrap();
        assert_eq!(b.outcome, Outcome::Bit(1));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = S::qubit(c(h, 0.0), c(h, 0.0)).unwrap();
        let branches = measure_computational_branches(&plus, 0).unwrap();
        let first = sample_branch(&branches, RandomSeed(42)).unwrap();
        let again = sample_branch(&branches, RandomSeed(42)).unwrap();
        assert_eq!(first, again);

        assert!(matches!(sample_branch::<f64>(&[], RandomSeed(0)), Err(Error::DegenerateDistribution { .. })));
        let mut bad = branches.to_vec();
        bad[0].probability = 0.9;
        assert!(matches!(sample_branch(&bad, RandomSeed(0)), Err(Error::DegenerateDistribution { .. })));
    }
}
