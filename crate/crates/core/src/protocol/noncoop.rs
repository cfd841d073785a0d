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

use super::{build_product_state, UnknownQubit, ALICE_CHANNEL, ALICE_UNKNOWN};
use crate::circuit::{bell_state, yang_channel, BellKind};
use crate::error::Result;
use crate::measure::measure_bell_branches;
use crate::qmath::{fidelity, DensityMatrix, StateVector};
use crate::scalar::Real;

/// One Alice outcome when Charlie withholds his measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct NoncoopRow<T> {
    pub bell_outcome: BellKind,
    /// Bob–Charlie state (Bob high, Charlie low); `None` if the outcome cannot occur.
    pub joint_state: Option<StateVector<T>>,
    pub bob_reduced: Option<DensityMatrix<T>>,
    /// `⟨ψ|ρ_Bob|ψ⟩` given this outcome.
    pub conditional_fidelity: T,
    pub outcome_probability: T,
    /// `outcome_probability × conditional_fidelity`.
    pub weighted_fidelity: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoncoopReport<T> {
    pub rows: Vec<NoncoopRow<T>>,
    pub weighted_sum: T,
}

/// Alice Bell-measures her two qubits while Charlie keeps his unmeasured.
pub fn noncooperative_analysis<T: Real>(unknown: &UnknownQubit<T>, channel: &StateVector<T>) -> Result<NoncoopReport<T>> {
    let product = build_product_state(unknown, channel)?;
    let target = unknown.state();
    let branches = measure_bell_branches(&product, ALICE_UNKNOWN, ALICE_CHANNEL)?;
    let mut rows = Vec::with_capacity(4);
    for (kind, branch) in BellKind::ALL.into_iter().zip(branches) {
        let joint_state = match &branch.post_state {
            Some(post) => Some(post.contract(&[ALICE_UNKNOWN, ALICE_CHANNEL], &bell_state(kind))?.normalized()?),
            None => None,
        };
        let bob_reduced = joint_state.as_ref().map(|j| j.reduced_density(&[0])).transpose()?;
        let conditional_fidelity = match &bob_reduced {
            Some(rho) => fidelity(&target, rho)?,
            None => T::zero(),
        };
        rows.push(NoncoopRow {
            bell_outcome: kind,
            joint_state,
            bob_reduced,
            conditional_fidelity,
            outcome_probability: branch.probability,
            weighted_fidelity: branch.probability * conditional_fidelity,
        });
    }
    let weighted_sum = rows.iter().fold(T::zero(), |acc, r| acc + r.weighted_fidelity);
    Ok(NoncoopReport { rows, weighted_sum })
}

/// Closed-form weighted fidelities for the Yang channel, row order ψ⁺, ψ⁻, φ⁺, φ⁻:
/// ⅛[1 + c²], ⅛[1 − c²], ⅛[1 + c²], ⅛[1 − c²] with c = α*β + β*α.
pub fn closed_form_weighted_fidelities<T: Real>(unknown: &UnknownQubit<T>) -> [T; 4] {
    let c2 = unknown.coherence().powi(2);
    let eighth = T::lit(0.125);
    let plus = eighth * (T::one() + c2);
    let minus = eighth * (T::one() - c2);
    [plus, minus, plus, minus]
}

/// Whether Bob and Charlie can end up in a product state after Alice's
/// Bell measurement on the Yang channel.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityVerdict<T> {
    pub bell_outcome: BellKind,
    pub schmidt_rank: usize,
    pub schmidt_coefficients: Vec<T>,
    pub product: bool,
    /// Determinant of the 2×2 coefficient matrix of √2·|joint⟩
    /// (β² − α² on ψ± rows, α² − β² on φ± rows).
    pub determinant: Complex<T>,
}

pub fn refute_separability<T: Real>(
    unknown: &UnknownQubit<T>,
    bell_outcome: BellKind,
) -> Result<SeparabilityVerdict<T>> {
    let report = noncooperative_analysis(unknown, &yang_channel())?;
    let row = &report.rows[bell_outcome.index()];
    let joint = row.joint_state.as_ref().expect("every Bell outcome occurs with probability 1/4 on the Yang channel");
    let m = joint.coefficient_matrix(&[0])?;
    // rescale by √2 per entry, so the determinant by 2
    let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)) * T::lit(2.0);
    let schmidt_coefficients = joint.schmidt_coefficients(&[0])?;
    let schmidt_rank = schmidt_coefficients.iter().filter(|s| **s > T::schmidt_tolerance()).count();
    Ok(SeparabilityVerdict {
        bell_outcome,
        schmidt_rank,
        schmidt_coefficients,
        product: schmidt_rank == 1,
        determinant: det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn alpha_one_gives_eighths() {
        let u = UnknownQubit::<f64>::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let r = noncooperative_analysis(&u, &yang_channel()).unwrap();
        for row in &r.rows {
            assert!((row.weighted_fidelity - 0.125).abs() < 1e-15);
            assert!((row.outcome_probability - 0.25).abs() < 1e-15);
        }
        assert!((r.weighted_sum - 0.5).abs() < 1e-15);
    }

    #[test]
    fn equal_real_amplitudes_give_quarter_zero_pattern() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = UnknownQubit::<f64>::new(c(h, 0.0), c(h, 0.0)).unwrap();
        let r = noncooperative_analysis(&u, &yang_channel()).unwrap();
        let w: Vec<f64> = r.rows.iter().map(|r| r.weighted_fidelity).collect();
        for (got, want) in w.iter().zip([0.25, 0.0, 0.25, 0.0]) {
            assert!((got - want).abs() < 1e-15, "{w:?}");
        }
    }

    #[test]
    fn separability_examples() {
        let u = UnknownQubit::<f64>::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let v = refute_separability(&u, BellKind::PsiPlus).unwrap();
        assert_eq!(v.schmidt_rank, 2);
        assert!(!v.product);
        assert!((v.determinant - c(0.28, 0.0)).norm() < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = UnknownQubit::<f64>::new(c(h, 0.0), c(h, 0.0)).unwrap();
        let v = refute_separability(&u, BellKind::PsiPlus).unwrap();
        assert_eq!(v.schmidt_rank, 1);
        assert!(v.product);
    }
}
