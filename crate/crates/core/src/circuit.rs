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

//! Named gates, Bell states, the cascaded channel-preparation circuit and
//! the twelve-member GHZ-like channel family.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::{CMatrix, StateVector, UnitaryGate};
use crate::scalar::Real;

impl<T: Real> UnitaryGate<T> {
    fn from_known(matrix: CMatrix<T>) -> Self {
        Self::new(matrix).expect("named gate is unitary")
    }

    pub fn identity() -> Self {
        Self::from_known(CMatrix::identity(2))
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_known(CMatrix::from_real([[h, h], [h, -h]]))
    }

    pub fn pauli_x() -> Self {
        Self::from_known(CMatrix::from_real([[0.0, 1.0], [1.0, 0.0]]))
    }

    pub fn pauli_z() -> Self {
        Self::from_known(CMatrix::from_real([[1.0, 0.0], [0.0, -1.0]]))
    }

    /// The product Z·X = [[0, 1], [-1, 0]].
    pub fn zx() -> Self {
        Self::from_known(CMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]))
    }

    /// Controlled-NOT; the first target is the control.
    pub fn cnot() -> Self {
        Self::from_known(CMatrix::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]))
    }
}

/// The four Bell states, under the labeling used by the corrected tables:
///
/// * `PsiPlus`  = (|00⟩ + |11⟩)/√2
/// * `PsiMinus` = (|00⟩ − |11⟩)/√2
/// * `PhiPlus`  = (|01⟩ + |10⟩)/√2
/// * `PhiMinus` = (|01⟩ − |10⟩)/√2
///
/// Note that ψ and φ are swapped with respect to the more common textbook
/// assignment. The correction table and the non-cooperative fidelity table
/// only come out as published under this labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BellKind {
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
}

impl BellKind {
    /// Table row order: ψ⁺, ψ⁻, φ⁺, φ⁻.
    pub const ALL: [BellKind; 4] = [BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
        }
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.symbol())
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi+" | "psiplus" => Ok(BellKind::PsiPlus),
            "psi-" | "psiminus" => Ok(BellKind::PsiMinus),
            "phi+" | "phiplus" => Ok(BellKind::PhiPlus),
            "phi-" | "phiminus" => Ok(BellKind::PhiMinus),
            other => Err(Error::Parse(format!("unknown Bell state '{other}' (expected psi+, psi-, phi+ or phi-)"))),
        }
    }
}

pub fn bell_state<T: Real>(kind: BellKind) -> StateVector<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = Complex::zero();
    let p = Complex::new(h, T::zero());
    let amps = match kind {
        BellKind::PsiPlus => vec![p, z, z, p],
        BellKind::PsiMinus => vec![p, z, z, -p],
        BellKind::PhiPlus => vec![z, p, p, z],
        BellKind::PhiMinus => vec![z, p, -p, z],
    };
    StateVector::new(2, amps).expect("Bell state is well formed")
}

/// `(1/√2)(|B0⟩|0⟩ + |B1⟩|1⟩)` with distinct Bell states `B0 ≠ B1`.
///
/// Local qubit order: 0 = Alice's channel qubit, 1 = Bob, 2 = Charlie.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChannelSpec {
    pub bell_for_zero: BellKind,
    pub bell_for_one: BellKind,
    pub label: String,
}

impl ChannelSpec {
    pub fn new(bell_for_zero: BellKind, bell_for_one: BellKind) -> Result<Self> {
        if bell_for_zero == bell_for_one {
            return Err(Error::IdenticalBellPair(bell_for_zero));
        }
        Ok(Self { bell_for_zero, bell_for_one, label: format!("{bell_for_zero}:0,{bell_for_one}:1") })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// ½(|001⟩+|010⟩+|100⟩+|111⟩), i.e. φ⁺ on |0⟩ and ψ⁺ on |1⟩.
    pub fn yang() -> Self {
        Self::new(BellKind::PhiPlus, BellKind::PsiPlus).unwrap().with_label("yang")
    }

    /// ½(|000⟩+|110⟩+|101⟩+|011⟩), i.e. ψ⁺ on |0⟩ and φ⁺ on |1⟩.
    pub fn zhang() -> Self {
        Self::new(BellKind::PsiPlus, BellKind::PhiPlus).unwrap().with_label("zhang")
    }

    /// Raw `b0:0,b1:1` form of the spec, independent of the label.
    pub fn pair_notation(&self) -> String {
        format!("{}:0,{}:1", self.bell_for_zero, self.bell_for_one)
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    /// Parses `psi+:0,phi+:1` (either order of the two parts).
    fn from_str(s: &str) -> Result<Self> {
        let mut zero = None;
        let mut one = None;
        for part in s.split(',') {
            let (bell, bit) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected <bell>:<bit> in '{part}'")))?;
            let bell: BellKind = bell.parse()?;
            match bit.trim() {
                "0" => zero = Some(bell),
                "1" => one = Some(bell),
                other => return Err(Error::Parse(format!("Charlie bit must be 0 or 1, got '{other}'"))),
            }
        }
        match (zero, one) {
            (Some(z), Some(o)) => Self::new(z, o),
            _ => Err(Error::Parse(format!("channel spec '{s}' must name a Bell state for both 0 and 1"))),
        }
    }
}

pub fn channel_from_spec<T: Real>(spec: &ChannelSpec) -> Result<StateVector<T>> {
    if spec.bell_for_zero == spec.bell_for_one {
        return Err(Error::IdenticalBellPair(spec.bell_for_zero));
    }
    Ok(channel_from_pair(spec.bell_for_zero, spec.bell_for_one))
}

/// Same construction without the distinctness check; used to inspect the
/// excluded diagonal states.
pub fn channel_from_pair<T: Real>(bell_for_zero: BellKind, bell_for_one: BellKind) -> StateVector<T> {
    let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let zero = StateVector::basis(1, 0).unwrap();
    let one = StateVector::basis(1, 1).unwrap();
    let a = bell_state::<T>(bell_for_zero).tensor(&zero).unwrap();
    let b = bell_state::<T>(bell_for_one).tensor(&one).unwrap();
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (*x + *y) * h).collect();
    StateVector::new(3, amps).unwrap()
}

/// All ordered pairs of distinct Bell states: 4 × 3 = 12 channels.
pub fn enumerate_family() -> Vec<ChannelSpec> {
    let yang = ChannelSpec::yang();
    let zhang = ChannelSpec::zhang();
    BellKind::ALL
        .iter()
        .flat_map(|&b0| BellKind::ALL.iter().filter(move |&&b1| b1 != b0).map(move |&b1| (b0, b1)))
        .map(|(b0, b1)| {
            let spec = ChannelSpec::new(b0, b1).unwrap();
            if spec.pair_notation() == yang.pair_notation() {
                spec.with_label("yang")
            } else if spec.pair_notation() == zhang.pair_notation() {
                spec.with_label("zhang")
            } else {
                spec
            }
        })
        .collect()
}

/// Gate list applied to a three-qubit basis input.
#[derive(Debug, Clone)]
pub struct PreparationCircuit<T> {
    pub steps: Vec<(UnitaryGate<T>, Vec<usize>)>,
    pub input_bits: (u8, u8, u8),
}

impl<T: Real> PreparationCircuit<T> {
    /// Two EPR circuits in cascade: H on qubit 1, CNOT 1→2, H on qubit 0,
    /// CNOT 0→1.
    pub fn cascaded_epr(u: u8, v: u8, w: u8) -> Result<Self> {
        for b in [u, v, w] {
            if b > 1 {
                return Err(Error::Parse(format!("input bit must be 0 or 1, got {b}")));
            }
        }
        let h = UnitaryGate::hadamard();
        let cx = UnitaryGate::cnot();
        Ok(Self {
            steps: vec![(h.clone(), vec![1]), (cx.clone(), vec![1, 2]), (h, vec![0]), (cx, vec![0, 1])],
            input_bits: (u, v, w),
        })
    }

    pub fn run(&self) -> Result<StateVector<T>> {
        let (u, v, w) = self.input_bits;
        let index = ((u as usize) << 2) | ((v as usize) << 1) | w as usize;
        self.steps.iter().try_fold(StateVector::basis(3, index)?, |s, (g, t)| s.apply_gate(g, t))
    }
}

pub fn prepare_channel<T: Real>(u: u8, v: u8, w: u8) -> Result<StateVector<T>> {
    PreparationCircuit::cascaded_epr(u, v, w)?.run()
}

pub fn yang_channel<T: Real>() -> StateVector<T> {
    prepare_channel(0, 0, 1).unwrap()
}

pub fn zhang_channel<T: Real>() -> StateVector<T> {
    prepare_channel(0, 0, 0).unwrap()
}

/// Operational GHZ-class test: every single-qubit reduced state is I/2 and
/// every one-vs-two bipartition has Schmidt rank 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhzClassCheck {
    /// Max deviation of each single-qubit reduced state from I/2.
    pub reduced_deviation: [f64; 3],
    /// Schmidt ranks across {0}|{1,2}, {1}|{0,2}, {2}|{0,1}.
    pub schmidt_ranks: [usize; 3],
    pub passed: bool,
}

pub fn ghz_class_check<T: Real>(channel: &StateVector<T>, tol: T) -> Result<GhzClassCheck> {
    if channel.num_qubits() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: channel.num_qubits() });
    }
    let half = CMatrix::identity(2).scale(Complex::new(T::lit(0.5), T::zero()));
    let mut reduced_deviation = [0.0; 3];
    let mut schmidt_ranks = [0; 3];
    for q in 0..3 {
        reduced_deviation[q] = channel.reduced_density(&[q])?.matrix().max_abs_diff(&half).to_f64_lossy();
        schmidt_ranks[q] = channel.schmidt_rank(&[q], T::schmidt_tolerance())?;
    }
    let passed = reduced_deviation.iter().all(|&d| d <= tol.to_f64_lossy()) && schmidt_ranks.iter().all(|&r| r == 2);
    Ok(GhzClassCheck { reduced_deviation, schmidt_ranks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    type S = StateVector<f64>;

    fn half_sum(indices: &[usize]) -> S {
        let mut amps = vec![c(0.0, 0.0); 8];
        for &i in indices {
            amps[i] = c(0.5, 0.0);
        }
        S::new(3, amps).unwrap()
    }

    #[test]
    fn bell_state_definitions() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi_plus = bell_state::<f64>(BellKind::PsiPlus);
        assert_eq!(psi_plus.amplitudes(), &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        let phi_minus = bell_state::<f64>(BellKind::PhiMinus);
        assert_eq!(phi_minus.amplitudes(), &[c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellKind::ALL {
            for b in BellKind::ALL {
                let ip = bell_state::<f64>(a).inner(&bell_state(b)).unwrap();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ip - c(expected, 0.0)).norm() < 1e-15, "{a} {b}");
            }
        }
    }

    #[test]
    fn yang_and_zhang_from_the_circuit() {
        assert!(prepare_channel::<f64>(0, 0, 1).unwrap().max_abs_diff(&half_sum(&[1, 2, 4, 7])) <= 1e-15);
        assert!(prepare_channel::<f64>(0, 0, 0).unwrap().max_abs_diff(&half_sum(&[0, 3, 5, 6])) < 1e-15);
    }

    #[test]
    fn family_forms_match_named_channels() {
        let yang: S = channel_from_spec(&ChannelSpec::yang()).unwrap();
        let zhang: S = channel_from_spec(&ChannelSpec::zhang()).unwrap();
        assert!(yang.approx_eq(&half_sum(&[1, 2, 4, 7]), 1e-15));
        assert!(zhang.approx_eq(&half_sum(&[0, 3, 5, 6]), 1e-15));
    }

    #[test]
    fn identical_pair_rejected() {
        assert_eq!(ChannelSpec::new(BellKind::PhiPlus, BellKind::PhiPlus), Err(Error::IdenticalBellPair(BellKind::PhiPlus)));
        let bad = ChannelSpec { bell_for_zero: BellKind::PsiMinus, bell_for_one: BellKind::PsiMinus, label: "x".into() };
        assert!(channel_from_spec::<f64>(&bad).is_err());
    }

    #[test]
    fn parses_pair_notation() {
        let spec: ChannelSpec = "psi+:0,phi+:1".parse().unwrap();
        assert_eq!(spec.pair_notation(), ChannelSpec::zhang().pair_notation());
        let spec: ChannelSpec = "psi+:1, phi+:0".parse().unwrap();
        assert_eq!(spec.pair_notation(), ChannelSpec::yang().pair_notation());
        assert!("psi+:0".parse::<ChannelSpec>().is_err());
        assert!("psi+:2,phi+:1".parse::<ChannelSpec>().is_err());
        assert!("chi+:0,phi+:1".parse::<ChannelSpec>().is_err());
    }

    #[test]
    fn family_has_twelve_distinct_members() {
        let family = enumerate_family();
        assert_eq!(family.len(), 12);
        let states: Vec<S> = family.iter().map(|s| channel_from_spec(s).unwrap()).collect();
        for i in 0..12 {
            for j in (i + 1)..12 {
                assert!(!states[i].eq_up_to_phase(&states[j], 1e-9), "{} vs {}", family[i].label, family[j].label);
            }
        }
        assert_eq!(family.iter().filter(|s| s.label == "yang").count(), 1);
        assert_eq!(family.iter().filter(|s| s.label == "zhang").count(), 1);
    }

    #[test]
    fn bad_input_bit_rejected() {
        assert!(prepare_channel::<f64>(0, 2, 0).is_err());
    }
}
