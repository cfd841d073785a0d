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

//! Hand-derived reference values checked against the library.

use std::f64::consts::FRAC_1_SQRT_2;

use ghz_teleport::circuit::{
    bell_state, channel_from_pair, enumerate_family, prepare_channel, yang_channel, zhang_channel, BellKind,
    ChannelSpec,
};
use ghz_teleport::measure::{measure_bell_branches, measure_computational_branches, sample_branch, Outcome, RandomSeed};
use ghz_teleport::protocol::{
    build_product_state, derive_correction_table, expand_bell_branches, noncooperative_analysis,
    closed_form_weighted_fidelities, run_teleportation, teleport_all_branches, BranchChoice, BranchKey, PauliCorrection,
    UnknownQubit,
};
use ghz_teleport::qmath::{fidelity, tensor_product, CMatrix, DensityMatrix, StateVector};
use ghz_teleport::{Complex64, Error, State};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ket(amps: &[Complex64]) -> State {
    StateVector::from_amplitudes(amps.to_vec()).unwrap()
}

fn sample_unknown() -> UnknownQubit<f64> {
    UnknownQubit::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap()
}

#[test]
fn bell_states_follow_the_library_labels() {
    let h = FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let cases = [
        (BellKind::PsiPlus, [c(h, 0.0), z, z, c(h, 0.0)]),
        (BellKind::PsiMinus, [c(h, 0.0), z, z, c(-h, 0.0)]),
        (BellKind::PhiPlus, [z, c(h, 0.0), c(h, 0.0), z]),
        (BellKind::PhiMinus, [z, c(h, 0.0), c(-h, 0.0), z]),
    ];
    for (kind, amps) in cases {
        assert!(bell_state::<f64>(kind).max_abs_diff(&ket(&amps)) < 1e-15, "{kind}");
    }
}

#[test]
fn named_channels_have_expected_support() {
    // cascade by hand: H(q1), CNOT(1→2), H(q0), CNOT(0→1)
    let mut yang = vec![c(0.0, 0.0); 8];
    for i in [1, 2, 4, 7] {
        yang[i] = c(0.5, 0.0);
    }
    let mut zhang = vec![c(0.0, 0.0); 8];
    for i in [0, 3, 5, 6] {
        zhang[i] = c(0.5, 0.0);
    }
    assert!(yang_channel::<f64>().max_abs_diff(&ket(&yang)) <= 1e-15);
    assert!(zhang_channel::<f64>().max_abs_diff(&ket(&zhang)) <= 1e-15);
    assert!(prepare_channel::<f64>(0, 0, 1).unwrap().max_abs_diff(&ket(&yang)) <= 1e-15);
}

#[test]
fn preparation_outputs_form_an_orthonormal_ghz_basis() {
    let outs: Vec<State> = (0..8u8)
        .map(|i| prepare_channel(i >> 2 & 1, i >> 1 & 1, i & 1).unwrap())
        .collect();
    for (i, a) in outs.iter().enumerate() {
        for (j, b) in outs.iter().enumerate() {
            let ip = a.inner(b).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((ip - c(want, 0.0)).norm() < TOL, "<{i}|{j}> = {ip}");
        }
        for q in 0..3 {
            let rho = a.reduced_density(&[q]).unwrap();
            let mixed = DensityMatrix::maximally_mixed(1).unwrap();
            assert!(rho.max_abs_diff(&mixed) < TOL, "input {i} qubit {q}");
        }
    }
}

#[test]
fn diagonal_pairs_are_biseparable() {
    let mut total = 0;
    for b0 in BellKind::ALL {
        for b1 in BellKind::ALL {
            let ch = channel_from_pair::<f64>(b0, b1);
            let rank = ch.schmidt_rank(&[0, 1], 1e-10).unwrap();
            assert_eq!(rank == 1, b0 == b1, "({b0}, {b1})");
            total += 1;
        }
    }
    assert_eq!(total, 16);
    assert_eq!(enumerate_family().len(), 12);
    assert!(matches!(ChannelSpec::new(BellKind::PhiPlus, BellKind::PhiPlus), Err(Error::IdenticalBellPair(_))));
}

#[test]
fn product_state_of_unknown_and_channel() {
    let u = sample_unknown();
    let p = build_product_state(&u, &yang_channel()).unwrap();
    for i in 0..16 {
        let coef = if i < 8 { u.alpha() } else { u.beta() };
        let ch = if [1, 2, 4, 7].contains(&(i % 8)) { 0.5 } else { 0.0 };
        assert!((p.amplitude(i) - coef * ch).norm() <= 1e-15, "index {i}");
    }
}

#[test]
fn bob_states_before_correction() {
    // Bob's qubit in each branch, up to phase, for the published table I Z X ZX X ZX I Z
    let u = sample_unknown();
    let (a, b) = (u.alpha(), u.beta());
    let id = ket(&[a, b]);
    let z = ket(&[a, -b]);
    let x = ket(&[b, a]);
    let zx = ket(&[b, -a]);
    let expected = [&id, &z, &x, &zx, &x, &zx, &id, &z];
    let comps = expand_bell_branches(&build_product_state(&u, &yang_channel()).unwrap()).unwrap();
    for (comp, want) in comps.iter().zip(expected) {
        let bob = comp.bob_state.as_ref().unwrap();
        assert!(bob.eq_up_to_phase(want, TOL), "{}", comp.key);
        assert!((comp.coefficient - 0.125f64.sqrt()).abs() < TOL);
    }
}

#[test]
fn zhang_table_is_fixed() {
    use PauliCorrection::*;
    let table = derive_correction_table(&zhang_channel::<f64>()).unwrap();
    assert_eq!(table.corrections(), [X, ZX, I, Z, I, Z, X, ZX]);
    assert!(table.is_verified());
}

#[test]
fn literal_biseparable_fixture_still_teleports() {
    // Bell pair between Alice and Bob, Charlie in |+⟩: Charlie's bit carries no phase.
    let plus = ket(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
    let ch = tensor_product(&bell_state(BellKind::PhiPlus), &plus).unwrap();
    assert!(derive_correction_table(&ch).unwrap().is_verified());
}

#[test]
fn channel_without_alice_link_has_no_table() {
    let plus = ket(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
    let ch = tensor_product(&plus, &bell_state(BellKind::PsiPlus)).unwrap();
    assert!(matches!(derive_correction_table(&ch), Err(Error::NoCorrectionFound { .. })));
}

#[test]
fn wrong_correction_is_detected() {
    let ch = yang_channel::<f64>();
    let key = BranchKey { bell: BellKind::PsiPlus, charlie: 1 };
    let table = derive_correction_table(&ch).unwrap().with_entry(key, PauliCorrection::X);
    assert!(!table.is_verified());
    let u = UnknownQubit::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let run = run_teleportation(&u, &ch, &table, BranchChoice::Branch(key)).unwrap();
    assert!(run.fidelity.abs() < TOL);
    let good = derive_correction_table(&ch).unwrap();
    assert!(teleport_all_branches(&u, &ch, &good).unwrap().iter().all(|r| (r.fidelity - 1.0).abs() < TOL));
}

#[test]
fn noncooperative_rows_match_closed_form() {
    for (a, b) in [(c(0.6, 0.0), c(0.8, 0.0)), (c(0.6, 0.0), c(0.0, 0.8)), (c(1.0, 0.0), c(0.0, 0.0))] {
        let u = UnknownQubit::new(a, b).unwrap();
        let cc = (a.conj() * b + b.conj() * a).re;
        let report = noncooperative_analysis(&u, &yang_channel()).unwrap();
        for row in &report.rows {
            let sign = match row.bell_outcome {
                BellKind::PsiPlus | BellKind::PhiPlus => 1.0,
                BellKind::PsiMinus | BellKind::PhiMinus => -1.0,
            };
            let rho = CMatrix::from_real([[0.5, sign * cc / 2.0], [sign * cc / 2.0, 0.5]]);
            let got = row.bob_reduced.as_ref().unwrap();
            assert!(got.matrix().max_abs_diff(&rho) < TOL, "{}", row.bell_outcome);
            assert!((row.outcome_probability - 0.25).abs() < TOL);
            assert!((row.conditional_fidelity - 0.5 * (1.0 + sign * cc * cc)).abs() < TOL);
            let direct = fidelity(&u.state(), got).unwrap();
            assert!((direct - row.conditional_fidelity).abs() < TOL);
        }
        let closed_form = closed_form_weighted_fidelities(&u);
        for (row, p) in report.rows.iter().zip(closed_form) {
            assert!((row.weighted_fidelity - p).abs() < TOL);
        }
        assert!((report.weighted_sum - 0.5).abs() < TOL);
    }
}

#[test]
fn basis_input_gives_one_eighth_per_row() {
    let u = UnknownQubit::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
    let report = noncooperative_analysis(&u, &yang_channel()).unwrap();
    assert!(report.rows.iter().all(|r| (r.weighted_fidelity - 0.125).abs() < TOL));
}

#[test]
fn computational_measurement_of_plus_state() {
    let plus = ket(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
    let s = tensor_product(&plus, &StateVector::basis(1, 0).unwrap()).unwrap();
    let [b0, b1] = measure_computational_branches(&s, 0).unwrap();
    assert_eq!(b0.outcome, Outcome::Bit(0));
    assert!((b0.probability - 0.5).abs() < TOL && (b1.probability - 0.5).abs() < TOL);
    let zero = StateVector::basis(1, 0).unwrap();
    assert!(b1.post_state.unwrap().approx_eq(&zero, TOL));
}

#[test]
fn bell_measurement_of_a_bell_state_is_certain() {
    for kind in BellKind::ALL {
        let branches = measure_bell_branches(&bell_state::<f64>(kind), 0, 1).unwrap();
        for b in &branches {
            let want = if b.outcome == Outcome::Bell(kind) { 1.0 } else { 0.0 };
            assert!((b.probability - want).abs() < TOL);
            assert_eq!(b.post_state.is_some(), want > 0.0);
        }
    }
}

#[test]
fn sampling_frequencies_within_three_sigma() {
    let s = ket(&[c(0.5, 0.0), c(0.0, 0.5), c(0.1f64.sqrt(), 0.0), c(0.15f64.sqrt(), 0.0)]);
    let branches = measure_bell_branches(&s, 0, 1).unwrap();
    let draws = 100_000;
    let mut counts = [0usize; 4];
    let mut seed = RandomSeed(2024);
    for _ in 0..draws {
        let (b, next) = sample_branch(&branches, seed).unwrap();
        seed = next;
        let Outcome::Bell(k) = b.outcome else { unreachable!() };
        counts[k.index()] += 1;
    }
    for (b, n) in branches.iter().zip(counts) {
        let p = b.probability;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((n as f64 - draws as f64 * p).abs() <= 3.0 * sigma, "{}: {n} draws at p = {p}", b.outcome);
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let ch = yang_channel::<f64>();
    let table = derive_correction_table(&ch).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let u = UnknownQubit::<f64>::random(&mut rng);
    let a = run_teleportation(&u, &ch, &table, BranchChoice::Seeded(RandomSeed(99))).unwrap();
    let b = run_teleportation(&u, &ch, &table, BranchChoice::Seeded(RandomSeed(99))).unwrap();
    assert_eq!(a, b);
    assert!((a.fidelity - 1.0).abs() < TOL);
}

#[test]
fn single_precision_pipeline() {
    let table = derive_correction_table(&yang_channel::<f32>()).unwrap();
    let table64 = derive_correction_table(&yang_channel::<f64>()).unwrap();
    assert!(table.is_verified());
    assert_eq!(table.corrections(), table64.corrections());
    let u = UnknownQubit::<f32>::new(num_complex::Complex::new(0.6, 0.0), num_complex::Complex::new(0.0, 0.8)).unwrap();
    for run in teleport_all_branches(&u, &yang_channel(), &table).unwrap() {
        assert!((run.fidelity - 1.0).abs() < 1e-5);
    }
}
