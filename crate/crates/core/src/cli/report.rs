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

//! Report records and their text/csv/json renderings.
//!
//! JSON is the authoritative form: every float is written with the shortest
//! representation that parses back to the same `f64`. CSV uses the same
//! formatting; text rounds to six decimals.

use std::fmt::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::args::ReportFormat;
use crate::circuit::BellKind;
use crate::protocol::PauliCorrection;

pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> String;
    fn passed(&self) -> bool;

    fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.text(),
            ReportFormat::Csv => self.csv(),
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn ctext(z: Pair) -> String {
    format!("{:.6}{:+.6}i", z[0], z[1])
}

#[derive(Debug, Serialize)]
pub struct Table1Row {
    pub alice: BellKind,
    pub charlie: u8,
    pub bob: PauliCorrection,
}

#[derive(Debug, Serialize)]
pub struct Table1Report {
    pub command: &'static str,
    pub channel: String,
    pub rows: Vec<Table1Row>,
    pub verified: bool,
    pub sweep_size: usize,
    pub max_fidelity_deviation: f64,
    pub tolerance: f64,
}

impl Report for Table1Report {
    fn text(&self) -> String {
        let mut s = format!("Correction table for channel {}\n", self.channel);
        let _ = writeln!(s, "{:<10} {:<10} Bob", "Alice", "Charlie");
        for r in &self.rows {
            let _ = writeln!(s, "{:<10} {:<10} {}", r.alice, r.charlie, r.bob);
        }
        let _ = writeln!(
            s,
            "verified: {} (sweep {} random inputs x 8 branches, max fidelity deviation {:.3e}, tolerance {:e})",
            self.verified, self.sweep_size, self.max_fidelity_deviation, self.tolerance
        );
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("alice,charlie,bob\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{}", r.alice, r.charlie, r.bob);
        }
        s
    }

    fn passed(&self) -> bool {
        self.verified
    }
}

#[derive(Debug, Serialize)]
pub struct Table2Row {
    pub alice: BellKind,
    /// Bob–Charlie amplitudes over |00⟩, |01⟩, |10⟩, |11⟩ (Bob first); empty if the outcome cannot occur.
    pub joint_state: Vec<Pair>,
    pub bob_reduced: Vec<Vec<Pair>>,
    pub conditional_fidelity: f64,
    pub probability: f64,
    pub weighted_fidelity: f64,
    /// ⅛[1 ± (α*β+β*α)²] for this row.
    pub formula_weighted_fidelity: f64,
}

#[derive(Debug, Serialize)]
pub struct Table2Report {
    pub command: &'static str,
    pub channel: String,
    pub alpha: Pair,
    pub beta: Pair,
    pub coherence: f64,
    pub rows: Vec<Table2Row>,
    pub weighted_sum: f64,
    /// Whether the rows reproduce the closed form; only checked for the Yang channel.
    pub matches_formula: Option<bool>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Report for Table2Report {
    fn text(&self) -> String {
        let mut s = format!(
            "Non-cooperative Charlie, channel {}, alpha = {}, beta = {}, c = a*b+b*a = {:.6}\n",
            self.channel,
            ctext(self.alpha),
            ctext(self.beta),
            self.coherence
        );
        let _ = writeln!(s, "{:<6} {:<84} {:>10} {:>10} {:>10}", "Alice", "Bob-Charlie state (|00>,|01>,|10>,|11>)", "F(cond)", "prob", "F(weight)");
        for r in &self.rows {
            let joint = r.joint_state.iter().map(|z| ctext(*z)).collect::<Vec<_>>().join(", ");
            let _ = writeln!(
                s,
                "{:<6} {:<84} {:>10.6} {:>10.6} {:>10.6}",
                r.alice, joint, r.conditional_fidelity, r.probability, r.weighted_fidelity
            );
        }
        let _ = writeln!(s, "sum of weighted fidelities: {:.6}", self.weighted_sum);
        if let Some(m) = self.matches_formula {
            let _ = writeln!(s, "matches 1/8[1 +- c^2]: {m}");
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from(
            "alice,j00_re,j00_im,j01_re,j01_im,j10_re,j10_im,j11_re,j11_im,conditional_fidelity,probability,weighted_fidelity,formula_weighted_fidelity\n",
        );
        for r in &self.rows {
            let _ = write!(s, "{}", r.alice);
            for k in 0..4 {
                let z = r.joint_state.get(k).copied().unwrap_or([f64::NAN; 2]);
                let _ = write!(s, ",{},{}", z[0], z[1]);
            }
            let _ = writeln!(
                s,
                ",{},{},{},{}",
                r.conditional_fidelity, r.probability, r.weighted_fidelity, r.formula_weighted_fidelity
            );
        }
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Debug, Serialize)]
pub struct SampledRun {
    pub charlie: u8,
    pub alice: BellKind,
    pub correction: PauliCorrection,
    pub probability: f64,
    pub bob_state: Vec<Pair>,
    pub fidelity: f64,
    pub next_seed: u64,
}

#[derive(Debug, Serialize)]
pub struct BranchRow {
    pub alice: BellKind,
    pub charlie: u8,
    pub correction: PauliCorrection,
    pub probability: f64,
    pub fidelity: f64,
}

#[derive(Debug, Serialize)]
pub struct TeleportReport {
    pub command: &'static str,
    pub channel: String,
    pub alpha: Pair,
    pub beta: Pair,
    pub seed: u64,
    pub prng: &'static str,
    pub table_verified: bool,
    pub sampled: Option<SampledRun>,
    pub branches: Vec<BranchRow>,
    pub min_fidelity: Option<f64>,
    pub failure: Option<String>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Report for TeleportReport {
    fn text(&self) -> String {
        let mut s = format!(
            "Teleport alpha = {}, beta = {} through channel {} (seed {}, {})\n",
            ctext(self.alpha),
            ctext(self.beta),
            self.channel,
            self.seed,
            self.prng
        );
        if let Some(f) = &self.failure {
            let _ = writeln!(s, "FAILED: {f}");
            return s;
        }
        if let Some(r) = &self.sampled {
            let _ = writeln!(
                s,
                "sampled run: Charlie {} -> Alice {} -> Bob applies {} -> fidelity {:.6} (branch probability {:.6})",
                r.charlie, r.alice, r.correction, r.fidelity, r.probability
            );
        }
        let _ = writeln!(s, "{:<8} {:<8} {:<5} {:>10} {:>10}", "Alice", "Charlie", "Bob", "prob", "fidelity");
        for b in &self.branches {
            let _ = writeln!(s, "{:<8} {:<8} {:<5} {:>10.6} {:>10.6}", b.alice, b.charlie, b.correction, b.probability, b.fidelity);
        }
        let _ = writeln!(s, "verdict: {}", if self.passed { "all branches reach fidelity 1" } else { "FAILED" });
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("alice,charlie,correction,probability,fidelity\n");
        for b in &self.branches {
            let _ = writeln!(s, "{},{},{},{},{}", b.alice, b.charlie, b.correction, b.probability, b.fidelity);
        }
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyRow {
    pub index: usize,
    pub label: String,
    pub bell_for_zero: BellKind,
    pub bell_for_one: BellKind,
    pub named_member: Option<&'static str>,
    pub reduced_max_deviation: f64,
    pub schmidt_ranks: [usize; 3],
    pub ghz_class: bool,
    pub table: Vec<PauliCorrection>,
    pub table_verified: bool,
    pub max_fidelity_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub command: &'static str,
    pub count: usize,
    pub rows: Vec<FamilyRow>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Report for FamilyReport {
    fn text(&self) -> String {
        let mut s = format!("GHZ-like channel family: {} members\n", self.count);
        let _ = writeln!(
            s,
            "{:<3} {:<16} {:<7} {:<9} {:<11} {:<6} {:<36} verified",
            "#", "spec", "named", "ranks", "max|r-I/2|", "GHZ", "table (Charlie 1 | Charlie 0)"
        );
        for r in &self.rows {
            let table = r.table.iter().map(|c| c.to_string()).collect::<Vec<_>>();
            let _ = writeln!(
                s,
                "{:<3} {:<16} {:<7} {:<9} {:<11.2e} {:<6} {:<36} {}",
                r.index,
                r.label,
                r.named_member.unwrap_or("-"),
                format!("{:?}", r.schmidt_ranks),
                r.reduced_max_deviation,
                r.ghz_class,
                format!("{} | {}", table[..4].join(" "), table[4..].join(" ")),
                r.table_verified
            );
        }
        let _ = writeln!(s, "all verified: {}", self.passed);
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from(
            "index,bell_for_zero,bell_for_one,named_member,reduced_max_deviation,rank_0,rank_1,rank_2,ghz_class,table,table_verified,max_fidelity_deviation\n",
        );
        for r in &self.rows {
            let table = r.table.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.index,
                r.bell_for_zero,
                r.bell_for_one,
                r.named_member.unwrap_or(""),
                r.reduced_max_deviation,
                r.schmidt_ranks[0],
                r.schmidt_ranks[1],
                r.schmidt_ranks[2],
                r.ghz_class,
                table,
                r.table_verified,
                r.max_fidelity_deviation
            );
        }
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Debug, Serialize)]
pub struct GeneralizedRow {
    pub n: usize,
    pub x: u64,
    pub x_bar: u64,
    pub sign: String,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct GeneralizedReport {
    pub command: &'static str,
    pub channel: String,
    pub alpha: Pair,
    pub beta: Pair,
    pub rows: Vec<GeneralizedRow>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Report for GeneralizedReport {
    fn text(&self) -> String {
        let mut s = format!(
            "n-qubit teleportation of alpha|x> +- beta|x_bar>, alpha = {}, beta = {}, channel {}\n",
            ctext(self.alpha),
            ctext(self.beta),
            self.channel
        );
        let _ = writeln!(s, "{:<4} {:<8} {:<8} {:<5} {:>14} {:>14}", "n", "x", "x_bar", "sign", "min fidelity", "mean fidelity");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<4} {:<8} {:<8} {:<5} {:>14.6} {:>14.6}",
                r.n, r.x, r.x_bar, r.sign, r.min_fidelity, r.mean_fidelity
            );
        }
        let _ = writeln!(s, "all fidelity 1: {}", self.passed);
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("n,x,x_bar,sign,min_fidelity,mean_fidelity,passed\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{},{},{}", r.n, r.x, r.x_bar, r.sign, r.min_fidelity, r.mean_fidelity, r.passed);
        }
        s
    }

    fn passed(&self) -> bool {
        self.passed
    }
}
