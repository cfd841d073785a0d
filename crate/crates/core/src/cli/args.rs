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

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::circuit::{bell_state, channel_from_spec, prepare_channel, ChannelSpec};
use crate::error::{Error, Result};
use crate::protocol::Sign;
use crate::qmath::StateVector;

#[derive(Debug, Parser)]
#[command(name = "ghz-teleport", version, about = "Controlled teleportation through GHZ-like channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive and verify Bob's correction table for a channel.
    Table1(CommonArgs),
    /// Bob's fidelity per Alice outcome when Charlie does not cooperate.
    Table2(CommonArgs),
    /// One seeded protocol run plus an exhaustive branch sweep.
    Teleport(CommonArgs),
    /// List the twelve GHZ-like channels with their checks.
    Family(CommonArgs),
    /// Teleport α|x⟩ ± β|x̄⟩ on n qubits.
    Generalized(GeneralizedArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Amplitude of |0⟩, e.g. `0.6`, `0.6+0.8i`, `-0.3i`.
    #[arg(long, default_value = "0.6", allow_hyphen_values = true)]
    pub alpha: String,
    /// Amplitude of |1⟩.
    #[arg(long, default_value = "0.8i", allow_hyphen_values = true)]
    pub beta: String,
    /// `yang`, `zhang`, `biseparable`, input bits `u,v,w`, or `psi+:0,phi+:1`.
    #[arg(long, default_value = "yang")]
    pub channel: String,
    #[arg(long, default_value_t = 2009)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Numerical tolerance for normalization and verification checks.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GeneralizedArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub x: u64,
    #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
    pub sign: Sign,
    /// Run every x in 0..2^n with both signs.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(format!("sign must be + or -, got '{other}'")),
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also `i`, `-i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse complex number '{s}' (expected a, bi, a+bi or a-bi)"));
    if t.is_empty() {
        return Err(bad());
    }
    let real = |p: &str| p.parse::<f64>().map_err(|_| bad());
    let imag = |p: &str| -> Result<f64> {
        let body = p.strip_suffix('i').ok_or_else(bad)?;
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            b => real(b),
        }
    };
    let z = if !t.ends_with('i') {
        Complex64::new(real(&t)?, 0.0)
    } else {
        // last sign that is not leading and not part of an exponent
        let bytes = t.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => Complex64::new(real(&t[..k])?, imag(&t[k..])?),
            None => Complex64::new(0.0, imag(&t)?),
        }
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(z)
}

/// A channel selected on the command line.
#[derive(Debug, Clone)]
pub struct ChannelChoice {
    pub label: String,
    pub state: StateVector<f64>,
}

impl FromStr for ChannelChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let (label, state) = match key.as_str() {
            "yang" => ("yang".to_string(), prepare_channel(0, 0, 1)?),
            "zhang" => ("zhang".to_string(), prepare_channel(0, 0, 0)?),
            // Alice's qubit unentangled, Bob and Charlie share an EPR pair
            "biseparable" => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                let plus = StateVector::qubit(Complex64::new(h, 0.0), Complex64::new(h, 0.0))?;
                ("biseparable".to_string(), plus.tensor(&bell_state(crate::circuit::BellKind::PsiPlus))?)
            }
            k if k.contains(':') => {
                let spec: ChannelSpec = k.parse()?;
                (spec.pair_notation(), channel_from_spec(&spec)?)
            }
            k => {
                let bits: Vec<u8> = k
                    .split(',')
                    .map(|b| b.trim().parse::<u8>().ok().filter(|v| *v <= 1))
                    .collect::<Option<_>>()
                    .filter(|v: &Vec<u8>| v.len() == 3)
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "unknown channel '{s}' (expected yang, zhang, biseparable, u,v,w bits or psi+:0,phi+:1)"
                        ))
                    })?;
                (format!("fig1({},{},{})", bits[0], bits[1], bits[2]), prepare_channel(bits[0], bits[1], bits[2])?)
            }
        };
        Ok(Self { label, state })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("0.6+0.8i").unwrap(), Complex64::new(0.6, 0.8));
        assert_eq!(parse_complex("0.6-0.8i").unwrap(), Complex64::new(0.6, -0.8));
        assert_eq!(parse_complex("-0.8i").unwrap(), Complex64::new(0.0, -0.8));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-1e-3+2E+0i").unwrap(), Complex64::new(-1e-3, 2.0));
        assert_eq!(parse_complex("0.5-i").unwrap(), Complex64::new(0.5, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn channel_choices() {
        let yang: ChannelChoice = "yang".parse().unwrap();
        let bits: ChannelChoice = "0,0,1".parse().unwrap();
        assert!(yang.state.approx_eq(&bits.state, 0.0));
        let pair: ChannelChoice = "psi+:0,phi+:1".parse().unwrap();
        let zhang: ChannelChoice = "zhang".parse().unwrap();
        assert!(pair.state.approx_eq(&zhang.state, 1e-15));
        assert!("0,1".parse::<ChannelChoice>().is_err());
        assert!("0,2,1".parse::<ChannelChoice>().is_err());
        assert!("psi+:0,psi+:1".parse::<ChannelChoice>().is_err());
    }
}
