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

//! Few-qubit state-vector simulation of controlled teleportation through
//! GHZ-like channels.
//!
//! All numeric types are generic over a [`Real`] scalar (`f32` or `f64`);
//! the `f64` aliases below are what the command-line tool uses.
//!
//! ```
//! use ghz_teleport::{circuit, protocol};
//!
//! let channel = circuit::yang_channel::<f64>();
//! let table = protocol::derive_correction_table(&channel).unwrap();
//! assert!(table.is_verified());
//! ```

pub mod circuit;
pub mod cli;
pub mod error;
pub mod measure;
pub mod protocol;
pub mod qmath;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Amplitude, Real};

pub type Complex64 = num_complex::Complex<f64>;
pub type State = qmath::StateVector<f64>;
pub type Density = qmath::DensityMatrix<f64>;
pub type Gate = qmath::UnitaryGate<f64>;
pub type Matrix = qmath::CMatrix<f64>;
pub type Branch = measure::MeasurementBranch<f64>;
pub type Unknown = protocol::UnknownQubit<f64>;
pub type Table = protocol::CorrectionTable<f64>;
pub type Noncoop = protocol::NoncoopReport<f64>;
pub type Generalized = protocol::GeneralizedState<f64>;

pub type State32 = qmath::StateVector<f32>;
pub type Density32 = qmath::DensityMatrix<f32>;
