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

//! Scalar abstraction shared by all numeric code.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar backing every amplitude and matrix entry.
///
/// Implemented for `f32` and `f64`. The tolerances are tied to the precision
/// of the type: `f64` works at `1e-12`, `f32` at a level its 24-bit mantissa
/// can actually reach.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Equality and normalization tolerance.
    fn tolerance() -> Self;

    /// Cutoff below which a singular value counts as zero.
    fn schmidt_tolerance() -> Self;

    /// Converts an `f64` literal. Panics only if the value is not representable at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-12
    }

    fn schmidt_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn schmidt_tolerance() -> Self {
        1e-4
    }
}

/// Complex amplitude over a [`Real`] scalar.
pub type Amplitude<T> = Complex<T>;

#[cfg(test)]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub(crate) fn is_finite<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
