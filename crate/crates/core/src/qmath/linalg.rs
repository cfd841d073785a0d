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

//! Small dense eigen/singular value routines.
//!
//! Both routines are Jacobi iterations. Matrices here never exceed a few
//! hundred rows, so the quadratic sweep cost does not matter and the
//! accuracy is close to machine precision.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
///
/// The n×n Hermitian `H = A + iB` is embedded in the real symmetric 2n×2n
/// matrix `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
/// eigenvalue doubled. Cyclic Jacobi on the embedding, then every second
/// value of the sorted spectrum.
pub fn hermitian_eigenvalues<T: Real>(h: &CMatrix<T>) -> Vec<T> {
    assert!(h.is_square(), "eigenvalues need a square matrix");
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![T::zero(); m * m];
    for r in 0..n {
        for c in 0..n {
            let z = h.get(r, c);
            // symmetrize against round-off in the input
            let w = h.get(c, r).conj();
            let re = (z.re + w.re) / T::lit(2.0);
            let im = (z.im + w.im) / T::lit(2.0);
            a[r * m + c] = re;
            a[(r + n) * m + c + n] = re;
            a[r * m + c + n] = -im;
            a[(r + n) * m + c] = im;
        }
    }
    jacobi_symmetric(&mut a, m);
    let mut eig: Vec<T> = (0..m).map(|i| a[i * m + i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    eig.into_iter().step_by(2).collect()
}

fn jacobi_symmetric<T: Real>(a: &mut [T], m: usize) {
    let two = T::lit(2.0);
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..m)
            .flat_map(|p| (0..m).filter(move |&q| q != p).map(move |q| (p, q)))
            .fold(T::zero(), |acc, (p, q)| acc + a[p * m + q] * a[p * m + q]);
        if off <= T::min_positive_value() {
            return;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = cs * akp - sn * akq;
                    a[k * m + q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = cs * apk - sn * aqk;
                    a[q * m + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
}

/// Singular values of a complex matrix, sorted in descending order.
///
/// One-sided (Hestenes) Jacobi: columns are rotated pairwise until mutually
/// orthogonal; the singular values are then the column norms. Each complex
/// pair is first phase-aligned so the rotation can stay real.
pub fn singular_values<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let work = if m.cols() > m.rows() { m.dagger() } else { m.clone() };
    let rows = work.rows();
    let cols = work.cols();
    let mut columns: Vec<Vec<Complex<T>>> =
        (0..cols).map(|c| (0..rows).map(|r| work.get(r, c)).collect()).collect();
    let eps = T::epsilon();
    let two = T::lit(2.0);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: T = columns[p].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
                let beta: T = columns[q].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
                let gamma = columns[p]
                    .iter()
                    .zip(&columns[q])
                    .fold(Complex::zero(), |s: Complex<T>, (a, b)| s + a.conj() * *b);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                for z in columns[q].iter_mut() {
                    *z *= phase;
                }
                let zeta = (beta - alpha) / (two * g);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                let (lo, hi) = columns.split_at_mut(q);
                for (a, b) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (ap, aq) = (*a, *b);
                    *a = ap * cs - aq * sn;
                    *b = ap * sn + aq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<T> = columns
        .iter()
        .map(|col| col.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}
