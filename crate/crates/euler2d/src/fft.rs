//! FFT plumbing: cached plans and 2-D complex transforms.
//!
//! Plans are cached per (length, direction) behind a mutex; the transform
//! entry points take per-call scratch so they are safe to run from
//! multiple threads and bit-deterministic regardless of thread count.

use ndarray::Array2;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((len, inverse))
        .or_insert_with(|| {
            let direction = if inverse {
                FftDirection::Inverse
            } else {
                FftDirection::Forward
            };
            FftPlanner::new().plan_fft(len, direction)
        })
        .clone()
}

/// Unnormalized DFT along both axes of a square array, in place.
///
/// Forward maps grid values to `Σ u e^{-ik·x}`; inverse maps coefficients
/// to `Σ û e^{+ik·x}`. Normalization is left to the caller.
pub fn fft2(a: &mut Array2<Complex64>, inverse: bool) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "fft2 expects a square array");
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    // Rows are contiguous in standard layout.
    let slice = a.as_slice_mut().expect("fft2 expects standard layout");
    for row in slice.chunks_exact_mut(n) {
        fft.process_with_scratch(row, &mut scratch);
    }

    // Columns: transpose, transform rows, transpose back.
    transpose_square(slice, n);
    for row in slice.chunks_exact_mut(n) {
        fft.process_with_scratch(row, &mut scratch);
    }
    transpose_square(slice, n);
}

fn transpose_square(a: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            a.swap(i * n + j, j * n + i);
        }
    }
}

/// Signed wavenumber of FFT bin `index` on an `n`-point axis
/// (`0, 1, …, n/2−1, −n/2, …, −1`).
#[inline]
pub fn wavenumber(index: usize, n: usize) -> i64 {
    if index <= n / 2 - 1 {
        index as i64
    } else {
        index as i64 - n as i64
    }
}

/// FFT bin of signed wavenumber `k` on an `n`-point axis.
#[inline]
pub fn bin(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_identity_up_to_n2() {
        let n = 16;
        let mut a = Array2::from_shape_fn((n, n), |(i, j)| {
            Complex64::new((i * 7 + j) as f64 * 0.01, (j * 3) as f64 * 0.02)
        });
        let original = a.clone();
        fft2(&mut a, false);
        fft2(&mut a, true);
        let scale = (n * n) as f64;
        for (x, y) in a.iter().zip(original.iter()) {
            assert!((x / scale - y).norm() < 1e-13);
        }
    }

    #[test]
    fn single_mode_lands_in_its_bin() {
        let n = 32;
        let h = std::f64::consts::TAU / n as f64;
        let mut a = Array2::from_shape_fn((n, n), |(i, j)| {
            Complex64::new((3.0 * i as f64 * h).cos() * (2.0 * j as f64 * h).sin(), 0.0)
        });
        fft2(&mut a, false);
        let scale = (n * n) as f64;
        // cos(3x) sin(2y) = Σ ±1/(4i) e^{i(±3x ±2y)}
        let c = a[[3, 2]] / scale;
        assert!((c - Complex64::new(0.0, -0.25)).norm() < 1e-13);
        let c = a[[bin(-3, n), bin(2, n)]] / scale;
        assert!((c - Complex64::new(0.0, -0.25)).norm() < 1e-13);
        let c = a[[3, bin(-2, n)]] / scale;
        assert!((c - Complex64::new(0.0, 0.25)).norm() < 1e-13);
    }

    #[test]
    fn wavenumber_layout() {
        assert_eq!(wavenumber(0, 16), 0);
        assert_eq!(wavenumber(7, 16), 7);
        assert_eq!(wavenumber(8, 16), -8);
        assert_eq!(wavenumber(15, 16), -1);
        assert_eq!(bin(-1, 16), 15);
        assert_eq!(bin(7, 16), 7);
    }
}
