//! Minimal 2D FFT plumbing on top of `rustfft`.
//!
//! Convention: the forward transform divides by n² so that `spec[0]` is the
//! grid mean. The inverse transform is then unnormalized and round-trips
//! exactly.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn transform_rows(data: &mut [Complex<f64>], n: usize, forward: bool) {
    PLANNER.with(|p| {
        let fft = {
            let mut planner = p.borrow_mut();
            if forward {
                planner.plan_fft_forward(n)
            } else {
                planner.plan_fft_inverse(n)
            }
        };
        for row in data.chunks_exact_mut(n) {
            fft.process(row);
        }
    });
}

fn transpose(data: &[Complex<f64>], out: &mut [Complex<f64>], n: usize) {
    for j in 0..n {
        for i in 0..n {
            out[i * n + j] = data[j * n + i];
        }
    }
}

fn fft2_inplace(data: &mut [Complex<f64>], n: usize, forward: bool) {
    assert_eq!(data.len(), n * n);
    let mut scratch = vec![Complex::default(); n * n];
    transform_rows(data, n, forward);
    transpose(data, &mut scratch, n);
    transform_rows(&mut scratch, n, forward);
    transpose(&scratch, data, n);
}

/// Forward 2D transform of real values; coefficients scaled by 1/n².
pub fn forward(values: &[f64], n: usize) -> Vec<Complex<f64>> {
    let mut data: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft2_inplace(&mut data, n, true);
    let scale = 1.0 / (n * n) as f64;
    for c in data.iter_mut() {
        *c *= scale;
    }
    data
}

/// Inverse 2D transform back to real values (imaginary parts dropped).
pub fn inverse_real(spec: &[Complex<f64>], n: usize) -> Vec<f64> {
    let mut data = spec.to_vec();
    fft2_inplace(&mut data, n, false);
    data.iter().map(|c| c.re).collect()
}

/// Inverse 2D transform keeping complex output.
pub fn inverse(spec: &[Complex<f64>], n: usize) -> Vec<Complex<f64>> {
    let mut data = spec.to_vec();
    fft2_inplace(&mut data, n, false);
    data
}

/// Signed integer wavenumber index for slot `i` of an n-point transform.
#[inline]
pub fn signed_index(i: usize, n: usize) -> i64 {
    if i <= n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_mean() {
        let n = 16;
        let vals: Vec<f64> = (0..n * n).map(|i| (i as f64 * 0.37).sin() + 2.0).collect();
        let spec = forward(&vals, n);
        let mean: f64 = vals.iter().sum::<f64>() / (n * n) as f64;
        assert!((spec[0].re - mean).abs() < 1e-12);
        assert!(spec[0].im.abs() < 1e-12);
        let back = inverse_real(&spec, n);
        for (a, b) in vals.iter().zip(back.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn single_mode_lands_on_its_slot() {
        let n = 32;
        let mut vals = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                vals[j * n + i] = (3.0 * x).cos();
            }
        }
        let spec = forward(&vals, n);
        // cos(3x) = (e^{i3x} + e^{-i3x})/2: slots (3,0) and (n-3,0) carry 1/2.
        assert!((spec[3].re - 0.5).abs() < 1e-12);
        assert!((spec[n - 3].re - 0.5).abs() < 1e-12);
        let energy: f64 = spec.iter().map(|c| c.norm_sqr()).sum();
        assert!((energy - 0.5).abs() < 1e-12);
    }
}
