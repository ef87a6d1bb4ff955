//! Zero-mean-friendly periodic scalar fields on a uniform N×N torus grid.
//!
//! Norm convention (used everywhere in this crate): Parseval with volume
//! normalization. ‖f‖²_{L²} is the grid mean of f², which equals Σ_k |f̂_k|²
//! for the DFT scaled by 1/N². Wavenumbers are physical: k = 2π·m/side for
//! signed integer m, so on the 2π-side torus k is an integer vector.

use crate::error::{Error, Result};
use crate::fft;
use rustfft::num_complex::Complex;
use std::sync::OnceLock;

#[derive(Debug)]
pub struct GridField {
    n: usize,
    side: f64,
    values: Vec<f64>,
    spectrum: OnceLock<Vec<Complex<f64>>>,
}

impl Clone for GridField {
    fn clone(&self) -> Self {
        GridField {
            n: self.n,
            side: self.side,
            values: self.values.clone(),
            spectrum: OnceLock::new(),
        }
    }
}

impl GridField {
    pub fn from_values(n: usize, side: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::ParameterError(format!(
                "expected {} values for a {n}×{n} grid, got {}",
                n * n,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("grid values".into()));
        }
        Ok(GridField {
            n,
            side,
            values,
            spectrum: OnceLock::new(),
        })
    }

    /// Sample `f(x, y)` at the grid nodes x = i·side/n.
    pub fn from_fn(n: usize, side: f64, f: impl Fn(f64, f64) -> f64) -> Self {
        let h = side / n as f64;
        let mut values = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                values[j * n + i] = f(i as f64 * h, j as f64 * h);
            }
        }
        GridField {
            n,
            side,
            values,
            spectrum: OnceLock::new(),
        }
    }

    /// Sample `f` at cell centers x = (i+1/2)·side/n.
    pub fn from_fn_cell_centers(n: usize, side: f64, f: impl Fn(f64, f64) -> f64) -> Self {
        let h = side / n as f64;
        let mut values = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                values[j * n + i] = f((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            }
        }
        GridField {
            n,
            side,
            values,
            spectrum: OnceLock::new(),
        }
    }

    /// Rebuild a field directly from spectral coefficients.
    pub fn from_spectrum(n: usize, side: f64, spec: Vec<Complex<f64>>) -> Self {
        let values = fft::inverse_real(&spec, n);
        let field = GridField {
            n,
            side,
            values,
            spectrum: OnceLock::new(),
        };
        let _ = field.spectrum.set(spec);
        field
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn cell_width(&self) -> f64 {
        self.side / self.n as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Spectral coefficients, computed once on demand.
    pub fn spectrum(&self) -> &[Complex<f64>] {
        self.spectrum.get_or_init(|| fft::forward(&self.values, self.n))
    }

    pub fn mean(&self) -> f64 {
        // compensated summation: rasterized fields subtract this exactly
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for &v in &self.values {
            let y = v - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
        sum / (self.n * self.n) as f64
    }

    /// Subtract the given constant (e.g. an exact closed-form mean).
    pub fn shifted(&self, c: f64) -> GridField {
        let values = self.values.iter().map(|v| v - c).collect();
        GridField {
            n: self.n,
            side: self.side,
            values,
            spectrum: OnceLock::new(),
        }
    }

    /// Same samples reinterpreted on a torus of a different side length.
    pub fn reinterpret_side(&self, side: f64) -> GridField {
        GridField {
            n: self.n,
            side,
            values: self.values.clone(),
            spectrum: OnceLock::new(),
        }
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() / (self.n * self.n) as f64
    }

    pub fn l2_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / (self.n * self.n) as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Physical wavenumber vector for spectral slot (i, j).
    #[inline]
    pub fn wavenumber(&self, i: usize, j: usize) -> (f64, f64) {
        let f = 2.0 * std::f64::consts::PI / self.side;
        (
            fft::signed_index(i, self.n) as f64 * f,
            fft::signed_index(j, self.n) as f64 * f,
        )
    }

    /// ‖∇f‖²_{L²} = Σ |k|² |f̂_k|².
    pub fn h1_sq(&self) -> f64 {
        let spec = self.spectrum();
        let mut sum = 0.0;
        for j in 0..self.n {
            for i in 0..self.n {
                let (kx, ky) = self.wavenumber(i, j);
                sum += (kx * kx + ky * ky) * spec[j * self.n + i].norm_sqr();
            }
        }
        sum
    }

    /// ‖f‖²_{H⁻¹} = Σ_{k≠0} |f̂_k|²/|k|².
    pub fn h_minus1_sq(&self) -> f64 {
        let spec = self.spectrum();
        let mut sum = 0.0;
        for j in 0..self.n {
            for i in 0..self.n {
                if i == 0 && j == 0 {
                    continue;
                }
                let (kx, ky) = self.wavenumber(i, j);
                sum += spec[j * self.n + i].norm_sqr() / (kx * kx + ky * ky);
            }
        }
        sum
    }

    /// Spectral partial derivatives (∂f/∂x, ∂f/∂y).
    pub fn gradient(&self) -> (GridField, GridField) {
        let spec = self.spectrum();
        let nn = self.n * self.n;
        let mut gx = vec![Complex::default(); nn];
        let mut gy = vec![Complex::default(); nn];
        for j in 0..self.n {
            for i in 0..self.n {
                let (kx, ky) = self.wavenumber(i, j);
                let c = spec[j * self.n + i];
                gx[j * self.n + i] = Complex::new(0.0, kx) * c;
                gy[j * self.n + i] = Complex::new(0.0, ky) * c;
            }
        }
        (
            GridField::from_spectrum(self.n, self.side, gx),
            GridField::from_spectrum(self.n, self.side, gy),
        )
    }

    /// Gaussian low-pass e^{-|k|²σ²/2}; used to mollify measure-like data.
    pub fn mollified(&self, sigma: f64) -> GridField {
        let spec = self.spectrum();
        let mut out = spec.to_vec();
        for j in 0..self.n {
            for i in 0..self.n {
                let (kx, ky) = self.wavenumber(i, j);
                out[j * self.n + i] *= (-0.5 * (kx * kx + ky * ky) * sigma * sigma).exp();
            }
        }
        GridField::from_spectrum(self.n, self.side, out)
    }

    /// Sup over grid centers of the volume-normalized |f|-mass in a radius-r
    /// ball, via FFT convolution with a partial-cell-area disk kernel.
    pub fn ball_mass_max(&self, r: f64) -> Result<f64> {
        Ok(self.ball_mass_field(r)?.into_iter().fold(0.0f64, f64::max))
    }

    /// The full ball-mass field x ↦ (1/vol)∫_{B_r(x)} |f|.
    pub fn ball_mass_field(&self, r: f64) -> Result<Vec<f64>> {
        if !(r > 0.0) || r >= self.side / 2.0 {
            return Err(Error::DomainError(format!(
                "ball radius {r} outside (0, side/2)"
            )));
        }
        let n = self.n;
        let h = self.cell_width();
        // Disk indicator rasterized with a linear partial-coverage ramp of
        // one cell width; kernel entries carry the 1/n² measure weight.
        let mut kernel = vec![0.0; n * n];
        let inv_nn = 1.0 / (n * n) as f64;
        for j in 0..n {
            for i in 0..n {
                let dx = torus_offset(i, n) * h;
                let dy = torus_offset(j, n) * h;
                let d = (dx * dx + dy * dy).sqrt();
                let cover = ((r - d) / h + 0.5).clamp(0.0, 1.0);
                kernel[j * n + i] = cover * inv_nn;
            }
        }
        let abs_vals: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        let fa = fft::forward(&abs_vals, n);
        let fk = fft::forward(&kernel, n);
        let nn2 = (n * n) as f64;
        let prod: Vec<Complex<f64>> = fa
            .iter()
            .zip(fk.iter())
            .map(|(a, b)| a * b * nn2)
            .collect();
        Ok(fft::inverse_real(&prod, n))
    }
}

#[inline]
fn torus_offset(i: usize, n: usize) -> f64 {
    let s = fft::signed_index(i, n);
    s as f64
}
