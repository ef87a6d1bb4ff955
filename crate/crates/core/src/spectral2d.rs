//! Pseudo-spectral solver for the vorticity equation on the 2π-periodic
//! torus, ∂_t ω + u·∇ω = νΔω with curl u = ω, and for passive scalars
//! advected by a prescribed divergence-free velocity.
//!
//! Orientation: û(k) = i(−k_y, k_x) ω̂(k)/|k|², i.e. ω = ∂_y u_x − ∂_x u_y.
//! Time stepping is integrating-factor RK4 (diffusion handled exactly by
//! e^{-ν|k|²dt}) with 2/3-rule dealiasing of the quadratic term, so the
//! truncated system conserves energy and enstrophy exactly for ν = 0.

use crate::bessel;
use crate::cantor::{BallMassCurve, BallMassKind};
use crate::error::{Error, Result};
use crate::fft;
use crate::grid::GridField;
use rustfft::num_complex::Complex;
use std::f64::consts::PI;
use std::io::{Read, Write};

pub const TORUS_SIDE: f64 = 2.0 * PI;
/// Convention tag written into checkpoints and records.
pub const CONVENTION_TAG: u32 = 1;
pub const CONVENTION: &str = "torus2pi/volume-normalized/v1";

#[derive(Debug, Clone)]
pub enum VelocityMode {
    /// Velocity recovered from the vorticity (the active case).
    BiotSavart { mean_velocity: (f64, f64) },
    /// Fixed divergence-free velocity spectrum (passive scalar mode).
    Prescribed {
        ux: Vec<Complex<f64>>,
        uy: Vec<Complex<f64>>,
    },
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Advective CFL number: dt = cfl·h/‖u‖_∞.
    pub cfl: f64,
    pub dt_max: f64,
    pub velocity: VelocityMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cfl: 0.4,
            dt_max: 0.05,
            velocity: VelocityMode::BiotSavart {
                mean_velocity: (0.0, 0.0),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverState {
    n: usize,
    /// Dealiased spectrum of ω, volume-normalized coefficients.
    spec: Vec<Complex<f64>>,
    time: f64,
    viscosity: f64,
    step_count: u64,
    config: SolverConfig,
}

#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub time: f64,
    pub energy: f64,
    pub enstrophy: f64,
    pub palinstrophy: f64,
    pub h_minus_1: f64,
    pub sup_norm: f64,
    pub ball_mass: Option<BallMassCurve>,
}

/// One experiment's enstrophy history and cumulative dissipation ν∫‖ω‖²dτ.
#[derive(Debug, Clone)]
pub struct DissipationRecord {
    pub nu: f64,
    pub times: Vec<f64>,
    pub enstrophy: Vec<f64>,
    pub cum_dissipation: Vec<f64>,
    pub convention: String,
}

impl DissipationRecord {
    pub fn total_dissipation(&self) -> f64 {
        *self.cum_dissipation.last().unwrap_or(&0.0)
    }
}

#[inline]
fn wavenumber(i: usize, j: usize, n: usize) -> (f64, f64) {
    (
        fft::signed_index(i, n) as f64,
        fft::signed_index(j, n) as f64,
    )
}

fn dealias(spec: &mut [Complex<f64>], n: usize) {
    let cut = n as i64 / 3;
    for j in 0..n {
        for i in 0..n {
            let ki = fft::signed_index(i, n).abs();
            let kj = fft::signed_index(j, n).abs();
            if ki > cut || kj > cut {
                spec[j * n + i] = Complex::default();
            }
        }
    }
    spec[0] = Complex::default();
}

/// û(k) = i(−k_y, k_x) ω̂(k)/|k|²; û(0) is the prescribed mean velocity.
pub fn biot_savart(
    omega_spec: &[Complex<f64>],
    n: usize,
    mean_velocity: (f64, f64),
) -> (Vec<Complex<f64>>, Vec<Complex<f64>>) {
    let mut ux = vec![Complex::default(); n * n];
    let mut uy = vec![Complex::default(); n * n];
    for j in 0..n {
        for i in 0..n {
            if i == 0 && j == 0 {
                ux[0] = Complex::new(mean_velocity.0, 0.0);
                uy[0] = Complex::new(mean_velocity.1, 0.0);
                continue;
            }
            let (kx, ky) = wavenumber(i, j, n);
            let k2 = kx * kx + ky * ky;
            let w = omega_spec[j * n + i];
            let factor = Complex::new(0.0, 1.0) / k2;
            ux[j * n + i] = factor * (-ky) * w;
            uy[j * n + i] = factor * kx * w;
        }
    }
    (ux, uy)
}

impl SolverState {
    pub fn new(omega0: &GridField, viscosity: f64, config: SolverConfig) -> Result<Self> {
        if viscosity < 0.0 {
            return Err(Error::ParameterError("viscosity must be ≥ 0".into()));
        }
        if (omega0.side() - TORUS_SIDE).abs() > 1e-12 {
            return Err(Error::ConventionMismatch {
                expected: format!("torus side {TORUS_SIDE}"),
                got: format!("{}", omega0.side()),
            });
        }
        let n = omega0.resolution();
        let mut spec = omega0.spectrum().to_vec();
        dealias(&mut spec, n);
        if let VelocityMode::Prescribed { ux, uy } = &config.velocity {
            if ux.len() != n * n || uy.len() != n * n {
                return Err(Error::ParameterError(
                    "prescribed velocity spectrum size mismatch".into(),
                ));
            }
        }
        Ok(SolverState {
            n,
            spec,
            time: 0.0,
            viscosity,
            step_count: 0,
            config,
        })
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn viscosity(&self) -> f64 {
        self.viscosity
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn spectrum(&self) -> &[Complex<f64>] {
        &self.spec
    }

    pub fn field(&self) -> GridField {
        GridField::from_spectrum(self.n, TORUS_SIDE, self.spec.clone())
    }

    /// −(u·∇ω)̂ dealiased, plus ‖u‖_∞ for the CFL policy.
    fn nonlinear(&self, spec: &[Complex<f64>]) -> (Vec<Complex<f64>>, f64) {
        let n = self.n;
        let (ux_hat, uy_hat) = match &self.config.velocity {
            VelocityMode::BiotSavart { mean_velocity } => biot_savart(spec, n, *mean_velocity),
            VelocityMode::Prescribed { ux, uy } => (ux.clone(), uy.clone()),
        };
        let mut wx_hat = vec![Complex::default(); n * n];
        let mut wy_hat = vec![Complex::default(); n * n];
        for j in 0..n {
            for i in 0..n {
                let (kx, ky) = wavenumber(i, j, n);
                let w = spec[j * n + i];
                wx_hat[j * n + i] = Complex::new(0.0, kx) * w;
                wy_hat[j * n + i] = Complex::new(0.0, ky) * w;
            }
        }
        let ux = fft::inverse_real(&ux_hat, n);
        let uy = fft::inverse_real(&uy_hat, n);
        let wx = fft::inverse_real(&wx_hat, n);
        let wy = fft::inverse_real(&wy_hat, n);
        let mut umax = 0.0f64;
        let mut prod = vec![0.0; n * n];
        for k in 0..n * n {
            umax = umax.max((ux[k] * ux[k] + uy[k] * uy[k]).sqrt());
            prod[k] = ux[k] * wx[k] + uy[k] * wy[k];
        }
        let mut nhat = fft::forward(&prod, n);
        dealias(&mut nhat, n);
        for c in nhat.iter_mut() {
            *c = -*c;
        }
        (nhat, umax)
    }

    pub fn cfl_limit(&self, umax: f64) -> f64 {
        let h = TORUS_SIDE / self.n as f64;
        if umax > 0.0 {
            self.config.cfl * h / umax
        } else {
            f64::INFINITY
        }
    }

    /// One integrating-factor RK4 step. With `dt = None` the CFL policy
    /// chooses dt; an explicit dt beyond the CFL limit is rejected.
    pub fn step(&mut self, dt: Option<f64>) -> Result<f64> {
        self.step_inner(dt, None)
    }

    /// Policy-chosen step, additionally capped (e.g. by the time remaining
    /// to the next snapshot).
    pub fn step_capped(&mut self, cap: f64) -> Result<f64> {
        self.step_inner(None, Some(cap))
    }

    fn step_inner(&mut self, dt: Option<f64>, cap: Option<f64>) -> Result<f64> {
        let n = self.n;
        let (n1, umax) = self.nonlinear(&self.spec);
        let limit = self.cfl_limit(umax);
        let dt = match dt {
            Some(dt) => {
                if dt > limit * (1.0 + 1e-9) {
                    return Err(Error::CflViolation { dt, limit });
                }
                dt
            }
            None => {
                let mut dt = self.config.dt_max.min(limit);
                if let Some(cap) = cap {
                    dt = dt.min(cap);
                }
                dt
            }
        };
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::ParameterError(format!("bad dt {dt}")));
        }

        // exact diffusion factors over dt and dt/2
        let nn = n * n;
        let mut e_full = vec![0.0f64; nn];
        let mut e_half = vec![0.0f64; nn];
        for j in 0..n {
            for i in 0..n {
                let (kx, ky) = wavenumber(i, j, n);
                let lam = -self.viscosity * (kx * kx + ky * ky);
                e_full[j * n + i] = (lam * dt).exp();
                e_half[j * n + i] = (lam * dt * 0.5).exp();
            }
        }

        let half = 0.5 * dt;
        let mut a = vec![Complex::default(); nn];
        for k in 0..nn {
            a[k] = e_half[k] * (self.spec[k] + half * n1[k]);
        }
        let (n2, _) = self.nonlinear(&a);
        let mut b = vec![Complex::default(); nn];
        for k in 0..nn {
            b[k] = e_half[k] * self.spec[k] + half * n2[k];
        }
        let (n3, _) = self.nonlinear(&b);
        let mut c = vec![Complex::default(); nn];
        for k in 0..nn {
            c[k] = e_full[k] * self.spec[k] + dt * e_half[k] * n3[k];
        }
        let (n4, _) = self.nonlinear(&c);

        let sixth = dt / 6.0;
        for k in 0..nn {
            self.spec[k] = e_full[k] * self.spec[k]
                + sixth
                    * (e_full[k] * n1[k]
                        + 2.0 * e_half[k] * (n2[k] + n3[k])
                        + n4[k]);
        }
        self.spec[0] = Complex::default(); // zero mean, exactly

        if self.spec.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(format!(
                "solver state at t = {}",
                self.time + dt
            )));
        }
        self.time += dt;
        self.step_count += 1;
        Ok(dt)
    }

    /// Spectral Parseval diagnostics; ball masses via the disk-indicator
    /// transform 2πr J₁(r|k|)/|k| applied to |ω|, then max over grid points.
    pub fn diagnostics(&self, ball_radii: Option<&[f64]>) -> Diagnostics {
        let n = self.n;
        let mut energy = 0.0;
        let mut enstrophy = 0.0;
        let mut palinstrophy = 0.0;
        let mut h_minus_1 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let (kx, ky) = wavenumber(i, j, n);
                let k2 = kx * kx + ky * ky;
                let p = self.spec[j * n + i].norm_sqr();
                enstrophy += p;
                palinstrophy += k2 * p;
                if k2 > 0.0 {
                    energy += 0.5 * p / k2;
                    h_minus_1 += p / k2;
                }
            }
        }
        if let VelocityMode::BiotSavart { mean_velocity } = &self.config.velocity {
            energy += 0.5 * (mean_velocity.0.powi(2) + mean_velocity.1.powi(2));
        }
        let values = fft::inverse_real(&self.spec, n);
        let sup_norm = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let ball_mass = ball_radii.map(|radii| {
            let abs_vals: Vec<f64> = values.iter().map(|v| v.abs()).collect();
            let abs_hat = fft::forward(&abs_vals, n);
            let vol = TORUS_SIDE * TORUS_SIDE;
            let masses = radii
                .iter()
                .map(|&r| {
                    let mut conv = vec![Complex::default(); n * n];
                    for j in 0..n {
                        for i in 0..n {
                            let (kx, ky) = wavenumber(i, j, n);
                            let k = (kx * kx + ky * ky).sqrt();
                            let t = if k > 0.0 {
                                2.0 * PI * r * bessel::j1(r * k) / k
                            } else {
                                PI * r * r
                            };
                            conv[j * n + i] = abs_hat[j * n + i] * t;
                        }
                    }
                    let m = fft::inverse(&conv, n);
                    m.iter().fold(0.0f64, |acc, c| acc.max(c.re)) / vol
                })
                .collect();
            BallMassCurve {
                radii: radii.to_vec(),
                masses,
                kind: BallMassKind::GridOracle,
            }
        });
        Diagnostics {
            time: self.time,
            energy,
            enstrophy,
            palinstrophy,
            h_minus_1,
            sup_norm,
            ball_mass,
        }
    }

    /// Advance to T under the CFL policy, recording every accepted step.
    pub fn run_to(&mut self, t_end: f64) -> Result<DissipationRecord> {
        if t_end < self.time {
            return Err(Error::ParameterError(format!(
                "t_end {t_end} is before current time {}",
                self.time
            )));
        }
        let mut times = vec![self.time];
        let mut enstrophy = vec![self.diagnostics(None).enstrophy];
        let mut cum = vec![0.0];
        while self.time < t_end - 1e-14 {
            let remaining = t_end - self.time;
            self.step_capped(remaining)?;
            let z = self.diagnostics(None).enstrophy;
            let z_prev = *enstrophy.last().unwrap();
            let t_prev = *times.last().unwrap();
            cum.push(cum.last().unwrap() + self.viscosity * 0.5 * (z + z_prev) * (self.time - t_prev));
            times.push(self.time);
            enstrophy.push(z);
        }
        Ok(DissipationRecord {
            nu: self.viscosity,
            times,
            enstrophy,
            cum_dissipation: cum,
            convention: CONVENTION.into(),
        })
    }

    /// Flat binary checkpoint: (resolution u32, time f64, ν f64,
    /// convention u32) header then row-major field values, little-endian.
    pub fn write_checkpoint<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.time.to_le_bytes())?;
        w.write_all(&self.viscosity.to_le_bytes())?;
        w.write_all(&CONVENTION_TAG.to_le_bytes())?;
        for v in fft::inverse_real(&self.spec, self.n) {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_checkpoint<R: Read>(r: &mut R, config: SolverConfig) -> Result<Self> {
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        let n = u32::from_le_bytes(b4) as usize;
        r.read_exact(&mut b8)?;
        let time = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let viscosity = f64::from_le_bytes(b8);
        r.read_exact(&mut b4)?;
        let tag = u32::from_le_bytes(b4);
        if tag != CONVENTION_TAG {
            return Err(Error::ConventionMismatch {
                expected: CONVENTION_TAG.to_string(),
                got: tag.to_string(),
            });
        }
        let mut values = vec![0.0; n * n];
        for v in values.iter_mut() {
            r.read_exact(&mut b8)?;
            *v = f64::from_le_bytes(b8);
        }
        let field = GridField::from_values(n, TORUS_SIDE, values)?;
        let mut state = SolverState::new(&field, viscosity, config)?;
        state.time = time;
        Ok(state)
    }
}

/// Residuals of the energy identity ½‖u(t)‖² + ν∫₀ᵗ‖ω‖² = ½‖u₀‖² and the
/// enstrophy balance d/dt‖ω‖² = −2ν‖∇ω‖², time integrals by trapezoid.
/// Returned relative to the initial energy/enstrophy scales.
pub fn balance_residuals(history: &[Diagnostics], nu: f64) -> (f64, f64) {
    if history.len() < 2 {
        return (0.0, 0.0);
    }
    let mut diss = 0.0; // ∫ enstrophy dτ
    let mut pal = 0.0; // ∫ palinstrophy dτ
    for w in history.windows(2) {
        let dt = w[1].time - w[0].time;
        diss += 0.5 * (w[0].enstrophy + w[1].enstrophy) * dt;
        pal += 0.5 * (w[0].palinstrophy + w[1].palinstrophy) * dt;
    }
    let first = &history[0];
    let last = &history[history.len() - 1];
    let e_scale = first.energy.max(1e-300);
    let z_scale = first.enstrophy.max(1e-300);
    let energy_res = (last.energy + nu * diss - first.energy).abs() / e_scale;
    let enstrophy_res = (last.enstrophy + 2.0 * nu * pal - first.enstrophy).abs() / z_scale;
    if first.energy == 0.0 && last.energy == 0.0 && diss == 0.0 {
        return (0.0, 0.0);
    }
    (energy_res, enstrophy_res)
}

/// Taylor–Green vorticity cos x cos y: an exact single-shell (|k|² = 2)
/// solution whose nonlinear term vanishes identically.
pub fn taylor_green(n: usize) -> GridField {
    GridField::from_fn(n, TORUS_SIDE, |x, y| x.cos() * y.cos())
}

/// Deterministic smooth random field: a handful of low modes with
/// SplitMix64-driven amplitudes, zero mean.
pub fn smooth_random_field(n: usize, seed: u64, kmax: i64, amplitude: f64) -> GridField {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut modes = Vec::new();
    for kx in -kmax..=kmax {
        for ky in -kmax..=kmax {
            if kx == 0 && ky == 0 {
                continue;
            }
            let amp = amplitude * (2.0 * next() - 1.0) / ((kx * kx + ky * ky) as f64);
            let phase = 2.0 * PI * next();
            modes.push((kx as f64, ky as f64, amp, phase));
        }
    }
    GridField::from_fn(n, TORUS_SIDE, move |x, y| {
        modes
            .iter()
            .map(|&(kx, ky, a, p)| a * (kx * x + ky * y + p).cos())
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biot_savart_single_mode() {
        // ω̂ on k = (1,0) with coefficient c → û = i(0,1)c
        let n = 16;
        let mut spec = vec![Complex::default(); n * n];
        let c = Complex::new(0.3, -0.1);
        spec[1] = c;
        let (ux, uy) = biot_savart(&spec, n, (0.0, 0.0));
        assert!((ux[1]).norm() < 1e-15);
        let expect = Complex::new(0.0, 1.0) * c;
        assert!((uy[1] - expect).norm() < 1e-15);

        // ω = 0 → u is the prescribed mean only
        let zero = vec![Complex::default(); n * n];
        let (ux, uy) = biot_savart(&zero, n, (0.7, -0.2));
        assert!((ux[0].re - 0.7).abs() < 1e-15 && (uy[0].re + 0.2).abs() < 1e-15);
        assert!(ux.iter().skip(1).all(|c| c.norm() == 0.0));
        assert!(uy.iter().skip(1).all(|c| c.norm() == 0.0));
    }

    #[test]
    fn biot_savart_taylor_green_velocity() {
        let n = 64;
        let omega = taylor_green(n);
        let (ux_hat, uy_hat) = biot_savart(omega.spectrum(), n, (0.0, 0.0));
        let ux = fft::inverse_real(&ux_hat, n);
        let uy = fft::inverse_real(&uy_hat, n);
        let exact_ux = GridField::from_fn(n, TORUS_SIDE, |x, y| 0.5 * x.cos() * y.sin());
        let exact_uy = GridField::from_fn(n, TORUS_SIDE, |x, y| -0.5 * x.sin() * y.cos());
        for k in 0..n * n {
            assert!((ux[k] - exact_ux.values()[k]).abs() < 1e-12);
            assert!((uy[k] - exact_uy.values()[k]).abs() < 1e-12);
        }
        // ∇·u = 0 to round-off, spectrally
        let mut div_max = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let (kx, ky) = wavenumber(i, j, n);
                let d = Complex::new(0.0, kx) * ux_hat[j * n + i]
                    + Complex::new(0.0, ky) * uy_hat[j * n + i];
                div_max = div_max.max(d.norm());
            }
        }
        assert!(div_max < 1e-14);
    }

    #[test]
    fn taylor_green_decays_exactly() {
        let n = 64;
        let nu = 0.01;
        let config = SolverConfig {
            dt_max: 0.005,
            ..SolverConfig::default()
        };
        let mut state = SolverState::new(&taylor_green(n), nu, config).unwrap();
        let z0 = state.diagnostics(None).enstrophy;
        assert!((z0 - 0.25).abs() < 1e-12);
        let record = state.run_to(1.0).unwrap();
        let z_end = *record.enstrophy.last().unwrap();
        let exact = z0 * (-4.0 * nu * 1.0).exp();
        assert!(
            (z_end - exact).abs() / exact < 1e-10,
            "enstrophy {z_end} vs exact {exact}"
        );
        // single shell |k|² = 2 → h_minus_1 = enstrophy/2
        let d = state.diagnostics(None);
        assert!((d.h_minus_1 - d.enstrophy / 2.0).abs() < 1e-14);
        // cumulative dissipation matches the energy drop
        let e_end = d.energy;
        let drop = z0 / 4.0 - e_end; // TG: energy = enstrophy/4... energy(0) = z0/4
        assert!((record.total_dissipation() - drop).abs() / drop < 1e-8);
    }

    #[test]
    fn zero_field_stays_zero() {
        let n = 32;
        let zero = GridField::from_fn(n, TORUS_SIDE, |_, _| 0.0);
        let mut state = SolverState::new(&zero, 0.1, SolverConfig::default()).unwrap();
        let record = state.run_to(0.3).unwrap();
        assert!(record.total_dissipation() == 0.0);
        assert!(state.diagnostics(None).enstrophy == 0.0);
        assert!((state.time() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn inviscid_invariants_conserved() {
        let n = 64;
        let field = smooth_random_field(n, 7, 3, 0.5);
        let mut state = SolverState::new(&field, 0.0, SolverConfig::default()).unwrap();
        let d0 = state.diagnostics(None);
        state.run_to(0.5).unwrap();
        let d1 = state.diagnostics(None);
        assert!((d1.energy - d0.energy).abs() / d0.energy < 1e-9);
        assert!((d1.enstrophy - d0.enstrophy).abs() / d0.enstrophy < 1e-9);
    }

    #[test]
    fn cfl_violation_rejected() {
        let n = 32;
        let mut state =
            SolverState::new(&taylor_green(n), 0.01, SolverConfig::default()).unwrap();
        let err = state.step(Some(10.0)).unwrap_err();
        assert!(matches!(err, Error::CflViolation { .. }));
    }

    #[test]
    fn mean_stays_zero_and_sup_bounded() {
        let n = 128;
        let field = smooth_random_field(n, 3, 3, 0.12);
        let mut state = SolverState::new(&field, 1e-3, SolverConfig::default()).unwrap();
        let sup0 = state.diagnostics(None).sup_norm;
        for _ in 0..20 {
            state.step(None).unwrap();
            assert!(state.spectrum()[0].norm() == 0.0);
            let d = state.diagnostics(None);
            assert!(d.sup_norm <= sup0 * (1.0 + 1e-6), "max principle violated");
        }
    }

    #[test]
    fn ball_mass_routes_agree() {
        // the disk-indicator transform route against the rasterized-kernel
        // convolution route — two independent quadratures of the same sup
        let n = 128;
        let sigma: f64 = 0.3;
        let bump = GridField::from_fn(n, TORUS_SIDE, move |x, y| {
            let dx = x - PI;
            let dy = y - PI;
            (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp()
        });
        let f = bump.shifted(bump.mean());
        let state = SolverState::new(&f, 0.01, SolverConfig::default()).unwrap();
        let d = state.diagnostics(Some(&[0.5, 1.5]));
        let curve = d.ball_mass.unwrap();
        for (i, &r) in curve.radii.iter().enumerate() {
            let kernel = f.ball_mass_max(r).unwrap();
            let spectral = curve.masses[i];
            assert!(
                (spectral - kernel).abs() / kernel < 0.01,
                "r={r}: spectral {spectral} vs kernel {kernel}"
            );
        }
    }

    #[test]
    fn ball_mass_captures_full_bump_mass() {
        // a positive bump advected nowhere: a wide ball sees ~ the whole
        // |f|-mass (zero-mean shift adds the |mean| background elsewhere)
        let n = 128;
        let bump = GridField::from_fn(n, TORUS_SIDE, |x, y| {
            let dx = x - PI;
            let dy = y - PI;
            if dx * dx + dy * dy < 0.16 {
                3.0
            } else {
                0.0
            }
        });
        let f = bump.shifted(bump.mean());
        let state = SolverState::new(&f, 0.01, SolverConfig::default()).unwrap();
        let r = 1.2;
        let got = state.diagnostics(Some(&[r])).ball_mass.unwrap().masses[0];
        // inside B_r: |bump − m| ≈ bump mass − m·πr²/vol + m·(πr² − support)/vol
        let m = bump.mean();
        let support = 0.16f64 * PI;
        let vol = TORUS_SIDE * TORUS_SIDE;
        let expect = bump.l1_norm() - m * support / vol + m * (PI * r * r - support) / vol;
        assert!(
            (got - expect).abs() / expect < 0.05,
            "ball mass {got} vs {expect}"
        );
    }

    #[test]
    fn balance_residuals_zero_history() {
        let zero = Diagnostics {
            time: 0.0,
            energy: 0.0,
            enstrophy: 0.0,
            palinstrophy: 0.0,
            h_minus_1: 0.0,
            sup_norm: 0.0,
            ball_mass: None,
        };
        let mut h2 = zero.clone();
        h2.time = 1.0;
        let (e, z) = balance_residuals(&[zero, h2], 0.1);
        assert!(e == 0.0 && z == 0.0);
    }

    #[test]
    fn checkpoint_roundtrip() {
        let n = 32;
        let field = smooth_random_field(n, 11, 2, 0.7);
        let mut state = SolverState::new(&field, 0.02, SolverConfig::default()).unwrap();
        state.run_to(0.1).unwrap();
        let mut buf = Vec::new();
        state.write_checkpoint(&mut buf).unwrap();
        let mut cursor = std::io::Cursor::new(buf);
        let restored =
            SolverState::read_checkpoint(&mut cursor, SolverConfig::default()).unwrap();
        assert_eq!(restored.resolution(), n);
        assert!((restored.time() - state.time()).abs() < 1e-15);
        assert!((restored.viscosity() - 0.02).abs() < 1e-15);
        let a = state.diagnostics(None);
        let b = restored.diagnostics(None);
        assert!((a.enstrophy - b.enstrophy).abs() / a.enstrophy < 1e-12);
    }

    #[test]
    fn passive_scalar_mode_keeps_invariants() {
        let n = 128;
        // steady Taylor–Green velocity advecting an off-center blob
        let omega = taylor_green(n);
        let (ux, uy) = biot_savart(omega.spectrum(), n, (0.0, 0.0));
        let blob = GridField::from_fn(n, TORUS_SIDE, |x, y| {
            let dx = x - 2.0;
            let dy = y - 3.0;
            (-(dx * dx + dy * dy) / 0.5).exp()
        });
        let theta0 = blob.shifted(blob.mean());
        let mut state = SolverState::new(
            &theta0,
            1e-3,
            SolverConfig {
                velocity: VelocityMode::Prescribed { ux, uy },
                ..SolverConfig::default()
            },
        )
        .unwrap();
        let z0 = state.diagnostics(None).enstrophy;
        let sup0 = state.diagnostics(None).sup_norm;
        for _ in 0..30 {
            state.step(None).unwrap();
            let d = state.diagnostics(None);
            assert!(d.enstrophy <= z0 * (1.0 + 1e-10));
            assert!(d.sup_norm <= sup0 * (1.0 + 1e-5));
        }
    }
}
