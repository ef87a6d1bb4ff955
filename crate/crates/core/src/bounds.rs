//! Superquadratic rate models Ψ, the envelope transform
//! F(w) = ∫_w^∞ dv/Ψ(v) with its monotone inverse, dissipation budgets and
//! timescale verdicts.
//!
//! The comparison principle turns the enstrophy law d/dt z ≤ −νΨ(z) into
//! F(z(t)) ≥ νt, so F⁻¹(νt) is the largest enstrophy consistent with the
//! decay. Quadratic Ψ reproduces the 1/(νt) bound; Ψ ∝ v^{(4-α)/(2-α)}
//! gives (νt)^{-(2-α)/2}; the log-corrected model gives 1/(νt√|log νt|).

use crate::error::{Error, Result};
use crate::interp::Pchip;
use crate::quad::{gl16, gl16_log_panels};
use crate::spectral2d::{DissipationRecord, CONVENTION};
use serde::{Deserialize, Serialize};

/// Unspecified small-s threshold of the log-corrected regime; exposed as a
/// knob with this default.
pub const DEFAULT_S1: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PsiKind {
    Quadratic { c: f64 },
    Algebraic { alpha: f64, c: f64 },
    Delort { c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuperquadraticCertificate {
    /// Ψ(v) = c·v^p.
    Exponent(f64),
    /// Ψ(v) = (γ⁻¹(v/c))² with γ(z) = z/(1+log z)^{1/4}.
    LogCorrected,
}

/// γ(z) = z(1+log z)^{-1/4} for z ≥ z₀ = e², continued below z₀ by the
/// C¹-matched increasing quadratic az² + bz (so Ψ is exactly quadratic
/// near zero — the Poincaré regime).
#[derive(Debug, Clone, Copy)]
struct DelortGamma {
    z0: f64,
    gamma_z0: f64,
    a: f64,
    b: f64,
}

impl DelortGamma {
    fn new() -> Self {
        let z0 = std::f64::consts::E * std::f64::consts::E;
        let gamma_z0 = z0 * 3.0f64.powf(-0.25);
        let gp_z0 = 3.0f64.powf(-0.25) * (1.0 - 1.0 / 12.0);
        let a = (gp_z0 * z0 - gamma_z0) / (z0 * z0);
        let b = (2.0 * gamma_z0 - gp_z0 * z0) / z0;
        DelortGamma { z0, gamma_z0, a, b }
    }

    fn gamma(&self, z: f64) -> f64 {
        if z >= self.z0 {
            z * (1.0 + z.ln()).powf(-0.25)
        } else {
            (self.a * z + self.b) * z
        }
    }

    fn gamma_prime(&self, z: f64) -> f64 {
        if z >= self.z0 {
            let l = 1.0 + z.ln();
            l.powf(-0.25) * (1.0 - 0.25 / l)
        } else {
            2.0 * self.a * z + self.b
        }
    }

    /// Inverse by closed form below the splice, guarded Newton above.
    fn gamma_inv(&self, w: f64) -> f64 {
        debug_assert!(w >= 0.0);
        if w <= self.gamma_z0 {
            // az² + bz = w, a < 0: stable root
            return 2.0 * w / (self.b + (self.b * self.b + 4.0 * self.a * w).sqrt());
        }
        let mut lo = self.z0;
        let mut hi = f64::MAX / 4.0;
        let mut z = w * (1.0 + w.max(3.0).ln()).powf(0.25);
        for _ in 0..60 {
            let g = self.gamma(z);
            if g < w {
                lo = lo.max(z);
            } else {
                hi = hi.min(z);
            }
            let step = (g - w) / self.gamma_prime(z);
            let next = z - step;
            z = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if step.abs() < 1e-14 * z.abs() {
                break;
            }
        }
        z
    }
}

#[derive(Debug, Clone)]
pub struct PsiModel {
    kind: PsiKind,
    delort: Option<DelortGamma>,
}

/// Validate parameters and assemble the rate model.
pub fn make_psi(kind: PsiKind) -> Result<PsiModel> {
    match kind {
        PsiKind::Quadratic { c } | PsiKind::Delort { c } => {
            if !(c > 0.0) {
                return Err(Error::ParameterError("c must be positive".into()));
            }
        }
        PsiKind::Algebraic { alpha, c } => {
            if !(c > 0.0) {
                return Err(Error::ParameterError("c must be positive".into()));
            }
            if !(alpha > 0.0 && alpha < 2.0) {
                return Err(Error::ParameterError(format!(
                    "alpha must lie in (0,2), got {alpha}"
                )));
            }
        }
    }
    let delort = match kind {
        PsiKind::Delort { .. } => Some(DelortGamma::new()),
        _ => None,
    };
    Ok(PsiModel { kind, delort })
}

impl PsiModel {
    pub fn kind(&self) -> PsiKind {
        self.kind
    }

    pub fn eval(&self, v: f64) -> f64 {
        debug_assert!(v >= 0.0);
        match self.kind {
            PsiKind::Quadratic { c } => c * v * v,
            PsiKind::Algebraic { alpha, c } => c * v.powf((4.0 - alpha) / (2.0 - alpha)),
            PsiKind::Delort { c } => {
                let g = self.delort.as_ref().unwrap();
                let z = g.gamma_inv(v / c);
                z * z
            }
        }
    }

    pub fn certificate(&self) -> SuperquadraticCertificate {
        match self.kind {
            PsiKind::Quadratic { .. } => SuperquadraticCertificate::Exponent(2.0),
            PsiKind::Algebraic { alpha, .. } => {
                SuperquadraticCertificate::Exponent((4.0 - alpha) / (2.0 - alpha))
            }
            PsiKind::Delort { .. } => SuperquadraticCertificate::LogCorrected,
        }
    }

    /// Ψ must be increasing with Ψ(v)/v² nondecreasing (superquadratic at
    /// infinity) on a geometric grid, or the tail of 1/Ψ is not integrable.
    fn check_certificate(&self) -> Result<()> {
        let mut prev_ratio = 0.0;
        let mut prev_val = 0.0;
        let mut v = 1.0;
        while v <= 1e12 {
            let p = self.eval(v);
            if p <= prev_val {
                return Err(Error::NonIntegrableTail("Ψ not increasing".into()));
            }
            let ratio = p / (v * v);
            if ratio < prev_ratio * (1.0 - 1e-9) {
                return Err(Error::NonIntegrableTail(
                    "Ψ(v)/v² decreasing — tail of 1/Ψ not integrable".into(),
                ));
            }
            prev_ratio = ratio;
            prev_val = p;
            v *= 2.0;
        }
        Ok(())
    }
}

enum EnvelopeBackend {
    /// F(w) = 1/(cw).
    Quadratic { c: f64 },
    /// F(w) = w^{1-p}/(c(p-1)).
    Power { c: f64, p: f64 },
    /// log-log PCHIP cache of G(x) = ∫_x^∞ (γ⁻¹)⁻² du with analytic tails.
    Cached {
        c: f64,
        gamma: DelortGamma,
        interp: Pchip,
        x_min: f64,
        x_max: f64,
        g_at_min: f64,
        g_at_max: f64,
    },
}

/// F and its inverse for a given rate model.
pub struct EnvelopeFn {
    psi: PsiModel,
    backend: EnvelopeBackend,
}

/// Build the envelope transform; fails with NonIntegrableTail when the
/// superquadratic certificate does not hold.
pub fn envelope(psi: &PsiModel) -> Result<EnvelopeFn> {
    psi.check_certificate()?;
    let backend = match psi.kind {
        PsiKind::Quadratic { c } => EnvelopeBackend::Quadratic { c },
        PsiKind::Algebraic { alpha, c } => EnvelopeBackend::Power {
            c,
            p: (4.0 - alpha) / (2.0 - alpha),
        },
        PsiKind::Delort { c } => {
            let gamma = DelortGamma::new();
            let x_min = 1e-12f64;
            let x_max = 1e16f64;
            let n = 1200;
            let mut xs = Vec::with_capacity(n);
            for i in 0..n {
                let lx = x_min.ln() + (x_max.ln() - x_min.ln()) * i as f64 / (n - 1) as f64;
                xs.push(lx.exp());
            }
            let integrand = |u: f64| {
                let z = gamma.gamma_inv(u);
                1.0 / (z * z)
            };
            // analytic-free tail: substitute u = x e^y and integrate the
            // true integrand over y ∈ [0, 60]
            let tail = |x: f64| {
                gl16(
                    &|y: f64| {
                        let u = x * y.exp();
                        integrand(u) * u
                    },
                    0.0,
                    6.0,
                ) + gl16(
                    &|y: f64| {
                        let u = x * y.exp();
                        integrand(u) * u
                    },
                    6.0,
                    20.0,
                ) + gl16(
                    &|y: f64| {
                        let u = x * y.exp();
                        integrand(u) * u
                    },
                    20.0,
                    60.0,
                )
            };
            let mut g = vec![0.0; n];
            g[n - 1] = tail(x_max);
            for i in (0..n - 1).rev() {
                g[i] = g[i + 1] + gl16(&integrand, xs[i], xs[i + 1]);
            }
            let ln_xs: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
            let ln_gs: Vec<f64> = g.iter().map(|v| v.ln()).collect();
            EnvelopeBackend::Cached {
                c,
                gamma,
                interp: Pchip::new(ln_xs, ln_gs),
                x_min,
                x_max,
                g_at_min: g[0],
                g_at_max: g[n - 1],
            }
        }
    };
    Ok(EnvelopeFn {
        psi: psi.clone(),
        backend,
    })
}

impl EnvelopeFn {
    pub fn psi(&self) -> &PsiModel {
        &self.psi
    }

    /// F(w) = ∫_w^∞ dv/Ψ(v); strictly decreasing, F(w) → 0 as w → ∞.
    pub fn f(&self, w: f64) -> f64 {
        debug_assert!(w > 0.0);
        match &self.backend {
            EnvelopeBackend::Quadratic { c } => 1.0 / (c * w),
            EnvelopeBackend::Power { c, p } => w.powf(1.0 - p) / (c * (p - 1.0)),
            EnvelopeBackend::Cached {
                c,
                gamma,
                interp,
                x_min,
                x_max,
                g_at_min,
                g_at_max,
            } => {
                let x = w / c;
                let g = if x < *x_min {
                    // quadratic regime below the cache: numeric log panels
                    let integrand = |u: f64| {
                        let z = gamma.gamma_inv(u);
                        1.0 / (z * z)
                    };
                    g_at_min + gl16_log_panels(&integrand, x, *x_min, 64)
                } else if x > *x_max {
                    // scale the far tail by its leading 1/x·(log)^{-1/2} law
                    let l_ratio = ((1.0 + x.ln()) / (1.0 + x_max.ln())).sqrt();
                    g_at_max * (*x_max / x) / l_ratio
                } else {
                    interp.eval(x.ln()).exp()
                };
                c * g
            }
        }
    }

    /// Monotone inverse: the largest w with F(w) = y.
    pub fn f_inv(&self, y: f64) -> f64 {
        debug_assert!(y > 0.0);
        match &self.backend {
            EnvelopeBackend::Quadratic { c } => 1.0 / (c * y),
            EnvelopeBackend::Power { c, p } => (c * (p - 1.0) * y).powf(-1.0 / (p - 1.0)),
            EnvelopeBackend::Cached {
                c,
                interp,
                x_min,
                x_max,
                g_at_min,
                g_at_max,
                ..
            } => {
                let g_target = y / c;
                if g_target <= *g_at_max || g_target >= *g_at_min {
                    // outside the cache: bisection on the continuous F
                    let mut lo = x_min / 1e12;
                    let mut hi = x_max * 1e12;
                    for _ in 0..200 {
                        let mid = (lo.ln() + hi.ln()) / 2.0;
                        let x = mid.exp();
                        if self.f(c * x) / c > g_target {
                            lo = x;
                        } else {
                            hi = x;
                        }
                    }
                    return c * (lo.ln() / 2.0 + hi.ln() / 2.0).exp();
                }
                c * interp.invert(g_target.ln()).exp()
            }
        }
    }
}

/// F⁻¹(νt): the enstrophy envelope at time t and viscosity ν.
pub fn enstrophy_envelope(env: &EnvelopeFn, nu: f64, t: f64) -> Result<f64> {
    let s = nu * t;
    if !(s > 0.0) {
        return Err(Error::DomainError("νt must be positive".into()));
    }
    Ok(env.f_inv(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BudgetKind {
    Algebraic { alpha: f64 },
    Delort,
    Lp { p: f64 },
}

/// The dissipation budget ν∫‖ω‖² is compared against, with unit constant:
/// (νT)^{α/2} for algebraic ball decay, log(T/δ)/√|log(νT)| for the
/// measure class, (νT)^{2(p-1)/p} for L^p data. Requires νT < 1.
pub fn dissipation_budget(kind: BudgetKind, nu: f64, delta: f64, t_end: f64) -> Result<f64> {
    if !(nu > 0.0 && t_end > 0.0) {
        return Err(Error::DomainError("need ν > 0 and T > 0".into()));
    }
    if nu * t_end >= 1.0 {
        return Err(Error::DomainError(format!(
            "budgets apply below the diffusive timescale: νT = {} ≥ 1",
            nu * t_end
        )));
    }
    match kind {
        BudgetKind::Algebraic { alpha } => {
            if !(alpha > 0.0 && alpha < 2.0) {
                return Err(Error::ParameterError("alpha must lie in (0,2)".into()));
            }
            Ok((nu * t_end).powf(alpha / 2.0))
        }
        BudgetKind::Delort => {
            if !(delta > 0.0 && t_end > delta) {
                return Err(Error::DomainError("need T > δ > 0".into()));
            }
            Ok((t_end / delta).ln() / (nu * t_end).ln().abs().sqrt())
        }
        BudgetKind::Lp { p } => {
            if !(p > 1.0) {
                return Err(Error::ParameterError("p must exceed 1".into()));
            }
            Ok((nu * t_end).powf(2.0 * (p - 1.0) / p))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Vanishes,
    DoesNotVanish,
}

#[derive(Debug, Clone)]
pub struct VerdictSeries {
    pub nu: Vec<f64>,
    pub budget: Vec<f64>,
    pub verdict: Verdict,
}

/// Evaluate the budget along (ν, T_ν) and decide whether it vanishes:
/// strictly decreasing on the tail half of the grid.
pub fn timescale_verdict(
    kind: BudgetKind,
    t_of_nu: impl Fn(f64) -> f64,
    nu_grid: &[f64],
    delta: f64,
) -> Result<VerdictSeries> {
    if nu_grid.len() < 4 {
        return Err(Error::InsufficientData(
            "need at least 4 viscosities for a tail test".into(),
        ));
    }
    let mut budget = Vec::with_capacity(nu_grid.len());
    for &nu in nu_grid {
        budget.push(dissipation_budget(kind, nu, delta, t_of_nu(nu))?);
    }
    let tail = &budget[budget.len() / 2..];
    let decreasing = tail.windows(2).all(|w| w[1] < w[0] * (1.0 - 1e-9));
    let verdict = if decreasing {
        Verdict::Vanishes
    } else {
        Verdict::DoesNotVanish
    };
    Ok(VerdictSeries {
        nu: nu_grid.to_vec(),
        budget,
        verdict,
    })
}

/// Margins F(z(t)) − νt along a recorded run; the comparison principle
/// predicts every margin ≥ 0 up to integrator tolerance. A zero enstrophy
/// snapshot contributes +∞ (F(0⁺) = ∞).
pub fn envelope_vs_simulation(
    record: &DissipationRecord,
    env: &EnvelopeFn,
) -> Result<Vec<f64>> {
    if record.convention != CONVENTION {
        return Err(Error::ConventionMismatch {
            expected: CONVENTION.into(),
            got: record.convention.clone(),
        });
    }
    Ok(record
        .times
        .iter()
        .zip(record.enstrophy.iter())
        .map(|(&t, &z)| {
            if z <= 0.0 {
                f64::INFINITY
            } else {
                env.f(z) - record.nu * t
            }
        })
        .collect())
}

/// sup over a geometric s grid in (0, s₁] of `delort_chain_ratio` — the
/// small-s threshold s₁ is a knob with [`DEFAULT_S1`] as default.
pub fn delort_chain_sup(psi: &PsiModel, s1: f64) -> Result<f64> {
    if !(s1 > 0.0 && s1 < 1.0) {
        return Err(Error::ParameterError("s1 must lie in (0,1)".into()));
    }
    let mut sup: f64 = 0.0;
    let mut s = 1e-9;
    while s <= s1 {
        sup = sup.max(delort_chain_ratio(psi, s));
        s *= 1.5;
    }
    Ok(sup)
}

/// Ratio of 1/(s²√log(1/s)) to Ψ_Delort(1/(s√log(1/s))), bounded on
/// (0, s₁] — the pointwise inequality the log-corrected envelope rests on.
pub fn delort_chain_ratio(psi: &PsiModel, s: f64) -> f64 {
    debug_assert!(matches!(psi.kind, PsiKind::Delort { .. }));
    let l = (1.0 / s).ln();
    let v = 1.0 / (s * l.sqrt());
    (1.0 / (s * s * l.sqrt())) / psi.eval(v)
}

pub const BUDGET_CSV_HEADER: &str = "kind,alpha_or_kappa,nu,delta,T,budget";
