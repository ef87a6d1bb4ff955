//! The rescaled-bump family: μ^ν(x,t) = (ν√|log ν|)⁻¹ μ(x/√ν, t) for a
//! fixed smooth radial bump μ₀, whose L² along the flow obeys the exact
//! identity ‖μ^ν(t)‖² = (ν|log ν|)⁻¹ ‖μ(t)‖².

use crate::bessel::j0;
use crate::error::{Error, Result};
use crate::quad::gl16_composite;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpProfile {
    /// exp(−1/(1−r²)) on r < 1 — compactly supported, C_c^∞(B₁).
    CompactExp,
    /// exp(−r²/2) — not compactly supported; kept as a closed-form oracle:
    /// ‖μ(t)‖² = π/(1+2t).
    Gaussian,
}

impl BumpProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            BumpProfile::CompactExp => {
                if r >= 1.0 {
                    0.0
                } else {
                    (-1.0 / (1.0 - r * r)).exp()
                }
            }
            BumpProfile::Gaussian => (-0.5 * r * r).exp(),
        }
    }

    fn support(&self) -> f64 {
        match self {
            BumpProfile::CompactExp => 1.0,
            BumpProfile::Gaussian => 12.0,
        }
    }

    /// ∫_{ℝ²} μ₀ = 2π ∫ μ₀(r) r dr.
    pub fn mass(&self) -> f64 {
        2.0 * PI * gl16_composite(&|r: f64| self.eval(r) * r, 0.0, self.support(), 64)
    }

    /// Hankel transform μ̂₀(ρ) = 2π ∫ μ₀(r) J₀(rρ) r dr.
    pub fn hankel(&self, rho: f64) -> f64 {
        2.0 * PI * gl16_composite(&|r: f64| self.eval(r) * j0(r * rho) * r, 0.0, self.support(), 64)
    }
}

/// ‖μ(t)‖²_{L²} of the unrescaled heat evolution, by Plancherel for t > 0
/// and physical-space quadrature at t = 0.
pub fn unrescaled_heat_l2_sq(profile: &BumpProfile, t: f64) -> f64 {
    if t == 0.0 {
        return 2.0
            * PI
            * gl16_composite(
                &|r: f64| profile.eval(r).powi(2) * r,
                0.0,
                profile.support(),
                64,
            );
    }
    let rho_max = (25.0 / t).sqrt().clamp(8.0, 60.0);
    gl16_composite(
        &|rho: f64| {
            let v = profile.hankel(rho);
            v * v * (-2.0 * t * rho * rho).exp() * rho
        },
        0.0,
        rho_max,
        48,
    ) / (2.0 * PI)
}

/// ∫_{t0}^{t1} ‖μ(t)‖²_{L²} dt with the time integral done in closed form
/// under the Plancherel integral (one radial quadrature, no nesting):
/// (2π)⁻¹ ∫ |μ̂₀(ρ)|² e^{-2t₀ρ²}(1 − e^{-2(t₁-t₀)ρ²})/(2ρ²) ρ dρ.
pub fn unrescaled_heat_l2_sq_time_integral(profile: &BumpProfile, t0: f64, t1: f64) -> f64 {
    debug_assert!(t1 > t0 && t0 >= 0.0);
    let rho_max = (25.0 / t0.max(1e-6)).sqrt().clamp(8.0, 60.0);
    gl16_composite(
        &|rho: f64| {
            let v = profile.hankel(rho);
            let window = if rho == 0.0 {
                t1 - t0
            } else {
                (-2.0 * t0 * rho * rho).exp() * (-(-2.0 * (t1 - t0) * rho * rho).exp_m1())
                    / (2.0 * rho * rho)
            };
            v * v * window * rho
        },
        0.0,
        rho_max,
        48,
    ) / (2.0 * PI)
}

/// ‖μ^ν(t)‖²_{L²} through the exact scaling identity; ν ∈ (0,1), t ≥ 0.
pub fn rescaled_bump_enstrophy(nu: f64, t: f64, profile: &BumpProfile) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::DomainError(format!("nu must lie in (0,1), got {nu}")));
    }
    if t < 0.0 {
        return Err(Error::DomainError("t must be nonnegative".into()));
    }
    Ok(unrescaled_heat_l2_sq(profile, t) / (nu * nu.ln().abs()))
}

/// ‖μ₀^ν‖_{L¹} = ‖μ₀‖_{L¹}/√|log ν|.
pub fn rescaled_bump_l1(nu: f64, profile: &BumpProfile) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::DomainError(format!("nu must lie in (0,1), got {nu}")));
    }
    Ok(profile.mass() / nu.ln().abs().sqrt())
}

/// Azimuthal speed |v₀(x)| = (1/|x|)∫₀^{|x|} s μ₀(s) ds of the velocity
/// whose curl is the bump — a formula evaluator for plots; v₀ ~ mass/(2πr)
/// beyond the support.
pub fn azimuthal_speed(profile: &BumpProfile, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    gl16_composite(&|s: f64| profile.eval(s) * s, 0.0, r.min(profile.support()), 32) / r
}

/// Ball mass of the rescaled initial bump: ∫_{B_r(0)} μ₀^ν =
/// (1/√|log ν|)·2π∫₀^{r/√ν} μ₀(s) s ds. The sup over ν is attained where
/// the bump just fills the ball and decays like 1/√|log r|.
pub fn rescaled_bump_ball_mass(nu: f64, r: f64, profile: &BumpProfile) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::DomainError(format!("nu must lie in (0,1), got {nu}")));
    }
    if !(r > 0.0) {
        return Err(Error::DomainError("r must be positive".into()));
    }
    let upper = (r / nu.sqrt()).min(profile.support());
    let inner = 2.0 * PI * gl16_composite(&|s: f64| profile.eval(s) * s, 0.0, upper, 32);
    Ok(inner / nu.ln().abs().sqrt())
}
