//! Whole-plane radial heat-flow examples, evaluated analytically or by
//! oscillation-aware quadrature.
//!
//! Fourier convention: f̂(ξ) = ∫ f(x) e^{-ix·ξ} dx, Plancherel with (2π)⁻².
//! For radial data ω̂(ρ) = 2π∫₀^∞ ω(r) J₀(rρ) r dr and
//! ‖ω‖²_{L²} = (2π)⁻¹ ∫₀^∞ |ω̂(ρ)|² ρ dρ.

mod bump;
mod circle;
mod logdatum;

pub use bump::{
    azimuthal_speed, rescaled_bump_ball_mass, rescaled_bump_enstrophy, rescaled_bump_l1,
    BumpProfile,
};
pub use circle::{
    circle_ball_mass, circle_ball_mass_sup, circle_enstrophy, circle_enstrophy_brute,
    circle_enstrophy_fast, circle_heat_field, circle_total_mass, initial_velocity,
    smooth_part_l2_physical, smooth_part_l2_plancherel, smooth_part_spectrum,
    smooth_part_total_mass, ChiProfile,
};
pub use logdatum::{
    claim_integral, logdatum_ball_mass, logdatum_enstrophy, logdatum_spectrum,
    logdatum_spectrum_value, logdatum_total_mass,
};

use crate::error::{Error, Result};

/// Convention tag for records produced by this module.
pub const RADIAL_CONVENTION: &str = "radial-plane/plancherel-(2pi)^-2/v1";

/// How a sampled radial spectrum behaves beyond its last node.
#[derive(Debug, Clone, PartialEq)]
pub enum TailModel {
    None,
    /// amplitude·cos(ρ + phase)/√ρ oscillation.
    BesselOscillatory { amplitude: f64, phase: f64 },
    /// O(1/√log ρ) decay.
    LogDecay,
}

/// Sampled radial profile ρ ↦ ω̂₀(ρ); the value at ρ = 0 is the total
/// (signed) mass.
#[derive(Debug, Clone)]
pub struct RadialSpectrum {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub tail_model: TailModel,
}

impl RadialSpectrum {
    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() != self.values.len() {
            return Err(Error::ParameterError("nodes/values length mismatch".into()));
        }
        if !self.nodes.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::ParameterError("nodes must increase".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("radial spectrum values".into()));
        }
        Ok(())
    }

    /// Total signed mass (the ρ = 0 value).
    pub fn mass(&self) -> Option<f64> {
        self.nodes.first().and_then(|&r| {
            if r == 0.0 {
                Some(self.values[0])
            } else {
                None
            }
        })
    }
}

/// Enstrophy along the heat flow, sampled in s = νt.
#[derive(Debug, Clone)]
pub struct HeatEnstrophyCurve {
    pub s_nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl HeatEnstrophyCurve {
    pub fn validate(&self) -> Result<()> {
        if self.s_nodes.len() != self.values.len() {
            return Err(Error::ParameterError("nodes/values length mismatch".into()));
        }
        for w in self.values.windows(2) {
            if !(w[1] > 0.0) || w[1] > w[0] * (1.0 + 1e-12) {
                return Err(Error::ParameterError(
                    "enstrophy curve must be positive and nonincreasing".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialExample {
    Circle,
    RescaledBump,
    LogDatum,
}

/// ν·∫_{t0}^{t1} ‖ω^ν(τ)‖²_{L²} dτ for the named example, with the
/// substitution t = τ² absorbing the t^{-1/2} singularity at t0 = 0.
pub fn dissipation_integral(
    example: RadialExample,
    nu: f64,
    t0: f64,
    t1: f64,
) -> Result<f64> {
    use crate::quad::{gl16_composite, gl16_log_panels};
    if !(t0 >= 0.0 && t1 > t0) {
        return Err(Error::DomainError(format!("bad time window ({t0}, {t1})")));
    }
    match example {
        RadialExample::Circle => {
            let f = |t: f64| circle_enstrophy_fast(nu * t).unwrap_or(f64::NAN);
            let v = if t0 == 0.0 {
                // ∫₀^{t1} E(νt) dt = ∫₀^{√t1} E(ντ²) 2τ dτ
                gl16_composite(&|tau: f64| 2.0 * tau * f(tau * tau), 0.0, t1.sqrt(), 48)
            } else {
                gl16_log_panels(&f, t0, t1, 48)
            };
            if !v.is_finite() {
                return Err(Error::QuadratureFailure("circle dissipation".into()));
            }
            Ok(nu * v)
        }
        RadialExample::RescaledBump => {
            let profile = BumpProfile::CompactExp;
            let v = bump::unrescaled_heat_l2_sq_time_integral(&profile, t0, t1);
            // ν·‖μ^ν(t)‖² = ‖μ(t)‖²/|log ν|
            Ok(v / nu.ln().abs())
        }
        RadialExample::LogDatum => {
            if t0 == 0.0 {
                return Err(Error::DomainError(
                    "log-datum dissipation diverges at t0 = 0; use t0 > 0".into(),
                ));
            }
            let f = |t: f64| logdatum_enstrophy(nu, t).unwrap_or(f64::NAN);
            let v = gl16_log_panels(&f, t0, t1, 48);
            if !v.is_finite() {
                return Err(Error::QuadratureFailure("log-datum dissipation".into()));
            }
            Ok(nu * v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_dissipation_scales_like_sqrt_nu() {
        // D(ν) = ∫₀^ν E(s) ds ≈ √(2πν) for small ν
        let d1 = dissipation_integral(RadialExample::Circle, 1e-4, 0.0, 1.0).unwrap();
        let d2 = dissipation_integral(RadialExample::Circle, 1e-6, 0.0, 1.0).unwrap();
        let slope = (d1 / d2).ln() / (1e-4f64 / 1e-6).ln();
        assert!((slope - 0.5).abs() < 0.03, "slope {slope}");
        let expect = (2.0 * std::f64::consts::PI * 1e-6f64).sqrt();
        assert!((d2 - expect).abs() / expect < 0.05, "{d2} vs {expect}");
    }

    #[test]
    fn logdatum_rejects_zero_start() {
        assert!(matches!(
            dissipation_integral(RadialExample::LogDatum, 1e-4, 0.0, 1.0),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn enstrophy_curve_validation() {
        let good = HeatEnstrophyCurve {
            s_nodes: vec![0.1, 0.2, 0.4],
            values: vec![3.0, 2.0, 1.5],
        };
        good.validate().unwrap();
        let bad = HeatEnstrophyCurve {
            s_nodes: vec![0.1, 0.2],
            values: vec![1.0, 2.0],
        };
        assert!(bad.validate().is_err());
    }
}
