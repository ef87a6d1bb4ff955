//! Self-similar families of disk plateaus concentrating on a Cantor-type set.
//!
//! The n-th family places Nₙ = 4ⁿ disjoint trapezoid bumps (flat plateau of
//! radius δ, linear ramp to zero across δ < s < 2δ) at the cell centers of
//! the n-level 4-ary quadtree subdivision of the unit square. Plateau height
//! h = δ⁻²Nₙ⁻¹ keeps the total mass independent of n.
//!
//! Per-disk integrals of the profile:
//!   ∫ f        = (7/3)·π h δ²      (plateau π + annulus 4π/3)
//!   ∫ f²       = (11/6)·π h² δ²    (plateau π + annulus 5π/6)
//!   ∫ |∇f|²    = 3π h²             (|∇f| = h/δ on the annulus of area 3πδ²)
//!
//! Radii shrink either algebraically, δₙ = 4^{-n/α}, or log-sparsely,
//! log δₙ = -4^{2n}; the latter underflows f64 past n = 2 so all norms are
//! carried in log-domain.

use crate::error::{Error, Result};
use crate::grid::GridField;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Total L¹ mass of every family member: (7/3)π.
pub const L1_MASS: f64 = 7.0 * PI / 3.0;
/// ‖f̃ₙ‖²_{L²} = L2_COEFF · δ⁻² N⁻¹.
pub const L2_COEFF: f64 = 11.0 * PI / 6.0;
/// ‖∇f̃ₙ‖²_{L²} = H1_COEFF · δ⁻⁴ N⁻¹.
pub const H1_COEFF: f64 = 3.0 * PI;

const LN4: f64 = 1.3862943611198906; // ln 4

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CantorRule {
    Algebraic { alpha: f64 },
    LogSparse,
}

impl CantorRule {
    pub fn validate(&self) -> Result<()> {
        if let CantorRule::Algebraic { alpha } = self {
            if !(*alpha > 0.0 && *alpha < 2.0) {
                return Err(Error::ParameterError(format!(
                    "alpha must lie in (0,2), got {alpha}"
                )));
            }
        }
        Ok(())
    }

    /// log of the nominal radius δₙ.
    pub fn log_radius(&self, n: u32) -> f64 {
        match self {
            CantorRule::Algebraic { alpha } => -(n as f64 / alpha) * LN4,
            CantorRule::LogSparse => -4.0f64.powi(2 * n as i32),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CantorRule::Algebraic { .. } => "algebraic".into(),
            CantorRule::LogSparse => "log_sparse".into(),
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            CantorRule::Algebraic { alpha } => Some(*alpha),
            CantorRule::LogSparse => None,
        }
    }
}

/// Closed-form norms of the unshifted bump sum f̃ₙ, log-domain where needed.
#[derive(Debug, Clone, Copy)]
pub struct NormBundle {
    /// ‖f̃ₙ‖_{L¹} — equals the torus average cₙ on the unit-volume torus.
    pub l1: f64,
    pub l2_sq_log: f64,
    pub h1_sq_log: f64,
    /// cₙ, the torus average of f̃ₙ.
    pub mean: f64,
}

impl NormBundle {
    fn from_logs(log_delta: f64, n: u32) -> Self {
        let n_ln4 = n as f64 * LN4;
        NormBundle {
            l1: L1_MASS,
            l2_sq_log: L2_COEFF.ln() - 2.0 * log_delta - n_ln4,
            h1_sq_log: H1_COEFF.ln() - 4.0 * log_delta - n_ln4,
            mean: L1_MASS,
        }
    }

    pub fn l2_sq(&self) -> f64 {
        self.l2_sq_log.exp()
    }

    pub fn h1_sq(&self) -> f64 {
        self.h1_sq_log.exp()
    }

    /// ‖fₙ‖²_{L²} of the zero-mean fₙ = f̃ₙ − cₙ (exact: ‖f̃‖² − cₙ²).
    pub fn l2_sq_zero_mean(&self) -> f64 {
        self.l2_sq() - self.mean * self.mean
    }
}

#[derive(Debug, Clone)]
pub struct CantorFamily {
    rule: CantorRule,
    level: u32,
    disk_count: u64,
    /// Effective log δ after the disjointness clamp.
    log_radius: f64,
    log_radius_nominal: f64,
    clamped: bool,
    centers: Option<Vec<(f64, f64)>>,
}

/// Build the n-th family member. When 4δₙ would exceed the quadtree cell
/// width 2⁻ⁿ the radius is clamped to cellwidth/4 (recorded in `clamped`).
pub fn build_family(rule: CantorRule, n: u32) -> Result<CantorFamily> {
    rule.validate()?;
    if n < 1 {
        return Err(Error::ParameterError("level n must be ≥ 1".into()));
    }
    let log_nominal = rule.log_radius(n);
    // clamp: δ ≤ 2^{-n}/4 keeps the 2δ support disks interior-disjoint
    let log_clamp = -((n + 2) as f64) * std::f64::consts::LN_2;
    let (log_radius, clamped) = if log_nominal > log_clamp {
        (log_clamp, true)
    } else {
        (log_nominal, false)
    };
    let materialize = match rule {
        CantorRule::Algebraic { .. } => true,
        CantorRule::LogSparse => n == 1,
    };
    let centers = if materialize {
        Some(quadtree_centers(n))
    } else {
        None
    };
    Ok(CantorFamily {
        rule,
        level: n,
        disk_count: 4u64.pow(n),
        log_radius,
        log_radius_nominal: log_nominal,
        clamped,
        centers,
    })
}

/// Build with an explicit radius; fails with GeometryViolation when the 2δ
/// support disks at the quadtree centers would overlap or exit the square.
pub fn with_radius(rule: CantorRule, n: u32, delta: f64) -> Result<CantorFamily> {
    rule.validate()?;
    if !(delta > 0.0) {
        return Err(Error::ParameterError("delta must be positive".into()));
    }
    let cell = 0.5f64.powi(n as i32);
    if 4.0 * delta > cell {
        return Err(Error::GeometryViolation(format!(
            "2δ = {} disks at {}-level quadtree centers overlap (cell width {cell}); \
             shrink δ to at most cellwidth/4 = {}",
            2.0 * delta,
            n,
            cell / 4.0
        )));
    }
    Ok(CantorFamily {
        rule,
        level: n,
        disk_count: 4u64.pow(n),
        log_radius: delta.ln(),
        log_radius_nominal: rule.log_radius(n),
        clamped: false,
        centers: Some(quadtree_centers(n)),
    })
}

fn quadtree_centers(n: u32) -> Vec<(f64, f64)> {
    let m = 1usize << n; // 2^n cells per side
    let w = 1.0 / m as f64;
    let mut centers = Vec::with_capacity(m * m);
    for j in 0..m {
        for i in 0..m {
            centers.push(((i as f64 + 0.5) * w, (j as f64 + 0.5) * w));
        }
    }
    centers
}

impl CantorFamily {
    pub fn rule(&self) -> CantorRule {
        self.rule
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn disk_count(&self) -> u64 {
        self.disk_count
    }

    pub fn log_radius(&self) -> f64 {
        self.log_radius
    }

    pub fn log_radius_nominal(&self) -> f64 {
        self.log_radius_nominal
    }

    pub fn clamped(&self) -> bool {
        self.clamped
    }

    /// Effective radius; 0.0 if δ underflows f64 (LogSparse n ≥ 3).
    pub fn radius(&self) -> f64 {
        self.log_radius.exp()
    }

    pub fn centers(&self) -> Option<&[(f64, f64)]> {
        self.centers.as_deref()
    }

    /// log of the plateau height h = δ⁻²N⁻¹.
    pub fn log_plateau(&self) -> f64 {
        -2.0 * self.log_radius - self.level as f64 * LN4
    }

    /// Mass carried by one disk, (7/3)π/Nₙ.
    pub fn per_disk_mass(&self) -> f64 {
        L1_MASS * (-(self.level as f64) * LN4).exp()
    }

    pub fn mean_value(&self) -> f64 {
        L1_MASS
    }

    /// Pointwise value of f̃ₙ. Requires materialized centers.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let centers = self.centers.as_ref().ok_or_else(|| {
            Error::ParameterError("eval needs materialized centers (lazy family)".into())
        })?;
        let m = 1usize << self.level;
        let i = ((x * m as f64).floor() as isize).clamp(0, m as isize - 1) as usize;
        let j = ((y * m as f64).floor() as isize).clamp(0, m as isize - 1) as usize;
        let (cx, cy) = centers[j * m + i];
        let s = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
        let delta = self.radius();
        let h = self.log_plateau().exp();
        Ok(if s <= delta {
            h
        } else if s < 2.0 * delta {
            h * (2.0 - s / delta)
        } else {
            0.0
        })
    }

    /// Closed-form norms of f̃ₙ at the effective radius.
    pub fn norms(&self) -> NormBundle {
        NormBundle::from_logs(self.log_radius, self.level)
    }

    /// Worst-case envelope for the |f̃ₙ|-mass a radius-r ball can capture:
    /// the plateau branch πhr² (continuously capped at the per-disk mass
    /// across the ramp band) for small r, then 4^{n-j}·(per-disk mass) on
    /// the nominal cluster scales δ_{j+1} < r ≤ δ_j. For clamped families
    /// the single-disk branch is evaluated at the effective radius as well
    /// and the maximum taken, so the envelope always dominates the
    /// materialized geometry.
    pub fn ball_mass_worst_case(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || r >= 0.5 {
            return Err(Error::DomainError(format!(
                "ball radius must lie in (0, 1/2), got {r}"
            )));
        }
        let ln_r = r.ln();
        let m_disk = self.per_disk_mass();
        let single_disk = |log_radius: f64| -> Option<f64> {
            // log-domain: the plateau height may overflow f64
            if ln_r <= log_radius + std::f64::consts::LN_2 {
                let log_h = -2.0 * log_radius - self.level as f64 * LN4;
                Some((PI.ln() + log_h + 2.0 * ln_r).exp().min(m_disk))
            } else {
                None
            }
        };
        let nominal = match single_disk(self.log_radius_nominal) {
            Some(v) => v,
            None => {
                // cluster regime: largest j in 0..n-1 with r ≤ δ_j (nominal)
                let mut level_j: Option<u32> = None;
                for j in 0..self.level {
                    if ln_r <= self.rule.log_radius(j) {
                        level_j = Some(j);
                    } else {
                        break;
                    }
                }
                match level_j {
                    None => L1_MASS,
                    Some(j) => L1_MASS * (-(j as f64) * LN4).exp(),
                }
            }
        };
        if !self.clamped {
            return Ok(nominal);
        }
        let effective = single_disk(self.log_radius).unwrap_or(m_disk);
        Ok(nominal.max(effective))
    }

    fn check_resolution(&self, grid_size: usize) -> Result<()> {
        // at least 8 cells across the 2δ core-disk diameter
        let needed_log = (4.0 / grid_size as f64).ln();
        if self.log_radius < needed_log {
            return Err(Error::ResolutionError(format!(
                "grid {grid_size}² cannot resolve log δ = {:.4e} (needs δ ≥ 4/grid)",
                self.log_radius
            )));
        }
        Ok(())
    }

    /// Zero-mean rasterization fₙ sampled at cell centers. The returned grid
    /// mean is removed exactly; the closed-form cₙ is `mean_value()`.
    pub fn rasterize(&self, grid_size: usize) -> Result<GridField> {
        self.check_resolution(grid_size)?;
        if self.centers.is_none() {
            return Err(Error::ParameterError(
                "cannot rasterize a lazy family".into(),
            ));
        }
        let field = GridField::from_fn_cell_centers(grid_size, 1.0, |x, y| {
            self.eval(x, y).unwrap_or(0.0)
        });
        let m = field.mean();
        Ok(field.shifted(m))
    }

    /// Rasterization of the unshifted f̃ₙ (for mass/ball-mass oracles).
    pub fn rasterize_unshifted(&self, grid_size: usize) -> Result<GridField> {
        self.check_resolution(grid_size)?;
        if self.centers.is_none() {
            return Err(Error::ParameterError(
                "cannot rasterize a lazy family".into(),
            ));
        }
        Ok(GridField::from_fn_cell_centers(grid_size, 1.0, |x, y| {
            self.eval(x, y).unwrap_or(0.0)
        }))
    }

    /// Grid oracle for the ball mass: rasterize |f̃ₙ| and take the max over
    /// grid centers of the partial-cell-area quadrature over B_r.
    pub fn ball_mass_oracle(&self, grid_size: usize, r: f64) -> Result<f64> {
        let field = self.rasterize_unshifted(grid_size)?;
        field.ball_mass_max(r)
    }

    /// Verify interior-disjointness and containment of the 2δ support disks.
    pub fn check_geometry(&self) -> Result<()> {
        let centers = match &self.centers {
            Some(c) => c,
            None => return Ok(()), // lazy families are valid by construction
        };
        let support = 2.0 * self.radius();
        for &(cx, cy) in centers {
            if cx - support < -1e-12 || cx + support > 1.0 + 1e-12 || cy - support < -1e-12 || cy + support > 1.0 + 1e-12
            {
                return Err(Error::GeometryViolation(format!(
                    "support disk at ({cx},{cy}) exits the unit square"
                )));
            }
        }
        // lattice placement: nearest-neighbor spacing is the cell width
        let cell = 0.5f64.powi(self.level as i32);
        if 2.0 * support > cell + 1e-15 {
            return Err(Error::GeometryViolation(
                "adjacent support disks overlap".into(),
            ));
        }
        Ok(())
    }
}

/// Which route produced a ball-mass curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallMassKind {
    AnalyticWorstCase,
    GridOracle,
}

/// Sampled r ↦ 𝕄(r): nondecreasing, capped by the total mass.
#[derive(Debug, Clone)]
pub struct BallMassCurve {
    pub radii: Vec<f64>,
    pub masses: Vec<f64>,
    pub kind: BallMassKind,
}

impl BallMassCurve {
    pub fn validate(&self, total_mass: f64) -> Result<()> {
        if self.radii.len() != self.masses.len() {
            return Err(Error::ParameterError("radii/masses length mismatch".into()));
        }
        if !self.radii.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::ParameterError("radii must increase".into()));
        }
        for w in self.masses.windows(2) {
            if w[1] < w[0] * (1.0 - 1e-12) {
                return Err(Error::ParameterError("masses must be nondecreasing".into()));
            }
        }
        if self.masses.iter().any(|&m| m > total_mass * (1.0 + 1e-9)) {
            return Err(Error::ParameterError("mass exceeds the total".into()));
        }
        Ok(())
    }
}

impl CantorFamily {
    /// Ball-mass curve over the given radii, by either route. The grid
    /// oracle rasterizes once and convolves per radius.
    pub fn ball_mass_curve(
        &self,
        radii: &[f64],
        kind: BallMassKind,
        grid_size: usize,
    ) -> Result<BallMassCurve> {
        let masses = match kind {
            BallMassKind::AnalyticWorstCase => radii
                .iter()
                .map(|&r| self.ball_mass_worst_case(r))
                .collect::<Result<Vec<_>>>()?,
            BallMassKind::GridOracle => {
                let tilde = self.rasterize_unshifted(grid_size)?;
                radii
                    .iter()
                    .map(|&r| tilde.ball_mass_max(r))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let curve = BallMassCurve {
            radii: radii.to_vec(),
            masses,
            kind,
        };
        curve.validate(L1_MASS)?;
        Ok(curve)
    }
}

/// Saturation ratios Sₙ for n = 1..n_max, evaluated on the nominal closed
/// forms in log-domain (exponential factors cancel before exponentiation).
///
/// Algebraic: Sₙ = ‖f̃ₙ‖_{L²}^{(4-α)/(2-α)} / ‖∇f̃ₙ‖_{L²} with the exact
/// trapezoid-profile constants — identically ((11π/6)^{(4-α)/(2(2-α))})/√(3π).
/// LogSparse: Sₙ = ‖fₙ‖²(log‖∇fₙ‖)^{1/4}/‖∇fₙ‖ on the bare power laws
/// δ⁻²N⁻¹ and δ⁻⁴N⁻¹ (profile constants divided out), which reduces to
/// 4^{-n/2}(2·4^{2n} − (n/2)log4)^{1/4}.
pub fn saturation_sequence(rule: CantorRule, n_max: u32) -> Result<Vec<f64>> {
    rule.validate()?;
    if n_max < 1 {
        return Err(Error::ParameterError("n_max must be ≥ 1".into()));
    }
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        out.push(saturation_ratio(rule, n)?);
    }
    Ok(out)
}

pub fn saturation_ratio(rule: CantorRule, n: u32) -> Result<f64> {
    rule.validate()?;
    let log_delta = rule.log_radius(n);
    match rule {
        CantorRule::Algebraic { alpha } => {
            let bundle = NormBundle::from_logs(log_delta, n);
            let e = (4.0 - alpha) / (2.0 * (2.0 - alpha));
            Ok((e * bundle.l2_sq_log - 0.5 * bundle.h1_sq_log).exp())
        }
        CantorRule::LogSparse => {
            let n_ln4 = n as f64 * LN4;
            let l2_bare = -2.0 * log_delta - n_ln4;
            let h1_bare = -4.0 * log_delta - n_ln4;
            let log_grad = 0.5 * h1_bare; // log ‖∇fₙ‖
            Ok((l2_bare - 0.5 * h1_bare + 0.25 * log_grad.ln()).exp())
        }
    }
}

/// Limit of the Algebraic saturation ratio.
pub fn algebraic_saturation_limit(alpha: f64) -> f64 {
    let e = (4.0 - alpha) / (2.0 * (2.0 - alpha));
    L2_COEFF.powf(e) / H1_COEFF.sqrt()
}

/// 2^{1/4}·(1 − n·4^{-2n})^{1/4}, the LogSparse asymptote.
pub fn log_sparse_saturation_target(n: u32) -> f64 {
    let l = 4.0f64.powi(2 * n as i32);
    (2.0f64).powf(0.25) * (1.0 - n as f64 / l).powf(0.25)
}

/// CSV row for the family table: rule, alpha, n, delta_log, l1, l2_sq_log,
/// h1_sq_log, S_n.
pub fn csv_row(rule: CantorRule, n: u32) -> Result<String> {
    let bundle = NormBundle::from_logs(rule.log_radius(n), n);
    let s = saturation_ratio(rule, n)?;
    Ok(format!(
        "{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
        rule.label(),
        rule.alpha().map(|a| a.to_string()).unwrap_or_default(),
        n,
        rule.log_radius(n),
        bundle.l1,
        bundle.l2_sq_log,
        bundle.h1_sq_log,
        s
    ))
}

pub const CSV_HEADER: &str = "rule,alpha,n,delta_log,l1,l2_sq_log,h1_sq_log,S_n";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gl16_composite;

    fn alg(alpha: f64) -> CantorRule {
        CantorRule::Algebraic { alpha }
    }

    /// Independent oracle: per-disk radial integrals of the trapezoid
    /// profile by fine 1D quadrature, scaled up to the family.
    fn quadrature_norms(family: &CantorFamily) -> (f64, f64, f64) {
        let delta = family.radius();
        let h = family.log_plateau().exp();
        let n_disks = family.disk_count as f64;
        let profile = |s: f64| {
            if s <= delta {
                h
            } else if s < 2.0 * delta {
                h * (2.0 - s / delta)
            } else {
                0.0
            }
        };
        let l1 = gl16_composite(&|s: f64| profile(s) * s, 0.0, 2.0 * delta, 64)
            * 2.0
            * PI
            * n_disks;
        let l2 = gl16_composite(&|s: f64| profile(s).powi(2) * s, 0.0, 2.0 * delta, 64)
            * 2.0
            * PI
            * n_disks;
        // |∇f| = h/δ on the open annulus
        let h1 = (h / delta).powi(2) * (PI * (4.0 - 1.0) * delta * delta) * n_disks;
        (l1, l2, h1)
    }

    #[test]
    fn closed_forms_match_quadrature_oracle() {
        let family = build_family(alg(1.0), 3).unwrap();
        let (l1, l2, h1) = quadrature_norms(&family);
        let bundle = family.norms();
        assert!((bundle.l1 - l1).abs() / l1 < 1e-12);
        assert!((bundle.l2_sq() - l2).abs() / l2 < 1e-12);
        assert!((bundle.h1_sq() - h1).abs() / h1 < 1e-12);
        // frozen values for (Algebraic(1), n=3)
        assert!((bundle.l1 - 7.330382858376184).abs() < 1e-12);
        assert!((bundle.l2_sq() - L2_COEFF * 64.0).abs() < 1e-9);
        assert!((L2_COEFF * 64.0 - 368.6135380212024).abs() < 1e-10);
        assert!((bundle.h1_sq() - H1_COEFF * 262144.0).abs() / bundle.h1_sq() < 1e-12);
    }

    #[test]
    fn build_examples() {
        // (Algebraic(1), n=1): nominal δ=1/4 clamps to 1/8
        let f = build_family(alg(1.0), 1).unwrap();
        assert_eq!(f.disk_count, 4);
        assert!(f.clamped());
        assert!((f.radius() - 0.125).abs() < 1e-15);
        assert!((f.log_radius_nominal() - (0.25f64).ln()).abs() < 1e-12);
        f.check_geometry().unwrap();

        // (Algebraic(1), n=3): δ=1/64, no clamp
        let f = build_family(alg(1.0), 3).unwrap();
        assert_eq!(f.disk_count, 64);
        assert!(!f.clamped());
        assert!((f.radius() - 1.0 / 64.0).abs() < 1e-15);
        f.check_geometry().unwrap();

        // (LogSparse, n=1): log δ = −16
        let f = build_family(CantorRule::LogSparse, 1).unwrap();
        assert_eq!(f.disk_count, 4);
        assert!((f.log_radius() + 16.0).abs() < 1e-12);
        assert!(!f.clamped());

        // LogSparse n=2 stays lazy, norms still finite
        let f = build_family(CantorRule::LogSparse, 2).unwrap();
        assert!(f.centers().is_none());
        assert!(f.norms().l2_sq_log.is_finite());
    }

    #[test]
    fn with_radius_rejects_overlap() {
        let err = with_radius(alg(1.0), 1, 0.25).unwrap_err();
        assert!(matches!(err, Error::GeometryViolation(_)));
        assert!(with_radius(alg(1.0), 1, 0.125).is_ok());
    }

    #[test]
    fn eval_profile_branches() {
        let f = build_family(alg(1.0), 2).unwrap();
        let delta = f.radius();
        let h = f.log_plateau().exp();
        let (cx, cy) = f.centers().unwrap()[5];
        assert!((f.eval(cx, cy).unwrap() - h).abs() < 1e-12);
        assert!(f.eval(cx + 2.0 * delta, cy).unwrap() == 0.0);
        let mid = f.eval(cx + 1.5 * delta, cy).unwrap();
        assert!((mid - 0.5 * h).abs() / h < 1e-12);
    }

    #[test]
    fn eval_is_lipschitz_with_slope_h_over_delta() {
        let f = build_family(alg(1.0), 2).unwrap();
        let delta = f.radius();
        let lip = f.log_plateau().exp() / delta;
        let (cx, cy) = f.centers().unwrap()[0];
        let mut t = 0.0;
        while t < 3.0 * delta {
            let a = f.eval(cx + t, cy).unwrap();
            let b = f.eval(cx + t + 1e-4 * delta, cy).unwrap();
            assert!((a - b).abs() <= lip * 1e-4 * delta * (1.0 + 1e-9));
            t += 0.1 * delta;
        }
    }

    #[test]
    fn ball_mass_worst_case_branches() {
        let f = build_family(alg(1.0), 3).unwrap();
        // full support: total mass
        assert!((f.ball_mass_worst_case(0.49).unwrap() - L1_MASS).abs() < 1e-12);
        // r = δₙ: plateau branch πhδ² = π/N
        let delta = f.radius();
        let expect = PI / 64.0;
        assert!((f.ball_mass_worst_case(delta).unwrap() - expect).abs() < 1e-12);
        // monotone on a grid
        let mut prev = 0.0;
        for k in 1..200 {
            let r = 1e-4 * (1.06f64).powi(k);
            if r >= 0.5 {
                break;
            }
            let v = f.ball_mass_worst_case(r).unwrap();
            assert!(v >= prev - 1e-15);
            assert!(v <= L1_MASS + 1e-12);
            prev = v;
        }
        // out of range
        assert!(f.ball_mass_worst_case(0.5).is_err());
    }

    #[test]
    fn algebraic_envelope_bounded_by_r_alpha() {
        // sup over n ≤ 6 and r of wc(r)/r^α is one finite constant: (28/3)π
        for &alpha in &[0.5, 1.0, 1.5] {
            let mut sup: f64 = 0.0;
            for n in 1..=6 {
                let f = build_family(alg(alpha), n).unwrap();
                let mut r = 1e-6;
                while r < 0.5 {
                    let ratio = f.ball_mass_worst_case(r).unwrap() / r.powf(alpha);
                    sup = sup.max(ratio);
                    r *= 1.05;
                }
            }
            assert!(
                sup <= 28.0 / 3.0 * PI * (1.0 + 1e-9),
                "alpha={alpha}: sup={sup}"
            );
        }
    }

    #[test]
    fn log_sparse_envelope_bounded_by_inv_sqrt_log() {
        // sup over n ≤ 4 and r of wc(r)·√|log r| finite; attained ≈ (28/3)π
        let mut sup: f64 = 0.0;
        for n in 1..=4 {
            let f = build_family(CantorRule::LogSparse, n).unwrap();
            let mut r = 1e-300;
            while r < 0.5 {
                let v = f.ball_mass_worst_case(r).unwrap();
                sup = sup.max(v * r.ln().abs().sqrt());
                r *= 3.0;
            }
            // spot value r = δₙ (representable only for n ≤ 2)
            if n <= 2 {
                let delta = f.radius();
                let v = f.ball_mass_worst_case(delta).unwrap();
                assert!(v * delta.ln().abs().sqrt() <= PI * (1.0 + 1e-9));
            }
        }
        assert!(sup <= 28.0 / 3.0 * PI * (1.0 + 1e-9), "sup={sup}");
    }

    #[test]
    fn rasterized_norms_converge_to_closed_forms() {
        let f = build_family(alg(1.0), 2).unwrap();
        let grid = f.rasterize(1024).unwrap();
        assert!(grid.mean().abs() < 1e-12);
        let bundle = f.norms();
        let rel_l2 = (grid.l2_sq() - bundle.l2_sq_zero_mean()).abs() / bundle.l2_sq_zero_mean();
        assert!(rel_l2 < 0.02, "rel L2 error {rel_l2}");
        let rel_h1 = (grid.h1_sq() - bundle.h1_sq()).abs() / bundle.h1_sq();
        assert!(rel_h1 < 0.02, "rel H1 error {rel_h1}");
        // unshifted grid L¹ vs closed-form mass
        let tilde = f.rasterize_unshifted(1024).unwrap();
        assert!((tilde.l1_norm() - bundle.l1).abs() / bundle.l1 < 0.02);
    }

    #[test]
    fn rasterize_rejects_unresolvable_families() {
        let f = build_family(CantorRule::LogSparse, 1).unwrap();
        assert!(matches!(
            f.rasterize(4096),
            Err(Error::ResolutionError(_))
        ));
    }

    #[test]
    fn ball_mass_curves_validate_both_routes() {
        let f = build_family(alg(1.0), 2).unwrap();
        let radii = [0.01, 0.0625, 0.12, 0.3, 0.45];
        let analytic = f
            .ball_mass_curve(&radii, BallMassKind::AnalyticWorstCase, 0)
            .unwrap();
        let oracle = f
            .ball_mass_curve(&radii, BallMassKind::GridOracle, 512)
            .unwrap();
        assert_eq!(analytic.kind, BallMassKind::AnalyticWorstCase);
        for (a, o) in analytic.masses.iter().zip(oracle.masses.iter()) {
            assert!(*o <= a * 1.05);
        }
    }

    #[test]
    fn oracle_matches_envelope_on_the_plateau_scale() {
        let f = build_family(alg(1.0), 2).unwrap();
        let delta = f.radius();
        let oracle = f.ball_mass_oracle(1024, delta).unwrap();
        let envelope = f.ball_mass_worst_case(delta).unwrap();
        let rel = (oracle - envelope).abs() / envelope;
        assert!(rel < 0.05, "oracle {oracle} vs envelope {envelope}");
    }

    #[test]
    fn oracle_below_envelope_across_scales() {
        let f = build_family(alg(1.0), 2).unwrap();
        let tilde = f.rasterize_unshifted(1024).unwrap();
        for &r in &[0.02, 0.0625, 0.1, 0.2, 0.3] {
            let oracle = tilde.ball_mass_max(r).unwrap();
            let envelope = f.ball_mass_worst_case(r).unwrap();
            assert!(
                oracle <= envelope * 1.05,
                "r={r}: oracle {oracle} > envelope {envelope}"
            );
        }
    }

    #[test]
    fn algebraic_saturation_is_the_constant_limit() {
        for &alpha in &[0.5, 1.0, 1.5] {
            let limit = algebraic_saturation_limit(alpha);
            let seq = saturation_sequence(alg(alpha), 6).unwrap();
            for s in &seq[1..] {
                assert!((s - limit).abs() / limit < 1e-12);
            }
        }
        // frozen: limit at α = 1 is ((11π/6)^{3/2})/√(3π) ≈ 4.50
        assert!((algebraic_saturation_limit(1.0) - 4.5024759063).abs() < 1e-9);
    }

    #[test]
    fn log_sparse_saturation_approaches_fourth_root_of_two() {
        let seq = saturation_sequence(CantorRule::LogSparse, 4).unwrap();
        for (i, s) in seq.iter().enumerate() {
            let target = log_sparse_saturation_target(i as u32 + 1);
            assert!(
                (s / target - 1.0).abs() < 0.02,
                "n={} S={} target={}",
                i + 1,
                s,
                target
            );
        }
        let min = seq.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = seq.iter().cloned().fold(0.0f64, f64::max);
        assert!(min > 0.0 && max.is_finite());
    }

    #[test]
    fn saturation_via_rasterized_norms_agrees() {
        // grid-norm route at n = 3, α = 1 (unshifted field ↔ tilde norms)
        let f = build_family(alg(1.0), 3).unwrap();
        let tilde = f.rasterize_unshifted(1024).unwrap();
        let s_grid = tilde.l2_sq().powf(1.5) / tilde.h1_sq().sqrt();
        let s_closed = saturation_ratio(alg(1.0), 3).unwrap();
        assert!(
            (s_grid / s_closed - 1.0).abs() < 0.05,
            "grid {s_grid} vs closed {s_closed}"
        );
    }
}
