//! Experiment specifications: strongly typed, JSON round-trip lossless,
//! with the bundled acceptance set.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    CantorSaturation {
        rule: String,
        alphas: Vec<f64>,
        n_min: u32,
        n_max: u32,
        /// Also run the ball-mass envelope/oracle checks (α = 1 oracle).
        ball_mass: bool,
        grid: usize,
    },
    NashSuite {
        ell_points: usize,
    },
    CircleRate {
        s_grid: Vec<f64>,
        nu_grid: Vec<f64>,
        ball_radii: Vec<f64>,
        s_for_ball: Vec<f64>,
    },
    RescaledBump {
        nu_grid: Vec<f64>,
        times: Vec<f64>,
    },
    LogDatum {
        rho_decades: (f64, f64),
        s_grid: Vec<f64>,
        nu_grid: Vec<f64>,
        delta: f64,
    },
    TorusEnvelope {
        resolution: usize,
        nu_taylor_green: f64,
        nu_random: f64,
        nu_cantor: f64,
        t_end: f64,
        cantor_resolution: usize,
    },
    BudgetTable {
        nu_grid: Vec<f64>,
        delta: f64,
        t_end: f64,
        envelope_checks: bool,
        verdicts: bool,
    },
}

impl ExperimentKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ExperimentKind::CantorSaturation { .. } => "cantor",
            ExperimentKind::NashSuite { .. } => "nash",
            ExperimentKind::CircleRate { .. } => "circle",
            ExperimentKind::RescaledBump { .. } => "bump",
            ExperimentKind::LogDatum { .. } => "logdatum",
            ExperimentKind::TorusEnvelope { .. } => "torus",
            ExperimentKind::BudgetTable { .. } => "budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub seed: u64,
    #[serde(flatten)]
    pub kind: ExperimentKind,
}

impl ExperimentSpec {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            ExperimentKind::CantorSaturation {
                rule,
                alphas,
                n_min,
                n_max,
                grid,
                ..
            } => {
                if rule != "algebraic" && rule != "log_sparse" {
                    return Err(Error::ParameterError(format!("unknown rule {rule}")));
                }
                if rule == "algebraic" && alphas.iter().any(|a| !(*a > 0.0 && *a < 2.0)) {
                    return Err(Error::ParameterError("alphas must lie in (0,2)".into()));
                }
                if *n_min < 1 || n_max < n_min || *grid < 16 {
                    return Err(Error::ParameterError("bad n range or grid".into()));
                }
            }
            ExperimentKind::CircleRate { s_grid, nu_grid, .. } => {
                if s_grid.len() < 4 || nu_grid.len() < 4 {
                    return Err(Error::InsufficientData(
                        "rate fits need at least 4 grid points".into(),
                    ));
                }
            }
            ExperimentKind::LogDatum { delta, .. } if !(*delta > 0.0 && *delta < 1.0) => {
                return Err(Error::ParameterError("delta must lie in (0,1)".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

fn log_grid(lo_exp: f64, hi_exp: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| 10.0f64.powf(lo_exp + (hi_exp - lo_exp) * i as f64 / (points - 1) as f64))
        .collect()
}

/// The bundled acceptance specs, one per criterion group.
pub fn bundled_specs() -> Vec<ExperimentSpec> {
    vec![
        ExperimentSpec {
            name: "cantor-algebraic-saturation".into(),
            seed: 1,
            kind: ExperimentKind::CantorSaturation {
                rule: "algebraic".into(),
                alphas: vec![0.5, 1.0, 1.5],
                n_min: 2,
                n_max: 6,
                ball_mass: false,
                grid: 1024,
            },
        },
        ExperimentSpec {
            name: "cantor-logsparse-saturation".into(),
            seed: 1,
            kind: ExperimentKind::CantorSaturation {
                rule: "log_sparse".into(),
                alphas: vec![],
                n_min: 1,
                n_max: 4,
                ball_mass: false,
                grid: 1024,
            },
        },
        ExperimentSpec {
            name: "cantor-ball-mass".into(),
            seed: 1,
            kind: ExperimentKind::CantorSaturation {
                rule: "algebraic".into(),
                alphas: vec![0.5, 1.0, 1.5],
                n_min: 1,
                n_max: 6,
                ball_mass: true,
                grid: 1024,
            },
        },
        ExperimentSpec {
            name: "nash-suite".into(),
            seed: 1,
            kind: ExperimentKind::NashSuite { ell_points: 12 },
        },
        ExperimentSpec {
            name: "circle-rate".into(),
            seed: 1,
            kind: ExperimentKind::CircleRate {
                s_grid: log_grid(-4.0, -2.0, 9),
                nu_grid: log_grid(-7.0, -3.0, 9),
                ball_radii: vec![0.05, 0.1, 0.2, 0.4],
                s_for_ball: vec![1e-3, 1e-2, 0.1],
            },
        },
        ExperimentSpec {
            name: "rescaled-bump".into(),
            seed: 1,
            kind: ExperimentKind::RescaledBump {
                nu_grid: log_grid(-8.0, -3.0, 11),
                times: vec![0.1, 0.5, 1.0],
            },
        },
        ExperimentSpec {
            name: "logdatum".into(),
            seed: 1,
            kind: ExperimentKind::LogDatum {
                rho_decades: (1.0, 6.0),
                s_grid: log_grid(-9.0, -3.0, 7),
                nu_grid: log_grid(-8.0, -2.0, 7),
                delta: 0.1,
            },
        },
        ExperimentSpec {
            name: "torus-envelope".into(),
            seed: 7,
            kind: ExperimentKind::TorusEnvelope {
                resolution: 128,
                nu_taylor_green: 0.01,
                nu_random: 1e-3,
                nu_cantor: 1e-3,
                t_end: 1.0,
                cantor_resolution: 256,
            },
        },
        ExperimentSpec {
            name: "budget-table".into(),
            seed: 1,
            kind: ExperimentKind::BudgetTable {
                nu_grid: (2..=12).map(|k| 10.0f64.powi(-k)).collect(),
                delta: 0.1,
                t_end: 1.0,
                envelope_checks: true,
                verdicts: true,
            },
        },
    ]
}
