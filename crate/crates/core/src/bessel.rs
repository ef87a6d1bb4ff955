//! Bessel functions J₀, J₁ and the exponentially scaled I₀.
//!
//! Three regimes, each good to ~1e-13 absolute:
//!   x < 8    — power series;
//!   8 ≤ x < 45 — trapezoid rule on the integral representation
//!               J_n(x) = (1/2π)∫₀^{2π} cos(nθ − x sinθ) dθ, which is
//!               spectrally exact for periodic analytic integrands;
//!   x ≥ 45   — Hankel asymptotic expansion with the P/Q series.

use std::f64::consts::PI;

const TRAP_POINTS: usize = 128;
const SERIES_CUT: f64 = 8.0;
const ASYMPTOTIC_CUT: f64 = 45.0;

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..80 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

fn j1_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    for m in 1..80 {
        term *= q / ((m * (m + 1)) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

fn jn_trapezoid(n: u32, x: f64) -> f64 {
    let m = TRAP_POINTS;
    let mut sum = 0.0;
    for k in 0..m {
        let theta = 2.0 * PI * k as f64 / m as f64;
        sum += (n as f64 * theta - x * theta.sin()).cos();
    }
    sum / m as f64
}

/// Hankel coefficients (ν, m) = ∏_{j=1..m} (4ν² − (2j−1)²) / (m!·4^m).
fn jn_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut c = 1.0; // (ν, 0)
    let mut p = 1.0;
    let mut q = 0.0;
    let inv2x = 1.0 / (2.0 * x);
    let mut pow = 1.0;
    let mut prev = f64::INFINITY;
    for m in 1..30u32 {
        c *= (mu - ((2 * m - 1) * (2 * m - 1)) as f64) / (4.0 * m as f64);
        pow *= inv2x;
        let term = c * pow;
        if term.abs() > prev {
            break; // asymptotic series started diverging
        }
        prev = term.abs();
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if term.abs() < 1e-19 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Bessel function of the first kind, order zero.
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_CUT {
        j0_series(x)
    } else if x < ASYMPTOTIC_CUT {
        jn_trapezoid(0, x)
    } else {
        jn_asymptotic(0.0, x)
    }
}

/// Bessel function of the first kind, order one. Odd in x.
pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < SERIES_CUT {
        j1_series(ax)
    } else if ax < ASYMPTOTIC_CUT {
        jn_trapezoid(1, ax)
    } else {
        jn_asymptotic(1.0, ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// k-th positive zero of J₀ (k ≥ 1), by Newton from the asymptotic phase.
pub fn j0_zero(k: usize) -> f64 {
    let beta = (k as f64 - 0.25) * PI;
    let mut z = beta + 1.0 / (8.0 * beta);
    for _ in 0..8 {
        let f = j0(z);
        let df = -j1(z);
        let step = f / df;
        z -= step;
        if step.abs() < 1e-14 * z {
            break;
        }
    }
    z
}

/// Exponentially scaled modified Bessel function e^{-x} I₀(x), x ≥ 0.
pub fn i0_scaled(x: f64) -> f64 {
    if x < 15.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..120 {
            term *= q / ((m * m) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum * (-x).exp()
    } else {
        // Asymptotic series Σ ∏(2j−1)² / (m! (8x)^m)
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..30u32 {
            term *= ((2 * m - 1) * (2 * m - 1)) as f64 / (m as f64 * 8.0 * x);
            sum += term;
            if term < 1e-16 {
                break;
            }
        }
        sum / (2.0 * PI * x).sqrt()
    }
}
