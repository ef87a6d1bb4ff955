//! Gauss–Legendre panels and small quadrature helpers.

/// 16-point Gauss–Legendre nodes (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// 16-point Gauss–Legendre on [a, b].
pub fn gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..8 {
        let dx = h * GL16_X[i];
        sum += GL16_W[i] * (f(c + dx) + f(c - dx));
    }
    sum * h
}

/// Composite 16-point Gauss–Legendre over `panels` equal panels.
pub fn gl16_composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let w = (b - a) / panels as f64;
    (0..panels).map(|k| gl16(f, a + k as f64 * w, a + (k + 1) as f64 * w)).sum()
}

/// Composite rule over log-spaced panel boundaries (a, b > 0).
pub fn gl16_log_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    debug_assert!(a > 0.0 && b > a);
    let la = a.ln();
    let lb = b.ln();
    let mut sum = 0.0;
    for k in 0..panels {
        let p0 = (la + (lb - la) * k as f64 / panels as f64).exp();
        let p1 = (la + (lb - la) * (k + 1) as f64 / panels as f64).exp();
        sum += gl16(f, p0, p1);
    }
    sum
}
