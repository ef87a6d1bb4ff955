//! Monotone cubic (Fritsch–Carlson) interpolation on a fixed node set.

/// Piecewise-cubic Hermite interpolant with monotonicity-limited slopes.
/// Preserves monotone data exactly; C¹ everywhere.
#[derive(Debug, Clone)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() == ys.len() && xs.len() >= 2);
        assert!(xs.windows(2).all(|w| w[1] > w[0]), "nodes must increase");
        let n = xs.len();
        let mut d = vec![0.0; n - 1]; // secant slopes
        for i in 0..n - 1 {
            d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        }
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            if d[i - 1] * d[i] <= 0.0 {
                m[i] = 0.0;
            } else {
                let w1 = 2.0 * (xs[i + 1] - xs[i]) + (xs[i] - xs[i - 1]);
                let w2 = (xs[i + 1] - xs[i]) + 2.0 * (xs[i] - xs[i - 1]);
                m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // limit endpoint slopes (Fritsch–Carlson §4)
        for (i, edge) in [(0usize, 0usize), (n - 1, n - 2)] {
            if d[edge] == 0.0 {
                m[i] = 0.0;
            } else if (m[i] / d[edge]) > 3.0 {
                m[i] = 3.0 * d[edge];
            } else if m[i] * d[edge] < 0.0 {
                m[i] = 0.0;
            }
        }
        Pchip {
            xs,
            ys,
            slopes: m,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    /// Evaluate; clamps outside the node range.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let dh00 = (6.0 * t2 - 6.0 * t) / h;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t2 + 6.0 * t) / h;
        let dh11 = 3.0 * t2 - 2.0 * t;
        dh00 * self.ys[i] + dh10 * self.slopes[i] + dh01 * self.ys[i + 1]
            + dh11 * self.slopes[i + 1]
    }

    /// Invert a strictly monotone interpolant by bisection + Newton polish.
    pub fn invert(&self, y: f64) -> f64 {
        let (mut lo, mut hi) = self.domain();
        let increasing = self.ys[self.ys.len() - 1] > self.ys[0];
        let ylo = self.eval(lo);
        let yhi = self.eval(hi);
        let y = if increasing {
            y.clamp(ylo.min(yhi), ylo.max(yhi))
        } else {
            y.clamp(yhi.min(ylo), yhi.max(ylo))
        };
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let v = self.eval(mid);
            let go_right = if increasing { v < y } else { v > y };
            if go_right {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..4 {
            let d = self.derivative(x);
            if d.abs() < 1e-300 {
                break;
            }
            let step = (self.eval(x) - y) / d;
            let nx = (x - step).clamp(self.xs[0], *self.xs.last().unwrap());
            x = nx;
        }
        x
    }
}
