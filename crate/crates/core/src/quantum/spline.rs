//! Natural cubic spline upsampling of coarse control samples onto the fine time grid.

use super::ControlProblem;
use crate::{Error, Result};

/// Natural cubic spline through `(x_i, y_i)` with strictly increasing knots.
/// Outside the knot range the nearest end value is held.
#[derive(Debug, Clone)]
pub struct NaturalCubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots; zero at both ends.
    second: Vec<f64>,
}

impl NaturalCubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::Config(
                "spline needs matching non-empty knots and values".into(),
            ));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN knots fail too
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(
                "spline knots must be strictly increasing".into(),
            ));
        }
        let n = xs.len();
        let mut second = vec![0.0; n];
        if n >= 3 {
            // Thomas algorithm on the interior equations
            // h_{i-1} M_{i-1} + 2(h_{i-1}+h_i) M_i + h_i M_{i+1} = 6 (d_i - d_{i-1}).
            let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
            let slope: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
            let m = n - 2;
            let mut diag = vec![0.0; m];
            let mut rhs = vec![0.0; m];
            for k in 0..m {
                let i = k + 1;
                diag[k] = 2.0 * (h[i - 1] + h[i]);
                rhs[k] = 6.0 * (slope[i] - slope[i - 1]);
            }
            for k in 1..m {
                let factor = h[k] / diag[k - 1];
                diag[k] -= factor * h[k];
                rhs[k] -= factor * rhs[k - 1];
            }
            second[m] = rhs[m - 1] / diag[m - 1];
            for k in (0..m - 1).rev() {
                second[k + 1] = (rhs[k] - h[k + 1] * second[k + 2]) / diag[k];
            }
        }
        Ok(Self { xs, ys, second })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if n == 1 || x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let j = self.xs.partition_point(|k| *k <= x) - 1;
        self.eval_segment(j, x)
    }

    fn eval_segment(&self, j: usize, x: f64) -> f64 {
        let (x0, x1) = (self.xs[j], self.xs[j + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - x, x - x0);
        let (m0, m1) = (self.second[j], self.second[j + 1]);
        m0 * a.powi(3) / (6.0 * h)
            + m1 * b.powi(3) / (6.0 * h)
            + (self.ys[j] / h - m0 * h / 6.0) * a
            + (self.ys[j + 1] / h - m1 * h / 6.0) * b
    }
}

/// The `alpha * n + 1` endpoint-inclusive fine time points on `[0, total_time]`.
pub fn fine_grid(n: usize, alpha: usize, total_time: f64) -> Vec<f64> {
    let steps = alpha * n;
    (0..=steps)
        .map(|k| total_time * k as f64 / steps as f64)
        .collect()
}

/// Upsamples the coarse samples of one control.
///
/// Sample `j` sits at `j T / N`. The spline covers `[0, (N-1) T / N]`, the last sample
/// is held on the final segment, and fine values are clamped into `[lower, upper]`.
/// Fine points that coincide with a knot return the coarse value exactly.
pub fn spline_upsample(
    coarse: &[f64],
    alpha: usize,
    total_time: f64,
    lower: f64,
    upper: f64,
) -> Result<Vec<f64>> {
    if alpha == 0 {
        return Err(Error::Config(
            "interpolation factor alpha must be at least 1".into(),
        ));
    }
    let n = coarse.len();
    if n == 0 {
        return Err(Error::Config("no coarse samples to upsample".into()));
    }
    let knots: Vec<f64> = (0..n).map(|j| total_time * j as f64 / n as f64).collect();
    let spline = NaturalCubicSpline::new(knots, coarse.to_vec())?;
    let grid = fine_grid(n, alpha, total_time);
    Ok(grid
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let v = if k % alpha == 0 {
                coarse[(k / alpha).min(n - 1)]
            } else {
                spline.eval(t)
            };
            v.clamp(lower, upper)
        })
        .collect())
}

/// Control amplitudes on the fine grid, one row per control.
#[derive(Debug, Clone, PartialEq)]
pub struct FineControls {
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl FineControls {
    pub fn num_points(&self) -> usize {
        self.times.len()
    }

    pub fn dt(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    /// Control vector at fine index `k`.
    pub fn at(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|u| u[k]).collect()
    }

    pub fn zeros(num_controls: usize, times: Vec<f64>) -> Self {
        let n = times.len();
        Self {
            times,
            values: vec![vec![0.0; n]; num_controls],
        }
    }
}

/// Decodes a control-major position (all samples of control 1, then control 2, ...)
/// into fine-grid controls.
pub fn decode_position(
    position: &[f64],
    problem: &ControlProblem,
    alpha: usize,
) -> Result<FineControls> {
    let (m, n) = (problem.num_controls, problem.samples);
    if position.len() != m * n {
        return Err(Error::Evaluation(format!(
            "position has {} entries, expected {m} controls x {n} samples",
            position.len()
        )));
    }
    let values = position
        .chunks(n)
        .zip(problem.control_lower.iter().zip(&problem.control_upper))
        .map(|(coarse, (&lo, &hi))| spline_upsample(coarse, alpha, problem.total_time, lo, hi))
        .collect::<Result<Vec<_>>>()?;
    Ok(FineControls {
        times: fine_grid(n, alpha, problem.total_time),
        values,
    })
}
