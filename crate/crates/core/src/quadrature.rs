//! Gauss-Legendre rules and an adaptive bisection integrator.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

const PANEL_ORDER: usize = 20;

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (x, w) = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter().zip(w).map(|(&xi, &wi)| wi * f(mid + half * xi)).sum::<f64>() * half
}

/// Settings for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    /// Tolerance relative to the estimated `∫|f|`.
    pub rel_tol: f64,
    /// Uniform panels before bisection starts.
    pub initial_panels: usize,
    pub max_depth: u32,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-14, initial_panels: 32, max_depth: 40 }
    }
}

/// Adaptive Gauss-Legendre quadrature of `f` over `[a, b]`.
///
/// Each panel is accepted when the 20-point estimate and the sum over its two
/// halves agree to within the panel's share of the tolerance.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: AdaptiveOptions) -> Result<f64> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is empty or infinite")));
    }
    let n = opts.initial_panels.max(1);
    let h = (b - a) / n as f64;
    let panels: Vec<(f64, f64, f64)> = (0..n)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n { b } else { lo + h };
            (lo, hi, panel(&f, lo, hi))
        })
        .collect();
    let scale: f64 = panels.iter().map(|p| p.2.abs()).sum();
    let tol = opts.abs_tol.max(opts.rel_tol * scale);

    let mut total = 0.0;
    let mut worst = 0.0_f64;
    let mut failed = false;
    for (lo, hi, est) in panels {
        let share = tol * (hi - lo) / (b - a);
        total += refine(&f, lo, hi, est, share, opts.max_depth, &mut worst, &mut failed);
    }
    if failed {
        return Err(Error::Accuracy { residual: worst, tolerance: tol });
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    worst: &mut f64,
    failed: &mut bool,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid);
    let right = panel(f, mid, b);
    let err = (left + right - whole).abs();
    if err <= tol {
        return left + right;
    }
    if depth == 0 {
        *failed = true;
        *worst = worst.max(err);
        return left + right;
    }
    refine(f, a, mid, left, 0.5 * tol, depth - 1, worst, failed)
        + refine(f, mid, b, right, 0.5 * tol, depth - 1, worst, failed)
}
