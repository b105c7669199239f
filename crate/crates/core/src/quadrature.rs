//! One-dimensional quadrature: adaptive Gauss–Kronrod (7/15) and fixed-order
//! composite Gauss–Legendre.
//!
//! Both routines sum their pieces in a fixed left-to-right order, so results
//! are reproducible bit for bit.

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_DEPTH: u32 = 48;

/// Kronrod estimate and |Kronrod − Gauss| on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Converges when the summed error estimate is below
/// `max(abs_tol, rel_tol * |I|)`; the budget is shared among subintervals in
/// proportion to their length.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (whole, err) = gk15(&f, a, b);
    let tol = abs_tol.max(rel_tol * whole.abs());
    if err <= tol {
        return Ok(whole);
    }
    let density = tol / (b - a).abs();
    bisect(&f, a, b, density, 0)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, density: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (left, el) = gk15(f, a, m);
    let (right, er) = gk15(f, m, b);
    let tol = density * (b - a).abs();
    // Accept once the interval can no longer be split in floating point.
    if el + er <= tol || m <= a.min(b) || m >= a.max(b) || (b - a).abs() <= 4.0 * f64::EPSILON * m.abs() {
        return Ok(left + right);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureNonConvergence { a, b, estimate: el + er });
    }
    let l = if el <= 0.5 * tol { left } else { bisect(f, a, m, density, depth + 1)? };
    let r = if er <= 0.5 * tol { right } else { bisect(f, m, b, density, depth + 1)? };
    Ok(l + r)
}

/// Splits `[a, b]` into equal panels no wider than `max_width` and integrates
/// each adaptively. Use for oscillatory integrands so the error control sees
/// every oscillation.
///
/// The tolerance is global: `max(abs_tol, rel_tol * Σ|I_panel|)` shared by
/// length, so panels whose contributions cancel do not demand impossible
/// relative accuracy.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    max_width: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let n = panel_count(a, b, max_width);
    let width = (b - a) / n as f64;
    let bounds = |i: usize| (a + width * i as f64, if i + 1 == n { b } else { a + width * (i + 1) as f64 });
    let first: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let (lo, hi) = bounds(i);
            gk15(&f, lo, hi)
        })
        .collect();
    let scale: f64 = first.iter().map(|(v, _)| v.abs()).sum();
    let density = abs_tol.max(rel_tol * scale) / (b - a).abs();
    let mut total = 0.0;
    for (i, &(value, err)) in first.iter().enumerate() {
        let (lo, hi) = bounds(i);
        total += if err <= density * (hi - lo).abs() { value } else { bisect(&f, lo, hi, density, 0)? };
    }
    Ok(total)
}

fn panel_count(a: f64, b: f64, max_width: f64) -> usize {
    assert!(max_width > 0.0, "panel width must be positive");
    (((b - a).abs() / max_width).ceil() as usize).max(1)
}

/// Fixed `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }

    /// Composite rule on equal panels no wider than `max_width`.
    pub fn integrate_composite<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, max_width: f64) -> f64 {
        let n = panel_count(a, b, max_width);
        let width = (b - a) / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
            s += self.integrate(&f, lo, hi);
        }
        s
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_integrates_polynomials_exactly() {
        // GK15 is exact for degree <= 22.
        let (v, _) = gk15(&|x: f64| x.powi(20), -1.0, 1.0);
        assert_relative_eq!(v, 2.0 / 21.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // Lorentzian of width 1e-3 centered in [0, 2].
        let g = 1e-3;
        let v = integrate(|x| g / ((x - 1.0).powi(2) + g * g), 0.0, 2.0, 0.0, 1e-12).unwrap();
        let exact = 2.0 * (1.0 / g).atan();
        assert_relative_eq!(v, exact, max_relative = 1e-11);
    }

    #[test]
    fn adaptive_reports_non_convergence() {
        let r = integrate(|x: f64| x.recip(), 0.0, 1.0, 0.0, 1e-12);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn panels_integrate_oscillations() {
        let v = integrate_panels(|x: f64| x.sin().powi(2), 0.0, 100.0 * PI, 1.0, 0.0, 1e-13).unwrap();
        assert_relative_eq!(v, 50.0 * PI, max_relative = 1e-13);
    }

    #[test]
    fn gauss_legendre_nodes_and_weights() {
        let gl = GaussLegendre::new(10);
        let sum: f64 = gl.weights().iter().sum();
        assert_relative_eq!(sum, 2.0, max_relative = 1e-14);
        // Exact up to degree 19.
        assert_relative_eq!(gl.integrate(|x| x.powi(18), -1.0, 1.0), 2.0 / 19.0, max_relative = 1e-13);
        let gl3 = GaussLegendre::new(3);
        assert_relative_eq!(gl3.nodes()[2], (0.6f64).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gl3.weights()[1], 8.0 / 9.0, max_relative = 1e-15);
    }

    #[test]
    fn composite_gauss_legendre() {
        let gl = GaussLegendre::new(10);
        let v = gl.integrate_composite(|x: f64| x.cos(), 0.0, 7.5, 0.25);
        assert_relative_eq!(v, 7.5f64.sin(), max_relative = 1e-14);
    }
}
