//! Gauss-Legendre rules on [-1,1] and their tensor products.
//!
//! Nodes come from Newton iteration on the Legendre recurrence with the
//! usual Chebyshev-based initial guesses; weights from the derivative
//! formula. Rules are symmetrized exactly about 0 so a rule and its mirror
//! are bitwise identical.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("quadrature order {0} out of supported range 1..=16")]
    OrderOutOfRange(usize),
}

/// 1D rule on [-1,1]; exact for polynomials of degree <= 2n-1.
#[derive(Debug, Clone)]
pub struct QuadRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre P_n and P_n' at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// n-point Gauss-Legendre rule, n in 1..=16.
pub fn gauss_rule(n: usize) -> Result<QuadRule1D, QuadError> {
    if !(1..=16).contains(&n) {
        return Err(QuadError::OrderOutOfRange(n));
    }
    if n == 1 {
        return Ok(QuadRule1D {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n {
        // Roots of P_n, descending; converge each by Newton.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    // Symmetrize: average mirrored pairs so the rule is exactly even.
    for k in 0..n / 2 {
        let m = n - 1 - k;
        let half = 0.5 * (nodes[m] - nodes[k]);
        nodes[k] = -half;
        nodes[m] = half;
        let w = 0.5 * (weights[k] + weights[m]);
        weights[k] = w;
        weights[m] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadRule1D { nodes, weights })
}

/// Tensor-product rule on the reference cube [-1,1]^3.
#[derive(Debug, Clone)]
pub struct QuadRule3D {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl QuadRule3D {
    pub fn tensor(n: usize) -> Result<QuadRule3D, QuadError> {
        let line = gauss_rule(n)?;
        let mut points = Vec::with_capacity(n * n * n);
        let mut weights = Vec::with_capacity(n * n * n);
        for (i, &xi) in line.nodes.iter().enumerate() {
            for (j, &xj) in line.nodes.iter().enumerate() {
                for (k, &xk) in line.nodes.iter().enumerate() {
                    points.push([xi, xj, xk]);
                    weights.push(line.weights[i] * line.weights[j] * line.weights[k]);
                }
            }
        }
        Ok(QuadRule3D { points, weights })
    }
}

/// Tensor-product rule on the reference face [-1,1]^2.
#[derive(Debug, Clone)]
pub struct QuadRule2D {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

impl QuadRule2D {
    pub fn tensor(n: usize) -> Result<QuadRule2D, QuadError> {
        let line = gauss_rule(n)?;
        let mut points = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for (i, &xi) in line.nodes.iter().enumerate() {
            for (j, &xj) in line.nodes.iter().enumerate() {
                points.push([xi, xj]);
                weights.push(line.weights[i] * line.weights[j]);
            }
        }
        Ok(QuadRule2D { points, weights })
    }
}
