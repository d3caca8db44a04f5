//! Manufactured solutions for the Poisson Dirichlet problem. Each carries
//! the exact field u, its gradient, and the forcing f = -Δu; boundary data
//! is u itself on the boundary (so the linear/quadratic exactness tests can
//! run with inhomogeneous data).
//!
//! The set spans the exactness ladder — affine, quadratic, cubic — plus a
//! smooth trigonometric target for the rate studies. Selected by name like
//! the element variants.

use std::f64::consts::PI;

pub trait Solution: Sync {
    fn name(&self) -> &'static str;
    fn u(&self, x: [f64; 3]) -> f64;
    fn grad_u(&self, x: [f64; 3]) -> [f64; 3];
    /// f = -Δu.
    fn f(&self, x: [f64; 3]) -> f64;
}

/// u = 1 + 2*x - y + z/2.
pub struct Linear;

impl Solution for Linear {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn u(&self, x: [f64; 3]) -> f64 {
        1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2]
    }

    fn grad_u(&self, _x: [f64; 3]) -> [f64; 3] {
        [2.0, -1.0, 0.5]
    }

    fn f(&self, _x: [f64; 3]) -> f64 {
        0.0
    }
}

/// u = x^2 + y*z.
pub struct Quadratic;

impl Solution for Quadratic {
    fn name(&self) -> &'static str {
        "quadratic"
    }

    fn u(&self, x: [f64; 3]) -> f64 {
        x[0] * x[0] + x[1] * x[2]
    }

    fn grad_u(&self, x: [f64; 3]) -> [f64; 3] {
        [2.0 * x[0], x[2], x[1]]
    }

    fn f(&self, _x: [f64; 3]) -> f64 {
        -2.0
    }
}

/// u = x^3 + y^3 + z^3.
pub struct Cubic;

impl Solution for Cubic {
    fn name(&self) -> &'static str {
        "cubic"
    }

    fn u(&self, x: [f64; 3]) -> f64 {
        x[0].powi(3) + x[1].powi(3) + x[2].powi(3)
    }

    fn grad_u(&self, x: [f64; 3]) -> [f64; 3] {
        [3.0 * x[0] * x[0], 3.0 * x[1] * x[1], 3.0 * x[2] * x[2]]
    }

    fn f(&self, x: [f64; 3]) -> f64 {
        -6.0 * (x[0] + x[1] + x[2])
    }
}

/// u = sin(pi x) sin(pi y) sin(pi z); vanishes on the unit-cube boundary.
pub struct Trig;

impl Solution for Trig {
    fn name(&self) -> &'static str {
        "trig"
    }

    fn u(&self, x: [f64; 3]) -> f64 {
        (PI * x[0]).sin() * (PI * x[1]).sin() * (PI * x[2]).sin()
    }

    fn grad_u(&self, x: [f64; 3]) -> [f64; 3] {
        let (sx, cx) = (PI * x[0]).sin_cos();
        let (sy, cy) = (PI * x[1]).sin_cos();
        let (sz, cz) = (PI * x[2]).sin_cos();
        [PI * cx * sy * sz, PI * sx * cy * sz, PI * sx * sy * cz]
    }

    fn f(&self, x: [f64; 3]) -> f64 {
        3.0 * PI * PI * self.u(x)
    }
}

/// Every registered solution.
pub static SOLUTIONS: [&'static dyn Solution; 4] = [&Linear, &Quadratic, &Cubic, &Trig];

pub fn lookup(name: &str) -> Option<&'static dyn Solution> {
    SOLUTIONS.iter().copied().find(|s| s.name() == name)
}
