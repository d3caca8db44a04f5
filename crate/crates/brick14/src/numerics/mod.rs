//! Floating-point kernels: Gauss-Legendre quadrature on the reference cube
//! and its faces, symmetric sparse storage, and a Jacobi-preconditioned
//! conjugate gradient solver.

mod cg;
mod quad;
mod sparse;

pub use cg::{cg_solve, Preconditioner, SolveStats};
pub use quad::{gauss_rule, QuadError, QuadRule1D, QuadRule2D, QuadRule3D};
pub use sparse::SparseSym;
