//! Nonconforming 14-node brick elements on hexahedral meshes.
//!
//! The crate has two halves that check each other:
//!
//! * an exact symbolic layer ([`poly`], [`element`]) that constructs nodal
//!   bases for the 14-node brick family over arbitrary-precision rationals
//!   and certifies their structural properties (unisolvence, zero-mean jump
//!   orthogonality on faces, the opposite-face residual identity, trace
//!   spaces, the rotation interpolant);
//! * a floating-point layer ([`mesh`], [`numerics`], [`fem`]) that solves the
//!   Poisson Dirichlet problem with those elements and measures convergence
//!   rates against manufactured solutions.
//!
//! The [`cli`] module wires both into the `brick14` binary (`verify`,
//! `solve`, `convergence`).

pub mod cli;
pub mod element;
pub mod fem;
pub mod mesh;
pub mod numerics;
pub mod poly;
