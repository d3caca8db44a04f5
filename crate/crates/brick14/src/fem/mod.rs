//! Discretization of the Poisson Dirichlet problem with the 14-node brick
//! elements: local and global assembly, Dirichlet reduction, the discrete
//! solve, the nodal interpolant, broken-norm errors, and the consistency
//! functional diagnostic.
//!
//! [`Discretization`] bundles a mesh, a DOF map and a reference element and
//! precomputes flat f64 tables of the (exact) basis polynomials at the
//! quadrature points. Cells are axis-aligned, so the gradient transform is
//! diagonal and local stiffness matrices depend only on the cell's half
//! extents — they are cached by extent, which makes uniform-mesh assembly
//! one local computation plus scatter.

pub mod solutions;

pub use solutions::{Solution, SOLUTIONS};

use crate::element::{ElementDef, InadmissibleError};
use crate::mesh::{BoxMesh, CellGeometry, DofEntity, DofMap, MeshError};
use crate::numerics::{
    cg_solve, Preconditioner, QuadError, QuadRule2D, QuadRule3D, SolveStats, SparseSym,
};
use crate::poly::{Face, Poly3};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FemError {
    #[error(transparent)]
    Inadmissible(#[from] InadmissibleError),
    #[error("solver did not converge after {iterations} iterations (relative residual {relative_residual:.3e})")]
    SolverDiverged {
        iterations: usize,
        relative_residual: f64,
    },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// L2 error and broken energy (elementwise H1 semi-) norm of u - u_h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPair {
    pub l2: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub tol: f64,
    /// maxit = maxit_factor * number of free DOFs.
    pub maxit_factor: usize,
    pub precond: Preconditioner,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-12,
            maxit_factor: 10,
            precond: Preconditioner::Diagonal,
        }
    }
}

/// Coefficients over all global DOFs (boundary DOFs carry their imposed
/// values); solver statistics attached when the coefficients came from a
/// solve.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub coeffs: Vec<f64>,
    pub stats: Option<SolveStats>,
}

/// The Dirichlet-reduced system: SPD matrix over the free DOFs.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub matrix: SparseSym,
    pub rhs: Vec<f64>,
    /// Global index of each free DOF, ascending.
    pub free: Vec<usize>,
    /// Full-length vector: imposed values on boundary DOFs, 0 elsewhere.
    pub boundary_values: Vec<f64>,
}

impl ReducedSystem {
    /// Scatter a free-DOF vector back to full length on top of the
    /// boundary values.
    pub fn expand(&self, x_free: &[f64]) -> Vec<f64> {
        let mut full = self.boundary_values.clone();
        for (fi, &g) in self.free.iter().enumerate() {
            full[g] = x_free[fi];
        }
        full
    }
}

/// Basis values/gradients tabulated at the points of one volume rule.
struct VolumeTables {
    points: Vec<[f64; 3]>,
    weights: Vec<f64>,
    values: Vec<[f64; 14]>,
    grads: Vec<[[f64; 3]; 14]>,
}

fn volume_tables(def: &ElementDef, rule: &QuadRule3D) -> VolumeTables {
    let grads_poly: Vec<[Poly3; 3]> = def
        .basis
        .iter()
        .map(|p| {
            [
                p.derivative(crate::poly::Axis::X1),
                p.derivative(crate::poly::Axis::X2),
                p.derivative(crate::poly::Axis::X3),
            ]
        })
        .collect();
    let mut values = Vec::with_capacity(rule.points.len());
    let mut grads = Vec::with_capacity(rule.points.len());
    for &p in &rule.points {
        let mut v = [0.0; 14];
        let mut g = [[0.0; 3]; 14];
        for a in 0..14 {
            v[a] = def.basis[a].eval_f64(p);
            for i in 0..3 {
                g[a][i] = grads_poly[a][i].eval_f64(p);
            }
        }
        values.push(v);
        grads.push(g);
    }
    VolumeTables {
        points: rule.points.clone(),
        weights: rule.weights.clone(),
        values,
        grads,
    }
}

/// Basis values at the face-rule points of all six reference faces, plus
/// the 3D reference coordinates of those points.
struct FaceTables {
    weights: Vec<f64>,
    points: [Vec<[f64; 3]>; 6],
    values: [Vec<[f64; 14]>; 6],
}

fn face_tables(def: &ElementDef, rule: &QuadRule2D) -> FaceTables {
    let mut points: [Vec<[f64; 3]>; 6] = Default::default();
    let mut values: [Vec<[f64; 14]>; 6] = Default::default();
    for (fi, &face) in Face::ALL.iter().enumerate() {
        let (ta, tb) = face.axis.tangential();
        for &[a, b] in &rule.points {
            let mut x = [0.0; 3];
            x[face.axis.index()] = face.side.sign() as f64;
            x[ta.index()] = a;
            x[tb.index()] = b;
            points[fi].push(x);
            let mut v = [0.0; 14];
            for (j, phi) in def.basis.iter().enumerate() {
                v[j] = phi.eval_f64(x);
            }
            values[fi].push(v);
        }
    }
    FaceTables {
        weights: rule.weights.clone(),
        points,
        values,
    }
}

/// A mesh + DOF map + reference element, ready to assemble and measure.
pub struct Discretization<'a> {
    pub mesh: &'a BoxMesh,
    pub dofs: &'a DofMap,
    pub def: &'a ElementDef,
    volume: VolumeTables,
    error: VolumeTables,
    faces: FaceTables,
    face_rule: QuadRule2D,
}

impl<'a> Discretization<'a> {
    /// `quad_volume` drives assembly, `quad_error` the error norms, face
    /// means and the consistency functional.
    pub fn new(
        mesh: &'a BoxMesh,
        dofs: &'a DofMap,
        def: &'a ElementDef,
        quad_volume: usize,
        quad_error: usize,
    ) -> Result<Self, FemError> {
        assert_eq!(
            dofs.dof_kind, def.dof_kind,
            "DOF map and element kind must agree"
        );
        let vol_rule = QuadRule3D::tensor(quad_volume)?;
        let err_rule = QuadRule3D::tensor(quad_error)?;
        let face_rule = QuadRule2D::tensor(quad_error)?;
        Ok(Discretization {
            mesh,
            dofs,
            def,
            volume: volume_tables(def, &vol_rule),
            error: volume_tables(def, &err_rule),
            faces: face_tables(def, &face_rule),
            face_rule,
        })
    }

    /// Local stiffness `S[a][b]` = ∫_K ∇φ_a · ∇φ_b, via the reference rule
    /// with the diagonal gradient transform. Upper triangle computed,
    /// mirrored, so the result is exactly symmetric.
    pub fn local_stiffness(&self, geom: &CellGeometry) -> [[f64; 14]; 14] {
        let gs = geom.grad_scale();
        let gs2 = [gs[0] * gs[0], gs[1] * gs[1], gs[2] * gs[2]];
        let jac = geom.jacobian();
        let mut s = [[0.0; 14]; 14];
        for (q, g) in self.volume.grads.iter().enumerate() {
            let w = self.volume.weights[q] * jac;
            for a in 0..14 {
                for b in a..14 {
                    let d = g[a][0] * g[b][0] * gs2[0]
                        + g[a][1] * g[b][1] * gs2[1]
                        + g[a][2] * g[b][2] * gs2[2];
                    s[a][b] += w * d;
                }
            }
        }
        for a in 0..14 {
            for b in 0..a {
                s[a][b] = s[b][a];
            }
        }
        s
    }

    /// Local load `b[a]` = ∫_K f φ_a.
    pub fn local_load(&self, sol: &dyn Solution, geom: &CellGeometry) -> [f64; 14] {
        let jac = geom.jacobian();
        let mut b = [0.0; 14];
        for (q, &p) in self.volume.points.iter().enumerate() {
            let w = self.volume.weights[q] * jac * sol.f(geom.map(p));
            for a in 0..14 {
                b[a] += w * self.volume.values[q][a];
            }
        }
        b
    }

    /// Assemble the global stiffness matrix and load vector over all DOFs
    /// (no boundary conditions yet). Local stiffness matrices are cached by
    /// cell extent.
    pub fn assemble(&self, sol: &dyn Solution) -> (SparseSym, Vec<f64>) {
        let n = self.dofs.n_total();
        let mut triplets = Vec::with_capacity(self.mesh.n_cells() * 14 * 14);
        let mut b = vec![0.0; n];
        let mut cache: HashMap<[u64; 3], [[f64; 14]; 14]> = HashMap::new();
        for (cell, ids) in self.mesh.cell_ids().zip(&self.dofs.cell_dofs) {
            let geom = self.mesh.cell_geometry(cell);
            let key = geom.half_extents.map(f64::to_bits);
            let s = *cache
                .entry(key)
                .or_insert_with(|| self.local_stiffness(&geom));
            for a in 0..14 {
                for bidx in 0..14 {
                    triplets.push((ids[a], ids[bidx], s[a][bidx]));
                }
            }
            let load = self.local_load(sol, &geom);
            for a in 0..14 {
                b[ids[a]] += load[a];
            }
        }
        (SparseSym::from_triplets(n, triplets), b)
    }

    /// The DOF functional of a smooth field: point value at vertices, and
    /// at face nodes either the centroid value or the face mean (matching
    /// the element's DOF kind).
    pub fn dof_functional(&self, sol: &dyn Solution, entity: &DofEntity) -> f64 {
        match *entity {
            DofEntity::Vertex { pos } => sol.u(pos),
            DofEntity::Face {
                axis,
                center,
                half_tangential,
            } => match self.def.dof_kind {
                crate::element::DofKind::FaceCentroidValue => sol.u(center),
                crate::element::DofKind::FaceIntegralAverage => {
                    let (ta, tb) = axis.tangential();
                    let mut acc = 0.0;
                    for (q, &[a, b]) in self.face_rule.points.iter().enumerate() {
                        let mut x = center;
                        x[ta.index()] += half_tangential[0] * a;
                        x[tb.index()] += half_tangential[1] * b;
                        acc += self.face_rule.weights[q] * sol.u(x);
                    }
                    acc / 4.0
                }
            },
        }
    }

    /// Fix boundary DOFs to the functionals of `sol` and eliminate them.
    pub fn apply_dirichlet(&self, a: &SparseSym, b: &[f64], sol: &dyn Solution) -> ReducedSystem {
        let n = self.dofs.n_total();
        let mut boundary_values = vec![0.0; n];
        for g in 0..n {
            if self.dofs.is_boundary[g] {
                boundary_values[g] = self.dof_functional(sol, &self.dofs.entities[g]);
            }
        }
        let free: Vec<usize> = (0..n).filter(|&g| !self.dofs.is_boundary[g]).collect();
        let mut index_of = vec![usize::MAX; n];
        for (fi, &g) in free.iter().enumerate() {
            index_of[g] = fi;
        }
        let mut rhs: Vec<f64> = free.iter().map(|&g| b[g]).collect();
        let mut triplets = Vec::new();
        for (fi, &g) in free.iter().enumerate() {
            for (j, v) in a.row(g) {
                if self.dofs.is_boundary[j] {
                    rhs[fi] -= v * boundary_values[j];
                } else {
                    triplets.push((fi, index_of[j], v));
                }
            }
        }
        ReducedSystem {
            matrix: SparseSym::from_triplets(free.len(), triplets),
            rhs,
            free,
            boundary_values,
        }
    }

    /// Assemble, reduce, CG-solve. Deterministic for fixed inputs.
    pub fn solve(
        &self,
        sol: &dyn Solution,
        cfg: &SolverConfig,
    ) -> Result<DiscreteSolution, FemError> {
        let (a, b) = self.assemble(sol);
        let reduced = self.apply_dirichlet(&a, &b, sol);
        let maxit = (cfg.maxit_factor * reduced.free.len()).max(50);
        let (x, stats) = cg_solve(&reduced.matrix, &reduced.rhs, cfg.tol, maxit, cfg.precond);
        if !stats.converged {
            return Err(FemError::SolverDiverged {
                iterations: stats.iterations,
                relative_residual: stats.relative_residual,
            });
        }
        Ok(DiscreteSolution {
            coeffs: reduced.expand(&x),
            stats: Some(stats),
        })
    }

    /// Nodal interpolant: every global DOF set to the functional of `sol`.
    pub fn interpolate(&self, sol: &dyn Solution) -> DiscreteSolution {
        let coeffs = self
            .dofs
            .entities
            .iter()
            .map(|e| self.dof_functional(sol, e))
            .collect();
        DiscreteSolution {
            coeffs,
            stats: None,
        }
    }

    /// Value of the discrete function at a reference point of one cell.
    pub fn eval_in_cell(&self, coeffs: &[f64], cell_index: usize, xref: [f64; 3]) -> f64 {
        let ids = &self.dofs.cell_dofs[cell_index];
        self.def
            .basis
            .iter()
            .zip(ids)
            .map(|(phi, &g)| coeffs[g] * phi.eval_f64(xref))
            .sum()
    }

    /// The element's DOF functionals applied to the discrete function
    /// itself, from the viewpoint of one cell.
    pub fn dof_functionals_from_cell(&self, coeffs: &[f64], cell_index: usize) -> [f64; 14] {
        let mut out = [0.0; 14];
        for (slot, node) in self.def.nodes.iter().enumerate() {
            out[slot] = match node {
                crate::element::ReferenceNode::Vertex(v) => {
                    let xref = [v[0] as f64, v[1] as f64, v[2] as f64];
                    self.eval_in_cell(coeffs, cell_index, xref)
                }
                crate::element::ReferenceNode::FaceCenter(face) => match self.def.dof_kind {
                    crate::element::DofKind::FaceCentroidValue => {
                        let mut xref = [0.0; 3];
                        xref[face.axis.index()] = face.side.sign() as f64;
                        self.eval_in_cell(coeffs, cell_index, xref)
                    }
                    crate::element::DofKind::FaceIntegralAverage => {
                        let fi = Face::ALL.iter().position(|f| f == face).unwrap();
                        let mut acc = 0.0;
                        for (q, &p) in self.faces.points[fi].iter().enumerate() {
                            acc += self.faces.weights[q] * self.eval_in_cell(coeffs, cell_index, p);
                        }
                        acc / 4.0
                    }
                },
            };
        }
        out
    }

    /// Cellwise quadrature of (u - u_h)^2 and |∇u - ∇u_h|^2, square-rooted.
    pub fn error_norms(&self, coeffs: &[f64], sol: &dyn Solution) -> ErrorPair {
        let mut l2 = 0.0;
        let mut energy = 0.0;
        for (cell, ids) in self.mesh.cell_ids().zip(&self.dofs.cell_dofs) {
            let geom = self.mesh.cell_geometry(cell);
            let gs = geom.grad_scale();
            let jac = geom.jacobian();
            for (q, &p) in self.error.points.iter().enumerate() {
                let x = geom.map(p);
                let mut uh = 0.0;
                let mut guh = [0.0; 3];
                let vals = &self.error.values[q];
                let grads = &self.error.grads[q];
                for a in 0..14 {
                    let c = coeffs[ids[a]];
                    uh += c * vals[a];
                    guh[0] += c * grads[a][0];
                    guh[1] += c * grads[a][1];
                    guh[2] += c * grads[a][2];
                }
                let w = self.error.weights[q] * jac;
                let du = sol.u(x) - uh;
                l2 += w * du * du;
                let gu = sol.grad_u(x);
                let dg = [
                    gu[0] - guh[0] * gs[0],
                    gu[1] - guh[1] * gs[1],
                    gu[2] - guh[2] * gs[2],
                ];
                energy += w * (dg[0] * dg[0] + dg[1] * dg[1] + dg[2] * dg[2]);
            }
        }
        ErrorPair {
            l2: l2.sqrt(),
            energy: energy.sqrt(),
        }
    }

    /// The consistency residuals `r[j]` = Σ_K ⟨∂u/∂ν, φ_j⟩_∂K for every
    /// global basis function, by face quadrature with the exact gradient.
    pub fn consistency_residuals(&self, sol: &dyn Solution) -> Vec<f64> {
        let mut r = vec![0.0; self.dofs.n_total()];
        for (cell, ids) in self.mesh.cell_ids().zip(&self.dofs.cell_dofs) {
            let geom = self.mesh.cell_geometry(cell);
            for (fi, face) in Face::ALL.iter().enumerate() {
                let axis = face.axis.index();
                let (ta, tb) = face.axis.tangential();
                let area_scale = geom.half_extents[ta.index()] * geom.half_extents[tb.index()];
                let sign = face.side.sign() as f64;
                for (q, &p) in self.faces.points[fi].iter().enumerate() {
                    let x = geom.map(p);
                    let flux = sol.grad_u(x)[axis] * sign;
                    let w = self.faces.weights[q] * area_scale * flux;
                    let vals = &self.faces.values[fi][q];
                    for a in 0..14 {
                        r[ids[a]] += w * vals[a];
                    }
                }
            }
        }
        r
    }

    /// Dual-norm surrogate of the consistency functional:
    /// max_j |r(φ_j)| / ||φ_j||_h over the free DOFs, with ||φ_j||_h^2
    /// read off the diagonal of the pre-BC stiffness matrix.
    pub fn consistency_surrogate(&self, sol: &dyn Solution, stiffness: &SparseSym) -> f64 {
        let r = self.consistency_residuals(sol);
        let diag = stiffness.diagonal();
        let mut worst = 0.0f64;
        for g in 0..self.dofs.n_total() {
            if self.dofs.is_boundary[g] {
                continue;
            }
            debug_assert!(diag[g] > 0.0);
            worst = worst.max(r[g].abs() / diag[g].sqrt());
        }
        worst
    }
}

#[cfg(test)]
mod tests;
