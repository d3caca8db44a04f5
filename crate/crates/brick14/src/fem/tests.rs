use super::solutions::{Linear, Quadratic, Trig};
use super::*;
use crate::element::{build_basis, lookup, DofKind, ADMISSIBLE};
use crate::mesh::enumerate_dofs;
use crate::poly::{int, Axis};

struct Constant;

impl Solution for Constant {
    fn name(&self) -> &'static str {
        "one"
    }
    fn u(&self, _x: [f64; 3]) -> f64 {
        1.0
    }
    fn grad_u(&self, _x: [f64; 3]) -> [f64; 3] {
        [0.0; 3]
    }
    fn f(&self, _x: [f64; 3]) -> f64 {
        0.0
    }
}

fn reference_cell() -> CellGeometry {
    CellGeometry {
        center: [0.0; 3],
        half_extents: [1.0; 3],
    }
}

fn setup(name: &str, kind: DofKind, cells: usize) -> (BoxMesh, DofMap, ElementDef) {
    let mesh = BoxMesh::uniform([0.0; 3], [1.0; 3], [cells; 3]).unwrap();
    let dofs = enumerate_dofs(&mesh, kind);
    let def = build_basis(lookup(name).unwrap(), kind).unwrap();
    (mesh, dofs, def)
}

#[test]
fn local_stiffness_annihilates_constants() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 1);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    for geom in [
        reference_cell(),
        CellGeometry {
            center: [0.3, -0.1, 2.0],
            half_extents: [0.5, 0.25, 1.5],
        },
    ] {
        let s = disc.local_stiffness(&geom);
        for a in 0..14 {
            let row_sum: f64 = s[a].iter().sum();
            assert!(row_sum.abs() < 1e-12, "row {a}: {row_sum}");
            assert!(s[a][a] >= 0.0);
            for b in 0..14 {
                assert_eq!(s[a][b], s[b][a]);
            }
        }
    }
}

#[test]
fn local_stiffness_matches_exact_integration() {
    // Quadrature vs the exact rational integral of ∇φ_a · ∇φ_b over the
    // reference cube, for every admissible family member.
    for family in ADMISSIBLE {
        let def = build_basis(family, DofKind::FaceCentroidValue).unwrap();
        let mesh = BoxMesh::uniform([-1.0; 3], [1.0; 3], [1; 3]).unwrap();
        let dofs = enumerate_dofs(&mesh, DofKind::FaceCentroidValue);
        let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
        let s = disc.local_stiffness(&reference_cell());
        let lo = [int(-1), int(-1), int(-1)];
        let hi = [int(1), int(1), int(1)];
        for a in 0..14 {
            for b in a..14 {
                let mut exact = crate::poly::Rational::from_integer(0.into());
                for axis in Axis::ALL {
                    let prod = def.basis[a]
                        .derivative(axis)
                        .mul(&def.basis[b].derivative(axis));
                    exact += prod.integrate_box(&lo, &hi);
                }
                let exact = crate::poly::rational_to_f64(&exact);
                assert!(
                    (s[a][b] - exact).abs() < 1e-12,
                    "{} S[{a}][{b}] = {} vs exact {}",
                    family.name(),
                    s[a][b],
                    exact
                );
            }
        }
    }
}

struct UnitForcing;

impl Solution for UnitForcing {
    fn name(&self) -> &'static str {
        "unit-forcing"
    }
    fn u(&self, _x: [f64; 3]) -> f64 {
        0.0
    }
    fn grad_u(&self, _x: [f64; 3]) -> [f64; 3] {
        [0.0; 3]
    }
    fn f(&self, _x: [f64; 3]) -> f64 {
        1.0
    }
}

#[test]
fn local_load_partition_of_unity() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 1);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let zero = disc.local_load(&Linear, &reference_cell());
    let _ = zero; // linear has f = 0
    assert!(zero.iter().all(|&v| v == 0.0));

    let b = disc.local_load(&UnitForcing, &reference_cell());
    let sum: f64 = b.iter().sum();
    assert!((sum - 8.0).abs() < 1e-12, "{sum}");

    let geom = CellGeometry {
        center: [5.0, 1.0, -2.0],
        half_extents: [0.5, 0.2, 0.1],
    };
    let b = disc.local_load(&UnitForcing, &geom);
    let sum: f64 = b.iter().sum();
    let volume = 8.0 * geom.jacobian();
    assert!((sum - volume).abs() < 1e-13, "{sum} vs {volume}");
}

#[test]
fn scaling_covariance_of_local_matrices() {
    // A cell twice the size scales the stiffness by the extent factor.
    let (mesh, dofs, def) = setup("sk2", DofKind::FaceCentroidValue, 1);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let s1 = disc.local_stiffness(&CellGeometry {
        center: [0.5; 3],
        half_extents: [0.5; 3],
    });
    let s2 = disc.local_stiffness(&CellGeometry {
        center: [1.0; 3],
        half_extents: [1.0; 3],
    });
    for a in 0..14 {
        for b in 0..14 {
            assert!(
                (s2[a][b] - 2.0 * s1[a][b]).abs() <= 1e-13 * (1.0 + s2[a][b].abs()),
                "[{a}][{b}]"
            );
        }
    }
}

#[test]
fn assemble_single_cell_equals_local() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 1);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let (a, _) = disc.assemble(&Trig);
    let local = disc.local_stiffness(&mesh.cell_geometry([0, 0, 0]));
    let ids = &dofs.cell_dofs[0];
    for i in 0..14 {
        for j in 0..14 {
            assert_eq!(a.get(ids[i], ids[j]), local[i][j]);
        }
    }
}

#[test]
fn assemble_scatter_adds_shared_faces() {
    // Two cells along x1: the shared face DOF row is the sum of the two
    // local contributions.
    let mesh = BoxMesh::uniform([0.0; 3], [2.0, 1.0, 1.0], [2, 1, 1]).unwrap();
    let dofs = enumerate_dofs(&mesh, DofKind::FaceCentroidValue);
    let def = build_basis(lookup("sk1").unwrap(), DofKind::FaceCentroidValue).unwrap();
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let (a, _) = disc.assemble(&Trig);
    // Shared x1 face of cells 0 and 1: local slot 9 in cell 0, slot 8 in cell 1.
    let shared = dofs.cell_dofs[0][9];
    assert_eq!(shared, dofs.cell_dofs[1][8]);
    let l0 = disc.local_stiffness(&mesh.cell_geometry([0, 0, 0]));
    let l1 = disc.local_stiffness(&mesh.cell_geometry([1, 0, 0]));
    let diag = a.get(shared, shared);
    assert!((diag - (l0[9][9] + l1[8][8])).abs() < 1e-13);
}

#[test]
fn assembled_matrix_kernel_and_symmetry() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 2);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let (a, _) = disc.assemble(&Trig);
    assert_eq!(a.max_asymmetry(), 0.0);
    let ones = vec![1.0; dofs.n_total()];
    let mut y = vec![0.0; dofs.n_total()];
    a.matvec(&ones, &mut y);
    let worst = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(worst < 1e-11, "{worst}");
}

#[test]
fn homogeneous_bc_is_plain_deletion() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 2);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let (a, b) = disc.assemble(&Trig);
    let red = disc.apply_dirichlet(&a, &b, &Trig); // trig boundary data is 0
    assert!(red.boundary_values.iter().all(|&v| v.abs() < 1e-15));
    for (fi, &g) in red.free.iter().enumerate() {
        assert_eq!(red.rhs[fi], b[g]);
    }
}

#[test]
fn constants_reproduced_exactly() {
    for kind in DofKind::BOTH {
        let (mesh, dofs, def) = setup("sk5", kind, 2);
        let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
        let uh = disc.solve(&Constant, &SolverConfig::default()).unwrap();
        for &c in &uh.coeffs {
            assert!((c - 1.0).abs() < 1e-11, "{c}");
        }
    }
}

#[test]
fn linear_solutions_exact_for_all_admissible_types() {
    for family in ADMISSIBLE {
        for kind in DofKind::BOTH {
            let (mesh, dofs, def) = setup(family.name(), kind, 2);
            let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
            let uh = disc.solve(&Linear, &SolverConfig::default()).unwrap();
            let err = disc.error_norms(&uh.coeffs, &Linear);
            assert!(
                err.energy <= 1e-9 && err.l2 <= 1e-9,
                "{} {}: l2={:.2e} energy={:.2e}",
                family.name(),
                kind,
                err.l2,
                err.energy
            );
        }
    }
}

#[test]
fn trig_solve_converges() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 4);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let uh = disc.solve(&Trig, &SolverConfig::default()).unwrap();
    let stats = uh.stats.unwrap();
    assert!(stats.converged && stats.relative_residual <= 1e-12);
    let err = disc.error_norms(&uh.coeffs, &Trig);
    assert!(err.l2.is_finite() && err.energy.is_finite() && err.l2 > 0.0);
}

#[test]
fn galerkin_consistency_after_solve() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 3);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let cfg = SolverConfig::default();
    let (a, b) = disc.assemble(&Trig);
    let red = disc.apply_dirichlet(&a, &b, &Trig);
    let (x, stats) = crate::numerics::cg_solve(
        &red.matrix,
        &red.rhs,
        cfg.tol,
        10 * red.free.len(),
        cfg.precond,
    );
    assert!(stats.converged);
    let mut ax = vec![0.0; red.free.len()];
    red.matrix.matvec(&x, &mut ax);
    let norm_b = red.rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
    for i in 0..red.free.len() {
        assert!((ax[i] - red.rhs[i]).abs() <= 10.0 * cfg.tol * norm_b);
    }
}

#[test]
fn interpolation_reproduces_quadratics() {
    for family in ADMISSIBLE {
        for kind in DofKind::BOTH {
            let (mesh, dofs, def) = setup(family.name(), kind, 2);
            let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
            let pi_u = disc.interpolate(&Quadratic);
            let err = disc.error_norms(&pi_u.coeffs, &Quadratic);
            assert!(
                err.l2 <= 1e-12 && err.energy <= 1e-12,
                "{} {}: {:?}",
                family.name(),
                kind,
                err
            );
        }
    }
}

#[test]
fn interpolation_of_constant_is_flat() {
    let (mesh, dofs, def) = setup("sk6", DofKind::FaceIntegralAverage, 2);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let pi_u = disc.interpolate(&Constant);
    for &c in &pi_u.coeffs {
        assert!((c - 1.0).abs() < 1e-13);
    }
}

#[test]
fn interpolant_idempotent_on_discrete_functions() {
    // Reading the DOF functionals back off u_h (from any owning cell)
    // reproduces u_h's coefficient vector.
    for kind in DofKind::BOTH {
        let (mesh, dofs, def) = setup("sk1", kind, 2);
        let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
        let uh = disc.solve(&Trig, &SolverConfig::default()).unwrap();
        for cell_index in 0..mesh.n_cells() {
            let vals = disc.dof_functionals_from_cell(&uh.coeffs, cell_index);
            for (slot, &g) in dofs.cell_dofs[cell_index].iter().enumerate() {
                assert!(
                    (vals[slot] - uh.coeffs[g]).abs() < 1e-12,
                    "{kind} cell {cell_index} slot {slot}: {} vs {}",
                    vals[slot],
                    uh.coeffs[g]
                );
            }
        }
    }
}

#[test]
fn consistency_vanishes_for_linear_solutions() {
    for family in ADMISSIBLE {
        for kind in DofKind::BOTH {
            let (mesh, dofs, def) = setup(family.name(), kind, 2);
            let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
            let (a, _) = disc.assemble(&Linear);
            let s = disc.consistency_surrogate(&Linear, &a);
            assert!(s < 1e-11, "{} {}: {s}", family.name(), kind);
        }
    }
}

#[test]
fn consistency_nonzero_for_trig() {
    let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, 2);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let (a, _) = disc.assemble(&Trig);
    let s = disc.consistency_surrogate(&Trig, &a);
    assert!(s > 1e-6, "{s}");
}

#[test]
fn strang_sanity_inequality() {
    // ||u - u_h||_h <= 10 * (||u - Π_h u||_h + consistency surrogate).
    for cells in [2usize, 4] {
        let (mesh, dofs, def) = setup("sk1", DofKind::FaceCentroidValue, cells);
        let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
        let uh = disc.solve(&Trig, &SolverConfig::default()).unwrap();
        let eh = disc.error_norms(&uh.coeffs, &Trig).energy;
        let pi = disc.interpolate(&Trig);
        let e_pi = disc.error_norms(&pi.coeffs, &Trig).energy;
        let (a, _) = disc.assemble(&Trig);
        let s = disc.consistency_surrogate(&Trig, &a);
        assert!(
            eh <= 10.0 * (e_pi + s),
            "cells={cells}: {eh} vs {e_pi} + {s}"
        );
    }
}

#[test]
fn sk4_rejected_before_assembly() {
    let err = build_basis(lookup("sk4").unwrap(), DofKind::FaceCentroidValue).unwrap_err();
    let fem_err: FemError = err.into();
    assert!(matches!(fem_err, FemError::Inadmissible(_)));
}

use crate::element::ElementDef;
use crate::mesh::{BoxMesh, CellGeometry, DofMap};

#[test]
fn consistency_residuals_match_volume_route() {
    // Two algebraic routes to r(φ_j) = a_h(u, φ_j) - <f, φ_j>: the face
    // quadrature of the normal flux (implementation) against elementwise
    // volume quadrature of ∇u·∇φ_j minus the load vector.
    for name in ["sk1", "sk6"] {
        let (mesh, dofs, def) = setup(name, DofKind::FaceCentroidValue, 3);
        let disc = Discretization::new(&mesh, &dofs, &def, 7, 7).unwrap();
        let r_face = disc.consistency_residuals(&Trig);

        let rule = crate::numerics::QuadRule3D::tensor(7).unwrap();
        let mut r_vol = vec![0.0; dofs.n_total()];
        for (cell, ids) in mesh.cell_ids().zip(&dofs.cell_dofs) {
            let geom = mesh.cell_geometry(cell);
            let gs = geom.grad_scale();
            let jac = geom.jacobian();
            for (q, &p) in rule.points.iter().enumerate() {
                let x = geom.map(p);
                let gu = Trig.grad_u(x);
                let w = rule.weights[q] * jac;
                for a in 0..14 {
                    let mut grad_phi = [0.0; 3];
                    for (i, axis) in crate::poly::Axis::ALL.iter().enumerate() {
                        grad_phi[i] = def.basis[a].derivative(*axis).eval_f64(p) * gs[i];
                    }
                    r_vol[ids[a]] +=
                        w * (gu[0] * grad_phi[0] + gu[1] * grad_phi[1] + gu[2] * grad_phi[2]);
                }
            }
            let load = disc.local_load(&Trig, &geom);
            for a in 0..14 {
                r_vol[ids[a]] -= load[a];
            }
        }
        for g in 0..dofs.n_total() {
            assert!(
                (r_face[g] - r_vol[g]).abs() < 1e-9,
                "{name} dof {g}: face {} vs volume {}",
                r_face[g],
                r_vol[g]
            );
        }
    }
}

#[test]
fn sk6_centroid_quadratic_recorded() {
    // Whether sk6 with centroid DOFs reproduces global quadratics is left
    // open by the theory here; this records the observed behavior (it does
    // not reproduce them — consistent with its failed face orthogonality)
    // without asserting a threshold.
    let (mesh, dofs, def) = setup("sk6", DofKind::FaceCentroidValue, 4);
    let disc = Discretization::new(&mesh, &dofs, &def, 5, 7).unwrap();
    let uh = disc.solve(&Quadratic, &SolverConfig::default()).unwrap();
    let err = disc.error_norms(&uh.coeffs, &Quadratic);
    println!(
        "sk6 centroid on quadratic solution at 4^3 cells: l2={:.6e} energy={:.6e}",
        err.l2, err.energy
    );
    assert!(err.l2.is_finite() && err.energy.is_finite());
}
