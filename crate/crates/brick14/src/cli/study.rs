//! The convergence-study runner: a mesh sequence per (element, DOF kind)
//! pair, solved and measured, plus the interpolation/consistency
//! diagnostics used by the acceptance suite.

use super::report::{finalize_study, ConvergenceReport, MeshRow};
use crate::element::{build_basis, DofKind, ElementFamily};
use crate::fem::{Discretization, FemError, Solution, SolverConfig};
use crate::mesh::{enumerate_dofs, BoxMesh};

#[derive(Clone)]
pub struct StudyConfig {
    pub families: Vec<&'static dyn ElementFamily>,
    pub kinds: Vec<DofKind>,
    pub solution: &'static dyn Solution,
    /// Cells per axis for each mesh of the sequence, strictly increasing.
    pub meshes: Vec<usize>,
    pub domain: ([f64; 3], [f64; 3]),
    pub quad_volume: usize,
    pub quad_error: usize,
    pub solver: SolverConfig,
}

impl StudyConfig {
    pub fn unit_cube_defaults(
        families: Vec<&'static dyn ElementFamily>,
        kinds: Vec<DofKind>,
        solution: &'static dyn Solution,
    ) -> StudyConfig {
        StudyConfig {
            families,
            kinds,
            solution,
            meshes: vec![2, 4, 8, 16],
            domain: ([0.0; 3], [1.0; 3]),
            quad_volume: 5,
            quad_error: 7,
            solver: SolverConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.families.is_empty() {
            return Err("no element types requested".into());
        }
        if self.kinds.is_empty() {
            return Err("no DOF kinds requested".into());
        }
        if self.meshes.len() < 2 {
            return Err("rate estimation needs at least 2 meshes".into());
        }
        if self.meshes.windows(2).any(|w| w[1] <= w[0]) {
            return Err("mesh cell counts must be strictly increasing".into());
        }
        Ok(())
    }
}

/// Run the full study matrix. `timer` supplies wall-clock seconds; inject a
/// constant to make the emitted CSV reproducible byte-for-byte.
pub fn run_study(
    cfg: &StudyConfig,
    timer: &dyn Fn() -> f64,
) -> Result<ConvergenceReport, FemError> {
    let mut studies = Vec::new();
    for &family in &cfg.families {
        for &kind in &cfg.kinds {
            let def = build_basis(family, kind)?;
            let mut rows = Vec::new();
            for &n in &cfg.meshes {
                let t0 = timer();
                let mesh = BoxMesh::uniform(cfg.domain.0, cfg.domain.1, [n; 3])?;
                let dofs = enumerate_dofs(&mesh, kind);
                let disc =
                    Discretization::new(&mesh, &dofs, &def, cfg.quad_volume, cfg.quad_error)?;
                let uh = disc.solve(cfg.solution, &cfg.solver)?;
                let err = disc.error_norms(&uh.coeffs, cfg.solution);
                rows.push(MeshRow {
                    h: mesh.h_max(),
                    ndofs: dofs.n_total(),
                    l2: err.l2,
                    energy: err.energy,
                    rate_l2: None,
                    rate_energy: None,
                    cg_iters: uh.stats.map_or(0, |s| s.iterations),
                    seconds: timer() - t0,
                });
            }
            studies.push(finalize_study(
                family.name(),
                kind,
                cfg.solution.name(),
                rows,
            ));
        }
    }
    Ok(ConvergenceReport { studies })
}

/// Interpolation errors and the consistency surrogate on one mesh
/// sequence, for the diagnostic rate checks (no solves involved).
#[derive(Debug, Clone)]
pub struct DiagnosticsRow {
    pub h: f64,
    pub interp_l2: f64,
    pub interp_energy: f64,
    pub consistency: f64,
}

pub fn run_diagnostics(
    family: &'static dyn ElementFamily,
    kind: DofKind,
    solution: &'static dyn Solution,
    meshes: &[usize],
    domain: ([f64; 3], [f64; 3]),
) -> Result<Vec<DiagnosticsRow>, FemError> {
    let def = build_basis(family, kind)?;
    let mut rows = Vec::new();
    for &n in meshes {
        let mesh = BoxMesh::uniform(domain.0, domain.1, [n; 3])?;
        let dofs = enumerate_dofs(&mesh, kind);
        let disc = Discretization::new(&mesh, &dofs, &def, 5, 7)?;
        let pi_u = disc.interpolate(solution);
        let err = disc.error_norms(&pi_u.coeffs, solution);
        let (a, _) = disc.assemble(solution);
        let consistency = disc.consistency_surrogate(solution, &a);
        rows.push(DiagnosticsRow {
            h: mesh.h_max(),
            interp_l2: err.l2,
            interp_energy: err.energy,
            consistency,
        });
    }
    Ok(rows)
}
