//! Structured axis-aligned brick partitions of a box, with entity
//! enumeration and global DOF numbering.
//!
//! Geometry lives in f64 (it feeds quadrature); topology is exact integer
//! index arithmetic. A mesh is three strictly increasing coordinate arrays;
//! cells, vertices and faces are addressed by lexicographic index tuples
//! with the x1 index most significant. Faces are grouped by orientation
//! class (normal x1, x2, x3), mirroring how the analysis splits the
//! interelement jump terms.

use crate::element::DofKind;
use crate::poly::Axis;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("axis {axis} needs at least 2 strictly increasing coordinates, got {got}")]
    DegenerateAxis { axis: usize, got: usize },
    #[error("axis {axis} coordinates are not strictly increasing at position {at}")]
    NotIncreasing { axis: usize, at: usize },
    #[error("box is empty along axis {axis}")]
    EmptyBox { axis: usize },
}

/// Affine geometry of one cell: T(x̂) = center + half_extents ⊙ x̂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    pub center: [f64; 3],
    pub half_extents: [f64; 3],
}

impl CellGeometry {
    /// Map a reference point to physical coordinates.
    pub fn map(&self, xhat: [f64; 3]) -> [f64; 3] {
        [
            self.center[0] + self.half_extents[0] * xhat[0],
            self.center[1] + self.half_extents[1] * xhat[1],
            self.center[2] + self.half_extents[2] * xhat[2],
        ]
    }

    /// Jacobian determinant of the map (volume scale).
    pub fn jacobian(&self) -> f64 {
        self.half_extents[0] * self.half_extents[1] * self.half_extents[2]
    }

    /// Physical gradient = reference gradient / half_extent, per axis.
    pub fn grad_scale(&self) -> [f64; 3] {
        [
            1.0 / self.half_extents[0],
            1.0 / self.half_extents[1],
            1.0 / self.half_extents[2],
        ]
    }

    pub fn diameter(&self) -> f64 {
        let d = self.half_extents;
        2.0 * (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// Tensor-product brick mesh of a box.
#[derive(Debug, Clone)]
pub struct BoxMesh {
    /// Strictly increasing grid coordinates per axis.
    pub coords: [Vec<f64>; 3],
}

impl BoxMesh {
    /// Uniform partition of [lo, hi] with `cells` cells per axis.
    pub fn uniform(lo: [f64; 3], hi: [f64; 3], cells: [usize; 3]) -> Result<BoxMesh, MeshError> {
        let mut coords: [Vec<f64>; 3] = Default::default();
        for a in 0..3 {
            if !(hi[a] > lo[a]) {
                return Err(MeshError::EmptyBox { axis: a });
            }
            if cells[a] == 0 {
                return Err(MeshError::DegenerateAxis { axis: a, got: 1 });
            }
            let n = cells[a];
            coords[a] = (0..=n)
                .map(|i| lo[a] + (hi[a] - lo[a]) * (i as f64) / (n as f64))
                .collect();
        }
        BoxMesh::from_axes(coords)
    }

    /// Mesh from explicit coordinate arrays (graded grids).
    pub fn from_axes(coords: [Vec<f64>; 3]) -> Result<BoxMesh, MeshError> {
        for (a, axis) in coords.iter().enumerate() {
            if axis.len() < 2 {
                return Err(MeshError::DegenerateAxis {
                    axis: a,
                    got: axis.len(),
                });
            }
            for i in 1..axis.len() {
                if !(axis[i] > axis[i - 1]) {
                    return Err(MeshError::NotIncreasing { axis: a, at: i });
                }
            }
        }
        Ok(BoxMesh { coords })
    }

    /// Cells per axis.
    pub fn cells(&self) -> [usize; 3] {
        [
            self.coords[0].len() - 1,
            self.coords[1].len() - 1,
            self.coords[2].len() - 1,
        ]
    }

    pub fn n_cells(&self) -> usize {
        let c = self.cells();
        c[0] * c[1] * c[2]
    }

    pub fn n_vertices(&self) -> usize {
        self.coords.iter().map(|c| c.len()).product()
    }

    /// Face count per orientation class.
    pub fn n_faces_by_class(&self) -> [usize; 3] {
        let [nx, ny, nz] = self.cells();
        [(nx + 1) * ny * nz, nx * (ny + 1) * nz, nx * ny * (nz + 1)]
    }

    pub fn n_faces(&self) -> usize {
        self.n_faces_by_class().iter().sum()
    }

    /// Maximum cell diameter.
    pub fn h_max(&self) -> f64 {
        self.cell_ids()
            .map(|c| self.cell_geometry(c).diameter())
            .fold(0.0, f64::max)
    }

    /// All cell index triples in lexicographic order.
    pub fn cell_ids(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let [nx, ny, nz] = self.cells();
        (0..nx).flat_map(move |i| (0..ny).flat_map(move |j| (0..nz).map(move |k| [i, j, k])))
    }

    pub fn cell_geometry(&self, c: [usize; 3]) -> CellGeometry {
        let mut center = [0.0; 3];
        let mut half = [0.0; 3];
        for a in 0..3 {
            let lo = self.coords[a][c[a]];
            let hi = self.coords[a][c[a] + 1];
            center[a] = 0.5 * (lo + hi);
            half[a] = 0.5 * (hi - lo);
        }
        CellGeometry {
            center,
            half_extents: half,
        }
    }
}

/// Face counts split into orientation classes and interior/boundary, from
/// the structured layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceClasses {
    pub per_class: [usize; 3],
    pub interior_per_class: [usize; 3],
    pub boundary_per_class: [usize; 3],
}

pub fn classify_faces(mesh: &BoxMesh) -> FaceClasses {
    let [nx, ny, nz] = mesh.cells();
    let per_class = mesh.n_faces_by_class();
    let interior = [(nx - 1) * ny * nz, nx * (ny - 1) * nz, nx * ny * (nz - 1)];
    FaceClasses {
        per_class,
        interior_per_class: interior,
        boundary_per_class: [
            per_class[0] - interior[0],
            per_class[1] - interior[1],
            per_class[2] - interior[2],
        ],
    }
}

/// What a global DOF is attached to, with the geometry needed to evaluate
/// its functional (point position, or face center plus tangential
/// half-extents).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DofEntity {
    Vertex {
        pos: [f64; 3],
    },
    Face {
        axis: Axis,
        center: [f64; 3],
        half_tangential: [f64; 2],
    },
}

impl DofEntity {
    pub fn position(&self) -> [f64; 3] {
        match *self {
            DofEntity::Vertex { pos } => pos,
            DofEntity::Face { center, .. } => center,
        }
    }
}

/// Global DOF numbering: all vertices lexicographically, then faces grouped
/// by orientation class (x1, x2, x3) and lexicographic within each class.
/// Shared entities get one global index, which is what enforces continuity
/// of the nonconforming space at vertices and face nodes.
#[derive(Debug, Clone)]
pub struct DofMap {
    pub dof_kind: DofKind,
    pub n_vertices: usize,
    pub n_faces: usize,
    /// 14 global indices per cell, in element node order (8 vertices
    /// lexicographic, then faces x1-, x1+, x2-, x2+, x3-, x3+).
    pub cell_dofs: Vec<[usize; 14]>,
    pub is_boundary: Vec<bool>,
    pub entities: Vec<DofEntity>,
}

impl DofMap {
    pub fn n_total(&self) -> usize {
        self.n_vertices + self.n_faces
    }

    pub fn n_free(&self) -> usize {
        self.is_boundary.iter().filter(|&&b| !b).count()
    }

    /// Lexicographic cell id of an index triple.
    pub fn cell_index(mesh: &BoxMesh, c: [usize; 3]) -> usize {
        let [_, ny, nz] = mesh.cells();
        (c[0] * ny + c[1]) * nz + c[2]
    }
}

/// Number every vertex and face of the mesh.
pub fn enumerate_dofs(mesh: &BoxMesh, kind: DofKind) -> DofMap {
    let [nx, ny, nz] = mesh.cells();
    let x = &mesh.coords[0];
    let y = &mesh.coords[1];
    let z = &mesh.coords[2];

    let vid = |i: usize, j: usize, k: usize| (i * (ny + 1) + j) * (nz + 1) + k;
    let n_vertices = (nx + 1) * (ny + 1) * (nz + 1);
    let fby = mesh.n_faces_by_class();
    // Face ids: class x1 faces indexed (plane i, cell j, cell k), then the
    // x2 and x3 classes analogously, each lexicographic.
    let fx = |i: usize, j: usize, k: usize| n_vertices + (i * ny + j) * nz + k;
    let fy = |i: usize, j: usize, k: usize| n_vertices + fby[0] + (i * (ny + 1) + j) * nz + k;
    let fz =
        |i: usize, j: usize, k: usize| n_vertices + fby[0] + fby[1] + (i * ny + j) * (nz + 1) + k;

    let n_total = n_vertices + fby[0] + fby[1] + fby[2];
    let mut entities = vec![DofEntity::Vertex { pos: [0.0; 3] }; n_total];
    let mut is_boundary = vec![false; n_total];

    for i in 0..=nx {
        for j in 0..=ny {
            for k in 0..=nz {
                let g = vid(i, j, k);
                entities[g] = DofEntity::Vertex {
                    pos: [x[i], y[j], z[k]],
                };
                is_boundary[g] = i == 0 || i == nx || j == 0 || j == ny || k == 0 || k == nz;
            }
        }
    }
    let mid = |c: &[f64], i: usize| 0.5 * (c[i] + c[i + 1]);
    let half = |c: &[f64], i: usize| 0.5 * (c[i + 1] - c[i]);
    for i in 0..=nx {
        for j in 0..ny {
            for k in 0..nz {
                let g = fx(i, j, k);
                entities[g] = DofEntity::Face {
                    axis: Axis::X1,
                    center: [x[i], mid(y, j), mid(z, k)],
                    half_tangential: [half(y, j), half(z, k)],
                };
                is_boundary[g] = i == 0 || i == nx;
            }
        }
    }
    for i in 0..nx {
        for j in 0..=ny {
            for k in 0..nz {
                let g = fy(i, j, k);
                entities[g] = DofEntity::Face {
                    axis: Axis::X2,
                    center: [mid(x, i), y[j], mid(z, k)],
                    half_tangential: [half(x, i), half(z, k)],
                };
                is_boundary[g] = j == 0 || j == ny;
            }
        }
    }
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..=nz {
                let g = fz(i, j, k);
                entities[g] = DofEntity::Face {
                    axis: Axis::X3,
                    center: [mid(x, i), mid(y, j), z[k]],
                    half_tangential: [half(x, i), half(y, j)],
                };
                is_boundary[g] = k == 0 || k == nz;
            }
        }
    }

    let mut cell_dofs = Vec::with_capacity(nx * ny * nz);
    for [i, j, k] in mesh.cell_ids() {
        let mut dofs = [0usize; 14];
        let mut n = 0;
        for di in 0..2 {
            for dj in 0..2 {
                for dk in 0..2 {
                    dofs[n] = vid(i + di, j + dj, k + dk);
                    n += 1;
                }
            }
        }
        dofs[8] = fx(i, j, k);
        dofs[9] = fx(i + 1, j, k);
        dofs[10] = fy(i, j, k);
        dofs[11] = fy(i, j + 1, k);
        dofs[12] = fz(i, j, k);
        dofs[13] = fz(i, j, k + 1);
        cell_dofs.push(dofs);
    }

    DofMap {
        dof_kind: kind,
        n_vertices,
        n_faces: fby.iter().sum(),
        cell_dofs,
        is_boundary,
        entities,
    }
}
