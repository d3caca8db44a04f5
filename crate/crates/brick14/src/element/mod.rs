//! Reference-element construction and symbolic verification for the
//! 14-node brick family on [-1,1]^3.
//!
//! The nodal basis for every (family member, DOF kind) pair comes from one
//! code path: assemble the exact 14x14 node-functional matrix over the
//! member's monomials and invert it with rational arithmetic. Members
//! without a nodal basis surface an [`InadmissibleError`] carrying a kernel
//! polynomial that vanishes at all 14 DOFs — the inadmissibility claims
//! become checkable artifacts rather than panics.
//!
//! The structural checks used by `brick14 verify` live in [`checks`]
//! (zero-mean jump orthogonality, opposite-face residual identity),
//! [`closed_form`] (the published Type 1 basis formulas) and [`rotation`]
//! (the six-DOF rotation interpolant).

pub mod checks;
pub mod closed_form;
pub mod faces;
pub mod family;
pub mod rotation;

pub use family::{lookup, ElementFamily, ADMISSIBLE, REGISTRY, SMITH_KIDGER};

use crate::poly::{int, linalg, Face, Poly3, Rational};
use std::fmt;
use thiserror::Error;

/// How the six face DOFs act on a function. Vertex DOFs are always point
/// values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DofKind {
    /// Point value at the face centroid.
    FaceCentroidValue,
    /// Mean value over the face (the integral normalized by the face area,
    /// so constants have the same DOF vector under both kinds).
    FaceIntegralAverage,
}

impl DofKind {
    pub const BOTH: [DofKind; 2] = [DofKind::FaceCentroidValue, DofKind::FaceIntegralAverage];

    pub fn name(self) -> &'static str {
        match self {
            DofKind::FaceCentroidValue => "centroid",
            DofKind::FaceIntegralAverage => "integral",
        }
    }

    pub fn parse(s: &str) -> Option<DofKind> {
        match s {
            "centroid" => Some(DofKind::FaceCentroidValue),
            "integral" => Some(DofKind::FaceIntegralAverage),
            _ => None,
        }
    }
}

impl fmt::Display for DofKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A node of the reference element: one of the 8 vertices or one of the 6
/// face centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceNode {
    /// Vertex with coordinates in {-1,+1}^3.
    Vertex([i8; 3]),
    /// Center of a face (carries the face so integral DOFs know their
    /// domain).
    FaceCenter(Face),
}

impl ReferenceNode {
    pub fn coords(self) -> [Rational; 3] {
        match self {
            ReferenceNode::Vertex(v) => [int(v[0] as i64), int(v[1] as i64), int(v[2] as i64)],
            ReferenceNode::FaceCenter(face) => face.centroid(),
        }
    }
}

/// Tangential coordinates of the four vertices of a reference face, in
/// lexicographic order. Shared by face interpolation and the face checks.
pub const FACE_VERTEX_TANGENTIALS: [[i8; 2]; 4] = [[-1, -1], [-1, 1], [1, -1], [1, 1]];

/// The 14 reference nodes in canonical order: the 8 vertices ordered
/// lexicographically from (-1,-1,-1) to (1,1,1), then the face centers
/// x1-, x1+, x2-, x2+, x3-, x3+.
pub fn reference_nodes() -> [ReferenceNode; 14] {
    let mut nodes = [ReferenceNode::Vertex([0; 3]); 14];
    let mut i = 0;
    for a in [-1i8, 1] {
        for b in [-1i8, 1] {
            for c in [-1i8, 1] {
                nodes[i] = ReferenceNode::Vertex([a, b, c]);
                i += 1;
            }
        }
    }
    for face in Face::ALL {
        nodes[i] = ReferenceNode::FaceCenter(face);
        i += 1;
    }
    nodes
}

/// The 3D coordinates of the j-th vertex of `face` (see
/// [`FACE_VERTEX_TANGENTIALS`] for the order).
pub fn face_vertex(face: Face, j: usize) -> [Rational; 3] {
    let (ta, tb) = face.axis.tangential();
    let mut x = [int(0), int(0), int(0)];
    x[face.axis.index()] = int(face.side.sign() as i64);
    x[ta.index()] = int(FACE_VERTEX_TANGENTIALS[j][0] as i64);
    x[tb.index()] = int(FACE_VERTEX_TANGENTIALS[j][1] as i64);
    x
}

/// Apply the DOF functional of `node` to a polynomial, exactly.
pub fn dof_apply(kind: DofKind, node: ReferenceNode, p: &Poly3) -> Rational {
    match node {
        ReferenceNode::Vertex(_) => p.eval(&node.coords()),
        ReferenceNode::FaceCenter(face) => match kind {
            DofKind::FaceCentroidValue => p.eval(&face.centroid()),
            DofKind::FaceIntegralAverage => {
                p.restrict_face(face.axis, face.side).integrate() / int(4)
            }
        },
    }
}

/// The 14 monomials spanning a family member's space: the 10 quadratic
/// monomials 1, x1, x2, x3, x1^2, x2^2, x3^2, x1*x2, x1*x3, x2*x3 followed
/// by the member's four augmenters.
pub fn space_monomials(family: &dyn ElementFamily) -> Vec<Poly3> {
    let mut m = vec![
        Poly3::one(),
        Poly3::monomial(1, 0, 0),
        Poly3::monomial(0, 1, 0),
        Poly3::monomial(0, 0, 1),
        Poly3::monomial(2, 0, 0),
        Poly3::monomial(0, 2, 0),
        Poly3::monomial(0, 0, 2),
        Poly3::monomial(1, 1, 0),
        Poly3::monomial(1, 0, 1),
        Poly3::monomial(0, 1, 1),
    ];
    m.extend(family.augmenters());
    m
}

/// A family member has no nodal basis for the requested DOF kind: some
/// nonzero member of its space has all 14 DOFs equal to zero.
#[derive(Debug, Error)]
#[error("{family} is inadmissible with {dof_kind} DOFs: {kernel} vanishes at all 14 DOFs")]
pub struct InadmissibleError {
    pub family: &'static str,
    pub dof_kind: DofKind,
    /// A nonzero polynomial in the span whose DOFs all vanish.
    pub kernel: Poly3,
}

/// A constructed reference element: a family member together with its
/// 14 monomials and the nodal basis dual to the DOF functionals.
///
/// Immutable after construction; shareable across threads.
#[derive(Clone)]
pub struct ElementDef {
    pub family: &'static dyn ElementFamily,
    pub dof_kind: DofKind,
    pub nodes: [ReferenceNode; 14],
    pub monomials: Vec<Poly3>,
    /// `basis[j]` has DOF vector e_j: `dof_apply(kind, nodes[i], basis[j])` = δ_ij.
    pub basis: Vec<Poly3>,
}

impl fmt::Debug for ElementDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElementDef")
            .field("family", &self.family.name())
            .field("dof_kind", &self.dof_kind)
            .finish()
    }
}

/// Build the nodal basis by exact inversion of the 14x14 node-functional
/// matrix `G[i][j] = dof(node_i, monomial_j)`. If G is singular the member is
/// inadmissible and the error carries a kernel polynomial.
pub fn build_basis(
    family: &'static dyn ElementFamily,
    kind: DofKind,
) -> Result<ElementDef, InadmissibleError> {
    let nodes = reference_nodes();
    let monomials = space_monomials(family);
    let g: linalg::Matrix = nodes
        .iter()
        .map(|&n| monomials.iter().map(|m| dof_apply(kind, n, m)).collect())
        .collect();
    match linalg::invert(&g) {
        Ok(inv) => {
            // φ_j = Σ_k inv[k][j] * monomial_k
            let basis = (0..14)
                .map(|j| {
                    let mut p = Poly3::zero();
                    for (k, m) in monomials.iter().enumerate() {
                        p = p.add(&m.scale(&inv[k][j]));
                    }
                    p
                })
                .collect();
            Ok(ElementDef {
                family,
                dof_kind: kind,
                nodes,
                monomials,
                basis,
            })
        }
        Err(kernel_coeffs) => {
            let mut kernel = Poly3::zero();
            for (k, m) in monomials.iter().enumerate() {
                kernel = kernel.add(&m.scale(&kernel_coeffs[k]));
            }
            Err(InadmissibleError {
                family: family.name(),
                dof_kind: kind,
                kernel,
            })
        }
    }
}

/// A maximal linearly independent subset of the face traces of the 14 space
/// monomials, listed in the canonical term order of their leading monomials.
pub fn trace_space(
    family: &dyn ElementFamily,
    axis: crate::poly::Axis,
    side: crate::poly::Side,
) -> Vec<crate::poly::Poly2> {
    use num::Zero;
    let mut kept: Vec<crate::poly::Poly2> = Vec::new();
    // Echelonized copies with unit leading coefficient, for rank tracking.
    let mut pivots: Vec<crate::poly::Poly2> = Vec::new();
    for m in space_monomials(family) {
        let t = m.restrict_face(axis, side);
        let mut r = t.clone();
        loop {
            let Some(lead) = r.leading_exp() else { break };
            match pivots.iter().find(|p| p.leading_exp() == Some(lead)) {
                Some(p) => {
                    let c = r.coeff(lead.0);
                    r = r.sub(&p.scale(&c));
                }
                None => break,
            }
        }
        if !r.is_zero() {
            let lead = r.coeff(r.leading_exp().unwrap().0);
            debug_assert!(!lead.is_zero());
            pivots.push(r.scale(&lead.recip()));
            kept.push(t);
        }
    }
    kept.sort_by_key(|p| p.leading_exp().expect("trace basis members are nonzero"));
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Axis, Side};

    #[test]
    fn node_order_is_canonical() {
        let nodes = reference_nodes();
        assert_eq!(nodes[0], ReferenceNode::Vertex([-1, -1, -1]));
        assert_eq!(nodes[1], ReferenceNode::Vertex([-1, -1, 1]));
        assert_eq!(nodes[7], ReferenceNode::Vertex([1, 1, 1]));
        assert_eq!(
            nodes[8],
            ReferenceNode::FaceCenter(Face {
                axis: Axis::X1,
                side: Side::Minus
            })
        );
        assert_eq!(
            nodes[13],
            ReferenceNode::FaceCenter(Face {
                axis: Axis::X3,
                side: Side::Plus
            })
        );
    }

    #[test]
    fn dof_apply_examples() {
        let one = Poly3::one();
        for node in reference_nodes() {
            for kind in DofKind::BOTH {
                assert_eq!(dof_apply(kind, node, &one), int(1));
            }
        }
        let x2sq = Poly3::monomial(0, 2, 0);
        let face = Face {
            axis: Axis::X1,
            side: Side::Plus,
        };
        let node = ReferenceNode::FaceCenter(face);
        assert_eq!(dof_apply(DofKind::FaceCentroidValue, node, &x2sq), int(0));
        assert_eq!(
            dof_apply(DofKind::FaceIntegralAverage, node, &x2sq),
            rat(1, 3)
        );
    }

    #[test]
    fn kronecker_duality_all_admissible() {
        for family in ADMISSIBLE {
            for kind in DofKind::BOTH {
                let def = build_basis(family, kind).unwrap();
                for (i, &node) in def.nodes.iter().enumerate() {
                    for (j, phi) in def.basis.iter().enumerate() {
                        let expect = if i == j { int(1) } else { int(0) };
                        assert_eq!(
                            dof_apply(kind, node, phi),
                            expect,
                            "{} {} dof {} of basis {}",
                            family.name(),
                            kind,
                            i,
                            j
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_of_unity() {
        for family in ADMISSIBLE {
            for kind in DofKind::BOTH {
                let def = build_basis(family, kind).unwrap();
                let sum = def.basis.iter().fold(Poly3::zero(), |acc, p| acc.add(p));
                assert_eq!(sum, Poly3::one(), "{} {}", family.name(), kind);
            }
        }
    }

    #[test]
    fn quadratic_monomials_reproduced() {
        for family in ADMISSIBLE {
            for kind in DofKind::BOTH {
                let def = build_basis(family, kind).unwrap();
                for m in &def.monomials[..10] {
                    let mut rebuilt = Poly3::zero();
                    for (j, &node) in def.nodes.iter().enumerate() {
                        rebuilt = rebuilt.add(&def.basis[j].scale(&dof_apply(kind, node, m)));
                    }
                    assert_eq!(&rebuilt, m, "{} {} monomial {}", family.name(), kind, m);
                }
            }
        }
    }

    #[test]
    fn sk3_sk4_inadmissible_with_kernel() {
        for (family, expected_kernel) in [
            (
                lookup("sk4").unwrap(),
                // (x1^2 - 1) * x2 * x3
                Poly3::monomial(2, 1, 1).sub(&Poly3::monomial(0, 1, 1)),
            ),
            (
                lookup("sk3").unwrap(),
                // x1^3 - x1
                Poly3::monomial(3, 0, 0).sub(&Poly3::monomial(1, 0, 0)),
            ),
        ] {
            for kind in DofKind::BOTH {
                let err = build_basis(family, kind).unwrap_err();
                assert!(!err.kernel.is_zero());
                for node in reference_nodes() {
                    assert_eq!(dof_apply(kind, node, &err.kernel), int(0));
                    // The expected witness lies in the kernel too.
                    assert_eq!(dof_apply(kind, node, &expected_kernel), int(0));
                }
            }
        }
    }

    #[test]
    fn sk4_kernel_witness_matches_published_form() {
        let err = build_basis(lookup("sk4").unwrap(), DofKind::FaceCentroidValue).unwrap_err();
        let expected = Poly3::monomial(2, 1, 1).sub(&Poly3::monomial(0, 1, 1));
        assert_eq!(err.kernel, expected, "kernel was {}", err.kernel);
    }

    #[test]
    fn sk4_kernel_is_a_subspace() {
        // Scaling a kernel polynomial by any nonzero rational keeps every
        // DOF at zero.
        let err = build_basis(lookup("sk4").unwrap(), DofKind::FaceCentroidValue).unwrap_err();
        for c in [rat(3, 7), rat(-11, 2), int(5)] {
            let scaled = err.kernel.scale(&c);
            assert!(!scaled.is_zero());
            for node in reference_nodes() {
                assert_eq!(dof_apply(DofKind::FaceCentroidValue, node, &scaled), int(0));
            }
        }
    }

    #[test]
    fn trace_space_sk1() {
        // On faces normal to x1 the trace span is 7-dimensional:
        // {1, x2, x3, x2^2, x2*x3, x3^2, x2^2*x3}.
        for side in Side::BOTH {
            let tr = trace_space(lookup("sk1").unwrap(), Axis::X1, side);
            assert_eq!(tr.len(), 7);
            let rendered: Vec<String> = tr.iter().map(|p| p.to_string()).collect();
            let expected = ["1", "x2", "x3", "x2^2", "x2*x3", "x3^2", "x2^2*x3"];
            for (got, want) in rendered.iter().zip(expected) {
                // Traces of single monomials can carry a sign on the minus side.
                assert!(
                    got == want || got == &format!("-{}", want),
                    "got {} want ±{}",
                    got,
                    want
                );
            }
        }
    }

    #[test]
    fn trace_space_dimensions_bounded() {
        for family in ADMISSIBLE {
            for axis in Axis::ALL {
                for side in Side::BOTH {
                    let dim = trace_space(family, axis, side).len();
                    assert!(dim <= 9, "{} {:?}{:?}: {}", family.name(), axis, side, dim);
                }
            }
        }
    }

    #[test]
    fn trace_space_new_contains_enrichment() {
        // The x3+ trace span of the symmetrized member contains all of
        // {1, x1, x2, x1*x2, x1^2 + x2^2} (the last via x1^2 and x2^2).
        let tr = trace_space(lookup("new").unwrap(), Axis::X3, Side::Plus);
        assert_eq!(tr.len(), 8);
        let rendered: Vec<String> = tr.iter().map(|p| p.to_string()).collect();
        for needed in ["1", "x1", "x2", "x1*x2", "x1^2", "x2^2"] {
            assert!(
                rendered.iter().any(|s| s == needed),
                "missing {needed} in {rendered:?}"
            );
        }
    }
}
