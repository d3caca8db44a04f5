//! Exact structural checks behind `brick14 verify`.
//!
//! * [`check_face_orthogonality`]: on each face, does every member of the
//!   element space with zero values at the four face vertices and a zero
//!   face DOF have zero mean over the face? This is the order-zero patch
//!   test; failures come with an explicit witness polynomial and its exact
//!   face integral.
//! * [`check_opposite_face_identity`]: for every basis polynomial, is the
//!   interpolation residual (trace minus its five-point face interpolant)
//!   the same function of the tangential coordinates on the plus and minus
//!   faces of each axis? This is what lets the interelement jump terms
//!   telescope in the consistency estimate.
//!
//! Both checks run in rational arithmetic; "holds" means holds exactly.

use super::faces::face_interp_space;
use super::{dof_apply, face_vertex, ElementDef, ReferenceNode};
use crate::poly::{linalg, Axis, Face, Poly2, Poly3, Rational};
use num::Zero;

/// Outcome of the zero-mean jump check on one face.
#[derive(Debug, Clone)]
pub struct FaceVerdict {
    pub face: Face,
    pub holds: bool,
    /// On failure: a polynomial of the span with all five face constraints
    /// zero but a nonzero face integral, and that integral.
    pub witness: Option<(Poly3, Rational)>,
}

/// Outcome of [`check_face_orthogonality`] over all six faces.
#[derive(Debug, Clone)]
pub struct FaceOrthogonality {
    pub faces: Vec<FaceVerdict>,
}

impl FaceOrthogonality {
    pub fn holds(&self) -> bool {
        self.faces.iter().all(|f| f.holds)
    }
}

/// Decide exactly, face by face, whether vanishing at the face's four
/// vertices plus a vanishing face DOF forces a zero face integral.
///
/// The constrained subspace is the nullspace of the 5x14 constraint matrix
/// over the space monomials; the verdict integrates each nullspace basis
/// vector's trace. The witness extraction is deterministic (first
/// echelon-basis vector with nonzero integral).
pub fn check_face_orthogonality(def: &ElementDef) -> FaceOrthogonality {
    let faces = Face::ALL
        .iter()
        .map(|&face| {
            let mut constraints: linalg::Matrix = (0..4)
                .map(|j| {
                    let x = face_vertex(face, j);
                    def.monomials.iter().map(|m| m.eval(&x)).collect()
                })
                .collect();
            constraints.push(
                def.monomials
                    .iter()
                    .map(|m| dof_apply(def.dof_kind, ReferenceNode::FaceCenter(face), m))
                    .collect(),
            );
            let integrals: Vec<Rational> = def
                .monomials
                .iter()
                .map(|m| m.restrict_face(face.axis, face.side).integrate())
                .collect();
            let mut witness = None;
            for v in linalg::nullspace(&constraints) {
                let integral: Rational = v.iter().zip(&integrals).map(|(a, b)| a * b).sum();
                if !integral.is_zero() {
                    let mut p = Poly3::zero();
                    for (c, m) in v.iter().zip(&def.monomials) {
                        p = p.add(&m.scale(c));
                    }
                    witness = Some((p, integral));
                    break;
                }
            }
            FaceVerdict {
                face,
                holds: witness.is_none(),
                witness,
            }
        })
        .collect();
    FaceOrthogonality { faces }
}

/// One failure of the opposite-face residual identity: basis polynomial
/// `basis_index`, faces normal to `axis`, and the (nonzero) difference of
/// the plus- and minus-face residuals.
#[derive(Debug, Clone)]
pub struct IdentityFailure {
    pub axis: Axis,
    pub basis_index: usize,
    pub residual_difference: Poly2,
}

/// Outcome of [`check_opposite_face_identity`].
#[derive(Debug, Clone)]
pub struct OppositeFaceIdentity {
    pub failures: Vec<IdentityFailure>,
}

impl OppositeFaceIdentity {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify exactly, for each axis and each of the 14 basis polynomials w,
/// that
///     w|_(axis,+) - interp_(axis,+)(w)  =  w|_(axis,-) - interp_(axis,-)(w)
/// as polynomials in the tangential coordinates, using the family's face
/// interpolation spaces.
pub fn check_opposite_face_identity(def: &ElementDef) -> OppositeFaceIdentity {
    let mut failures = Vec::new();
    for axis in Axis::ALL {
        let plus = face_interp_space(
            def.family,
            Face {
                axis,
                side: crate::poly::Side::Plus,
            },
        );
        let minus = face_interp_space(
            def.family,
            Face {
                axis,
                side: crate::poly::Side::Minus,
            },
        );
        for (j, w) in def.basis.iter().enumerate() {
            let tp = w.restrict_face(axis, crate::poly::Side::Plus);
            let tm = w.restrict_face(axis, crate::poly::Side::Minus);
            let rp = tp.sub(&plus.interpolate_trace(&tp));
            let rm = tm.sub(&minus.interpolate_trace(&tm));
            let diff = rp.sub(&rm);
            if !diff.is_zero() {
                failures.push(IdentityFailure {
                    axis,
                    basis_index: j,
                    residual_difference: diff,
                });
            }
        }
    }
    OppositeFaceIdentity { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{build_basis, lookup, DofKind};
    use crate::poly::{rat, Side};

    #[test]
    fn orthogonality_holds_for_centroid_types() {
        for name in ["sk1", "sk2", "sk5", "new"] {
            let def = build_basis(lookup(name).unwrap(), DofKind::FaceCentroidValue).unwrap();
            let report = check_face_orthogonality(&def);
            assert!(report.holds(), "{}: {:?}", name, report);
        }
    }

    #[test]
    fn orthogonality_holds_for_all_integral_types() {
        for name in ["sk1", "sk2", "sk5", "sk6", "new"] {
            let def = build_basis(lookup(name).unwrap(), DofKind::FaceIntegralAverage).unwrap();
            assert!(check_face_orthogonality(&def).holds(), "{}", name);
        }
    }

    #[test]
    fn orthogonality_fails_for_sk6_centroid_with_published_witness() {
        let def = build_basis(lookup("sk6").unwrap(), DofKind::FaceCentroidValue).unwrap();
        let report = check_face_orthogonality(&def);
        assert!(!report.holds());
        // Every face fails, and on x1+ the deterministic witness is
        // x1*x2^2*x3^2 - x2^2 with integral -8/9.
        for verdict in &report.faces {
            assert!(!verdict.holds, "{}", verdict.face);
        }
        let x1p = &report.faces[1];
        assert_eq!(
            x1p.face,
            Face {
                axis: Axis::X1,
                side: Side::Plus
            }
        );
        let (witness, integral) = x1p.witness.as_ref().unwrap();
        assert_eq!(witness.to_string(), "-x2^2 + x1*x2^2*x3^2");
        assert_eq!(integral, &rat(-8, 9));
    }

    #[test]
    fn witnesses_satisfy_their_constraints() {
        let def = build_basis(lookup("sk6").unwrap(), DofKind::FaceCentroidValue).unwrap();
        for verdict in check_face_orthogonality(&def).faces {
            let (witness, integral) = verdict.witness.unwrap();
            for j in 0..4 {
                assert!(witness.eval(&face_vertex(verdict.face, j)).is_zero());
            }
            assert!(dof_apply(
                def.dof_kind,
                ReferenceNode::FaceCenter(verdict.face),
                &witness
            )
            .is_zero());
            assert_eq!(
                witness
                    .restrict_face(verdict.face.axis, verdict.face.side)
                    .integrate(),
                integral
            );
        }
    }

    #[test]
    fn identity_holds_where_expected() {
        for name in ["sk1", "sk2", "sk6", "new"] {
            let def = build_basis(lookup(name).unwrap(), DofKind::FaceCentroidValue).unwrap();
            let report = check_opposite_face_identity(&def);
            assert!(
                report.holds(),
                "{}: first failure {:?}",
                name,
                report.failures.first()
            );
        }
    }

    #[test]
    fn identity_fails_for_sk5_mixed_parity() {
        // The mixed-parity augmenters make the opposite-face trace jumps
        // span a 6-dimensional space; no 5-point interpolation can absorb
        // them, so the identity genuinely fails for this member.
        let def = build_basis(lookup("sk5").unwrap(), DofKind::FaceCentroidValue).unwrap();
        let report = check_opposite_face_identity(&def);
        assert!(!report.holds());
        // Residual differences all lie in span{a^2 - b^2} on their faces.
        for failure in &report.failures {
            let d = &failure.residual_difference;
            let c = d.coeff([2, 0]);
            let expected =
                Poly2::term(d.face(), c.clone(), [2, 0]).sub(&Poly2::term(d.face(), c, [0, 2]));
            assert!(d.coeffs_eq(&expected), "{:?} {}", failure.axis, d);
        }
    }

    #[test]
    fn sk5_augmenter_residuals_match_hand_computation() {
        // w = x1^2*x2 + x1*x2^2: residual on x1+ is (x2^2 - x3^2)/2 and on
        // x1- is -(x2^2 - x3^2)/2.
        let family = lookup("sk5").unwrap();
        let w = Poly3::monomial(2, 1, 0).add(&Poly3::monomial(1, 2, 0));
        let plus = face_interp_space(
            family,
            Face {
                axis: Axis::X1,
                side: Side::Plus,
            },
        );
        let minus = face_interp_space(
            family,
            Face {
                axis: Axis::X1,
                side: Side::Minus,
            },
        );
        let tp = w.restrict_face(Axis::X1, Side::Plus);
        let tm = w.restrict_face(Axis::X1, Side::Minus);
        let rp = tp.sub(&plus.interpolate_trace(&tp));
        let rm = tm.sub(&minus.interpolate_trace(&tm));
        assert_eq!(rp.to_string(), "1/2*x2^2 - 1/2*x3^2");
        assert_eq!(rm.to_string(), "-1/2*x2^2 + 1/2*x3^2");
    }

    #[test]
    fn sk6_needs_its_own_face_space() {
        // With sk1's quadratic enrichment the identity breaks on the
        // quintic augmenter; the registered a^2*b^2 enrichment repairs it.
        let sk1 = lookup("sk1").unwrap();
        let w = Poly3::monomial(1, 2, 2);
        let plus = face_interp_space(
            sk1,
            Face {
                axis: Axis::X1,
                side: Side::Plus,
            },
        );
        let minus = face_interp_space(
            sk1,
            Face {
                axis: Axis::X1,
                side: Side::Minus,
            },
        );
        let tp = w.restrict_face(Axis::X1, Side::Plus);
        let tm = w.restrict_face(Axis::X1, Side::Minus);
        let rp = tp.sub(&plus.interpolate_trace(&tp));
        let rm = tm.sub(&minus.interpolate_trace(&tm));
        assert!(!rp.sub(&rm).is_zero());
    }
}
