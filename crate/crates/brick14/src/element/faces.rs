//! Face interpolation: the enriched bilinear spaces attached to each face
//! and the five-point interpolation operator on them.
//!
//! On a face with tangential coordinates (a, b) the space is
//! span{1, a, b, ab, e} where e is the family's enrichment for that axis.
//! The operator matches values at the four face vertices and the face
//! center; it is realized through the bubble
//!     c = e - (bilinear interpolant of e),    bubble = c / c(0,0),
//! which vanishes at the vertices and equals one at the center, so the
//! nodal basis is q_j - bubble/4 at the vertices and the bubble itself at
//! the center. Unisolvence (c(0,0) != 0) is checked at construction.

use super::{ElementFamily, FACE_VERTEX_TANGENTIALS};
use crate::poly::{int, rat, Face, Poly2, Rational};
use num::Zero;

/// The five-dimensional interpolation space on one face, with its nodal
/// basis: entries 0..4 belong to the face vertices (in
/// [`FACE_VERTEX_TANGENTIALS`] order), entry 4 to the face center.
#[derive(Debug, Clone)]
pub struct FaceInterpSpace {
    pub face: Face,
    pub nodal_basis: [Poly2; 5],
}

/// The standard bilinear nodal function of face vertex `j` in tangential
/// coordinates: (1 + s_a a)(1 + s_b b)/4.
fn bilinear(face: Face, j: usize) -> Poly2 {
    let [sa, sb] = FACE_VERTEX_TANGENTIALS[j];
    let quarter = rat(1, 4);
    Poly2::constant(face, quarter.clone())
        .add(&Poly2::term(face, &quarter * int(sa as i64), [1, 0]))
        .add(&Poly2::term(face, &quarter * int(sb as i64), [0, 1]))
        .add(&Poly2::term(face, &quarter * int((sa * sb) as i64), [1, 1]))
}

/// Build the interpolation space for `family` on `face`.
///
/// Panics if the family's enrichment fails unisolvence at the face center;
/// all registered members satisfy it.
pub fn face_interp_space(family: &dyn ElementFamily, face: Face) -> FaceInterpSpace {
    let enrich = family.face_enrichment(face.axis);
    let mut c = enrich.clone();
    for j in 0..4 {
        let [sa, sb] = FACE_VERTEX_TANGENTIALS[j];
        let v = enrich.eval(&int(sa as i64), &int(sb as i64));
        c = c.sub(&bilinear(face, j).scale(&v));
    }
    let c0 = c.eval(&int(0), &int(0));
    assert!(
        !c0.is_zero(),
        "{}: face space on {} is not unisolvent at the five nodes",
        family.name(),
        face
    );
    let bubble = c.scale(&c0.recip());
    let quarter = rat(1, 4);
    let nodal = |j: usize| bilinear(face, j).sub(&bubble.scale(&quarter));
    FaceInterpSpace {
        face,
        nodal_basis: [nodal(0), nodal(1), nodal(2), nodal(3), bubble],
    }
}

impl FaceInterpSpace {
    /// The unique member of the space taking `values` at the four vertices
    /// and the center.
    pub fn interpolate(&self, values: &[Rational; 5]) -> Poly2 {
        let mut p = Poly2::zero(self.face);
        for (phi, v) in self.nodal_basis.iter().zip(values) {
            p = p.add(&phi.scale(v));
        }
        p
    }

    /// Interpolate the trace of a polynomial defined on the face.
    pub fn interpolate_trace(&self, t: &Poly2) -> Poly2 {
        let mut values = [int(0), int(0), int(0), int(0), int(0)];
        for (j, v) in values.iter_mut().take(4).enumerate() {
            let [sa, sb] = FACE_VERTEX_TANGENTIALS[j];
            *v = t.eval(&int(sa as i64), &int(sb as i64));
        }
        values[4] = t.eval(&int(0), &int(0));
        self.interpolate(&values)
    }
}
