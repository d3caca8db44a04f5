//! The six-DOF rotation interpolant on span{1, x1, x2, x3, x1^2 - x2^2,
//! x1^2 - x3^2}, with one point value per face center. Used as an internal
//! verification device: it reproduces affine functions exactly and its
//! face restrictions differ between opposite faces only by a constant.

use crate::poly::{rat, Face, Poly3, Rational};

/// Nodal function of the face center on `face`:
/// (1 ± 3*x_i + sum_{j != i} (x_i^2 - x_j^2)) / 6.
pub fn rotation_nodal(face: Face) -> Poly3 {
    let i = face.axis.index();
    let sign = face.side.sign();
    let mut exps = [0u8; 3];
    exps[i] = 1;
    let mut p = Poly3::one().add(&Poly3::term(rat(3 * sign, 1), exps));
    for j in 0..3 {
        if j == i {
            continue;
        }
        let mut sq_i = [0u8; 3];
        sq_i[i] = 2;
        let mut sq_j = [0u8; 3];
        sq_j[j] = 2;
        p = p
            .add(&Poly3::term(rat(1, 1), sq_i))
            .sub(&Poly3::term(rat(1, 1), sq_j));
    }
    p.scale(&rat(1, 6))
}

/// The six nodal functions in face order x1-, x1+, x2-, x2+, x3-, x3+.
pub fn rotation_basis() -> [Poly3; 6] {
    let mut out: Vec<Poly3> = Face::ALL.iter().map(|&f| rotation_nodal(f)).collect();
    [
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
    ]
}

/// The member of the rotation space taking the given values at the six
/// face centers (in face order x1-, x1+, x2-, x2+, x3-, x3+).
pub fn rotation_interpolant(values: &[Rational; 6]) -> Poly3 {
    rotation_basis()
        .iter()
        .zip(values)
        .fold(Poly3::zero(), |acc, (psi, v)| acc.add(&psi.scale(v)))
}
