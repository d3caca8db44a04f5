//! The 14-node brick family as a strategy registry.
//!
//! Every family member shares the same skeleton — the ten quadratic
//! monomials plus four augmenting cubics/quintics, with one DOF per vertex
//! and per face — and differs only in its augmenting polynomials and in the
//! enriched bilinear space used for face interpolation. Each member is a
//! unit struct behind [`ElementFamily`]; [`lookup`] resolves the CLI name.

use crate::poly::{rat, Axis, Face, Poly2, Poly3, Side};

/// One member of the 14-node brick family.
pub trait ElementFamily: Sync {
    /// Name used on the command line and in reports ("sk1" ... "sk6", "new").
    fn name(&self) -> &'static str;

    /// The four polynomials augmenting the quadratic space, in the family's
    /// published order.
    fn augmenters(&self) -> [Poly3; 4];

    /// Generator of the enriched bilinear face-interpolation space on faces
    /// normal to `axis`: the space is span{1, a, b, ab, enrichment} in the
    /// face's tangential variables (a, b). Only meaningful for admissible
    /// members.
    fn face_enrichment(&self, axis: Axis) -> Poly2;
}

fn face_poly(axis: Axis, terms: &[(i64, [u8; 2])]) -> Poly2 {
    let face = Face {
        axis,
        side: Side::Plus,
    };
    let mut p = Poly2::zero(face);
    for &(c, e) in terms {
        p = p.add(&Poly2::term(face, rat(c, 1), e));
    }
    p
}

/// a^2 + b^2 in the tangential variables of `axis`.
fn symmetric_enrichment(axis: Axis) -> Poly2 {
    face_poly(axis, &[(1, [2, 0]), (1, [0, 2])])
}

/// Type 1: augmenters x1*x2*x3, x1^2*x2, x2^2*x3, x3^2*x1.
pub struct Sk1;

impl ElementFamily for Sk1 {
    fn name(&self) -> &'static str {
        "sk1"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(2, 1, 0),
            Poly3::monomial(0, 2, 1),
            Poly3::monomial(1, 0, 2),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        // Traces of the odd-parity members: x3^2 / x1^2 / x2^2.
        match axis {
            Axis::X1 => face_poly(axis, &[(1, [0, 2])]),
            Axis::X2 => face_poly(axis, &[(1, [2, 0])]),
            Axis::X3 => face_poly(axis, &[(1, [0, 2])]),
        }
    }
}

/// Type 2: augmenters x1*x2*x3, x1*x2^2, x2*x3^2, x3*x1^2.
pub struct Sk2;

impl ElementFamily for Sk2 {
    fn name(&self) -> &'static str {
        "sk2"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(1, 2, 0),
            Poly3::monomial(0, 1, 2),
            Poly3::monomial(2, 0, 1),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        match axis {
            Axis::X1 => face_poly(axis, &[(1, [2, 0])]), // x2^2
            Axis::X2 => face_poly(axis, &[(1, [0, 2])]), // x3^2
            Axis::X3 => face_poly(axis, &[(1, [2, 0])]), // x1^2
        }
    }
}

/// Type 3: augmenters x1*x2*x3, x1^3, x2^3, x3^3. Inadmissible with nodal
/// DOFs (xi^3 - xi vanishes at every node).
pub struct Sk3;

impl ElementFamily for Sk3 {
    fn name(&self) -> &'static str {
        "sk3"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(3, 0, 0),
            Poly3::monomial(0, 3, 0),
            Poly3::monomial(0, 0, 3),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        symmetric_enrichment(axis)
    }
}

/// Type 4: augmenters x1*x2*x3, x1^2*x2*x3, x1*x2^2*x3, x1*x2*x3^2.
/// Inadmissible: (x1^2 - 1)*x2*x3 vanishes at every node.
pub struct Sk4;

impl ElementFamily for Sk4 {
    fn name(&self) -> &'static str {
        "sk4"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(2, 1, 1),
            Poly3::monomial(1, 2, 1),
            Poly3::monomial(1, 1, 2),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        symmetric_enrichment(axis)
    }
}

/// Type 5: augmenters x1*x2*x3 and the pair sums x_i^2*x_j + x_i*x_j^2.
pub struct Sk5;

impl ElementFamily for Sk5 {
    fn name(&self) -> &'static str {
        "sk5"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(2, 1, 0).add(&Poly3::monomial(1, 2, 0)),
            Poly3::monomial(0, 2, 1).add(&Poly3::monomial(0, 1, 2)),
            Poly3::monomial(1, 0, 2).add(&Poly3::monomial(2, 0, 1)),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        symmetric_enrichment(axis)
    }
}

/// Type 6: augmenters x1*x2*x3 and the quintics x_i * (x_j * x_k)^2.
pub struct Sk6;

impl ElementFamily for Sk6 {
    fn name(&self) -> &'static str {
        "sk6"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(1, 2, 2),
            Poly3::monomial(2, 1, 2),
            Poly3::monomial(2, 2, 1),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        // The odd-parity quintic traces to a^2*b^2; the opposite-face
        // residual identity needs exactly that in the interpolation space
        // (the quadratic enrichments used by other members break it here).
        let _ = axis;
        face_poly(axis, &[(1, [2, 2])])
    }
}

/// The symmetrized-cubic member: augmenters x1*x2*x3 and
/// (1/2) * x_i * (x_j^2 + x_k^2).
pub struct New;

impl ElementFamily for New {
    fn name(&self) -> &'static str {
        "new"
    }

    fn augmenters(&self) -> [Poly3; 4] {
        let half = rat(1, 2);
        [
            Poly3::monomial(1, 1, 1),
            Poly3::monomial(1, 2, 0)
                .add(&Poly3::monomial(1, 0, 2))
                .scale(&half),
            Poly3::monomial(2, 1, 0)
                .add(&Poly3::monomial(0, 1, 2))
                .scale(&half),
            Poly3::monomial(2, 0, 1)
                .add(&Poly3::monomial(0, 2, 1))
                .scale(&half),
        ]
    }

    fn face_enrichment(&self, axis: Axis) -> Poly2 {
        symmetric_enrichment(axis)
    }
}

/// Every registered family member, in CLI-name order.
pub static REGISTRY: [&'static dyn ElementFamily; 7] = [&Sk1, &Sk2, &Sk3, &Sk4, &Sk5, &Sk6, &New];

/// The six classic members (the `verify` default).
pub static SMITH_KIDGER: [&'static dyn ElementFamily; 6] = [&Sk1, &Sk2, &Sk3, &Sk4, &Sk5, &Sk6];

/// The members with a nodal basis (either DOF kind).
pub static ADMISSIBLE: [&'static dyn ElementFamily; 5] = [&Sk1, &Sk2, &Sk5, &Sk6, &New];

/// Resolve a family by its CLI name.
pub fn lookup(name: &str) -> Option<&'static dyn ElementFamily> {
    REGISTRY.iter().copied().find(|f| f.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_resolve() {
        for f in REGISTRY {
            assert!(std::ptr::eq(lookup(f.name()).unwrap(), f));
        }
        assert!(lookup("sk7").is_none());
    }

    #[test]
    fn augmenter_degrees() {
        for f in REGISTRY {
            for a in f.augmenters() {
                assert!(a.degree() >= 3 && a.degree() <= 5, "{}: {}", f.name(), a);
            }
        }
    }

    #[test]
    fn augmenters_published_forms() {
        let rendered = |name: &str| -> Vec<String> {
            lookup(name)
                .unwrap()
                .augmenters()
                .iter()
                .map(|p| p.to_string())
                .collect()
        };
        assert_eq!(
            rendered("sk1"),
            ["x1*x2*x3", "x1^2*x2", "x2^2*x3", "x1*x3^2"]
        );
        assert_eq!(
            rendered("sk6"),
            ["x1*x2*x3", "x1*x2^2*x3^2", "x1^2*x2*x3^2", "x1^2*x2^2*x3"]
        );
        assert_eq!(
            rendered("new"),
            [
                "x1*x2*x3",
                "1/2*x1*x2^2 + 1/2*x1*x3^2",
                "1/2*x1^2*x2 + 1/2*x2*x3^2",
                "1/2*x1^2*x3 + 1/2*x2^2*x3"
            ]
        );
    }
}
