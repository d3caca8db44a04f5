//! Exact trivariate polynomial arithmetic over arbitrary-precision rationals.
//!
//! Everything in the symbolic layer is built from [`Poly3`] (a sparse
//! exponent-map polynomial in x1, x2, x3 on the reference cube) and
//! [`Poly2`] (its trace on a reference face). All operations are exact:
//! evaluation, differentiation, closed-form integration over boxes and
//! faces, and restriction to a face. No floating point enters this module.
//!
//! Term order is canonical (degree first, then descending lexicographic on
//! exponents), so printing and iteration are deterministic.

pub mod linalg;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar. Always in lowest terms with positive denominator
/// (guaranteed by `num`).
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for a small integer constant.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Coordinate axis on the reference cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X1,
    X2,
    X3,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X1, Axis::X2, Axis::X3];

    /// 0-based index of the axis.
    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 0,
            Axis::X2 => 1,
            Axis::X3 => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// The two axes tangential to a face normal to `self`, in increasing order.
    pub fn tangential(self) -> (Axis, Axis) {
        match self {
            Axis::X1 => (Axis::X2, Axis::X3),
            Axis::X2 => (Axis::X1, Axis::X3),
            Axis::X3 => (Axis::X1, Axis::X2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X1 => "x1",
            Axis::X2 => "x2",
            Axis::X3 => "x3",
        }
    }
}

/// Side of the reference cube along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Minus, Side::Plus];

    /// The substituted coordinate value, -1 or +1.
    pub fn sign(self) -> i64 {
        match self {
            Side::Minus => -1,
            Side::Plus => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Minus => "-",
            Side::Plus => "+",
        }
    }
}

/// One of the six faces of the reference cube, identified by its outward
/// normal axis and side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub axis: Axis,
    pub side: Side,
}

impl Face {
    pub const ALL: [Face; 6] = [
        Face {
            axis: Axis::X1,
            side: Side::Minus,
        },
        Face {
            axis: Axis::X1,
            side: Side::Plus,
        },
        Face {
            axis: Axis::X2,
            side: Side::Minus,
        },
        Face {
            axis: Axis::X2,
            side: Side::Plus,
        },
        Face {
            axis: Axis::X3,
            side: Side::Minus,
        },
        Face {
            axis: Axis::X3,
            side: Side::Plus,
        },
    ];

    /// Centroid of the face as a reference-cube point.
    pub fn centroid(self) -> [Rational; 3] {
        let mut c = [int(0), int(0), int(0)];
        c[self.axis.index()] = int(self.side.sign());
        c
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.axis.name(), self.side.symbol())
    }
}

/// Exponent triple with graded ordering: degree first, then descending
/// lexicographic, so that e.g. x2 sorts before x3 and x2^2 before x2*x3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exp3(pub [u8; 3]);

impl Exp3 {
    pub fn degree(self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Exp3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exp3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent pair with the same graded ordering as [`Exp3`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exp2(pub [u8; 2]);

impl Exp2 {
    pub fn degree(self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Exp2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn rat_pow(x: &Rational, e: u8) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Sparse trivariate polynomial with exact rational coefficients.
///
/// Invariant: no zero coefficients are stored; the empty map is the zero
/// polynomial. Immutable in use: all operations return new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<Exp3, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3 {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly3::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one() -> Self {
        Poly3::constant(Rational::one())
    }

    /// c * x1^e1 * x2^e2 * x3^e3
    pub fn term(c: Rational, exps: [u8; 3]) -> Self {
        let mut p = Poly3::zero();
        p.add_term(exps, c);
        p
    }

    /// The monomial x1^e1 * x2^e2 * x3^e3 with coefficient 1.
    pub fn monomial(e1: u8, e2: u8, e3: u8) -> Self {
        Poly3::term(Rational::one(), [e1, e2, e3])
    }

    /// The coordinate variable along `axis`.
    pub fn var(axis: Axis) -> Self {
        let mut exps = [0u8; 3];
        exps[axis.index()] = 1;
        Poly3::term(Rational::one(), exps)
    }

    fn add_term(&mut self, exps: [u8; 3], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(Exp3(exps)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&Exp3(exps));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly3) -> Poly3 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly3 {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Rational) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = [ea.0[0] + eb.0[0], ea.0[1] + eb.0[1], ea.0[2] + eb.0[2]];
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(&x[0], e.0[0]) * rat_pow(&x[1], e.0[1]) * rat_pow(&x[2], e.0[2]);
        }
        acc
    }

    /// Value at an f64 point, with coefficients rounded to f64.
    pub fn eval_f64(&self, x: [f64; 3]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            acc += rational_to_f64(c)
                * x[0].powi(e.0[0] as i32)
                * x[1].powi(e.0[1] as i32)
                * x[2].powi(e.0[2] as i32);
        }
        acc
    }

    /// Exact partial derivative along `axis`.
    pub fn derivative(&self, axis: Axis) -> Poly3 {
        let i = axis.index();
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut exps = e.0;
            exps[i] -= 1;
            out.add_term(exps, c * int(e.0[i] as i64));
        }
        out
    }

    /// Exact integral over the box [lo, hi].
    pub fn integrate_box(&self, lo: &[Rational; 3], hi: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..3 {
                let n = e.0[i] + 1;
                term *= (rat_pow(&hi[i], n) - rat_pow(&lo[i], n)) / int(n as i64);
            }
            acc += term;
        }
        acc
    }

    /// Substitute the coordinate along `axis` by ±1, producing the trace on
    /// that face as a bivariate polynomial in the remaining variables
    /// (in increasing axis order).
    pub fn restrict_face(&self, axis: Axis, side: Side) -> Poly2 {
        let face = Face { axis, side };
        let i = axis.index();
        let (ta, tb) = axis.tangential();
        let mut out = Poly2::zero(face);
        for (e, c) in &self.terms {
            // (±1)^e is ±1; only odd exponents flip sign on the minus side.
            let sign = if side == Side::Minus && e.0[i] % 2 == 1 {
                int(-1)
            } else {
                int(1)
            };
            out.add_term([e.0[ta.index()], e.0[tb.index()]], c * sign);
        }
        out
    }
}

/// Sparse bivariate polynomial: the trace of a [`Poly3`] on a reference
/// face, recorded together with the face it lives on. Its two variables are
/// the face's tangential axes in increasing order.
#[derive(Debug, Clone)]
pub struct Poly2 {
    terms: BTreeMap<Exp2, Rational>,
    face: Face,
}

impl Poly2 {
    pub fn zero(face: Face) -> Self {
        Poly2 {
            terms: BTreeMap::new(),
            face,
        }
    }

    pub fn constant(face: Face, c: Rational) -> Self {
        let mut p = Poly2::zero(face);
        p.add_term([0, 0], c);
        p
    }

    /// c * a^ea * b^eb in the face's tangential variables (a, b).
    pub fn term(face: Face, c: Rational, exps: [u8; 2]) -> Self {
        let mut p = Poly2::zero(face);
        p.add_term(exps, c);
        p
    }

    pub fn face(&self) -> Face {
        self.face
    }

    fn add_term(&mut self, exps: [u8; 2], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(Exp2(exps)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&Exp2(exps));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp2, &Rational)> {
        self.terms.iter()
    }

    /// Leading exponent pair in the canonical order, if nonzero.
    pub fn leading_exp(&self) -> Option<Exp2> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exps: [u8; 2]) -> Rational {
        self.terms
            .get(&Exp2(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient-wise equality, ignoring which face each trace lives on.
    pub fn coeffs_eq(&self, other: &Poly2) -> bool {
        self.terms == other.terms
    }

    /// Coefficient-wise difference; the result keeps `self`'s face tag.
    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0, -c.clone());
        }
        out
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero(self.face);
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            face: self.face,
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(self.face);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term([ea.0[0] + eb.0[0], ea.0[1] + eb.0[1]], ca * cb);
            }
        }
        out
    }

    /// Exact value at a point (a, b) in the face's tangential coordinates.
    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rat_pow(a, e.0[0]) * rat_pow(b, e.0[1]);
        }
        acc
    }

    /// Exact integral over the reference face [-1,1]^2. Odd powers drop out;
    /// even powers contribute 2/(e+1) per variable.
    pub fn integrate(&self) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if e.0[0] % 2 == 1 || e.0[1] % 2 == 1 {
                continue;
            }
            acc += c * rat(2, e.0[0] as i64 + 1) * rat(2, e.0[1] as i64 + 1);
        }
        acc
    }
}

/// Round a rational to the nearest f64 (numerator/denominator division; the
/// coefficients occurring here are small, so this is a single fp division).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational representable as f64")
}

fn fmt_terms<E: Copy>(
    f: &mut fmt::Formatter<'_>,
    terms: Vec<(E, &Rational)>,
    mono: impl Fn(E) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (e, c)) in terms.iter().enumerate() {
        let m = mono(*e);
        let abs = c.abs();
        let coeff = if m.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            m.clone()
        } else {
            format!("{}*{}", abs, m)
        };
        if i == 0 {
            if c.is_negative() {
                write!(f, "-{}", coeff)?;
            } else {
                write!(f, "{}", coeff)?;
            }
        } else if c.is_negative() {
            write!(f, " - {}", coeff)?;
        } else {
            write!(f, " + {}", coeff)?;
        }
    }
    Ok(())
}

fn mono_string(names: &[&str], exps: &[u8]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{}^{}", name, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly3 {
    /// Sorted monomial sum, e.g. `-8/9 + x1^2*x2`. The format is stable and
    /// covered by golden tests; certificates embed it verbatim.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        fmt_terms(f, terms, |e: Exp3| mono_string(&["x1", "x2", "x3"], &e.0))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ta, tb) = self.face.axis.tangential();
        let names = [ta.name(), tb.name()];
        let terms: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        fmt_terms(f, terms, |e: Exp2| mono_string(&names, &e.0))
    }
}
