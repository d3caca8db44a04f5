//! Exact dense linear algebra over [`Rational`]: reduced row echelon form,
//! inversion with kernel extraction, and nullspace bases.
//!
//! Everything is deterministic: rows are scanned in order and the first
//! nonzero entry is taken as pivot (with exact arithmetic there is no
//! numerical reason to pick a larger one), so nullspace bases and kernel
//! witnesses come out the same on every run.

use super::Rational;
use num::Zero;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form, in place. Returns the pivot column of each
/// pivot row; the rank is the length of the returned vector.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &factor * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the nullspace {v : M v = 0}, one vector per free column, in
/// free-column order. Each vector has 1 in its free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut red = m.clone();
    let pivots = rref(&mut red);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::from_integer(1.into());
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Invert a square matrix, or return a nonzero kernel vector if singular.
pub fn invert(m: &Matrix) -> Result<Matrix, Vec<Rational>> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert requires a square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    let rank = pivots.iter().take_while(|&&c| c < n).count();
    if rank < n {
        let kernel = nullspace(m);
        return Err(kernel
            .into_iter()
            .next()
            .expect("singular matrix has a kernel"));
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix-vector product.
pub fn matvec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
