//! Small exact linear algebra helpers over [`Rational`]. Matrices are
//! `Vec<Vec<Rational>>` in row-major order.

use num::{BigInt, Integer, One, Zero};

use crate::rational::Rational;

/// Reduce `m` to reduced row echelon form in place: pivots are 1, appear in
/// strictly increasing columns, and are the only nonzero entries in their
/// column. Zero rows are dropped. Returns the pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        if !lead.is_one() {
            for x in m[r].iter_mut() {
                *x = &*x / &lead;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let d = p * &f;
                    *x = &*x - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Basis of the solution space of `constraints · x = 0` in `cols` unknowns,
/// returned in reduced row echelon form.
pub(crate) fn nullspace(constraints: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = constraints.to_vec();
    let pivots = rref(&mut m);
    let is_pivot = {
        let mut v = vec![false; cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][f].clone();
        }
        basis.push(v);
    }
    rref(&mut basis);
    basis
}

/// Given linearly independent rows `basis` (d x n) and a functional `lam` on
/// their coordinate space (length d), return an RREF basis of
/// `{ c · basis : lam · c = 0 }`. Requires `lam != 0`; the result has d-1
/// rows.
pub(crate) fn cut_with_functional(
    basis: &[Vec<Rational>],
    lam: &[Rational],
) -> Vec<Vec<Rational>> {
    debug_assert_eq!(basis.len(), lam.len());
    debug_assert!(lam.iter().any(|x| !x.is_zero()));
    let coeff_basis = nullspace(&[lam.to_vec()], lam.len());
    let n = basis.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(coeff_basis.len());
    for c in &coeff_basis {
        let mut v = vec![Rational::zero(); n];
        for (ci, b) in c.iter().zip(basis) {
            if !ci.is_zero() {
                for (vj, bj) in v.iter_mut().zip(b) {
                    let d = ci * bj;
                    *vj = &*vj + &d;
                }
            }
        }
        out.push(v);
    }
    rref(&mut out);
    out
}

/// Inverse of a square matrix, or `None` when singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Scale each row to the smallest integer vector with the same direction
/// (clearing denominators, dividing by the gcd of numerators). Rows of zeros
/// map to zeros. Signs are preserved.
pub(crate) fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            let scaled: Vec<BigInt> = row.iter().map(|x| (x * &Rational::from(l.clone())).to_integer()).collect();
            let mut g = BigInt::zero();
            for x in &scaled {
                g = g.gcd(x);
            }
            if g.is_zero() || g.is_one() {
                scaled
            } else {
                scaled.into_iter().map(|x| x / &g).collect()
            }
        })
        .collect()
}

/// Solve `x · basis = v` for RREF `basis` (rows independent, pivot columns
/// known): returns the coordinates when `v` lies in the row space.
pub(crate) fn coordinates_in_rref(
    basis: &[Vec<Rational>],
    pivots: &[usize],
    v: &[Rational],
) -> Option<Vec<Rational>> {
    debug_assert_eq!(basis.len(), pivots.len());
    let coords: Vec<Rational> = pivots.iter().map(|&c| v[c].clone()).collect();
    let mut residual = v.to_vec();
    for (ci, row) in coords.iter().zip(basis) {
        if !ci.is_zero() {
            for (rj, bj) in residual.iter_mut().zip(row) {
                let d = ci * bj;
                *rj = &*rj - &d;
            }
        }
    }
    residual.iter().all(Zero::is_zero).then_some(coords)
}

/// Pivot columns of a matrix already in RREF.
pub(crate) fn rref_pivots(basis: &[Vec<Rational>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero RREF row"))
        .collect()
}

/// Normalize a nonzero rational vector to a canonical representative of its
/// line: divide by the first nonzero entry. Returns `None` for the zero
/// vector.
pub(crate) fn direction(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.iter().map(|x| x / &lead).collect())
}
