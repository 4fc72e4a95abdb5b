//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Row-echelon reduction in place. Returns the pivot column of each nonzero row.
/// Columns are scanned in the given order, so the caller controls which
/// columns become pivots.
pub fn row_reduce(rows: &mut Vec<Vec<Rational>>, column_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let order: Vec<usize> = (0..ncols).collect();
    row_reduce(&mut rows, &order).len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone() / a[c][c].clone();
            for j in c..n {
                let v = &factor * &a[c][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Solve `A x = b` for a possibly non-square `A`. Returns one solution if the
/// system is consistent (free variables set to zero).
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map(Vec::len).unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..=ncols).collect();
    let pivots = row_reduce(&mut rows, &order);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}
