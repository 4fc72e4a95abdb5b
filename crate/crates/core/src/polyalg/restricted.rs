//! Zeros of a 1-form restricted to a complete intersection `{f_1 = ... = f_k = 0}`.

use num_traits::{Signed, Zero};

use super::linalg;
use super::{poly_determinant, OneForm, PolyError, Polynomial, Rational, VectorField};

/// The minor `m_j` deciding whether a point is a zero of `omega` restricted
/// to `{f_1 = ... = f_k = 0}`: the `(k+1) x (k+1)` determinant whose first row
/// is `(a_1, ..., a_k, a_j)` and whose remaining rows are the partials of the
/// `f_i` in the same columns. `j` is zero-based and must satisfy `k <= j < n`.
pub fn restriction_minor(omega: &OneForm, fs: &[Polynomial], j: usize) -> Result<Polynomial, PolyError> {
    let n = omega.dim();
    let k = fs.len();
    if k == 0 {
        return Err(PolyError::Empty("restriction minors need at least one defining function"));
    }
    if k >= n {
        return Err(PolyError::Invalid(format!("need fewer than {n} defining functions, got {k}")));
    }
    if j < k || j >= n {
        return Err(PolyError::VariableOutOfRange { index: j, nvars: n });
    }
    for f in fs {
        f.check_nvars(n)?;
    }
    let cols: Vec<usize> = (0..k).chain(std::iter::once(j)).collect();
    let mut rows = Vec::with_capacity(k + 1);
    rows.push(cols.iter().map(|&c| omega.coefficient(c).clone()).collect());
    for f in fs {
        rows.push(cols.iter().map(|&c| f.partial(c)).collect());
    }
    Ok(poly_determinant(&rows, n))
}

/// All minors `m_{k+1}, ..., m_n`.
pub fn restriction_minors(omega: &OneForm, fs: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
    let k = fs.len();
    (k..omega.dim().max(k)).map(|j| restriction_minor(omega, fs, j)).collect()
}

/// The map `H(x, lambda) = (a_i + sum_j lambda_j df_j/dx_i ; f_1, ..., f_k)` in the
/// `n + k` variables `(x_1, ..., x_n, lambda_1, ..., lambda_k)`.
pub fn lagrange_zero_system(omega: &OneForm, fs: &[Polynomial]) -> Result<VectorField, PolyError> {
    let n = omega.dim();
    let k = fs.len();
    if k == 0 {
        return Err(PolyError::Empty("the Lagrange system needs at least one defining function"));
    }
    for f in fs {
        f.check_nvars(n)?;
    }
    let m = n + k;
    let lambdas: Vec<Polynomial> = (0..k).map(|j| Polynomial::var(m, n + j)).collect();
    let mut comps = Vec::with_capacity(m);
    for i in 0..n {
        let mut c = omega.coefficient(i).embed(m);
        for (f, l) in fs.iter().zip(&lambdas) {
            c = &c + &(l * &f.partial(i).embed(m));
        }
        comps.push(c);
    }
    comps.extend(fs.iter().map(|f| f.embed(m)));
    VectorField::new(comps)
}

fn check_point(n: usize, p: &[Rational]) -> Result<(), PolyError> {
    if p.len() != n {
        return Err(PolyError::DimensionMismatch { expected: n, found: p.len() });
    }
    Ok(())
}

/// Index of a non-degenerate zero `p` of `omega` restricted to `{f = 0}`,
/// computed from the minors. Needs `det(df_i/dx_j)_{i,j<=k}` nonzero at `p`.
pub fn restricted_index_minors(omega: &OneForm, fs: &[Polynomial], p: &[Rational]) -> Result<i32, PolyError> {
    let n = omega.dim();
    let k = fs.len();
    check_point(n, p)?;
    let minors = restriction_minors(omega, fs)?;
    let lead: Vec<Vec<Polynomial>> = fs.iter().map(|f| (0..k).map(|c| f.partial(c)).collect()).collect();
    let lead = poly_determinant(&lead, n).eval(p);
    if lead.is_zero() {
        return Err(PolyError::Invalid("leading k x k minor of DF vanishes at the point".into()));
    }
    let mut rows: Vec<Vec<Polynomial>> = fs.iter().map(|f| f.gradient()).collect();
    rows.extend(minors.iter().map(|m| m.gradient()));
    let jac = poly_determinant(&rows, n).eval(p);
    if jac.is_zero() {
        return Err(PolyError::Invalid("zero is degenerate".into()));
    }
    let mut s = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
    if lead.is_negative() && (n - k + 1) % 2 == 1 {
        s = -s;
    }
    if jac.is_negative() {
        s = -s;
    }
    Ok(s)
}

/// Index of a non-degenerate zero `p` of `omega` restricted to `{f = 0}`,
/// computed from the Lagrange system at the unique multiplier.
pub fn restricted_index_lagrange(omega: &OneForm, fs: &[Polynomial], p: &[Rational]) -> Result<i32, PolyError> {
    let n = omega.dim();
    let k = fs.len();
    check_point(n, p)?;
    let h = lagrange_zero_system(omega, fs)?;
    // a_i(p) + sum_j lambda_j df_j/dx_i(p) = 0
    let a: Vec<Vec<Rational>> = (0..n).map(|i| fs.iter().map(|f| f.partial(i).eval(p)).collect()).collect();
    let b: Vec<Rational> = (0..n).map(|i| -omega.coefficient(i).eval(p)).collect();
    let lambda = linalg::solve(&a, &b).ok_or_else(|| PolyError::Invalid("point is not a restricted zero".into()))?;
    let mut at: Vec<Rational> = p.to_vec();
    at.extend(lambda);
    if h.components().iter().any(|c| !c.eval(&at).is_zero()) {
        return Err(PolyError::Invalid("point is not a restricted zero".into()));
    }
    let dh: Vec<Vec<Rational>> = h.jacobian().iter().map(|r| r.iter().map(|e| e.eval(&at)).collect()).collect();
    let det = linalg::determinant(&dh);
    if det.is_zero() {
        return Err(PolyError::Invalid("zero is degenerate".into()));
    }
    let s = if det.is_negative() { -1 } else { 1 };
    Ok(if k % 2 == 0 { s } else { -s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn circle_height_function_indices() {
        // dx1 on the unit circle: a maximum at (1, 0), a minimum at (-1, 0).
        let omega = OneForm::new(vec![Polynomial::one(2), Polynomial::zero(2)]).unwrap();
        let f = parse_polynomial("x1^2 + x2^2 - 1", 2).unwrap();
        for (x, want) in [(1, -1), (-1, 1)] {
            let p = [q(x), q(0)];
            assert_eq!(restricted_index_minors(&omega, &[f.clone()], &p).unwrap(), want);
            assert_eq!(restricted_index_lagrange(&omega, &[f.clone()], &p).unwrap(), want);
        }
        assert!(restricted_index_lagrange(&omega, &[f], &[q(0), q(1)]).is_err());
    }

    #[test]
    fn minors_and_lagrange_agree_on_quadric_surface() {
        // Restrict x3 dx1 + x1 dx2 + (x2 + 1) dx3 style forms to a sphere in R^3 and
        // compare both sign rules at every rational zero found on a small grid.
        let n = 3;
        let f = parse_polynomial("x1^2 + x2^2 + x3^2 - 9", n).unwrap();
        let forms = [["1", "0", "0"], ["x2", "x1", "0"], ["x1 + 2*x3", "x2", "x3 - x1"]];
        let mut checked = 0;
        for src in forms {
            let omega = OneForm::new(src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap();
            for p in [[3, 0, 0], [-3, 0, 0], [0, 3, 0], [0, -3, 0], [0, 0, 3], [0, 0, -3], [1, 2, 2], [2, -1, 2]] {
                let p: Vec<Rational> = p.iter().map(|&v| q(v)).collect();
                let Ok(b) = restricted_index_lagrange(&omega, &[f.clone()], &p) else { continue };
                if f.partial(0).eval(&p).is_zero() {
                    continue;
                }
                assert_eq!(restricted_index_minors(&omega, &[f.clone()], &p).unwrap(), b);
                checked += 1;
            }
        }
        assert!(checked >= 2);
    }

    #[test]
    fn restriction_minor_examples() {
        let omega = OneForm::new(vec![parse_polynomial("x1*x2 + 1", 2).unwrap(), parse_polynomial("x2^3 - x1", 2).unwrap()])
            .unwrap();
        let f = parse_polynomial("x1", 2).unwrap();
        let m2 = restriction_minor(&omega, &[f], 1).unwrap();
        assert_eq!(m2, -omega.coefficient(1));

        let omega = OneForm::new(vec![parse_polynomial("x1 - x2", 2).unwrap(), parse_polynomial("x1", 2).unwrap()]).unwrap();
        let f = parse_polynomial("1/2*x1^2 - 1/2*x2^2", 2).unwrap();
        let m2 = restriction_minor(&omega, &[f.clone()], 1).unwrap();
        assert_eq!(m2, parse_polynomial("-x1*x2 + x2^2 - x1^2", 2).unwrap());
        assert!(restriction_minor(&omega, &[], 1).is_err());
        assert!(restriction_minor(&omega, &[f], 0).is_err());
    }

    #[test]
    fn lagrange_examples() {
        let omega = OneForm::new(vec![Polynomial::one(1)]).unwrap();
        let h = lagrange_zero_system(&omega, &[Polynomial::var(1, 0)]).unwrap();
        assert_eq!(h.to_string(), "(x2 + 1, x1)");

        let omega = OneForm::new(vec![parse_polynomial("x1 - x2", 2).unwrap(), parse_polynomial("x1", 2).unwrap()]).unwrap();
        let f = parse_polynomial("1/2*x1^2 - 1/2*x2^2", 2).unwrap();
        let h = lagrange_zero_system(&omega, &[f]).unwrap();
        let e = |s: &str| parse_polynomial(s, 3).unwrap();
        assert_eq!(h.components(), &[e("x1 - x2 + x3*x1"), e("x1 - x3*x2"), e("1/2*x1^2 - 1/2*x2^2")]);
        assert!(lagrange_zero_system(&omega, &[]).is_err());
    }
}
