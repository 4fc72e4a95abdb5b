use std::fmt;

use super::{PolyError, Polynomial};

/// A polynomial map `R^n -> R^n`, stored by its components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    nvars: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    /// Build a field from `n` components in `n` variables.
    pub fn new(components: Vec<Polynomial>) -> Result<Self, PolyError> {
        let n = components.len();
        if n == 0 {
            return Err(PolyError::Empty("vector field needs at least one component"));
        }
        for c in &components {
            c.check_nvars(n)?;
        }
        Ok(VectorField { nvars: n, components })
    }

    pub fn identity(n: usize) -> Self {
        VectorField { nvars: n, components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    pub fn gradient(f: &Polynomial) -> Self {
        VectorField { nvars: f.nvars(), components: f.gradient() }
    }

    pub fn dim(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> VectorField {
        VectorField { nvars: self.nvars, components: self.components.iter().map(f).collect() }
    }

    /// Euclidean pairing `<self, other>` as a polynomial.
    pub fn dot(&self, other: &VectorField) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        self.components
            .iter()
            .zip(&other.components)
            .fold(Polynomial::zero(self.nvars), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.components.iter().map(|c| c.gradient()).collect()
    }

    pub fn jacobian_determinant(&self) -> Polynomial {
        poly_determinant(&self.jacobian(), self.nvars)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|c| c.constant_term() == num_traits::Zero::zero())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(x)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.components.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A polynomial 1-form `a1 dx1 + ... + an dxn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneForm(VectorField);

impl OneForm {
    pub fn new(coefficients: Vec<Polynomial>) -> Result<Self, PolyError> {
        VectorField::new(coefficients).map(OneForm)
    }

    pub fn differential(g: &Polynomial) -> Self {
        OneForm(VectorField::gradient(g))
    }

    /// `x1 dx1 + ... + xn dxn`, i.e. half of `d(rho)`.
    pub fn radial(n: usize) -> Self {
        OneForm(VectorField::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        self.0.components()
    }

    pub fn coefficient(&self, i: usize) -> &Polynomial {
        self.0.component(i)
    }

    /// The dual vector field `V(Omega) = (a1, ..., an)`.
    pub fn dual_field(&self) -> &VectorField {
        &self.0
    }
}

impl From<VectorField> for OneForm {
    fn from(v: VectorField) -> Self {
        OneForm(v)
    }
}

/// Determinant of a square matrix of polynomials in `nvars` variables.
///
/// Laplace expansion along rows, memoized over column subsets, so the cost is
/// `O(2^n * n)` polynomial products.
pub fn poly_determinant(rows: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    assert!(n <= 16, "determinant size {n} too large");
    for r in rows {
        assert_eq!(r.len(), n, "matrix must be square");
    }
    let mut minors: Vec<Option<Polynomial>> = vec![None; 1 << n];
    minors[0] = Some(Polynomial::one(nvars));
    for set in 1usize..(1 << n) {
        let k = set.count_ones() as usize;
        let row = &rows[k - 1];
        let mut acc = Polynomial::zero(nvars);
        let mut idx = 0;
        for j in 0..n {
            if set & (1 << j) == 0 {
                continue;
            }
            let entry = &row[j];
            let sub = minors[set & !(1 << j)].as_ref().expect("subset filled");
            if !entry.is_zero() && !sub.is_zero() {
                let term = entry * sub;
                if (k - 1 + idx) % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            idx += 1;
        }
        minors[set] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    fn field(src: &[&str]) -> VectorField {
        let n = src.len();
        VectorField::new(src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(field(&["x1", "x2"]).jacobian_determinant().to_string(), "1");
        assert_eq!(field(&["x1", "-x2"]).jacobian_determinant().to_string(), "-1");
        assert_eq!(
            field(&["x1 - x2", "x2^2 + x1*x2"]).jacobian_determinant(),
            parse_polynomial("x1 + 3*x2", 2).unwrap()
        );
    }

    #[test]
    fn determinant_matches_leibniz_on_3x3() {
        let n = 3;
        let e = |s: &str| parse_polynomial(s, n).unwrap();
        let rows = vec![
            vec![e("x1"), e("2"), e("x3^2")],
            vec![e("x2 + 1"), e("x1*x2"), e("-1")],
            vec![e("0"), e("x3"), e("x1 - x2")],
        ];
        // Leibniz over the six permutations.
        let perms = [([0, 1, 2], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];
        let mut expect = Polynomial::zero(n);
        for (p, s) in perms {
            let t = &(&rows[0][p[0]] * &rows[1][p[1]]) * &rows[2][p[2]];
            expect = if s > 0 { &expect + &t } else { &expect - &t };
        }
        assert_eq!(poly_determinant(&rows, n), expect);
    }
}
