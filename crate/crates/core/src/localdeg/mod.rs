//! Exact local degree of a polynomial vector field at the origin, as the
//! signature of the residue pairing on the local algebra.

mod standard;

#[cfg(test)]
pub(crate) mod oracle;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::polyalg::{Monomial, Polynomial, Rational, VectorField};

pub use standard::{standard_basis, standard_basis_with_limits, LocalAlgebra, LocalOrder, StandardBasisLimits};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalDegError {
    #[error("origin is not an algebraically isolated zero ({reason})")]
    NotAlgebraicallyIsolated { reason: String },
    #[error("component {component} does not vanish at the origin")]
    NonZeroAtOrigin { component: usize },
    #[error("degenerate residue pairing: {0}")]
    DegenerateForm(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// How an index was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexMethod {
    ExactElk,
    NumericWinding,
    NumericIntegral,
    NumericPreimage,
}

impl IndexMethod {
    pub fn is_exact(self) -> bool {
        self == IndexMethod::ExactElk
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IndexMethod::ExactElk => "exact-elk",
            IndexMethod::NumericWinding => "numeric-winding",
            IndexMethod::NumericIntegral => "numeric-integral",
            IndexMethod::NumericPreimage => "numeric-preimage",
        }
    }
}

/// An integer index with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexValue {
    pub value: i64,
    pub method: IndexMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl IndexValue {
    pub fn exact(value: i64, dimension: usize) -> Self {
        IndexValue { value, method: IndexMethod::ExactElk, algebra_dimension: Some(dimension), residual: None }
    }

    pub fn numeric(value: i64, method: IndexMethod, residual: f64) -> Self {
        IndexValue { value, method, algebra_dimension: None, residual: Some(residual) }
    }
}

/// The pairing `(b_i, b_j) -> phi(b_i * b_j)` on the quotient basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub gram: Vec<Vec<Rational>>,
    pub functional: Vec<Rational>,
}

impl BilinearForm {
    pub fn signature(&self) -> Result<i64, LocalDegError> {
        signature(&self.gram)
    }
}

/// Class of the Jacobian determinant in the local algebra.
pub fn jacobian_class(v: &VectorField, a: &LocalAlgebra) -> Polynomial {
    a.normal_form(&v.jacobian_determinant())
}

/// The default functional: coefficient of the largest quotient monomial (in
/// the local order) present in `jac`, signed so that it is positive on `jac`.
pub fn default_functional(a: &LocalAlgebra, jac: &Polynomial) -> Option<Vec<Rational>> {
    let pos = a.quotient_basis().iter().position(|m| !jac.coeff(m).is_zero())?;
    let mut phi = vec![Rational::zero(); a.dimension()];
    phi[pos] = if jac.coeff(&a.quotient_basis()[pos]).is_positive() { Rational::one() } else { -Rational::one() };
    Some(phi)
}

fn apply(phi: &[Rational], basis: &[Monomial], p: &Polynomial) -> Rational {
    basis.iter().zip(phi).filter(|(_, c)| !c.is_zero()).map(|(m, c)| c * p.coeff(m)).sum()
}

pub fn bilinear_form(a: &LocalAlgebra, functional: Vec<Rational>) -> BilinearForm {
    assert_eq!(functional.len(), a.dimension());
    let products = a.product_normal_forms();
    let gram = products
        .iter()
        .map(|row| row.iter().map(|p| apply(&functional, a.quotient_basis(), p)).collect())
        .collect();
    BilinearForm { gram, functional }
}

/// Index via an explicit functional; it must be positive on the Jacobian class.
pub fn elk_index_with_functional(
    v: &VectorField,
    a: &LocalAlgebra,
    functional: Vec<Rational>,
) -> Result<IndexValue, LocalDegError> {
    let jac = jacobian_class(v, a);
    if !apply(&functional, a.quotient_basis(), &jac).is_positive() {
        return Err(LocalDegError::DegenerateForm("functional is not positive on the Jacobian class".into()));
    }
    let form = bilinear_form(a, functional);
    let sig = form.signature().map_err(|e| LocalDegError::DegenerateForm(e.to_string()))?;
    Ok(IndexValue::exact(sig, a.dimension()))
}

/// Local degree of `v` at the origin. A field not vanishing at the origin has
/// index 0 and an empty local algebra.
pub fn elk_index(v: &VectorField) -> Result<IndexValue, LocalDegError> {
    elk_index_with_limits(v, StandardBasisLimits::default())
}

pub fn elk_index_with_limits(v: &VectorField, limits: StandardBasisLimits) -> Result<IndexValue, LocalDegError> {
    if !v.vanishes_at_origin() {
        return Ok(IndexValue::exact(0, 0));
    }
    let a = standard_basis_with_limits(v, LocalOrder::AntiGradedLex, limits)?;
    let jac = jacobian_class(v, &a);
    let phi = default_functional(&a, &jac)
        .ok_or_else(|| LocalDegError::DegenerateForm("Jacobian class is zero in the local algebra".into()))?;
    elk_index_with_functional(v, &a, phi)
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
pub fn signature(m: &[Vec<Rational>]) -> Result<i64, LocalDegError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(LocalDegError::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(LocalDegError::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut live: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !live.is_empty() {
        let p = match live.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // Zero diagonal: add row/column j to row/column i so a_ii becomes 2 a_ij.
                let Some((i, j)) = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero())
                else {
                    return Err(LocalDegError::SingularMatrix);
                };
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                live.iter().position(|&x| x == i).expect("live")
            }
        };
        let i = live.swap_remove(p);
        let d = a[i][i].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        for &r in &live {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] / &d;
            for &c in &live {
                let v = &f * &a[i][c];
                a[r][c] -= v;
            }
        }
        for &r in &live {
            a[r][i] = Rational::zero();
            a[i][r] = Rational::zero();
        }
    }
    Ok(sig)
}

#[cfg(test)]
mod tests;
