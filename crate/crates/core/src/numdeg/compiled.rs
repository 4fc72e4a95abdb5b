//! Floating-point evaluation of polynomial fields and their Jacobians.

use crate::polyalg::{rational_to_f64, Polynomial, VectorField};

#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    terms: Vec<(Vec<u32>, f64)>,
    max_exp: u32,
}

impl CompiledPoly {
    pub(crate) fn new(p: &Polynomial) -> Self {
        let terms: Vec<(Vec<u32>, f64)> =
            p.terms().map(|(m, c)| (m.exponents().to_vec(), rational_to_f64(c))).collect();
        let max_exp = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0);
        CompiledPoly { terms, max_exp }
    }

    fn eval_with(&self, pows: &[Vec<f64>]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().enumerate().fold(*c, |acc, (i, &k)| if k == 0 { acc } else { acc * pows[i][k as usize] }))
            .sum()
    }

    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        self.eval_with(&powers(x, self.max_exp))
    }
}

fn powers(x: &[f64], max_exp: u32) -> Vec<Vec<f64>> {
    x.iter()
        .map(|&xi| {
            let mut v = Vec::with_capacity(max_exp as usize + 1);
            let mut acc = 1.0;
            for _ in 0..=max_exp {
                v.push(acc);
                acc *= xi;
            }
            v
        })
        .collect()
}

/// A vector field with its Jacobian, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) struct CompiledField {
    n: usize,
    comps: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
    max_exp: u32,
}

impl CompiledField {
    pub(crate) fn new(v: &VectorField) -> Self {
        let comps: Vec<CompiledPoly> = v.components().iter().map(CompiledPoly::new).collect();
        let jac: Vec<Vec<CompiledPoly>> =
            v.jacobian().iter().map(|row| row.iter().map(CompiledPoly::new).collect()).collect();
        let max_exp = comps.iter().map(|c| c.max_exp).max().unwrap_or(0);
        CompiledField { n: v.dim(), comps, jac, max_exp }
    }

    pub(crate) fn dim(&self) -> usize {
        self.n
    }

    pub(crate) fn eval(&self, x: &[f64]) -> Vec<f64> {
        let p = powers(x, self.max_exp);
        self.comps.iter().map(|c| c.eval_with(&p)).collect()
    }

    /// Value and Jacobian (row `i` holds the gradient of component `i`).
    pub(crate) fn eval_with_jacobian(&self, x: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let p = powers(x, self.max_exp);
        let v = self.comps.iter().map(|c| c.eval_with(&p)).collect();
        let j = self.jac.iter().map(|row| row.iter().map(|c| c.eval_with(&p)).collect()).collect();
        (v, j)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
