//! Dense linear-algebra model of the local algebra, used only to check the
//! standard-basis engine.
//!
//! `Q[x]/(I + m^N)` is computed as a quotient of the span of all monomials of
//! degree `< N`. Once its dimension is the same for `N` and `N + 1`,
//! Nakayama's lemma gives `m^N` inside the local ideal, so the truncated
//! quotient is the local algebra itself.

use std::collections::HashMap;

use num_traits::Zero;

use crate::polyalg::linalg::row_reduce;
use crate::polyalg::{Monomial, Polynomial, Rational};

pub struct DenseLocalAlgebra {
    pub dimension: usize,
    cols: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn monomials_below(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if bound > 0 {
        rec(n, bound - 1, &mut Vec::new(), &mut out);
    }
    out
}

impl DenseLocalAlgebra {
    pub fn at_truncation(gens: &[Polynomial], bound: u32) -> Self {
        let n = gens[0].nvars();
        let mut cols = monomials_below(n, bound);
        cols.sort_by(|a, b| b.local_cmp(a));
        let index: HashMap<Monomial, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            for b in &cols {
                let mut row = vec![Rational::zero(); cols.len()];
                let mut any = false;
                for (m, c) in g.terms() {
                    if let Some(&j) = index.get(&m.mul(b)) {
                        row[j] += c;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let order: Vec<usize> = (0..cols.len()).collect();
        let pivots = row_reduce(&mut rows, &order);
        let dimension = cols.len() - pivots.len();
        DenseLocalAlgebra { dimension, cols, index, rows, pivots }
    }

    /// Smallest certified truncation up to `max_bound`.
    pub fn new(gens: &[Polynomial], max_bound: u32) -> Option<Self> {
        let mut prev = Self::at_truncation(gens, 1);
        for bound in 2..=max_bound {
            let next = Self::at_truncation(gens, bound);
            if next.dimension == prev.dimension {
                return Some(prev);
            }
            prev = next;
        }
        None
    }

    pub fn quotient_basis(&self) -> Vec<Monomial> {
        (0..self.cols.len()).filter(|j| !self.pivots.contains(j)).map(|j| self.cols[j].clone()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let mut v = vec![Rational::zero(); self.cols.len()];
        for (m, c) in p.terms() {
            if let Some(&j) = self.index.get(m) {
                v[j] += c;
            }
        }
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        Polynomial::from_terms(p.nvars(), self.cols.iter().cloned().zip(v))
    }
}
