//! Standard bases for the anti-graded local order via Mora's tangent cone
//! algorithm, and unique normal forms in the finite local algebra.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LocalDegError;
use crate::polyalg::{Monomial, Polynomial, Rational, VectorField};

/// Local monomial order. Only the anti-graded lexicographic order is provided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LocalOrder {
    #[default]
    AntiGradedLex,
}

impl LocalOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            LocalOrder::AntiGradedLex => a.local_cmp(b),
        }
    }
}

/// Limits that turn a runaway computation into a typed error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardBasisLimits {
    pub degree_cap: u32,
    pub max_reductions: usize,
    pub max_basis_len: usize,
    pub max_coefficient_bits: u64,
}

impl Default for StandardBasisLimits {
    fn default() -> Self {
        StandardBasisLimits { degree_cap: 30, max_reductions: 50_000, max_basis_len: 400, max_coefficient_bits: 4096 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Key(Monomial);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.local_cmp(&other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial keyed by the local order: the leading term is the last entry
/// and the highest-degree term is the first.
#[derive(Clone, Debug, PartialEq)]
struct LPoly(BTreeMap<Key, Rational>);

impl LPoly {
    fn from_poly(p: &Polynomial) -> Self {
        LPoly(p.terms().map(|(m, c)| (Key(m.clone()), c.clone())).collect())
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.0.iter().map(|(k, c)| (k.0.clone(), c.clone())))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> (&Monomial, &Rational) {
        let (k, c) = self.0.iter().next_back().expect("nonzero");
        (&k.0, c)
    }

    fn degree(&self) -> u32 {
        self.0.keys().map(|k| k.0.degree()).max().unwrap_or(0)
    }

    fn ecart(&self) -> u32 {
        self.degree() - self.lead().0.degree()
    }

    /// Scale to integer coefficients with content 1 and a positive leading
    /// coefficient. Keeps coefficient growth in check during reduction.
    fn make_primitive(&mut self) {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for c in self.0.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.0.values() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        if self.lead().1.is_negative() {
            g = -g;
        }
        let f = Rational::new(l, g);
        if f.is_one() {
            return;
        }
        for c in self.0.values_mut() {
            *c *= &f;
        }
    }

    fn truncate(&mut self, bound: Option<u32>) {
        if let Some(b) = bound {
            self.0.retain(|k, _| k.0.degree() < b);
        }
    }

    /// `self -= c * m * g`, dropping terms of degree `>= bound` if given.
    fn sub_scaled(&mut self, c: &Rational, m: &Monomial, g: &LPoly, bound: Option<u32>) {
        use std::collections::btree_map::Entry;
        for (k, gc) in &g.0 {
            let mm = k.0.mul(m);
            if bound.is_some_and(|b| mm.degree() >= b) {
                continue;
            }
            let delta = c * gc;
            match self.0.entry(Key(mm)) {
                Entry::Vacant(v) => {
                    v.insert(-delta);
                }
                Entry::Occupied(mut o) => {
                    *o.get_mut() -= delta;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    /// `lead(g) | lead(self)`: cancel the leading term of `self` against `g`.
    fn reduce_lead(&mut self, g: &LPoly, bound: Option<u32>) {
        let (lm, lc) = self.lead();
        let (gm, gc) = g.lead();
        let q = gm.quotient_of(lm).expect("divisible");
        let c = lc / gc;
        self.sub_scaled(&c, &q, g, bound);
    }
}

struct Budget {
    limits: StandardBasisLimits,
    reductions: usize,
}

impl Budget {
    fn tick(&mut self, h: &LPoly) -> Result<(), LocalDegError> {
        self.reductions += 1;
        if self.reductions > self.limits.max_reductions {
            return Err(cap_reached(format!("more than {} reduction steps", self.limits.max_reductions)));
        }
        if h.degree() > self.limits.degree_cap {
            return Err(cap_reached(format!("intermediate degree exceeds {}", self.limits.degree_cap)));
        }
        let bits = h.0.values().map(|c| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0);
        if bits > self.limits.max_coefficient_bits {
            return Err(cap_reached(format!("coefficients exceed {} bits", self.limits.max_coefficient_bits)));
        }
        Ok(())
    }
}

fn cap_reached(what: String) -> LocalDegError {
    LocalDegError::NotAlgebraicallyIsolated { reason: format!("cap reached: {what}") }
}

/// Mora's weak normal form with ecart selection. With a `bound`, every
/// monomial of that degree is known to lie in the ideal and is dropped.
fn nf_mora(f: LPoly, basis: &[LPoly], bound: Option<u32>, budget: &mut Budget) -> Result<LPoly, LocalDegError> {
    let mut h = f;
    h.truncate(bound);
    let mut t: Vec<(LPoly, u32)> = basis.iter().map(|g| (g.clone(), g.ecart())).collect();
    while !h.is_zero() {
        let lm = h.lead().0.clone();
        let best = t
            .iter()
            .enumerate()
            .filter(|(_, (g, _))| g.lead().0.divides(&lm))
            .min_by_key(|(_, (_, e))| *e)
            .map(|(i, _)| i);
        let Some(i) = best else { break };
        let (g, ge) = t[i].clone();
        let he = h.ecart();
        if ge > he {
            t.push((h.clone(), he));
        }
        h.reduce_lead(&g, bound);
        if !h.is_zero() {
            h.make_primitive();
        }
        budget.tick(&h)?;
    }
    Ok(h)
}

/// A degree `N` with every monomial of degree `>= N` divisible by some lead,
/// once every variable has a pure power among the leads.
fn closing_degree(basis: &[LPoly], n: usize) -> Option<u32> {
    let mut caps = vec![None::<u32>; n];
    for g in basis {
        let m = g.lead().0;
        if m.is_one() {
            return Some(0);
        }
        if let Some((i, e)) = m.pure_power() {
            caps[i] = Some(caps[i].map_or(e, |c| c.min(e)));
        }
    }
    caps.into_iter().try_fold(1u32, |acc, c| c.map(|e| acc + e - 1))
}

fn spoly(f: &LPoly, g: &LPoly) -> LPoly {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let mut s = LPoly(BTreeMap::new());
    s.sub_scaled(&(-Rational::one() / fc), &fm.quotient_of(&l).expect("lcm"), f, None);
    s.sub_scaled(&(Rational::one() / gc), &gm.quotient_of(&l).expect("lcm"), g, None);
    s
}

/// Finite local algebra `Q[x]_(x) / I` with its standard basis and monomial basis.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    generators: VectorField,
    order: LocalOrder,
    standard_basis: Vec<Polynomial>,
    sb: Vec<LPoly>,
    quotient_basis: Vec<Monomial>,
    /// Every monomial of degree `>= truncation` lies in the ideal.
    truncation: u32,
}

impl LocalAlgebra {
    pub fn generators(&self) -> &VectorField {
        &self.generators
    }

    pub fn order(&self) -> LocalOrder {
        self.order
    }

    pub fn standard_basis(&self) -> &[Polynomial] {
        &self.standard_basis
    }

    /// Standard monomials, largest in the local order first (so `1` leads).
    pub fn quotient_basis(&self) -> &[Monomial] {
        &self.quotient_basis
    }

    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.generators.dim()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sb.iter().map(|g| g.lead().0.clone()).collect()
    }

    /// The unique representative of `p` supported on the quotient basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.normal_form_l(LPoly::from_poly(p)).to_poly(self.nvars())
    }

    fn normal_form_l(&self, p: LPoly) -> LPoly {
        let n = self.truncation;
        let mut h = LPoly(p.0.into_iter().filter(|(k, _)| k.0.degree() < n).collect());
        // Eliminate the largest reducible term until none is left. New terms
        // are strictly smaller than the one removed, so this terminates.
        let mut upper: Option<Key> = None;
        loop {
            let hit = h
                .0
                .iter()
                .rev()
                .filter(|(k, _)| upper.as_ref().map_or(true, |u| *k < u))
                .find_map(|(k, c)| {
                    self.sb.iter().find(|g| g.lead().0.divides(&k.0)).map(|g| (k.clone(), c.clone(), g))
                });
            let Some((k, c, g)) = hit else { break };
            let (gm, gc) = g.lead();
            let q = gm.quotient_of(&k.0).expect("divisible");
            h.sub_scaled(&(c / gc), &q, g, Some(n));
            upper = Some(k);
        }
        h
    }

    /// Coordinates of `normal_form(p)` in the quotient basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Rational> {
        let nf = self.normal_form(p);
        self.quotient_basis.iter().map(|m| nf.coeff(m)).collect()
    }

    /// Normal forms of all products `b_i * b_j`, memoized over monomials.
    pub fn product_normal_forms(&self) -> Vec<Vec<Polynomial>> {
        let mut memo: HashMap<Monomial, Polynomial> = HashMap::new();
        let d = self.dimension();
        let mut out = vec![vec![Polynomial::zero(self.nvars()); d]; d];
        for i in 0..d {
            for j in i..d {
                let m = self.quotient_basis[i].mul(&self.quotient_basis[j]);
                let nf = memo.entry(m.clone()).or_insert_with(|| self.normal_form(&Polynomial::term(Rational::one(), m)));
                out[i][j] = nf.clone();
                out[j][i] = nf.clone();
            }
        }
        out
    }
}

/// Compute a standard basis of the ideal generated by the components of `ideal`
/// and the monomial basis of the local quotient.
pub fn standard_basis(ideal: &VectorField, order: LocalOrder) -> Result<LocalAlgebra, LocalDegError> {
    standard_basis_with_limits(ideal, order, StandardBasisLimits::default())
}

pub fn standard_basis_with_limits(
    ideal: &VectorField,
    order: LocalOrder,
    limits: StandardBasisLimits,
) -> Result<LocalAlgebra, LocalDegError> {
    let n = ideal.dim();
    if let Some(i) = ideal.components().iter().position(|c| !c.constant_term().is_zero()) {
        return Err(LocalDegError::NonZeroAtOrigin { component: i });
    }
    if ideal.max_degree() > limits.degree_cap {
        return Err(cap_reached(format!("input degree exceeds {}", limits.degree_cap)));
    }
    let mut budget = Budget { limits, reductions: 0 };
    let mut basis: Vec<LPoly> = Vec::new();
    for c in ideal.components() {
        let h = nf_mora(LPoly::from_poly(c), &basis, None, &mut budget)?;
        if !h.is_zero() {
            basis.push(h);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // Lowest lcm degree first.
        let pos = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| basis[i].lead().0.lcm(basis[j].lead().0).degree())
            .map(|(p, _)| p)
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        let s = spoly(&basis[i], &basis[j]);
        let h = nf_mora(s, &basis, closing_degree(&basis, n), &mut budget)?;
        if h.is_zero() {
            continue;
        }
        if basis.len() >= limits.max_basis_len {
            return Err(cap_reached(format!("standard basis longer than {}", limits.max_basis_len)));
        }
        let k = basis.len();
        basis.push(h);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    let basis = interreduce_leads(basis);
    let leads: Vec<Monomial> = basis.iter().map(|g| g.lead().0.clone()).collect();

    // Finite codimension iff every variable has a pure power among the leads.
    let mut caps = vec![u32::MAX; n];
    for m in &leads {
        if m.is_one() {
            // Unit ideal: the local algebra is zero.
            caps.iter_mut().for_each(|c| *c = 0);
        } else if let Some((i, e)) = m.pure_power() {
            caps[i] = caps[i].min(e);
        }
    }
    if let Some(i) = caps.iter().position(|&c| c == u32::MAX) {
        return Err(LocalDegError::NotAlgebraicallyIsolated {
            reason: format!("no power of x{} lies in the leading ideal", i + 1),
        });
    }
    let mut quotient_basis = Vec::new();
    enumerate_box(&caps, &mut vec![0; n], 0, &mut |e| {
        let m = Monomial::from_exponents(e.to_vec());
        if !leads.iter().any(|l| l.divides(&m)) {
            quotient_basis.push(m);
        }
    });
    quotient_basis.sort_by(|a, b| b.local_cmp(a));
    let truncation = quotient_basis.iter().map(Monomial::degree).max().map_or(0, |d| d + 1);
    Ok(LocalAlgebra {
        generators: ideal.clone(),
        order,
        standard_basis: basis.iter().map(|g| g.to_poly(n)).collect(),
        sb: basis,
        quotient_basis,
        truncation,
    })
}

/// Drop elements whose leading monomial is divisible by another's.
fn interreduce_leads(mut basis: Vec<LPoly>) -> Vec<LPoly> {
    basis.sort_by(|a, b| a.lead().0.degree().cmp(&b.lead().0.degree()).then_with(|| a.ecart().cmp(&b.ecart())));
    let mut kept: Vec<LPoly> = Vec::new();
    for g in basis {
        if !kept.iter().any(|k| k.lead().0.divides(g.lead().0)) {
            kept.push(g);
        }
    }
    kept
}

fn enumerate_box(caps: &[u32], cur: &mut Vec<u32>, i: usize, f: &mut impl FnMut(&[u32])) {
    if i == caps.len() {
        f(cur);
        return;
    }
    for e in 0..caps[i] {
        cur[i] = e;
        enumerate_box(caps, cur, i + 1, f);
    }
    cur[i] = 0;
}
