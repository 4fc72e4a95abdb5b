//! Seeded random germs, and the branch-count versus index-formula comparison.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use radx_core::branches::{trace_branches, BranchError};
use radx_core::constructions::SignVector;
use radx_core::numdeg::OracleConfig;
use radx_core::polyalg::{Monomial, OneForm, Polynomial, Rational, VectorField};
use radx_core::radial::{radial_curve, radial_from_branches_on, CurveSpec, Engine, RadialError};

fn q(c: i64) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

/// `terms` random monomials of degree `lo..=hi` with coefficients in -3..=3.
pub fn sparse(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(lo..=hi) {
            e[rng.gen_range(0..n)] += 1;
        }
        p.add_term(Monomial::from_exponents(e), q(rng.gen_range(-3..=3)));
    }
    p
}

/// Every monomial of degree `d`, with coefficients in -3..=3.
pub fn dense(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Polynomial {
    fn fill(rng: &mut ChaCha8Rng, p: &mut Polynomial, e: &mut Vec<u32>, i: usize, left: u32) {
        if i + 1 == e.len() {
            e[i] = left;
            p.add_term(Monomial::from_exponents(e.clone()), q(rng.gen_range(-3..=3)));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            fill(rng, p, e, i + 1, left - k);
        }
    }
    let mut p = Polynomial::zero(n);
    fill(rng, &mut p, &mut vec![0; n], 0, d);
    p
}

/// A field vanishing at 0 with components of degree `1..=max_deg`.
pub fn field(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> VectorField {
    let comps = (0..n)
        .map(|_| {
            let terms = rng.gen_range(2..=4);
            sparse(rng, n, 1, max_deg, terms)
        })
        .collect();
    VectorField::new(comps).unwrap()
}

/// A form with a linear part and a few terms of degree up to 2.
pub fn form(rng: &mut ChaCha8Rng, n: usize) -> OneForm {
    OneForm::new((0..n).map(|_| &dense(rng, n, 1) + &sparse(rng, n, 2, 2, 2)).collect()).unwrap()
}

/// Curve germs in R^3: a generic pair of quadrics meets in zero, two or four
/// lines; a linear part of rank two gives one smooth branch.
pub fn curve_spec(rng: &mut ChaCha8Rng) -> CurveSpec {
    let smooth = rng.gen_bool(0.2);
    let fs = (0..2)
        .map(|_| {
            let lead = if smooth { dense(rng, 3, 1) } else { dense(rng, 3, 2) };
            &lead + &sparse(rng, 3, 3, 3, 2)
        })
        .collect();
    let k = rng.gen_range(0..=2);
    let gs = (0..k).map(|_| sparse(rng, 3, 1, 2, 3)).collect();
    let omega = OneForm::new((0..3).map(|_| &dense(rng, 3, 1) + &sparse(rng, 3, 0, 2, 2)).collect()).unwrap();
    CurveSpec { fs, gs, omega }
}

pub struct Concordance {
    pub rows: usize,
    pub half_branches: usize,
}

/// Compares `1 - #inbound` on every `C(eps)` with the index formulas, and the
/// branch and sign counts with `Ind I` and `Ind V(dg_j)`. `Ok(None)` when
/// either side cannot certify the instance.
pub fn concordance(spec: &CurveSpec) -> Result<Option<Concordance>, String> {
    let rep = match trace_branches(&spec.fs, &spec.omega, &spec.gs, &OracleConfig::default()) {
        Ok(r) => r,
        Err(BranchError::NotCertified(_) | BranchError::RankDrop { .. }) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let k = spec.gs.len();
    let eps = SignVector::all(k);
    let formula = match radial_curve(spec, &eps, &Engine::default()) {
        Ok(r) => r,
        Err(RadialError::Isolation { .. } | RadialError::NotCertified { .. }) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let ctx = || format!("F = {:?}, g = {:?}, omega = {:?}", spec.fs, spec.gs, spec.omega);
    for (e, v) in eps.iter().zip(&formula.values) {
        let b = radial_from_branches_on(&rep, e).map_err(|e| e.to_string())?;
        if b != v.value {
            return Err(format!("{}: branches give {b}, formula {} ({})", v.set, v.value, ctx()));
        }
    }
    let i = formula.index("I").expect("I is always computed");
    if rep.half_branch_count as i64 != 2 * i {
        return Err(format!("{} half-branches but Ind I = {i} ({})", rep.half_branch_count, ctx()));
    }
    for j in 0..k {
        let plus = rep.points.iter().filter(|p| p.signs[j] > 0).count() as i64;
        let minus = rep.half_branch_count as i64 - plus;
        let mut sel = vec![b'0'; k];
        sel[j] = b'1';
        let label = format!("V({})", String::from_utf8(sel).unwrap());
        let v = formula.index(&label).expect("every V(alpha) is computed");
        if plus - minus != 2 * v {
            return Err(format!("b+ - b- = {} but Ind {label} = {v} ({})", plus - minus, ctx()));
        }
    }
    Ok(Some(Concordance { rows: eps.len(), half_branches: rep.half_branch_count }))
}
