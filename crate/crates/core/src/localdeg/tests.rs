use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::DenseLocalAlgebra;
use super::*;
use crate::polyalg::parse_polynomial;

fn field(src: &[&str]) -> VectorField {
    let n = src.len();
    VectorField::new(src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap()
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn diag(d: &[i64]) -> Vec<Vec<Rational>> {
    (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { q(d[i]) } else { q(0) }).collect()).collect()
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> VectorField {
    let comps = (0..n)
        .map(|_| {
            let mut p = Polynomial::zero(n);
            for _ in 0..rng.gen_range(1..=4) {
                let mut e = vec![0u32; n];
                let d = rng.gen_range(1..=max_deg);
                for _ in 0..d {
                    e[rng.gen_range(0..n)] += 1;
                }
                p.add_term(Monomial::from_exponents(e), q(rng.gen_range(-3..=3)));
            }
            p
        })
        .collect();
    VectorField::new(comps).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..6 {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
        p.add_term(Monomial::from_exponents(e), Rational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))));
    }
    p
}

#[test]
fn signature_examples() {
    assert_eq!(signature(&diag(&[1, 1, 1])).unwrap(), 3);
    assert_eq!(signature(&diag(&[1, -1])).unwrap(), 0);
    let hyperbolic = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
    assert_eq!(signature(&hyperbolic).unwrap(), 0);
    assert_eq!(signature(&diag(&[1, 0])), Err(LocalDegError::SingularMatrix));
    let asym = vec![vec![q(0), q(1)], vec![q(2), q(0)]];
    assert_eq!(signature(&asym), Err(LocalDegError::NotSymmetric));
    // Zero diagonal with a negative pairing.
    let m = vec![vec![q(0), q(-2), q(0)], vec![q(-2), q(0), q(0)], vec![q(0), q(0), q(-5)]];
    assert_eq!(signature(&m).unwrap(), -1);
}

#[test]
fn signature_is_congruence_invariant() {
    // P^T D P has the signature of D for invertible P.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let d: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..4) } else { -rng.gen_range(1..4) }).collect();
        let want: i64 = d.iter().map(|x| x.signum()).sum();
        let p: Vec<Vec<Rational>> = loop {
            let p: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
            if !crate::polyalg::linalg::determinant(&p).is_zero() {
                break p;
            }
        };
        let mut m = vec![vec![q(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m[i][j] += &p[k][i] * &p[k][j] * q(d[k]);
                }
            }
        }
        assert_eq!(signature(&m).unwrap(), want);
    }
}

#[test]
fn maximal_ideal() {
    let a = standard_basis(&field(&["x1", "x2"]), LocalOrder::AntiGradedLex).unwrap();
    assert_eq!(a.dimension(), 1);
    assert_eq!(a.quotient_basis(), &[Monomial::one(2)]);
}

#[test]
fn two_dimensional_quotient_matches_oracle() {
    let v = field(&["x1 - x2", "x2^2 + x1*x2"]);
    let a = standard_basis(&v, LocalOrder::AntiGradedLex).unwrap();
    assert_eq!(a.dimension(), 2);
    assert_eq!(a.quotient_basis(), &[Monomial::one(2), Monomial::variable(2, 1)]);
    let dense = DenseLocalAlgebra::new(v.components(), 8).unwrap();
    assert_eq!(dense.dimension, 2);
    let x1x2 = parse_polynomial("x1*x2", 2).unwrap();
    assert_eq!(a.normal_form(&x1x2), dense.normal_form(&x1x2));
    for g in v.components() {
        assert!(a.normal_form(g).is_zero());
    }
    for b in a.quotient_basis() {
        let p = Polynomial::term(q(1), b.clone());
        assert_eq!(a.normal_form(&p), p);
    }
}

#[test]
fn visibly_non_isolated() {
    let err = standard_basis(&field(&["x1*x2", "x1^2"]), LocalOrder::AntiGradedLex).unwrap_err();
    assert!(matches!(err, LocalDegError::NotAlgebraicallyIsolated { .. }));
    assert!(matches!(elk_index(&field(&["x1*x2", "x1^2"])), Err(LocalDegError::NotAlgebraicallyIsolated { .. })));
}

#[test]
fn degree_cap_is_reported() {
    let limits = StandardBasisLimits { degree_cap: 2, ..Default::default() };
    let err = standard_basis_with_limits(&field(&["x1^3 + x2^2", "x1*x2"]), LocalOrder::AntiGradedLex, limits)
        .unwrap_err();
    match err {
        LocalDegError::NotAlgebraicallyIsolated { reason } => assert!(reason.contains("cap reached")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn elk_examples() {
    for n in 1..=4 {
        let v = VectorField::identity(n);
        assert_eq!(elk_index(&v).unwrap().value, 1);
    }
    assert_eq!(elk_index(&field(&["x1", "-x2"])).unwrap().value, -1);
    // Corner fields of the first two-variable form.
    assert_eq!(elk_index(&field(&["x1 - x2", "x2*(x2^2 + x1*x2)"])).unwrap().value, 1);
    assert_eq!(elk_index(&field(&["x1*(x1 - x2)", "x2*(x2^2 + x1*x2)"])).unwrap().value, 0);
    // z^3 as a real map has degree 3, conj(z)^2 has degree -2.
    assert_eq!(elk_index(&field(&["x1^3 - 3*x1*x2^2", "3*x1^2*x2 - x2^3"])).unwrap().value, 3);
    assert_eq!(elk_index(&field(&["x1^2 - x2^2", "-2*x1*x2"])).unwrap().value, -2);
    let r = elk_index(&field(&["x1^2 + x2", "x2 + 1"])).unwrap();
    assert_eq!((r.value, r.algebra_dimension), (0, Some(0)));
}

#[test]
fn exact_index_bounded_by_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let v = random_field(&mut rng, 2, 3);
        if let Ok(r) = elk_index(&v) {
            assert!(r.value.unsigned_abs() as usize <= r.algebra_dimension.unwrap());
        }
    }
}

#[test]
fn standard_basis_agrees_with_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut compared = 0;
    for trial in 0..120 {
        let n = if trial % 3 == 0 { 3 } else { 2 };
        let v = random_field(&mut rng, n, 3);
        let Some(dense) = DenseLocalAlgebra::new(v.components(), if n == 2 { 12 } else { 7 }) else { continue };
        let a = match standard_basis(&v, LocalOrder::AntiGradedLex) {
            Ok(a) => a,
            Err(e) => panic!("oracle certified a finite algebra but the engine failed: {v} {e}"),
        };
        assert_eq!(a.dimension(), dense.dimension, "{v}");
        assert_eq!(a.quotient_basis(), dense.quotient_basis().as_slice(), "{v}");
        for _ in 0..4 {
            let p = random_poly(&mut rng, n, 3);
            assert_eq!(a.normal_form(&p), dense.normal_form(&p), "{v} / {p}");
        }
        compared += 1;
    }
    assert!(compared >= 40, "only {compared} certified samples");
}

#[test]
fn index_is_independent_of_functional() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fields = vec![
        field(&["x1 - x2", "x2^2 + x1*x2"]),
        field(&["x1^3 - 3*x1*x2^2", "3*x1^2*x2 - x2^3"]),
        field(&["x1^2 - x2^2", "-2*x1*x2"]),
    ];
    while fields.len() < 8 {
        let v = random_field(&mut rng, 2, 3);
        if matches!(standard_basis(&v, LocalOrder::AntiGradedLex), Ok(a) if a.dimension() >= 3) {
            fields.push(v);
        }
    }
    for v in &fields {
        let a = standard_basis(v, LocalOrder::AntiGradedLex).unwrap();
        let want = elk_index(v).unwrap().value;
        let jac = jacobian_class(v, &a);
        let mut tried = 0;
        while tried < 12 {
            let mut phi: Vec<Rational> = (0..a.dimension()).map(|_| q(rng.gen_range(-5..=5))).collect();
            let s = apply(&phi, a.quotient_basis(), &jac);
            if s.is_zero() {
                continue;
            }
            if s.is_negative() {
                phi.iter_mut().for_each(|c| *c = -c.clone());
            }
            assert_eq!(elk_index_with_functional(v, &a, phi).unwrap().value, want, "{v}");
            tried += 1;
        }
    }
}

#[test]
fn reflection_flips_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for _ in 0..80 {
        let n = 2 + (checked % 2);
        let v = random_field(&mut rng, n, 3);
        let Ok(r) = elk_index(&v) else { continue };
        let i = rng.gen_range(0..n);
        let mut comps = v.components().to_vec();
        comps[i] = -&comps[i];
        let w = VectorField::new(comps).unwrap();
        assert_eq!(elk_index(&w).unwrap().value, -r.value, "{v}");
        checked += 1;
    }
    assert!(checked >= 20);
}
