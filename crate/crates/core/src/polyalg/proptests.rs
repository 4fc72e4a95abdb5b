use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly(n: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), rational()), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive(p in poly(3, 3), q in poly(3, 3), r in poly(3, 2)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(3, 3), q in poly(3, 3), x in point(3)) {
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn mixed_partials_commute(p in poly(3, 4), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn jacobian_under_linear_change(
        cs in prop::collection::vec(poly(2, 2), 2),
        l in prop::collection::vec(-3i64..=3, 4),
    ) {
        // V(Lx) has Jacobian det(L) * (det DV)(Lx).
        let n = 2;
        let v = VectorField::new(cs).unwrap();
        let x = |i| Polynomial::var(n, i);
        let c = |k: usize| Rational::from_integer(BigInt::from(l[k]));
        let lx = vec![
            &x(0).scale(&c(0)) + &x(1).scale(&c(1)),
            &x(0).scale(&c(2)) + &x(1).scale(&c(3)),
        ];
        let det_l = c(0) * c(3) - c(1) * c(2);
        let composed = VectorField::new(v.components().iter().map(|p| p.compose(&lx).unwrap()).collect()).unwrap();
        let pulled = v.jacobian_determinant().compose(&lx).unwrap().scale(&det_l);
        prop_assert_eq!(composed.jacobian_determinant(), pulled);
    }

    #[test]
    fn display_reparses(p in poly(3, 3)) {
        prop_assert_eq!(parse_polynomial(&p.to_string(), 3).unwrap(), p);
    }
}
