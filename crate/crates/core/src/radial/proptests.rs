use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::constructions::{HypersurfaceVariant, SignVector};
use crate::polyalg::{Monomial, OneForm, Polynomial, Rational};

/// A polynomial vanishing at 0: a linear part plus a few terms of degree 2 or 3.
fn germ(n: usize, linear: bool) -> impl Strategy<Value = Polynomial> {
    let lin = prop::collection::vec(if linear { -3i64..=3 } else { 0i64..=0 }, n);
    let exps = prop::collection::vec(0u32..=3, n).prop_filter("degree 2 or 3", |e| (2..=3).contains(&e.iter().sum::<u32>()));
    let higher = prop::collection::vec((exps, -3i64..=3), 0..4);
    (lin, higher).prop_map(move |(lin, higher)| {
        let mut p = Polynomial::zero(n);
        for (i, c) in lin.into_iter().enumerate() {
            p.add_term(Monomial::variable(n, i), Rational::from_integer(BigInt::from(c)));
        }
        for (e, c) in higher {
            p.add_term(Monomial::from_exponents(e), Rational::from_integer(BigInt::from(c)));
        }
        p
    })
}

fn one_form(n: usize) -> impl Strategy<Value = OneForm> {
    prop::collection::vec(germ(n, true), n).prop_map(|c| OneForm::new(c).unwrap())
}

fn exact() -> Engine {
    Engine::default().with_mode(EngineMode::Exact)
}

/// Skip instances that violate an isolation hypothesis; anything else fails.
macro_rules! hyp {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(RadialError::Isolation { .. }) | Err(RadialError::NotCertified { .. }) => {
                return Err(TestCaseError::reject("isolation hypothesis fails"))
            }
            Err(RadialError::Construction(crate::constructions::ConstructionError::FrameCheck(m))) => {
                return Err(TestCaseError::reject(m))
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    };
}

fn values(r: &RadialReport) -> Vec<i64> {
    r.values.iter().map(|v| v.value).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, max_global_rejects: 2000, ..ProptestConfig::default() })]

    #[test]
    fn corner_recursion(
        (_n, k, omega) in (2usize..=3).prop_flat_map(|n| (Just(n), 1..=n.min(2), one_form(n)))
    ) {
        let e = exact();
        let full = hyp!(radial_corner(&omega, k, &SignVector::all(k), &e));
        let prev = hyp!(radial_corner(&omega, k - 1, &SignVector::all(k - 1), &e));
        let restricted = restrict_to_hyperplane(&omega, k - 1).unwrap();
        let wall = hyp!(radial_corner(&restricted, k - 1, &SignVector::all(k - 1), &e));
        let (full, prev, wall) = (values(&full), values(&prev), values(&wall));
        for j in 0..prev.len() {
            prop_assert_eq!(full[2 * j] + full[2 * j + 1], prev[j] + wall[j], "eps' #{}", j);
        }
    }

    #[test]
    fn hypersurface_halves_add_up_and_frames_agree(f in germ(2, false), omega in one_form(2)) {
        let e = exact();
        let grad = hyp!(radial_hypersurface(&f, &omega, HypersurfaceVariant::GradP, &Target::ALL, &e));
        let form = hyp!(radial_hypersurface(&f, &omega, HypersurfaceVariant::FormP, &Target::ALL, &e));
        let [g, v, w] = ["grad f", "V(Omega)", "W"].map(|l| grad.index(l).unwrap());
        let vals = values(&grad);
        prop_assert_eq!(vals[1] + vals[2], v + w + g);
        prop_assert_eq!(vals[1] + vals[2], v + vals[0]);
        prop_assert_eq!(vals, values(&form));
    }

    #[test]
    fn curve_sign_conditions_add_up(
        fs in prop::collection::vec(germ(3, true), 2),
        gs in prop::collection::vec(germ(3, true), 2),
        omega in one_form(3),
    ) {
        let e = exact();
        let two = CurveSpec { fs: fs.clone(), gs: gs.clone(), omega: omega.clone() };
        let one = CurveSpec { fs, gs: gs[..1].to_vec(), omega };
        let c2 = values(&hyp!(radial_curve(&two, &SignVector::all(2), &e)));
        let c1 = values(&hyp!(radial_curve(&one, &SignVector::all(1), &e)));
        for j in 0..2 {
            prop_assert_eq!(c2[2 * j] + c2[2 * j + 1], 1 + c1[j]);
        }
    }

    #[test]
    fn slice_euler_characteristics_match_radial_indices(f in germ(2, false), g in germ(2, true)) {
        // chi(X cap {g = delta}) = 1 - Ind_Rad(sign(-delta) dg, X).
        let e = exact();
        for d in [DeltaSign::Positive, DeltaSign::Negative] {
            let slices = hyp!(euler_slice(&f, &g, HypersurfaceVariant::GradP, &Target::ALL, d, &e));
            let scaled = g.scale(&Rational::from_integer(BigInt::from(-d.sign())));
            let rad = hyp!(radial_hypersurface(&f, &OneForm::differential(&scaled), HypersurfaceVariant::GradP, &Target::ALL, &e));
            let want: Vec<i64> = values(&rad).iter().map(|r| 1 - r).collect();
            prop_assert_eq!(values(&slices), want);
        }
    }
}
