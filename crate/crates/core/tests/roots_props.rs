mod common;

use common::*;
use octopoly::roots::random_class_member;
use octopoly::{
    lmr_describe, lmr_sample, multiple_root, reduce_linear, rmr_classes, rmr_witness, roots,
    ConjClass, LmrKind, OPolynomial, Octonion, Rational, Scalar, Side,
};
use proptest::prelude::*;
use rand::SeedableRng;

/// `(ax + b)(x - λ)`, a quadratic with the known root `λ`.
fn quadratic() -> impl Strategy<Value = (OPolynomial<Rational>, Octonion<Rational>)> {
    (nonzero_coords(), coords(), coords()).prop_map(|(a, b, l)| {
        let alg = q();
        let lambda = oct(&alg, l);
        let f = poly(&alg, &[b, a]).mul(&x_minus(&lambda)).unwrap();
        (f, lambda)
    })
}

fn class_of(x: &Octonion<Rational>) -> ConjClass<Rational> {
    if x.is_central() {
        ConjClass::central(x.re())
    } else {
        ConjClass::new(x.trace(), x.norm())
    }
}

fn in_classes(classes: &[ConjClass<Rational>], x: &Octonion<Rational>) -> bool {
    classes.iter().any(|c| c.contains(x, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_agrees_on_the_class((f, _) in quadratic(), l in coords(), ds in prop::collection::vec(nonzero_coords(), 1..5)) {
        let alg = q();
        let lambda = oct(&alg, l);
        let red = reduce_linear(&f, &class_of(&lambda)).unwrap();
        for d in ds {
            let d = oct(&alg, d);
            let member = &(&d * &lambda) * &d.inverse().unwrap();
            prop_assert_eq!(f.eval(&member), &(&red.e * &member) + &red.g);
        }
    }

    #[test]
    fn isolated_roots_are_roots_of_their_class((f, lambda) in quadratic()) {
        let set = match roots(&f) {
            Ok(s) => s,
            Err(octopoly::Error::Unsupported(_)) => return Err(TestCaseError::reject("companion does not split")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for (root, class) in &set.isolated {
            prop_assert!(f.eval(root).is_exactly_zero());
            prop_assert!(class.contains(root, 0.0));
        }
        for class in &set.spherical {
            let red = reduce_linear(&f, class).unwrap();
            prop_assert!(red.e.is_exactly_zero() && red.g.is_exactly_zero());
        }
        let covered = set.isolated_roots().any(|r| *r == lambda)
            || set.spherical.iter().any(|c| c.contains(&lambda, 0.0));
        prop_assert!(covered);
    }

    #[test]
    fn right_multiple_roots_lie_in_rmr_classes((f, lambda) in quadratic(), c in nonzero_coords()) {
        let alg = q();
        let c = oct(&alg, c);
        let classes = rmr_classes(&f).unwrap();
        let class = class_of(&lambda);
        prop_assert!(in_classes(&classes, &lambda));
        match multiple_root(&f, &class, &c, Side::Right) {
            Ok(root) => {
                prop_assert!(f.scale_right(&c).unwrap().eval(&root).is_exactly_zero());
                prop_assert!(in_classes(&classes, &root));
            }
            Err(octopoly::Error::WholeClass) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn conjugates_of_roots_have_witnesses((f, lambda) in quadratic(), d in nonzero_coords(), seed in any::<u64>()) {
        let alg = q();
        let d = oct(&alg, d);
        let mu = &(&d * &lambda) * &d.inverse().unwrap();
        let c = rmr_witness(&f, &mu, seed).unwrap();
        prop_assert!(!c.norm().is_exactly_zero());
        prop_assert!(f.scale_right(&c).unwrap().eval(&mu).is_exactly_zero());
    }

    #[test]
    fn left_multiple_roots_lie_in_companion_classes((f, lambda) in quadratic(), c in nonzero_coords()) {
        let alg = q();
        let c = oct(&alg, c);
        let companion = f.companion().unwrap();
        match multiple_root(&f, &class_of(&lambda), &c, Side::Left) {
            Ok(root) => {
                prop_assert!(f.scale_left(&c).unwrap().eval(&root).is_exactly_zero());
                prop_assert!(central_eval(companion.coeffs(), &root).is_exactly_zero());
            }
            Err(octopoly::Error::WholeClass) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn samples_match_the_direct_formula(seed in any::<u64>()) {
        let f = octopoly::parse_polynomial::<Rational>("x^2 + ix - ij + 1").unwrap();
        for d in lmr_describe(&f).unwrap() {
            if matches!(d.kind, LmrKind::WholeClass) {
                continue;
            }
            for s in lmr_sample(&d, 4, seed).unwrap() {
                prop_assert_eq!(&multiple_root(&f, &d.class, &s.c, Side::Left).unwrap(), &s.point);
                prop_assert!(f.scale_left(&s.c).unwrap().eval(&s.point).is_exactly_zero());
            }
        }
    }
}

#[test]
fn real_reduction_agrees_on_random_members() {
    let f = octopoly::parse_polynomial::<f64>("(1 + j)x^3 + ix^2 - kl x + 2 - l").unwrap();
    let alg = f.algebra().clone();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    for (t, n) in [(0.0, 1.0), (1.0, 3.0), (-2.0, 5.5)] {
        let class = ConjClass::new(t, n);
        let red = reduce_linear(&f, &class).unwrap();
        for _ in 0..100 {
            let lambda = random_class_member(&class, &alg, &mut rng).unwrap();
            let want = &(&red.e * &lambda) + &red.g;
            assert!((&f.eval(&lambda) - &want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }
}
