mod common;

use common::*;
use octopoly::format::{octonion_from_json, octonion_json, octonion_to_text, poly_from_json, poly_json, poly_to_text};
use octopoly::{parse_octonion, parse_octonion_any, parse_polynomial, Octonion, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, prop_oneof![Just(1i64), 1i64..=50]).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn exact_element() -> impl Strategy<Value = Octonion<Rational>> {
    prop::array::uniform8(rational()).prop_map(|c| Octonion::new(&q(), c))
}

fn real_element() -> impl Strategy<Value = Octonion<f64>> {
    let coord = prop_oneof![
        Just(0.0),
        -1e6f64..1e6,
        -1.0f64..1.0,
        (-300i32..300).prop_map(|e| 1.5 * 10f64.powi(e)),
    ];
    prop::array::uniform8(coord).prop_map(octf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_text_round_trip(x in exact_element()) {
        prop_assert_eq!(parse_octonion(&octonion_to_text(&x), &q()).unwrap(), x);
    }

    #[test]
    fn exact_json_round_trip(x in exact_element()) {
        let v = octonion_json(&x);
        prop_assert_eq!(&octonion_from_json(&v, &q()).unwrap(), &x);
        prop_assert_eq!(parse_octonion_any(&v.to_string(), &q()).unwrap(), x);
    }

    #[test]
    fn real_text_round_trip(x in real_element()) {
        let y = parse_octonion(&octonion_to_text(&x), &r()).unwrap();
        prop_assert_eq!(y.coords(), x.coords());
    }

    #[test]
    fn real_json_round_trip(x in real_element()) {
        let v = octonion_json(&x);
        let y = octonion_from_json(&v, &r()).unwrap();
        prop_assert_eq!(y.coords(), x.coords());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_round_trips(cs in prop::collection::vec(prop::array::uniform8(rational()), 0..5)) {
        let alg = q();
        let f = octopoly::OPolynomial::new(&alg, cs.into_iter().map(|c| Octonion::new(&alg, c)).collect()).unwrap();
        prop_assert_eq!(&parse_polynomial::<Rational>(&poly_to_text(&f)).unwrap(), &f);
        prop_assert_eq!(&poly_from_json::<Rational>(&poly_json(&f)).unwrap(), &f);
    }
}
