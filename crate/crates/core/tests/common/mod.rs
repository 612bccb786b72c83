#![allow(dead_code)]

use std::sync::Arc;

use octopoly::{Algebra, AlgebraParams, OPolynomial, Octonion, Rational, Scalar};
use proptest::prelude::*;

pub fn q() -> Arc<Algebra<Rational>> {
    Algebra::standard()
}

pub fn r() -> Arc<Algebra<f64>> {
    Algebra::standard()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn coords() -> impl Strategy<Value = [i64; 8]> {
    prop::array::uniform8(-3i64..=3)
}

pub fn nonzero_coords() -> impl Strategy<Value = [i64; 8]> {
    coords().prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

/// Coordinates in the quaternion copy spanned by 1, i, j, k.
pub fn quat_coords() -> impl Strategy<Value = [i64; 8]> {
    prop::array::uniform4(-3i64..=3).prop_map(|c| [c[0], c[1], c[2], c[3], 0, 0, 0, 0])
}

pub fn oct(alg: &Arc<Algebra<Rational>>, c: [i64; 8]) -> Octonion<Rational> {
    Octonion::new(alg, c.map(rat))
}

pub fn octf(c: [f64; 8]) -> Octonion<f64> {
    Octonion::new(&r(), c)
}

pub fn poly(alg: &Arc<Algebra<Rational>>, cs: &[[i64; 8]]) -> OPolynomial<Rational> {
    OPolynomial::new(alg, cs.iter().map(|c| oct(alg, *c)).collect()).unwrap()
}

/// Structure constants drawn from small nonzero integers; every choice
/// gives an octonion algebra (possibly split).
pub fn params() -> impl Strategy<Value = Arc<Algebra<Rational>>> {
    let unit = prop_oneof![-3i64..=-1, 1i64..=3];
    (unit.clone(), unit.clone(), unit).prop_map(|(a, b, g)| {
        Algebra::new(AlgebraParams::new(rat(a), rat(b), rat(g)).unwrap())
    })
}

/// `x - λ`.
pub fn x_minus<S: Scalar>(lambda: &Octonion<S>) -> OPolynomial<S> {
    let alg = lambda.algebra();
    OPolynomial::new(alg, vec![-lambda, Octonion::one(alg)]).unwrap()
}

/// `Σ c_t λᵗ` for central coefficients.
pub fn central_eval<S: Scalar>(coeffs: &[S], lambda: &Octonion<S>) -> Octonion<S> {
    coeffs
        .iter()
        .enumerate()
        .fold(Octonion::zero(lambda.algebra()), |acc, (t, c)| {
            &acc + &lambda.pow(t as u32).scale(c)
        })
}
