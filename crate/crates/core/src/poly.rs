//! Polynomials `a_n xⁿ + … + a_1 x + a_0` over an octonion algebra, with the
//! indeterminate central. Coefficients are kept in left-coefficient form.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Octonion};
use crate::error::{Error, Result};
use crate::scalar::{epsilon, CentralPoly, Scalar};

/// Largest degree `compose` and `iterate_comp` will produce.
pub const MAX_COMPOSE_DEGREE: usize = 16;

#[derive(Clone)]
pub struct OPolynomial<S: Scalar> {
    coeffs: Vec<Octonion<S>>,
    alg: Arc<Algebra<S>>,
}

impl<S: Scalar> OPolynomial<S> {
    /// Degree-ascending coefficients; trailing zeros are trimmed.
    pub fn new(alg: &Arc<Algebra<S>>, mut coeffs: Vec<Octonion<S>>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.same_algebra(&Octonion::zero(alg))) {
            return Err(Error::ParamsMismatch);
        }
        while coeffs.last().is_some_and(Octonion::is_exactly_zero) {
            coeffs.pop();
        }
        Ok(Self {
            coeffs,
            alg: Arc::clone(alg),
        })
    }

    fn from_trusted(alg: &Arc<Algebra<S>>, mut coeffs: Vec<Octonion<S>>) -> Self {
        while coeffs.last().is_some_and(Octonion::is_exactly_zero) {
            coeffs.pop();
        }
        Self {
            coeffs,
            alg: Arc::clone(alg),
        }
    }

    pub fn zero(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_trusted(alg, Vec::new())
    }

    pub fn constant(c: Octonion<S>) -> Self {
        let alg = Arc::clone(c.algebra());
        Self::from_trusted(&alg, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_trusted(alg, vec![Octonion::zero(alg), Octonion::one(alg)])
    }

    /// `c xᵗ`.
    pub fn monomial(c: Octonion<S>, t: usize) -> Self {
        let alg = Arc::clone(c.algebra());
        let mut coeffs = vec![Octonion::zero(&alg); t];
        coeffs.push(c);
        Self::from_trusted(&alg, coeffs)
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Octonion<S>] {
        &self.coeffs
    }

    /// Coefficient of `xᵗ` (zero past the degree).
    pub fn coeff(&self, t: usize) -> Octonion<S> {
        self.coeffs
            .get(t)
            .cloned()
            .unwrap_or_else(|| Octonion::zero(&self.alg))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient equal to one.
    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == Octonion::one(&self.alg))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg.params() == other.alg.params() {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|t| &self.coeff(t) + &other.coeff(t)).collect();
        Ok(Self::from_trusted(&self.alg, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_trusted(&self.alg, self.coeffs.iter().map(|c| -c).collect())
    }

    /// `c f(x)`: coefficients `c a_t`.
    pub fn scale_left(&self, c: &Octonion<S>) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| c.try_mul(a))
            .collect::<Result<_>>()?;
        Ok(Self::from_trusted(&self.alg, coeffs))
    }

    /// `f(x) c`: coefficients `a_t c`.
    pub fn scale_right(&self, c: &Octonion<S>) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.try_mul(c))
            .collect::<Result<_>>()?;
        Ok(Self::from_trusted(&self.alg, coeffs))
    }

    /// Product with central `x`: `c_u = Σ_{r+s=u} a_r b_s`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.alg));
        }
        let mut coeffs = vec![Octonion::zero(&self.alg); self.coeffs.len() + other.coeffs.len() - 1];
        for (r, a) in self.coeffs.iter().enumerate() {
            for (s, b) in other.coeffs.iter().enumerate() {
                coeffs[r + s] = &coeffs[r + s] + &(a * b);
            }
        }
        Ok(Self::from_trusted(&self.alg, coeffs))
    }

    /// `f̄`: every coefficient conjugated.
    pub fn conj_poly(&self) -> Self {
        Self::from_trusted(&self.alg, self.coeffs.iter().map(Octonion::conj).collect())
    }

    /// The companion polynomial `f̄ · f`, whose coefficients are central.
    pub fn companion(&self) -> Result<CentralPoly<S>> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "companion of the zero polynomial".into(),
            ));
        }
        let product = self.conj_poly().mul(self)?;
        let scale = self.coeffs.iter().map(Octonion::max_abs).fold(0.0, f64::max);
        let tol = epsilon() * 1e2 * (1.0 + scale * scale);
        for (t, c) in product.coeffs.iter().enumerate() {
            if !c.is_nearly_central(tol) {
                return Err(Error::Internal(format!(
                    "companion coefficient of x^{t} is not central: {c}"
                )));
            }
        }
        Ok(CentralPoly::new(
            product.coeffs.iter().map(Octonion::re).collect(),
        ))
    }

    /// `f(λ) = Σ a_t λᵗ`.
    pub fn eval(&self, lambda: &Octonion<S>) -> Octonion<S> {
        let mut acc = self.coeff(0);
        let mut power = lambda.clone();
        for (t, a) in self.coeffs.iter().enumerate().skip(1) {
            if t > 1 {
                power = &power * lambda;
            }
            if !a.is_exactly_zero() {
                acc = &acc + &(a * &power);
            }
        }
        acc
    }

    /// `gᵗ` with left nesting, `g⁰ = 1`, `gᵗ = g · gᵗ⁻¹`.
    pub fn power(&self, t: usize) -> Result<Self> {
        let mut acc = Self::constant(Octonion::one(&self.alg));
        for _ in 0..t {
            acc = self.mul(&acc)?;
        }
        Ok(acc)
    }

    /// `gᵗ` with right nesting, `gᵗ = gᵗ⁻¹ · g`.
    pub fn power_right_nested(&self, t: usize) -> Result<Self> {
        let mut acc = Self::constant(Octonion::one(&self.alg));
        for _ in 0..t {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `f ∘ g = Σ a_t gᵗ`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        let degree = self.degree().unwrap_or(0) * g.degree().unwrap_or(0);
        if degree > MAX_COMPOSE_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "composition would have degree {degree} (limit {MAX_COMPOSE_DEGREE})"
            )));
        }
        let mut acc = Self::zero(&self.alg);
        let mut power = Self::constant(Octonion::one(&self.alg));
        for (t, a) in self.coeffs.iter().enumerate() {
            if t > 0 {
                power = g.mul(&power)?;
            }
            acc = acc.add(&power.scale_left(a)?)?;
        }
        Ok(acc)
    }

    /// `f^{∘n}`: `f^{∘1} = f`, `f^{∘n} = f ∘ f^{∘(n-1)}`.
    pub fn iterate_comp(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("iteration count must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `f^{*n}(α)`: evaluate, then feed the value back, `n` times.
    pub fn iterate_sub(&self, alpha: &Octonion<S>, n: usize) -> Result<Octonion<S>> {
        if n == 0 {
            return Err(Error::InvalidInput("iteration count must be at least 1".into()));
        }
        let mut z = alpha.clone();
        for _ in 0..n {
            z = self.eval(&z);
        }
        Ok(z)
    }

    /// `f = g · (x - λ) + r`, with `r = f(λ)`.
    pub fn right_div_linear(&self, lambda: &Octonion<S>) -> Result<(Self, Octonion<S>)> {
        let n = self
            .degree()
            .ok_or_else(|| Error::InvalidInput("division of the zero polynomial".into()))?;
        if n == 0 {
            return Ok((Self::zero(&self.alg), self.coeffs[0].clone()));
        }
        let mut q = vec![Octonion::zero(&self.alg); n];
        q[n - 1] = self.coeffs[n].clone();
        for t in (1..n).rev() {
            q[t - 1] = &self.coeffs[t] + &(&q[t] * lambda);
        }
        let remainder = &self.coeffs[0] + &(&q[0] * lambda);
        Ok((Self::from_trusted(&self.alg, q), remainder))
    }

    pub fn to_f64(&self) -> OPolynomial<f64> {
        let coeffs: Vec<Octonion<f64>> = self.coeffs.iter().map(Octonion::to_f64).collect();
        let alg = match coeffs.first() {
            Some(c) => Arc::clone(c.algebra()),
            None => Octonion::zero(&self.alg).to_f64().algebra().clone(),
        };
        let coeffs = coeffs
            .into_iter()
            .map(|c| Octonion::new(&alg, *c.coords()))
            .collect();
        OPolynomial::from_trusted(&alg, coeffs)
    }

    /// Largest coordinate magnitude over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Octonion::max_abs).fold(0.0, f64::max)
    }
}

impl<S: Scalar> PartialEq for OPolynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for OPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OPolynomial({self})")
    }
}

impl<S: Scalar> fmt::Display for OPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::poly_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn alg() -> Arc<Algebra<Rational>> {
        Algebra::standard()
    }

    fn oct(c: [i64; 8]) -> Octonion<Rational> {
        Octonion::new(&alg(), c.map(Rational::from_i64))
    }

    fn e(a: usize) -> Octonion<Rational> {
        Octonion::basis(&alg(), a)
    }

    fn scalar(n: i64) -> Octonion<Rational> {
        Octonion::from_scalar(&alg(), Rational::from_i64(n))
    }

    fn poly(c: Vec<Octonion<Rational>>) -> OPolynomial<Rational> {
        OPolynomial::new(&alg(), c).unwrap()
    }

    /// x² + ix − ij + 1
    fn worked_example() -> OPolynomial<Rational> {
        poly(vec![&scalar(1) - &e(3), e(1), scalar(1)])
    }

    #[test]
    fn scalar_multiples_of_linear_example() {
        let f = poly(vec![e(2), e(1)]);
        let l = e(4);
        assert_eq!(f.scale_right(&l).unwrap(), poly(vec![e(6), e(5)]));
        assert_eq!(
            f.scale_left(&l).unwrap(),
            poly(vec![&l * &e(2), &l * &e(1)])
        );
        assert_eq!(&l * &e(1), -&e(5));
    }

    #[test]
    fn add_trims() {
        let f = poly(vec![scalar(1), scalar(0), scalar(1)]);
        let g = OPolynomial::constant(scalar(-1));
        assert_eq!(f.add(&g).unwrap(), OPolynomial::monomial(scalar(1), 2));
    }

    #[test]
    fn multiplication() {
        let f = poly(vec![e(1), scalar(1)]);
        assert_eq!(
            f.mul(&f).unwrap(),
            poly(vec![scalar(-1), oct([0, 2, 0, 0, 0, 0, 0, 0]), scalar(1)])
        );
        let g = poly(vec![e(2), e(1)]);
        assert_eq!(
            g.neg().mul(&g).unwrap(),
            poly(vec![scalar(1), scalar(0), scalar(1)])
        );
        assert_eq!(g.mul(&OPolynomial::constant(scalar(1))).unwrap(), g);
    }

    #[test]
    fn companions() {
        let c = worked_example().companion().unwrap();
        assert_eq!(
            c.coeffs(),
            &[2, 0, 3, 0, 1].map(Rational::from_i64)[..]
        );
        let c = poly(vec![e(2), e(1)]).companion().unwrap();
        assert_eq!(c.coeffs(), &[1, 0, 1].map(Rational::from_i64)[..]);
        let m = oct([1, 2, -1, 0, 3, 0, 0, 1]);
        let c = poly(vec![-&m, scalar(1)]).companion().unwrap();
        assert_eq!(c.coeffs(), &[m.norm(), -m.trace(), Rational::from_i64(1)][..]);
    }

    #[test]
    fn evaluation_examples() {
        let ij = &e(1) * &e(2);
        assert!(poly(vec![e(2), e(1)]).eval(&ij).is_exactly_zero());
        assert!(poly(vec![e(6), e(5)]).eval(&-&ij).is_exactly_zero());
        assert!(worked_example().eval(&e(2)).is_exactly_zero());
    }

    #[test]
    fn powers() {
        let f = poly(vec![e(1), scalar(1)]);
        assert_eq!(f.power(2).unwrap(), f.mul(&f).unwrap());
        assert_eq!(f.power(0).unwrap(), OPolynomial::constant(scalar(1)));
        assert_eq!(f.power(1).unwrap(), f);
    }

    #[test]
    fn composition() {
        let x = OPolynomial::x(&alg());
        let sq = OPolynomial::monomial(scalar(1), 2);
        let f = poly(vec![e(1), scalar(1)]);
        assert_eq!(sq.compose(&f).unwrap(), f.power(2).unwrap());
        let g = poly(vec![e(2), e(1), scalar(1)]);
        assert_eq!(g.compose(&x).unwrap(), g);
    }

    #[test]
    fn iterates() {
        let sq = OPolynomial::monomial(scalar(1), 2);
        assert_eq!(sq.iterate_sub(&scalar(2), 3).unwrap(), scalar(256));
        assert_eq!(sq.iterate_comp(2).unwrap().eval(&scalar(2)), scalar(16));
        assert!(sq.iterate_sub(&scalar(2), 0).is_err());
        assert!(matches!(
            sq.iterate_comp(5),
            Err(Error::ResourceLimit(_))
        ));
        assert_eq!(sq.iterate_comp(4).unwrap().degree(), Some(16));
    }

    #[test]
    fn linear_division() {
        let ij = &e(1) * &e(2);
        let (q, r) = poly(vec![e(2), e(1)]).right_div_linear(&ij).unwrap();
        assert_eq!(q, OPolynomial::constant(e(1)));
        assert!(r.is_exactly_zero());

        let (q, r) = poly(vec![scalar(1), scalar(0), scalar(1)])
            .right_div_linear(&e(1))
            .unwrap();
        assert_eq!(q, poly(vec![e(1), scalar(1)]));
        assert!(r.is_exactly_zero());

        let (q, r) = OPolynomial::monomial(scalar(1), 2)
            .right_div_linear(&scalar(1))
            .unwrap();
        assert_eq!(q, poly(vec![scalar(1), scalar(1)]));
        assert_eq!(r, scalar(1));
    }
}
