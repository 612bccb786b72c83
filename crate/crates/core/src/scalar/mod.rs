//! Ground-field scalars and root finding for central polynomials.
//!
//! Two backends implement [`Scalar`]: [`Rational`] (exact, arbitrary
//! precision) and `f64` (approximate, compared against a global tolerance
//! that defaults to `1e-9` and can be changed with [`set_epsilon`]).

mod aberth;
mod exact;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub use aberth::polynomial_roots as complex_roots;

/// Exact rational scalar.
pub type Rational = BigRational;

/// `n / d` in lowest terms for `d > 0`, taking the gcd in machine words when
/// both fit.
fn reduced(n: BigInt, d: BigInt) -> Rational {
    use num_integer::Integer;
    if n.is_zero() {
        return <Rational as Zero>::zero();
    }
    let g = match (n.magnitude().to_u128(), d.to_u128()) {
        (Some(a), Some(b)) => BigInt::from(binary_gcd(a, b)),
        _ => n.gcd(&d),
    };
    if g.is_one() {
        Rational::new_raw(n, d)
    } else {
        Rational::new_raw(n / &g, d / g)
    }
}

/// Integer numerators over the lcm of the denominators.
fn common_denominator<R: std::borrow::Borrow<Rational>>(v: &[R]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let den = v
        .iter()
        .map(|c| c.borrow().denom())
        .fold(BigInt::one(), |acc, d| if d.is_one() { acc } else { acc.lcm(d) });
    let nums = v
        .iter()
        .map(|c| {
            let c = c.borrow();
            if c.denom() == &den {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

/// The integer table product in `i128`, or `None` on overflow.
fn small_table_product(
    x: &[BigInt],
    y: &[BigInt],
    s: &[BigInt],
    table: &[(usize, Rational)],
) -> Option<[i128; 8]> {
    let small = |v: &[BigInt]| v.iter().map(|n| n.to_i64().map(i128::from)).collect::<Option<Vec<_>>>();
    let (x, y, s) = (small(x)?, small(y)?, small(s)?);
    let mut num = [0i128; 8];
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            if yb == 0 {
                continue;
            }
            let c = table[8 * a + b].0;
            let term = (xa * yb).checked_mul(s[8 * a + b])?;
            num[c] = num[c].checked_add(term)?;
        }
    }
    Some(num)
}

fn binary_gcd(mut a: u128, mut b: u128) -> u128 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

const DEFAULT_EPSILON: f64 = 1e-9;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(DEFAULT_EPSILON.to_bits());

/// Comparison tolerance used by approximate-mode equality checks.
pub fn epsilon() -> f64 {
    f64::from_bits(EPSILON_BITS.load(Ordering::Relaxed))
}

/// Overrides the approximate-mode tolerance. Non-positive or non-finite
/// values are rejected.
pub fn set_epsilon(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {eps}")));
    }
    EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
    Ok(())
}

/// An element of the ground field.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the rational backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// `None` for non-finite input.
    fn from_f64(x: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    /// Exact zero test, regardless of mode.
    fn is_exactly_zero(&self) -> bool;

    /// `|self| <= tol` in approximate mode; exact zero test otherwise.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Zero test using the global tolerance.
    fn is_zero(&self) -> bool {
        self.is_negligible(epsilon())
    }

    fn is_negative(&self) -> bool;

    /// Square root if it exists in the field.
    fn sqrt(&self) -> Option<Self>;

    /// Parses a decimal (`-1.25`, `3e-2`) or rational (`p/q`) literal.
    fn parse_scalar(s: &str) -> std::result::Result<Self, String>;

    /// A small random value, used for seeded sampling and tests.
    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Conjugacy-class candidates of a central polynomial.
    fn central_roots(p: &CentralPoly<Self>) -> Result<Vec<ClassCandidate<Self>>>;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `x·y` for a multiplication table with `table[8a + b] = (c, s)`
    /// meaning `e_a e_b = s e_c`.
    fn table_product(x: &[Self; 8], y: &[Self; 8], table: &[(usize, Self)]) -> [Self; 8] {
        let mut out: [Self; 8] = std::array::from_fn(|_| Self::zero());
        for (a, xa) in x.iter().enumerate() {
            if xa.is_exactly_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_exactly_zero() {
                    continue;
                }
                let (c, s) = &table[8 * a + b];
                out[*c] = out[*c].clone() + s.clone() * xa.clone() * yb.clone();
            }
        }
        out
    }

    /// `Σ w_a x_a y_a`.
    fn weighted_dot(x: &[Self; 8], y: &[Self; 8], w: &[Self; 8]) -> Self {
        (0..8)
            .filter(|&a| !x[a].is_exactly_zero() && !y[a].is_exactly_zero())
            .fold(Self::zero(), |acc, a| {
                acc + w[a].clone() * x[a].clone() * y[a].clone()
            })
    }

    /// A factor that turns `v` into a vector of coprime integers (exact
    /// mode only). `None` when not applicable or `v` is zero.
    fn primitive_factor(_v: &[Self]) -> Option<Self> {
        None
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exactly_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn parse_scalar(s: &str) -> std::result::Result<Self, String> {
        parse_rational(s).and_then(|r| {
            ToPrimitive::to_f64(&r)
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("'{s}' is out of range"))
        })
    }
    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-1.0..1.0)
    }
    fn central_roots(p: &CentralPoly<Self>) -> Result<Vec<ClassCandidate<Self>>> {
        aberth::central_roots(p)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn add_ref(&self, other: &Self) -> Self {
        if self.denom() == other.denom() {
            return reduced(self.numer() + other.numer(), self.denom().clone());
        }
        reduced(
            self.numer() * other.denom() + other.numer() * self.denom(),
            self.denom() * other.denom(),
        )
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if self.denom() == other.denom() {
            return reduced(self.numer() - other.numer(), self.denom().clone());
        }
        reduced(
            self.numer() * other.denom() - other.numer() * self.denom(),
            self.denom() * other.denom(),
        )
    }

    fn mul_ref(&self, other: &Self) -> Self {
        reduced(self.numer() * other.numer(), self.denom() * other.denom())
    }

    fn table_product(x: &[Self; 8], y: &[Self; 8], table: &[(usize, Self)]) -> [Self; 8] {
        // work over the common denominator and normalize once per coordinate
        let (xi, dx) = common_denominator(x);
        let (yi, dy) = common_denominator(y);
        let consts: Vec<&Rational> = table.iter().map(|(_, s)| s).collect();
        let (si, ds) = common_denominator(&consts);
        let den = dx * dy * ds;
        if let Some(num) = small_table_product(&xi, &yi, &si, table) {
            return num.map(|n| reduced(BigInt::from(n), den.clone()));
        }
        let mut num: [BigInt; 8] = std::array::from_fn(|_| BigInt::zero());
        for (a, xa) in xi.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in yi.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = table[8 * a + b].0;
                num[c] += xa * yb * &si[8 * a + b];
            }
        }
        num.map(|n| reduced(n, den.clone()))
    }

    fn weighted_dot(x: &[Self; 8], y: &[Self; 8], w: &[Self; 8]) -> Self {
        let (xi, dx) = common_denominator(x);
        let (yi, dy) = common_denominator(y);
        let (wi, dw) = common_denominator(w);
        let den = dx * dy * dw;
        let small = (0..8).try_fold(0i128, |acc, a| {
            let t = i128::from(xi[a].to_i64()?)
                .checked_mul(i128::from(yi[a].to_i64()?))?
                .checked_mul(i128::from(wi[a].to_i64()?))?;
            acc.checked_add(t)
        });
        let num = match small {
            Some(n) => BigInt::from(n),
            None => (0..8).fold(BigInt::zero(), |acc, a| acc + &xi[a] * &yi[a] * &wi[a]),
        };
        reduced(num, den)
    }

    fn primitive_factor(v: &[Self]) -> Option<Self> {
        use num_integer::Integer;
        let nonzero = || v.iter().filter(|c| !Zero::is_zero(*c));
        let den = nonzero().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = nonzero().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        (!num.is_zero()).then(|| Rational::new(den, num))
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }
    fn from_f64(x: f64) -> Option<Self> {
        Rational::from_float(x)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_exactly_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }
    fn parse_scalar(s: &str) -> std::result::Result<Self, String> {
        parse_rational(s)
    }
    fn random_small<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
    }
    fn central_roots(p: &CentralPoly<Self>) -> Result<Vec<ClassCandidate<Self>>> {
        exact::central_roots(p)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Parses `p/q`, integers and decimals with optional exponent into an exact
/// rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_decimal(num.trim())?;
            let den = parse_decimal(den.trim())?;
            if Zero::is_zero(&den) {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(num / den)
        }
        None => parse_decimal(s),
    }
}

fn parse_decimal(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("invalid number '{s}'");
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = body[pos + 1..].parse().map_err(|_| bad())?;
            (&body[..pos], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exponent.unsigned_abs() > 400 {
        return Err(format!("exponent out of range in '{s}'"));
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Polynomial with coefficients in the ground field, degree-ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> CentralPoly<S> {
    /// Trailing (exact) zeros are trimmed.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exactly_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64())
    }

    pub fn to_f64(&self) -> CentralPoly<f64> {
        CentralPoly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// One conjugacy class suggested by a root (or conjugate root pair) of a
/// central polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassCandidate<S> {
    /// A root in the ground field; its class is the singleton `{r}`.
    CentralRoot { root: S, multiplicity: usize },
    /// An irreducible quadratic factor `x^2 - T x + N`.
    QuadraticClass {
        trace: S,
        norm: S,
        multiplicity: usize,
    },
}

impl<S: Scalar> ClassCandidate<S> {
    pub fn multiplicity(&self) -> usize {
        match self {
            Self::CentralRoot { multiplicity, .. } | Self::QuadraticClass { multiplicity, .. } => {
                *multiplicity
            }
        }
    }

    /// Number of polynomial roots this candidate accounts for.
    pub fn root_count(&self) -> usize {
        match self {
            Self::CentralRoot { multiplicity, .. } => *multiplicity,
            Self::QuadraticClass { multiplicity, .. } => 2 * multiplicity,
        }
    }

    /// `(trace, norm)` of the class.
    pub fn trace_norm(&self) -> (S, S) {
        match self {
            Self::CentralRoot { root, .. } => {
                (root.clone() + root.clone(), root.clone() * root.clone())
            }
            Self::QuadraticClass { trace, norm, .. } => (trace.clone(), norm.clone()),
        }
    }
}

/// Orders candidates: central roots by decreasing value, then quadratic
/// classes by increasing `(norm, trace)`.
pub(crate) fn sort_candidates<S: Scalar>(cands: &mut [ClassCandidate<S>]) {
    use std::cmp::Ordering as O;
    let key = |c: &ClassCandidate<S>| match c {
        ClassCandidate::CentralRoot { root, .. } => (0, -root.to_f64(), 0.0),
        ClassCandidate::QuadraticClass { trace, norm, .. } => (1, norm.to_f64(), trace.to_f64()),
    };
    cands.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0)
            .then(ka.1.partial_cmp(&kb.1).unwrap_or(O::Equal))
            .then(ka.2.partial_cmp(&kb.2).unwrap_or(O::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), q(150, 1));
        assert_eq!(parse_rational("2e-3").unwrap(), q(1, 500));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.1/3").unwrap(), q(1, 30));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn f64_parse_accepts_fractions() {
        assert_eq!(f64::parse_scalar("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_scalar("-2.5").unwrap(), -2.5);
    }

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(Scalar::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn central_poly_trims_and_evaluates() {
        let p = CentralPoly::new(vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&q(2, 1)), q(5, 1));
        assert!(CentralPoly::<f64>::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn epsilon_rejects_nonsense() {
        assert!(set_epsilon(-1.0).is_err());
        assert!(set_epsilon(f64::NAN).is_err());
    }
}
