//! Exact conjugacy-class extraction for rational central polynomials of
//! degree at most four: rational roots first, then irreducible quadratic
//! factors. Irreducible cubic and quartic remainders have no roots of
//! degree at most two over the rationals and contribute no candidates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{sort_candidates, CentralPoly, ClassCandidate, Rational};
use crate::error::{Error, Result};

pub const MAX_EXACT_DEGREE: usize = 4;

/// Largest constant term we are willing to factor by trial division.
const FACTOR_LIMIT: u64 = 1_000_000_000_000;

pub(super) fn central_roots(p: &CentralPoly<Rational>) -> Result<Vec<ClassCandidate<Rational>>> {
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if degree > MAX_EXACT_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree,
            max: MAX_EXACT_DEGREE,
        });
    }
    let lead = p.coeffs()[degree].clone();
    let mut m: Vec<Rational> = p.coeffs().iter().map(|c| c / &lead).collect();
    let mut zeros = 0;
    while m.len() > 1 && m[0].is_zero() {
        m.remove(0);
        zeros += 1;
    }
    let mut out = match divisor_split(m.clone()) {
        Err(Error::Unsupported(msg)) => numeric_split(m).ok_or(Error::Unsupported(msg))?,
        other => other?,
    };
    for _ in 0..zeros {
        add_root(&mut out, Rational::zero());
    }
    sort_candidates(&mut out);
    Ok(out)
}

/// Rational roots by the rational root test, then a quadratic split of a
/// remaining quartic. Fails when the constant term is too large to factor.
fn divisor_split(mut m: Vec<Rational>) -> Result<Vec<ClassCandidate<Rational>>> {
    let mut out = Vec::new();
    while m.len() > 1 {
        let Some(r) = rational_root(&m)? else { break };
        m = deflate(&m, &r);
        add_root(&mut out, r);
    }
    match m.len() - 1 {
        0 => {}
        2 => add_quadratic(&mut out, -m[1].clone(), m[0].clone()),
        4 => {
            if let Some(((t1, n1), (t2, n2))) = split_quartic(&m)? {
                add_quadratic(&mut out, t1, n1);
                add_quadratic(&mut out, t2, n2);
            }
        }
        // an irreducible cubic, or a quartic with no rational quadratic factor
        _ => {}
    }
    Ok(out)
}

/// Locates the factors in floating point, recovers rational values from
/// continued-fraction convergents and keeps only those that divide `m`
/// exactly. `None` if a remainder of degree above two is left over, since
/// its irreducibility is then not certified.
fn numeric_split(mut m: Vec<Rational>) -> Option<Vec<ClassCandidate<Rational>>> {
    let approx = CentralPoly::new(m.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect());
    let mut out = Vec::new();
    for cand in super::aberth::central_roots(&approx).ok()? {
        match cand {
            ClassCandidate::CentralRoot { root, .. } => {
                let Some(r) = convergents(root).into_iter().find(|r| eval(&m, r).is_zero()) else {
                    continue;
                };
                while m.len() > 1 && eval(&m, &r).is_zero() {
                    m = deflate(&m, &r);
                    add_root(&mut out, r.clone());
                }
            }
            ClassCandidate::QuadraticClass { trace, norm, .. } => {
                let norms = convergents(norm);
                let found = convergents(trace).into_iter().find_map(|t| {
                    norms
                        .iter()
                        .find(|n| divide_quadratic(&m, &t, n).is_some())
                        .map(|n| (t, n.clone()))
                });
                let Some((t, n)) = found else { continue };
                while let Some(rest) = divide_quadratic(&m, &t, &n) {
                    m = rest;
                    add_quadratic(&mut out, t.clone(), n.clone());
                }
            }
        }
    }
    match m.len() - 1 {
        0 => {}
        1 => add_root(&mut out, -m[0].clone()),
        2 => {
            let disc = &m[1] * &m[1] - Rational::from_integer(4.into()) * &m[0];
            match super::Scalar::sqrt(&disc) {
                Some(s) => {
                    let two = Rational::from_integer(2.into());
                    add_root(&mut out, (-&m[1] + &s) / &two);
                    add_root(&mut out, (-&m[1] - &s) / &two);
                }
                None => add_quadratic(&mut out, -m[1].clone(), m[0].clone()),
            }
        }
        _ => return None,
    }
    Some(out)
}

/// Continued-fraction convergents of `x`.
fn convergents(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..40 {
        if v.abs() > 1e18 {
            break;
        }
        let a = v.floor();
        let ai = BigInt::from(a as i64);
        let h = &ai * &h1 + &h0;
        let k = &ai * &k1 + &k0;
        out.push(Rational::new(h.clone(), k.clone()));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

/// The quotient of the monic `m` by `x^2 - t x + n`, if the division is exact.
fn divide_quadratic(m: &[Rational], t: &Rational, n: &Rational) -> Option<Vec<Rational>> {
    let d = m.len().checked_sub(1)?;
    if d < 2 {
        return None;
    }
    let mut rem = m.to_vec();
    let mut q = vec![Rational::zero(); d - 1];
    for k in (2..=d).rev() {
        let c = rem[k].clone();
        rem[k] = Rational::zero();
        rem[k - 1] = &rem[k - 1] + &c * t;
        rem[k - 2] = &rem[k - 2] - &c * n;
        q[k - 2] = c;
    }
    (rem[0].is_zero() && rem[1].is_zero()).then_some(q)
}

fn add_root(out: &mut Vec<ClassCandidate<Rational>>, r: Rational) {
    for c in out.iter_mut() {
        if let ClassCandidate::CentralRoot { root, multiplicity } = c {
            if *root == r {
                *multiplicity += 1;
                return;
            }
        }
    }
    out.push(ClassCandidate::CentralRoot {
        root: r,
        multiplicity: 1,
    });
}

fn add_quadratic(out: &mut Vec<ClassCandidate<Rational>>, t: Rational, n: Rational) {
    for c in out.iter_mut() {
        if let ClassCandidate::QuadraticClass {
            trace,
            norm,
            multiplicity,
        } = c
        {
            if *trace == t && *norm == n {
                *multiplicity += 1;
                return;
            }
        }
    }
    out.push(ClassCandidate::QuadraticClass {
        trace: t,
        norm: n,
        multiplicity: 1,
    });
}

fn eval(m: &[Rational], x: &Rational) -> Rational {
    m.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides the monic `m` by `(x - r)`, assuming `r` is a root.
fn deflate(m: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = m.len() - 1;
    let mut q = vec![Rational::zero(); n];
    q[n - 1] = m[n].clone();
    for t in (1..n).rev() {
        q[t - 1] = &m[t] + &q[t] * r;
    }
    q
}

/// Scales a monic rational polynomial to a monic integer one via
/// `x = y / d`. Returns the integer coefficients and `d`.
fn integer_form(m: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let n = m.len() - 1;
    let d = m
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = m
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let scaled = c * Rational::from_integer(num_traits::pow(d.clone(), n - k));
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    (coeffs, d)
}

fn rational_root(m: &[Rational]) -> Result<Option<Rational>> {
    let (q, d) = integer_form(m);
    for y in signed_divisors(&q[0])? {
        let r = Rational::new(y, d.clone());
        if eval(m, &r).is_zero() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Splits a monic quartic with no rational roots as a product of two
/// rational quadratics, returned as `(trace, norm)` pairs.
#[allow(clippy::type_complexity)]
fn split_quartic(
    m: &[Rational],
) -> Result<Option<((Rational, Rational), (Rational, Rational))>> {
    let (q, d) = integer_form(m);
    let (c0, c1, c2, c3) = (&q[0], &q[1], &q[2], &q[3]);
    for b in signed_divisors(c0)? {
        let e = c0 / &b;
        // y^4 + c3 y^3 + c2 y^2 + c1 y + c0 = (y^2 + a y + b)(y^2 + c y + e)
        let pairs: Vec<(BigInt, BigInt)> = if b != e {
            let num = c1 - &b * c3;
            let den = &e - &b;
            if !(&num % &den).is_zero() {
                continue;
            }
            let a = num / den;
            let c = c3 - &a;
            vec![(a, c)]
        } else {
            if &b * c3 != *c1 {
                continue;
            }
            // a + c = c3, a c = c2 - 2b
            let disc = c3 * c3 - BigInt::from(4) * (c2 - BigInt::from(2) * &b);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc || (c3 + &s).is_odd() {
                continue;
            }
            vec![((c3 + &s) / 2, (c3 - &s) / 2)]
        };
        for (a, c) in pairs {
            if &b + &e + &a * &c == *c2 && &a * &e + &b * &c == *c1 {
                let to_class = |lin: &BigInt, cst: &BigInt| {
                    (
                        Rational::new(-lin.clone(), d.clone()),
                        Rational::new(cst.clone(), &d * &d),
                    )
                };
                return Ok(Some((to_class(&a, &b), to_class(&c, &e))));
            }
        }
    }
    Ok(None)
}

/// All divisors of `n` (nonzero) with both signs.
fn signed_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let value = n
        .to_u64()
        .filter(|v| *v <= FACTOR_LIMIT)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "constant term {n} is too large for exact factoring; use real mode"
            ))
        })?;
    if value == 0 {
        return Ok(vec![BigInt::zero()]);
    }
    let mut divisors = Vec::new();
    let mut k = 1u64;
    while k * k <= value {
        if value % k == 0 {
            divisors.push(k);
            if k * k != value {
                divisors.push(value / k);
            }
        }
        k += 1;
    }
    divisors.sort_unstable();
    Ok(divisors
        .into_iter()
        .flat_map(|v| [BigInt::from(v), -BigInt::from(v)])
        .collect())
}
