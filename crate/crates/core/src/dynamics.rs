//! Fixed points of monic quadratics `x² + Bx + C`, their classification,
//! substitution orbits and pseudo-periodic points.

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::poly::OPolynomial;
use crate::roots::{roots, RootSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Attracting,
    Repelling,
    Ambivalent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Attracting => "attracting",
            Self::Repelling => "repelling",
            Self::Ambivalent => "ambivalent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FixedPointReport {
    pub alpha: Octonion<f64>,
    pub b: Octonion<f64>,
    pub big_m: f64,
    pub small_m: f64,
    pub verdict: Verdict,
}

fn check_monic_quadratic<S: Scalar>(f: &OPolynomial<S>) -> Result<()> {
    if f.degree() != Some(2) || !f.is_monic() {
        return Err(Error::InvalidInput(format!(
            "expected a monic quadratic, got {f}"
        )));
    }
    Ok(())
}

fn check_definite(f: &OPolynomial<f64>) -> Result<()> {
    if !f.algebra().is_definite() {
        return Err(Error::Unsupported(
            "classification needs a definite norm form".into(),
        ));
    }
    Ok(())
}

/// The roots of `f(x) - x` for a monic quadratic `f`.
pub fn fixed_points<S: Scalar>(f: &OPolynomial<S>) -> Result<RootSet<S>> {
    check_monic_quadratic(f)?;
    roots(&f.sub(&OPolynomial::x(f.algebra()))?)
}

/// `(M, m)` for a fixed point `α` of `x² + Bx + C`:
/// `√(Re(2α+B)² + (|Im(α+B)| ± |Im α|)²)`.
pub fn fixed_point_bounds(alpha: &Octonion<f64>, b: &Octonion<f64>) -> (f64, f64) {
    let re = 2.0 * alpha.re() + b.re();
    let im_ab = (alpha + b).im().abs();
    let im_a = alpha.im().abs();
    (re.hypot(im_ab + im_a), re.hypot(im_ab - im_a))
}

/// Classifies a fixed point of the monic quadratic `f`.
pub fn classify_fixed(f: &OPolynomial<f64>, alpha: &Octonion<f64>) -> Result<FixedPointReport> {
    check_monic_quadratic(f)?;
    check_definite(f)?;
    let residual = (&f.eval(alpha) - alpha).abs();
    if !(residual < 1e-9 * (1.0 + alpha.abs())) {
        return Err(Error::NotAFixedPoint { residual });
    }
    let b = f.coeff(1);
    let (big_m, small_m) = fixed_point_bounds(alpha, &b);
    let verdict = if big_m < 1.0 {
        Verdict::Attracting
    } else if small_m > 1.0 {
        Verdict::Repelling
    } else {
        Verdict::Ambivalent
    };
    Ok(FixedPointReport {
        alpha: alpha.clone(),
        b,
        big_m,
        small_m,
        verdict,
    })
}

/// Result of checking `f^{∘n}(α) = α` for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionCheck {
    pub holds: bool,
    pub failing_n: Option<usize>,
}

/// Checks that a fixed point of `f` is also fixed by the composition
/// iterates up to `n_max` (at most 4, as degrees double each step).
pub fn verify_composition_fixed<S: Scalar>(
    f: &OPolynomial<S>,
    alpha: &Octonion<S>,
    n_max: usize,
) -> Result<CompositionCheck> {
    check_monic_quadratic(f)?;
    if n_max > 4 {
        return Err(Error::ResourceLimit(format!(
            "composition iterates beyond 4 requested ({n_max})"
        )));
    }
    if !f.eval(alpha).approx_eq(alpha) {
        return Err(Error::NotAFixedPoint {
            residual: (&f.eval(alpha) - alpha).max_abs(),
        });
    }
    let mut iterate = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            iterate = f.compose(&iterate)?;
        }
        if !iterate.eval(alpha).approx_eq(alpha) {
            return Ok(CompositionCheck {
                holds: false,
                failing_n: Some(n),
            });
        }
    }
    Ok(CompositionCheck {
        holds: true,
        failing_n: None,
    })
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub start: Octonion<f64>,
    /// `iterates[k] = f^{*k}(start)`, starting with `start` itself.
    pub iterates: Vec<Octonion<f64>>,
    pub escaped: bool,
    pub detected_period: Option<usize>,
}

/// Follows `λ, f(λ), f(f(λ)), …` for up to `n_max` steps, stopping early on
/// escape (`|z| ≥ escape_radius`) or when an earlier iterate recurs within
/// `tol`.
pub fn orbit(
    f: &OPolynomial<f64>,
    start: &Octonion<f64>,
    n_max: usize,
    escape_radius: f64,
    tol: f64,
) -> Result<OrbitRecord> {
    check_definite(f)?;
    let mut iterates = vec![start.clone()];
    let mut escaped = start.abs() >= escape_radius;
    let mut detected_period = None;
    while !escaped && detected_period.is_none() && iterates.len() <= n_max {
        let z = f.eval(iterates.last().expect("nonempty"));
        let k = iterates.len();
        escaped = !(z.abs() < escape_radius);
        if !escaped {
            detected_period = iterates
                .iter()
                .rposition(|w| (&z - w).abs() < tol)
                .map(|j| k - j);
        }
        iterates.push(z);
    }
    Ok(OrbitRecord {
        start: start.clone(),
        iterates,
        escaped,
        detected_period,
    })
}

/// The least `n ≤ n_max` with `|f^{*n}(α) - α| < tol`.
pub fn detect_pseudo_period(
    f: &OPolynomial<f64>,
    alpha: &Octonion<f64>,
    n_max: usize,
    tol: f64,
) -> Option<usize> {
    let mut z = alpha.clone();
    for n in 1..=n_max {
        z = f.eval(&z);
        if !z.max_abs().is_finite() {
            return None;
        }
        if (&z - alpha).abs() < tol {
            return Some(n);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodicVerdict {
    Attracting,
    Inconclusive,
}

impl PeriodicVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Attracting => "attracting",
            Self::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PseudoPeriodReport {
    pub alpha: Octonion<f64>,
    pub n: usize,
    pub cycle: Vec<Octonion<f64>>,
    pub m_i: Vec<f64>,
    /// `∏ √M_i`.
    pub product: f64,
    pub verdict: PeriodicVerdict,
}

/// `M_i = Re(2α_i + B)² + (|Im(α_i + B)| + |Im α_i|)²`.
pub fn cycle_factor(alpha_i: &Octonion<f64>, b: &Octonion<f64>) -> f64 {
    fixed_point_bounds(alpha_i, b).0.powi(2)
}

/// Default tolerance for recognising a return to the starting point.
pub const PERIOD_TOL: f64 = 1e-9;

/// Applies the product criterion to a pseudo-periodic point of order `n`.
pub fn classify_pseudo_periodic(
    f: &OPolynomial<f64>,
    alpha: &Octonion<f64>,
    n: usize,
) -> Result<PseudoPeriodReport> {
    check_monic_quadratic(f)?;
    check_definite(f)?;
    let tol = PERIOD_TOL * (1.0 + alpha.abs());
    let found = detect_pseudo_period(f, alpha, n, tol);
    if n == 0 || found != Some(n) {
        return Err(Error::OrderMismatch { expected: n, found });
    }
    let b = f.coeff(1);
    let mut cycle = vec![alpha.clone()];
    for _ in 1..n {
        let next = f.eval(cycle.last().expect("nonempty"));
        cycle.push(next);
    }
    let m_i: Vec<f64> = cycle.iter().map(|a| cycle_factor(a, &b)).collect();
    let product = m_i.iter().map(|m| f64::sqrt(*m)).product::<f64>();
    let verdict = if product < 1.0 {
        PeriodicVerdict::Attracting
    } else {
        PeriodicVerdict::Inconclusive
    };
    Ok(PseudoPeriodReport {
        alpha: alpha.clone(),
        n,
        cycle,
        m_i,
        product,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::scalar::Rational;
    use std::sync::Arc;

    fn alg() -> Arc<Algebra<f64>> {
        Algebra::standard()
    }

    fn oct(c: [f64; 8]) -> Octonion<f64> {
        Octonion::new(&alg(), c)
    }

    fn sc(x: f64) -> Octonion<f64> {
        Octonion::from_scalar(&alg(), x)
    }

    fn e(a: usize) -> Octonion<f64> {
        Octonion::basis(&alg(), a)
    }

    fn quad(b: Octonion<f64>, c: Octonion<f64>) -> OPolynomial<f64> {
        OPolynomial::new(&alg(), vec![c, b, sc(1.0)]).unwrap()
    }

    /// x² + ix − i/2 − 1/4
    fn ambivalent_example() -> OPolynomial<f64> {
        quad(e(1), oct([-0.25, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]))
    }

    #[test]
    fn fixed_points_of_square() {
        let set = fixed_points(&quad(sc(0.0), sc(0.0))).unwrap();
        let found: Vec<_> = set.isolated_roots().map(|r| r.re()).collect();
        assert_eq!(found.len(), 2);
        assert!((found[0] - 1.0).abs() < 1e-12 && found[1].abs() < 1e-12);
    }

    #[test]
    fn fixed_points_example_contains_minus_half_i() {
        let set = fixed_points(&ambivalent_example()).unwrap();
        let target = e(1).scale(&-0.5);
        assert!(set.isolated_roots().any(|r| (r - &target).abs() < 1e-8));
    }

    #[test]
    fn spherical_fixed_class() {
        let set = fixed_points(&quad(sc(0.0), sc(1.0))).unwrap();
        assert!(set.isolated.is_empty());
        assert_eq!(set.spherical.len(), 1);
        let class = &set.spherical[0];
        assert!((class.trace - 1.0).abs() < 1e-9 && (class.norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classification_examples() {
        let alpha = e(1).scale(&-0.5);
        let rep = classify_fixed(&ambivalent_example(), &alpha).unwrap();
        assert!((rep.big_m - 1.0).abs() < 1e-12 && rep.small_m.abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::Ambivalent);

        let sq = quad(sc(0.0), sc(0.0));
        let rep = classify_fixed(&sq, &sc(0.0)).unwrap();
        assert_eq!((rep.big_m, rep.small_m, rep.verdict), (0.0, 0.0, Verdict::Attracting));
        let rep = classify_fixed(&sq, &sc(1.0)).unwrap();
        assert_eq!((rep.big_m, rep.small_m, rep.verdict), (2.0, 2.0, Verdict::Repelling));

        let f = quad(sc(0.0), oct([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        let rep = classify_fixed(&f, &e(1)).unwrap();
        assert!((rep.big_m - 2.0).abs() < 1e-12 && rep.small_m.abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::Ambivalent);

        assert!(matches!(
            classify_fixed(&sq, &sc(3.0)),
            Err(Error::NotAFixedPoint { .. })
        ));
    }

    #[test]
    fn composition_fixed_points() {
        let sq = quad(sc(0.0), sc(0.0));
        assert!(verify_composition_fixed(&sq, &sc(1.0), 4).unwrap().holds);
        assert!(verify_composition_fixed(&ambivalent_example(), &e(1).scale(&-0.5), 3)
            .unwrap()
            .holds);

        let q = Algebra::<Rational>::standard();
        let r = |n, d| Rational::from_ratio(n, d);
        let alpha = Octonion::new(&q, [r(1, 2), r(-1, 3), r(2, 1), r(0, 1), r(1, 1), r(0, 1), r(-1, 2), r(1, 4)]);
        let b = Octonion::new(&q, [r(0, 1), r(1, 1), r(1, 3), r(-2, 1), r(0, 1), r(1, 2), r(0, 1), r(3, 1)]);
        let c = &(&alpha - &(&alpha * &alpha)) - &(&b * &alpha);
        let f = OPolynomial::new(&q, vec![c, b, Octonion::one(&q)]).unwrap();
        assert_eq!(
            verify_composition_fixed(&f, &alpha, 3).unwrap(),
            CompositionCheck {
                holds: true,
                failing_n: None
            }
        );
    }

    #[test]
    fn orbits() {
        let sq = quad(sc(0.0), sc(0.0));
        let o = orbit(&sq, &sc(2.0), 10, 4.0, 1e-9).unwrap();
        assert!(o.escaped);
        assert_eq!(o.iterates.len(), 2);

        let f = quad(sc(0.0), sc(-1.0));
        let o = orbit(&f, &sc(0.0), 10, 2.0, 1e-9).unwrap();
        assert_eq!(o.detected_period, Some(2));
        assert!(!o.escaped);
        assert_eq!(o.iterates, vec![sc(0.0), sc(-1.0), sc(0.0)]);

        let alpha = e(1).scale(&-0.5);
        let start = &alpha + &e(2).scale(&0.01);
        let o = orbit(&ambivalent_example(), &start, 50, 1e6, 1e-12).unwrap();
        let last = o.iterates.last().unwrap();
        assert!((last - &alpha).abs() > 1e-3);
    }

    #[test]
    fn pseudo_periods() {
        let f = quad(sc(0.0), sc(-1.0));
        assert_eq!(detect_pseudo_period(&f, &sc(0.0), 20, 1e-9), Some(2));
        assert_eq!(detect_pseudo_period(&quad(sc(0.0), sc(0.0)), &sc(1.0), 20, 1e-9), Some(1));
        assert_eq!(detect_pseudo_period(&f, &e(1), 20, 1e-9), None);

        let rep = classify_pseudo_periodic(&f, &sc(0.0), 2).unwrap();
        assert_eq!(rep.product, 0.0);
        assert_eq!(rep.verdict, PeriodicVerdict::Attracting);
        assert_eq!(rep.cycle, vec![sc(0.0), sc(-1.0)]);
        assert!(matches!(
            classify_pseudo_periodic(&f, &sc(0.0), 4),
            Err(Error::OrderMismatch { expected: 4, found: Some(2) })
        ));
    }

    #[test]
    fn period_one_matches_fixed_classification() {
        let sq = quad(sc(0.0), sc(0.0));
        for a in [0.0, 1.0] {
            let fixed = classify_fixed(&sq, &sc(a)).unwrap();
            let periodic = classify_pseudo_periodic(&sq, &sc(a), 1).unwrap();
            assert_eq!(
                fixed.verdict == Verdict::Attracting,
                periodic.verdict == PeriodicVerdict::Attracting
            );
        }
    }
}
