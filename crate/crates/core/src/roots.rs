//! Roots of octonion polynomials by conjugacy-class reduction, and the root
//! sets of their right and left scalar multiples.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    conjugating_element, quat_subalgebra_containing, Algebra, Octonion, QuatSubalgebra,
};
use crate::error::{Error, Result};
use crate::poly::OPolynomial;
use crate::scalar::{epsilon, ClassCandidate, Scalar};

/// A conjugacy class `{λ : tr λ = T, N(λ) = N}`; `central` marks the
/// singleton class `{T/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjClass<S: Scalar> {
    pub trace: S,
    pub norm: S,
    pub central: bool,
}

impl<S: Scalar> ConjClass<S> {
    pub fn new(trace: S, norm: S) -> Self {
        Self {
            trace,
            norm,
            central: false,
        }
    }

    /// The singleton class of a ground-field element.
    pub fn central(r: S) -> Self {
        Self {
            trace: r.clone() + r.clone(),
            norm: r.clone() * r,
            central: true,
        }
    }

    pub fn from_candidate(c: &ClassCandidate<S>) -> Self {
        match c {
            ClassCandidate::CentralRoot { root, .. } => Self::central(root.clone()),
            ClassCandidate::QuadraticClass { trace, norm, .. } => Self::new(trace.clone(), norm.clone()),
        }
    }

    /// The central element of a singleton class.
    pub fn center(&self) -> S {
        self.trace.clone() / S::from_i64(2)
    }

    /// True when `(t, n)` equals this class's `(T, N)`: exactly in exact
    /// mode, within `tol` relative to the magnitudes otherwise.
    pub fn matches(&self, t: &S, n: &S, tol: f64) -> bool {
        let close = |a: &S, b: &S| {
            let scale = 1.0 + a.magnitude().max(b.magnitude());
            (a.clone() - b.clone()).is_negligible(tol * scale)
        };
        close(&self.trace, t) && close(&self.norm, n)
    }

    /// Whether `x` lies in the class.
    pub fn contains(&self, x: &Octonion<S>, tol: f64) -> bool {
        if self.central {
            let scale = 1.0 + x.max_abs();
            return (x - &Octonion::from_scalar(x.algebra(), self.center())).is_negligible(tol * scale);
        }
        self.matches(&x.trace(), &x.norm(), tol)
    }

    /// `T/2 + s·d` with `s` chosen so that the result has norm `N`; `d`
    /// must be trace-zero with `N(d) > 0`. Approximate mode only, since the
    /// scaling needs a square root.
    pub fn member_along(&self, d: &Octonion<S>) -> Option<Octonion<S>> {
        let half = self.center();
        let im_norm = self.norm.clone() - half.clone() * half.clone();
        let s = (im_norm / d.norm()).sqrt()?;
        Some(&Octonion::from_scalar(d.algebra(), half) + &d.scale(&s))
    }
}

/// `f(λ) = Eλ + G` for every `λ` in `class`.
#[derive(Clone, Debug)]
pub struct LinearReduction<S: Scalar> {
    pub e: Octonion<S>,
    pub g: Octonion<S>,
    pub class: ConjClass<S>,
}

/// A class where the reduction did not produce a verified answer.
#[derive(Clone, Debug)]
pub struct Anomaly<S: Scalar> {
    pub class: ConjClass<S>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct RootSet<S: Scalar> {
    pub isolated: Vec<(Octonion<S>, ConjClass<S>)>,
    /// Classes made entirely of roots.
    pub spherical: Vec<ConjClass<S>>,
    pub anomalies: Vec<Anomaly<S>>,
}

impl<S: Scalar> RootSet<S> {
    pub fn isolated_roots(&self) -> impl Iterator<Item = &Octonion<S>> {
        self.isolated.iter().map(|(r, _)| r)
    }
}

/// Relative tolerance for root and class checks in approximate mode.
pub(crate) fn root_tol() -> f64 {
    (epsilon() * 10.0).max(1e-12)
}

/// Scale for residuals of `f` near `λ`.
fn residual_scale<S: Scalar>(f: &OPolynomial<S>, lambda: &Octonion<S>) -> f64 {
    let n = f.degree().unwrap_or(0) as i32;
    (1.0 + f.max_abs()) * (1.0 + lambda.max_abs()).powi(n)
}

/// Whether `f(λ)` vanishes (exactly, or relative to the size of `f` and
/// `λ` in approximate mode).
pub fn is_root<S: Scalar>(f: &OPolynomial<S>, lambda: &Octonion<S>) -> bool {
    f.eval(lambda)
        .is_negligible(root_tol() * residual_scale(f, lambda))
}

/// Reduces `f(λ)` on a class to `Eλ + G` using `λ^{t+1} = (T p_t + q_t)λ - N p_t`.
pub fn reduce_linear<S: Scalar>(f: &OPolynomial<S>, class: &ConjClass<S>) -> Result<LinearReduction<S>> {
    if f.is_zero() {
        return Err(Error::InvalidInput("reduction of the zero polynomial".into()));
    }
    let alg = f.algebra();
    let mut e = Octonion::zero(alg);
    let mut g = Octonion::zero(alg);
    let (mut p, mut q) = (S::zero(), S::one());
    for a in f.coeffs() {
        e = &e + &a.scale(&p);
        g = &g + &a.scale(&q);
        let next_p = class.trace.clone() * p.clone() + q;
        q = -(class.norm.clone() * p);
        p = next_p;
    }
    Ok(LinearReduction {
        e,
        g,
        class: class.clone(),
    })
}

fn reduction_negligible<S: Scalar>(x: &Octonion<S>, f: &OPolynomial<S>, class: &ConjClass<S>) -> bool {
    let n = f.degree().unwrap_or(0) as i32;
    let scale = (1.0 + f.max_abs()) * (1.0 + class.trace.magnitude() + class.norm.magnitude()).powi(n);
    x.is_negligible(root_tol() * scale)
}

/// The conjugacy classes of the companion polynomial's roots.
pub fn rmr_classes<S: Scalar>(f: &OPolynomial<S>) -> Result<Vec<ConjClass<S>>> {
    let c = f.companion()?;
    Ok(S::central_roots(&c)?
        .iter()
        .map(ConjClass::from_candidate)
        .collect())
}

/// All roots of `f`, class by class.
pub fn roots<S: Scalar>(f: &OPolynomial<S>) -> Result<RootSet<S>> {
    match f.degree() {
        None => return Err(Error::InvalidInput("zero polynomial".into())),
        Some(0) => return Err(Error::InvalidInput("constant polynomial has no root set".into())),
        _ => {}
    }
    let mut set = RootSet {
        isolated: Vec::new(),
        spherical: Vec::new(),
        anomalies: Vec::new(),
    };
    for class in rmr_classes(f)? {
        if class.central {
            let r = Octonion::from_scalar(f.algebra(), class.center());
            if is_root(f, &r) {
                set.isolated.push((r, class));
            } else {
                set.anomalies.push(Anomaly {
                    class,
                    reason: "central companion root is not a root".into(),
                });
            }
            continue;
        }
        let red = reduce_linear(f, &class)?;
        let e_zero = reduction_negligible(&red.e, f, &class);
        let g_zero = reduction_negligible(&red.g, f, &class);
        match (e_zero, g_zero) {
            (true, true) => set.spherical.push(class),
            (true, false) => set.anomalies.push(Anomaly {
                class,
                reason: "E = 0 but G != 0".into(),
            }),
            _ => match red.e.inverse() {
                Ok(e_inv) => {
                    let lambda = -(&e_inv * &red.g);
                    if !class.contains(&lambda, root_tol()) {
                        set.anomalies.push(Anomaly {
                            class,
                            reason: format!("candidate {lambda} lies outside the class"),
                        });
                    } else if !is_root(f, &lambda) {
                        set.anomalies.push(Anomaly {
                            class,
                            reason: format!("candidate {lambda} is not a root"),
                        });
                    } else {
                        set.isolated.push((lambda, class));
                    }
                }
                Err(_) => set.anomalies.push(Anomaly {
                    class,
                    reason: "E is not invertible".into(),
                }),
            },
        }
    }
    Ok(set)
}

/// Whether `μ` is a root of some right multiple `f·c`.
pub fn rmr_contains<S: Scalar>(f: &OPolynomial<S>, mu: &Octonion<S>) -> Result<bool> {
    Ok(rmr_classes(f)?.iter().any(|c| c.contains(mu, root_tol())))
}

/// Some invertible `c` with `(f·c)(μ) = 0`.
pub fn rmr_witness<S: Scalar>(f: &OPolynomial<S>, mu: &Octonion<S>, seed: u64) -> Result<Octonion<S>> {
    let alg = f.algebra();
    let one = Octonion::one(alg);
    let set = roots(f)?;
    let c = if set.spherical.iter().any(|c| c.contains(mu, root_tol())) {
        one
    } else {
        let (lambda, _) = set
            .isolated
            .iter()
            .find(|(_, c)| c.contains(mu, root_tol()))
            .ok_or(Error::NotInRmr)?;
        if lambda.approx_eq(mu) {
            one
        } else {
            conjugating_element(lambda, mu, seed)?.inverse()?
        }
    };
    if !is_root(&f.scale_right(&c)?, mu) {
        return Err(Error::WitnessFailure(format!(
            "(f·c)({mu}) does not vanish for c = {c}"
        )));
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The root in `class` of `c·f` (left) or `f·c` (right):
/// `-(E⁻¹c⁻¹)(cG)` or `-(c⁻¹E⁻¹)(Gc)`.
pub fn multiple_root<S: Scalar>(
    f: &OPolynomial<S>,
    class: &ConjClass<S>,
    c: &Octonion<S>,
    side: Side,
) -> Result<Octonion<S>> {
    let red = reduce_linear(f, class)?;
    if reduction_negligible(&red.e, f, class) {
        return Err(Error::WholeClass);
    }
    let e_inv = red.e.inverse()?;
    let c_inv = c.inverse()?;
    let (root, multiple) = match side {
        Side::Left => (-(&(&e_inv * &c_inv) * &(c * &red.g)), f.scale_left(c)?),
        Side::Right => (-(&(&c_inv * &e_inv) * &(&red.g * c)), f.scale_right(c)?),
    };
    if !is_root(&multiple, &root) {
        return Err(Error::WitnessFailure(format!(
            "{root} is not a root of the multiple by {c}"
        )));
    }
    Ok(root)
}

/// The parametrized part of a class's left-multiple root set,
/// `{-xE⁻¹G + (x-1)GE⁻¹ + w : 0 ≤ x ≤ 1, w ⊥ Q, N(w) = x(1-x)·N([Ḡ,E⁻¹])}`.
#[derive(Clone, Debug)]
pub struct LmrParametrization<S: Scalar> {
    pub q: QuatSubalgebra<S>,
    pub e: Octonion<S>,
    pub g: Octonion<S>,
    pub einv_g: Octonion<S>,
    pub g_einv: Octonion<S>,
    /// `[Ḡ, E⁻¹]`.
    pub comm: Octonion<S>,
    pub comm_norm: S,
}

#[derive(Clone, Debug)]
pub enum LmrKind<S: Scalar> {
    WholeClass,
    SinglePoint(Octonion<S>),
    Parametrized(Box<LmrParametrization<S>>),
}

impl<S: Scalar> LmrKind<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::WholeClass => "whole-class",
            Self::SinglePoint(_) => "single-point",
            Self::Parametrized(_) => "parametrized",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LmrClassDescription<S: Scalar> {
    pub class: ConjClass<S>,
    pub kind: LmrKind<S>,
    pub algebra: Arc<Algebra<S>>,
}

/// Describes, class by class, the roots of all left multiples `c·f`.
/// Classes with `E = 0` and `G ≠ 0` contain no such roots and are omitted.
pub fn lmr_describe<S: Scalar>(f: &OPolynomial<S>) -> Result<Vec<LmrClassDescription<S>>> {
    let mut out = Vec::new();
    for class in rmr_classes(f)? {
        let red = reduce_linear(f, &class)?;
        if reduction_negligible(&red.e, f, &class) {
            if reduction_negligible(&red.g, f, &class) {
                out.push(LmrClassDescription {
                    class,
                    kind: LmrKind::WholeClass,
                    algebra: Arc::clone(f.algebra()),
                });
            }
            continue;
        }
        let e_inv = red.e.inverse()?;
        let einv_g = &e_inv * &red.g;
        let comm = red.g.conj().commutator(&e_inv)?;
        let kind = if reduction_negligible(&comm, f, &class) {
            LmrKind::SinglePoint(-einv_g)
        } else {
            let q = quat_subalgebra_containing(&red.e, &red.g)?;
            let g_einv = &red.g * &e_inv;
            LmrKind::Parametrized(Box::new(LmrParametrization {
                q,
                comm_norm: comm.norm(),
                e: red.e,
                g: red.g,
                einv_g,
                g_einv,
                comm,
            }))
        };
        out.push(LmrClassDescription {
            class,
            kind,
            algebra: Arc::clone(f.algebra()),
        });
    }
    Ok(out)
}

/// One sampled left-multiple root with its generating `c = a + bℓ`.
#[derive(Clone, Debug)]
pub struct LmrSample<S: Scalar> {
    pub a: Octonion<S>,
    pub b: Octonion<S>,
    pub c: Octonion<S>,
    pub point: Octonion<S>,
}

impl<S: Scalar> LmrParametrization<S> {
    /// `-1/N(a+bℓ) · (N(a)E⁻¹G - γN(b)GE⁻¹ + (b[Ḡ,E⁻¹]ā)ℓ)` for `a, b ∈ Q`.
    pub fn point(&self, a: &Octonion<S>, b: &Octonion<S>) -> Result<Octonion<S>> {
        let gamma = self.q.gamma_eff.clone();
        let na = a.norm();
        let nb = b.norm();
        let nc = na.clone() - gamma.clone() * nb.clone();
        if nc.is_exactly_zero() {
            return Err(Error::NotInvertible);
        }
        let ell_part = &(&(b * &self.comm) * &a.conj()) * &self.q.ell;
        let sum = &(&self.einv_g.scale(&na) - &self.g_einv.scale(&(gamma * nb))) + &ell_part;
        Ok(sum.scale(&(-(S::one() / nc))))
    }

    /// The generating element `a + bℓ`.
    pub fn generator(&self, a: &Octonion<S>, b: &Octonion<S>) -> Octonion<S> {
        a + &(b * &self.q.ell)
    }
}

/// `count` seeded samples from a class description.
pub fn lmr_sample<S: Scalar>(
    desc: &LmrClassDescription<S>,
    count: usize,
    seed: u64,
) -> Result<Vec<LmrSample<S>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = &desc.algebra;
    let mut out = Vec::with_capacity(count);
    match &desc.kind {
        LmrKind::Parametrized(p) => {
            // E and G do not commute, so 1, E, G, EG span Q; they are much
            // smaller than the orthogonal basis in exact mode
            let gens = [Octonion::one(alg), p.e.clone(), p.g.clone(), &p.e * &p.g];
            let draw = |rng: &mut ChaCha8Rng| {
                gens.iter().fold(Octonion::zero(alg), |acc, x| {
                    &acc + &x.scale(&S::from_i64(rng.gen_range(-3..=3)))
                })
            };
            while out.len() < count {
                let a = draw(&mut rng);
                let b = draw(&mut rng);
                let point = match p.point(&a, &b) {
                    Ok(x) => x,
                    Err(Error::NotInvertible) => continue,
                    Err(e) => return Err(e),
                };
                let c = p.generator(&a, &b);
                out.push(LmrSample { a, b, c, point });
            }
        }
        LmrKind::SinglePoint(x) => {
            while out.len() < count {
                let c = random_element(alg, &mut rng);
                if c.norm().is_exactly_zero() {
                    continue;
                }
                out.push(LmrSample {
                    a: c.clone(),
                    b: Octonion::zero(alg),
                    c,
                    point: x.clone(),
                });
            }
        }
        LmrKind::WholeClass => {
            for _ in 0..count {
                out.push(LmrSample {
                    a: Octonion::one(alg),
                    b: Octonion::zero(alg),
                    c: Octonion::one(alg),
                    point: random_class_member(&desc.class, alg, &mut rng)?,
                });
            }
        }
    }
    Ok(out)
}

/// An element with small random coordinates.
pub fn random_element<S: Scalar, R: Rng + ?Sized>(alg: &Arc<Algebra<S>>, rng: &mut R) -> Octonion<S> {
    Octonion::new(alg, std::array::from_fn(|_| S::random_small(rng)))
}

/// A random member of a class. Non-central classes need a square root, so
/// exact mode is unsupported for them; the norm form must be definite.
pub fn random_class_member<S: Scalar, R: Rng + ?Sized>(
    class: &ConjClass<S>,
    alg: &Arc<Algebra<S>>,
    rng: &mut R,
) -> Result<Octonion<S>> {
    if class.central {
        return Ok(Octonion::from_scalar(alg, class.center()));
    }
    if S::EXACT {
        return Err(Error::Unsupported(
            "sampling a whole non-central class needs real mode".into(),
        ));
    }
    if !alg.is_definite() {
        return Err(Error::Unsupported(
            "sampling a whole class needs a definite norm form".into(),
        ));
    }
    loop {
        let d = random_element(alg, rng).im();
        if d.norm().to_f64() > 1e-6 {
            if let Some(x) = class.member_along(&d) {
                return Ok(x);
            }
            return Err(Error::InvalidInput(format!(
                "class (T={}, N={}) is empty",
                class.trace, class.norm
            )));
        }
    }
}

/// Whether `μ` is the root of some left multiple `c·f` in the described
/// class. The parametrized test needs a definite norm form.
pub fn lmr_contains<S: Scalar>(desc: &LmrClassDescription<S>, mu: &Octonion<S>) -> Result<bool> {
    let tol = root_tol();
    match &desc.kind {
        LmrKind::WholeClass => Ok(desc.class.contains(mu, tol)),
        LmrKind::SinglePoint(x) => Ok(x.approx_eq(mu) || (x - mu).is_negligible(tol * (1.0 + x.max_abs()))),
        LmrKind::Parametrized(p) => {
            if !desc.algebra.is_definite() {
                return Err(Error::Unsupported(
                    "membership test needs a definite norm form".into(),
                ));
            }
            if !desc.class.contains(mu, tol) {
                return Ok(false);
            }
            let scale = 1.0 + mu.max_abs() + p.einv_g.max_abs();
            let u = p.q.project(mu);
            let w = mu - &u;
            // u = -GE⁻¹ + x(GE⁻¹ - E⁻¹G)
            let d = &p.g_einv - &p.einv_g;
            let dd = d.polar(&d);
            if dd.is_negligible(tol * scale * scale) {
                return Err(Error::Internal("degenerate parametrization".into()));
            }
            let shifted = &u + &p.g_einv;
            let x = shifted.polar(&d) / dd;
            if !(&shifted - &d.scale(&x)).is_negligible(tol * scale) {
                return Ok(false);
            }
            let xf = x.to_f64();
            if S::EXACT {
                if x.is_negative() || (S::one() - x.clone()).is_negative() {
                    return Ok(false);
                }
            } else if !(-tol..=1.0 + tol).contains(&xf) {
                return Ok(false);
            }
            let target = x.clone() * (S::one() - x) * p.comm_norm.clone();
            Ok((w.norm() - target).is_negligible(tol * scale * scale))
        }
    }
}
