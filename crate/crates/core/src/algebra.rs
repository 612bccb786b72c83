//! Octonion algebras `Q ⊕ Qℓ` over a quaternion algebra `Q = (α, β)_F`.
//!
//! Elements are stored in the basis `(1, i, j, k, ℓ, iℓ, jℓ, kℓ)` with
//! `i² = α`, `j² = β`, `k = ij = -ji` and `ℓ² = γ`. The multiplication table
//! is generated once, per algebra, from the doubling rule
//! `(q + rℓ)(s + tℓ) = qs + γ t̄ r + (tq + r s̄)ℓ`, applied recursively from
//! the ground field upwards.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{epsilon, Scalar};

/// Names of the basis elements in storage order.
pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "il", "jl", "kl"];

/// Structure constants `(α, β, γ)`, all nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraParams<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
}

impl<S: Scalar> AlgebraParams<S> {
    pub fn new(alpha: S, beta: S, gamma: S) -> Result<Self> {
        if alpha.is_exactly_zero() || beta.is_exactly_zero() || gamma.is_exactly_zero() {
            return Err(Error::InvalidInput(
                "structure constants must be nonzero".into(),
            ));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// `(-1, -1, -1)`: Hamilton's quaternions doubled to the real octonions.
    pub fn standard() -> Self {
        let m = -S::one();
        Self {
            alpha: m.clone(),
            beta: m.clone(),
            gamma: m,
        }
    }
}

/// An octonion algebra with its precomputed multiplication table.
#[derive(Debug)]
pub struct Algebra<S> {
    params: AlgebraParams<S>,
    /// `table[8a + b] = (c, s)` means `e_a e_b = s e_c`.
    table: Vec<(usize, S)>,
    /// Norms of the basis elements; the norm form is diagonal in this basis.
    basis_norms: [S; 8],
}

impl<S: Scalar> Algebra<S> {
    pub fn new(params: AlgebraParams<S>) -> Arc<Self> {
        let consts = [
            params.alpha.clone(),
            params.beta.clone(),
            params.gamma.clone(),
        ];
        let mut table = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let prod = doubling_mul(&unit::<S>(a), &unit::<S>(b), &consts);
                let mut nonzero = prod
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_exactly_zero());
                let (c, s) = nonzero.next().expect("basis product vanished");
                assert!(nonzero.next().is_none(), "basis product is not a monomial");
                table.push((c, s.clone()));
            }
        }
        let basis_norms = std::array::from_fn(|a| {
            let conj = doubling_conj(&unit::<S>(a));
            doubling_mul(&unit::<S>(a), &conj, &consts)[0].clone()
        });
        Arc::new(Self {
            params,
            table,
            basis_norms,
        })
    }

    pub fn standard() -> Arc<Self> {
        Self::new(AlgebraParams::standard())
    }

    pub fn params(&self) -> &AlgebraParams<S> {
        &self.params
    }

    /// Norm of the `a`-th basis element.
    pub fn basis_norm(&self, a: usize) -> &S {
        &self.basis_norms[a]
    }

    /// `e_a e_b = s e_c`, returned as `(c, s)`.
    pub fn basis_product(&self, a: usize, b: usize) -> (usize, &S) {
        let (c, s) = &self.table[8 * a + b];
        (*c, s)
    }

    /// True when the norm form is positive definite (only meaningful for
    /// ordered fields): every basis norm is positive.
    pub fn is_definite(&self) -> bool {
        self.basis_norms.iter().all(|n| n.to_f64() > 0.0)
    }

    fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.params == other.params
    }
}

fn unit<S: Scalar>(a: usize) -> Vec<S> {
    (0..8)
        .map(|k| if k == a { S::one() } else { S::zero() })
        .collect()
}

fn doubling_conj<S: Scalar>(x: &[S]) -> Vec<S> {
    x.iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { c.clone() } else { -c.clone() })
        .collect()
}

/// Recursive Cayley–Dickson product of coordinate vectors of length `2^n`;
/// `consts[n - 1]` is the doubling constant of the top level.
fn doubling_mul<S: Scalar>(x: &[S], y: &[S], consts: &[S]) -> Vec<S> {
    if x.len() == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = x.len() / 2;
    let level = h.trailing_zeros() as usize;
    let (q, r) = x.split_at(h);
    let (s, t) = y.split_at(h);
    let first: Vec<S> = doubling_mul(q, s, consts)
        .into_iter()
        .zip(doubling_mul(&doubling_conj(t), r, consts))
        .map(|(a, b)| a + consts[level].clone() * b)
        .collect();
    let second: Vec<S> = doubling_mul(t, q, consts)
        .into_iter()
        .zip(doubling_mul(r, &doubling_conj(s), consts))
        .map(|(a, b)| a + b)
        .collect();
    first.into_iter().chain(second).collect()
}

/// An element of an octonion algebra.
#[derive(Clone)]
pub struct Octonion<S: Scalar> {
    coords: [S; 8],
    alg: Arc<Algebra<S>>,
}

impl<S: Scalar> Octonion<S> {
    pub fn new(alg: &Arc<Algebra<S>>, coords: [S; 8]) -> Self {
        Self {
            coords,
            alg: Arc::clone(alg),
        }
    }

    pub fn from_scalar(alg: &Arc<Algebra<S>>, s: S) -> Self {
        let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
        coords[0] = s;
        Self::new(alg, coords)
    }

    pub fn zero(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_scalar(alg, S::zero())
    }

    pub fn one(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_scalar(alg, S::one())
    }

    /// The basis element `e_a`.
    pub fn basis(alg: &Arc<Algebra<S>>, a: usize) -> Self {
        Self::new(alg, std::array::from_fn(|k| if k == a { S::one() } else { S::zero() }))
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.alg
    }

    pub fn coords(&self) -> &[S; 8] {
        &self.coords
    }

    pub fn coord(&self, a: usize) -> &S {
        &self.coords[a]
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self::new(&self.alg, std::array::from_fn(|k| f(&self.coords[k])))
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self::new(
            &self.alg,
            std::array::from_fn(|k| f(&self.coords[k], &other.coords[k])),
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, S::add_ref))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, S::sub_ref))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.alg,
            S::table_product(&self.coords, &other.coords, &self.alg.table),
        ))
    }

    /// Multiplication by a ground-field element.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.mul_ref(s))
    }

    /// `q̄ - rℓ` for `q + rℓ`: negates every non-real coordinate.
    pub fn conj(&self) -> Self {
        Self::new(
            &self.alg,
            std::array::from_fn(|k| {
                if k == 0 {
                    self.coords[0].clone()
                } else {
                    -self.coords[k].clone()
                }
            }),
        )
    }

    pub fn trace(&self) -> S {
        self.coords[0].clone() + self.coords[0].clone()
    }

    pub fn norm(&self) -> S {
        S::weighted_dot(&self.coords, &self.coords, &self.alg.basis_norms)
    }

    /// Polar form of the norm, `N(x + y) - N(x) - N(y)`.
    pub fn polar(&self, other: &Self) -> S {
        S::from_i64(2) * S::weighted_dot(&self.coords, &other.coords, &self.alg.basis_norms)
    }

    pub fn re(&self) -> S {
        self.coords[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut out = self.clone();
        out.coords[0] = S::zero();
        out
    }

    /// Central elements are exactly the scalars (characteristic not 2).
    pub fn is_central(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_exactly_zero())
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_exactly_zero())
    }

    /// Every coordinate is negligible at absolute tolerance `tol`.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c.is_negligible(tol))
    }

    /// Imaginary part negligible at absolute tolerance `tol`.
    pub fn is_nearly_central(&self, tol: f64) -> bool {
        self.coords[1..].iter().all(|c| c.is_negligible(tol))
    }

    /// Coordinatewise comparison, exact in exact mode and within
    /// `eps * (1 + max|coord|)` otherwise.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if !self.same_algebra(other) {
            return false;
        }
        let scale = 1.0 + self.max_abs().max(other.max_abs());
        self.zip(other, S::sub_ref)
            .is_negligible(epsilon() * scale)
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Euclidean length of the coordinate vector (approximate in both modes).
    pub fn coord_len(&self) -> f64 {
        self.coords
            .iter()
            .map(|c| c.to_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_exactly_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_n = S::one() / n;
        Ok(self.conj().scale(&inv_n))
    }

    /// `self^t`; powers of a single element are well defined (power
    /// associativity).
    pub fn pow(&self, t: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..t {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> Octonion<f64> {
        let p = &self.alg.params;
        let alg = Algebra::new(AlgebraParams {
            alpha: p.alpha.to_f64(),
            beta: p.beta.to_f64(),
            gamma: p.gamma.to_f64(),
        });
        Octonion::new(&alg, std::array::from_fn(|k| self.coords[k].to_f64()))
    }
}

impl Octonion<f64> {
    /// `√norm`; requires a definite norm form.
    pub fn abs(&self) -> f64 {
        self.norm().max(0.0).sqrt()
    }
}

impl<S: Scalar> PartialEq for Octonion<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coords == other.coords
    }
}

impl<S: Scalar> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion({self})")
    }
}

impl<S: Scalar> fmt::Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::octonion_to_text(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<S: Scalar> $trait<&Octonion<S>> for &Octonion<S> {
            type Output = Octonion<S>;
            fn $method(self, rhs: &Octonion<S>) -> Octonion<S> {
                self.$try(rhs).expect("octonions from different algebras")
            }
        }
        impl<S: Scalar> $trait<Octonion<S>> for Octonion<S> {
            type Output = Octonion<S>;
            fn $method(self, rhs: Octonion<S>) -> Octonion<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $trait<&Octonion<S>> for Octonion<S> {
            type Output = Octonion<S>;
            fn $method(self, rhs: &Octonion<S>) -> Octonion<S> {
                (&self).$method(rhs)
            }
        }
        impl<S: Scalar> $trait<Octonion<S>> for &Octonion<S> {
            type Output = Octonion<S>;
            fn $method(self, rhs: Octonion<S>) -> Octonion<S> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        -&self
    }
}

/// Relative tolerance for approximate-mode structural decisions (rank,
/// anisotropy, trace/norm matching).
fn structural_tol(scale: f64) -> f64 {
    (epsilon() * 1e2).max(1e-12) * scale
}

/// Finds `δ` with `tr δ = 0`, `N(δ) ≠ 0` and `δλ = μδ`, i.e. `μ = δλδ⁻¹`.
///
/// The nullspace of `δ ↦ δλ - μδ` restricted to trace-zero `δ` is
/// computed directly; the basis vector of largest `|N|` is returned (unit
/// length in approximate mode), falling back to seeded random combinations.
pub fn conjugating_element<S: Scalar>(
    lambda: &Octonion<S>,
    mu: &Octonion<S>,
    seed: u64,
) -> Result<Octonion<S>> {
    lambda.check(mu)?;
    let alg = lambda.algebra();
    let scale = 1.0 + lambda.max_abs().max(mu.max_abs());
    let tol = structural_tol(scale * scale);
    if !(lambda.trace() - mu.trace()).is_negligible(structural_tol(scale))
        || !(lambda.norm() - mu.norm()).is_negligible(tol)
    {
        return Err(Error::NotConjugate(format!(
            "trace/norm of {lambda} and {mu} differ"
        )));
    }
    if lambda.is_nearly_central(structural_tol(scale)) {
        if (lambda - mu).is_negligible(structural_tol(scale)) {
            return Ok(Octonion::basis(alg, 1));
        }
        return Err(Error::NotConjugate(format!(
            "{lambda} is central and differs from {mu}"
        )));
    }

    // columns: images of e_1..e_7 under δ ↦ δλ - μδ
    let columns: Vec<Octonion<S>> = (1..8)
        .map(|a| {
            let e = Octonion::basis(alg, a);
            &(&e * lambda) - &(mu * &e)
        })
        .collect();
    let matrix: Vec<Vec<S>> = (0..8)
        .map(|row| columns.iter().map(|c| c.coords[row].clone()).collect())
        .collect();
    let null = linalg::nullspace(&matrix, structural_tol(scale));
    let candidates: Vec<Octonion<S>> = null
        .iter()
        .map(|v| {
            let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
            for (k, c) in v.iter().enumerate() {
                coords[k + 1] = c.clone();
            }
            Octonion::new(alg, coords)
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::WitnessFailure(format!(
            "no trace-zero solution of δλ = μδ for λ = {lambda}, μ = {mu}"
        )));
    }

    let anisotropic = |d: &Octonion<S>| {
        let n = d.norm();
        let len = d.coord_len();
        (!n.is_negligible(structural_tol(len * len))).then_some(n)
    };
    let mut best = first_max(
        candidates
            .iter()
            .filter_map(|d| anisotropic(d).map(|n| (d.clone(), n.magnitude()))),
    );
    if best.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let combo = candidates.iter().fold(Octonion::zero(alg), |acc, d| {
                let w = S::from_i64(rng.gen_range(-5..=5));
                &acc + &d.scale(&w)
            });
            if anisotropic(&combo).is_some() {
                best = Some(combo);
                break;
            }
        }
    }
    let delta = best.ok_or_else(|| {
        Error::WitnessFailure(format!(
            "every trace-zero solution is isotropic for λ = {lambda}, μ = {mu}"
        ))
    })?;
    let delta = normalize(&delta);
    let residual = &(&delta * lambda) - &(mu * &delta);
    if !residual.is_negligible(structural_tol(scale)) {
        return Err(Error::WitnessFailure(format!(
            "conjugation check failed for λ = {lambda}, μ = {mu}"
        )));
    }
    Ok(delta)
}

/// Divides by `√N` in approximate mode when the norm is positive; in exact
/// mode rescales to coprime integer coordinates.
fn normalize<S: Scalar>(x: &Octonion<S>) -> Octonion<S> {
    if S::EXACT {
        return match S::primitive_factor(x.coords()) {
            Some(k) => x.scale(&k),
            None => x.clone(),
        };
    }
    match x.norm().sqrt() {
        Some(r) if !r.is_exactly_zero() => x.scale(&(S::one() / r)),
        _ => x.clone(),
    }
}

/// A quaternion subalgebra `span(1, u, v, uv)` together with an anisotropic
/// `ℓ` orthogonal to it, so that the whole algebra is `Q ⊕ Qℓ`.
#[derive(Clone, Debug)]
pub struct QuatSubalgebra<S: Scalar> {
    pub basis: [Octonion<S>; 4],
    pub ell: Octonion<S>,
    /// `ℓ² = -N(ℓ)`.
    pub gamma_eff: S,
}

impl<S: Scalar> QuatSubalgebra<S> {
    /// `c₀ + c₁u + c₂v + c₃uv`.
    pub fn element(&self, c: &[S; 4]) -> Octonion<S> {
        self.basis
            .iter()
            .zip(c)
            .fold(Octonion::zero(self.basis[0].algebra()), |acc, (e, s)| {
                &acc + &e.scale(s)
            })
    }

    /// Orthogonal projection onto `Q` with respect to the polar form.
    pub fn project(&self, x: &Octonion<S>) -> Octonion<S> {
        self.basis
            .iter()
            .fold(Octonion::zero(x.algebra()), |acc, e| {
                let w = x.polar(e) / e.polar(e);
                &acc + &e.scale(&w)
            })
    }

    /// Coordinates of `x`'s projection in the basis `(1, u, v, uv)`.
    pub fn coordinates(&self, x: &Octonion<S>) -> [S; 4] {
        std::array::from_fn(|k| x.polar(&self.basis[k]) / self.basis[k].polar(&self.basis[k]))
    }
}

/// Removes from `x` its components along the mutually orthogonal `basis`.
fn orthogonalize<S: Scalar>(x: &Octonion<S>, basis: &[Octonion<S>]) -> Octonion<S> {
    basis.iter().fold(x.clone(), |acc, e| {
        let w = acc.polar(e) / e.polar(e);
        &acc - &e.scale(&w)
    })
}

/// The basis element whose component orthogonal to `basis` has the largest
/// norm magnitude, if any is anisotropic.
fn orthogonal_search<S: Scalar>(
    alg: &Arc<Algebra<S>>,
    basis: &[Octonion<S>],
    from: usize,
) -> Option<Octonion<S>> {
    first_max(
        (from..8)
            .map(|a| orthogonalize(&Octonion::basis(alg, a), basis))
            .filter(|w| !w.norm().is_negligible(structural_tol(1.0)))
            .map(|w| {
                let n = w.norm().magnitude();
                (w, n)
            }),
    )
}

/// A basis unit already orthogonal to every element of `basis`.
fn orthogonal_unit<S: Scalar>(alg: &Arc<Algebra<S>>, basis: &[Octonion<S>]) -> Option<Octonion<S>> {
    (1..8)
        .map(|a| Octonion::basis(alg, a))
        .find(|e| {
            !e.norm().is_exactly_zero() && basis.iter().all(|b| e.polar(b).is_exactly_zero())
        })
}

/// `[u, v, e_a]` lies outside the subalgebra generated by `u` and `v` and is
/// orthogonal to it; picks the anisotropic one of largest norm.
fn associator_search<S: Scalar>(
    alg: &Arc<Algebra<S>>,
    u: &Octonion<S>,
    v: &Octonion<S>,
) -> Option<Octonion<S>> {
    let uv = u * v;
    let scale = (1.0 + u.max_abs()) * (1.0 + v.max_abs());
    first_max(
        (1..8)
            .map(|a| {
                let e = Octonion::basis(alg, a);
                &(&uv * &e) - &(u * &(v * &e))
            })
            .filter(|w| !w.norm().is_negligible(structural_tol(scale * scale)))
            .map(|w| {
                let n = w.norm().magnitude();
                (w, n)
            }),
    )
}

/// The first item attaining the maximal score.
fn first_max<T>(items: impl Iterator<Item = (T, f64)>) -> Option<T> {
    let mut best: Option<(T, f64)> = None;
    for (item, score) in items {
        if best.as_ref().is_none_or(|(_, s)| score > *s) {
            best = Some((item, score));
        }
    }
    best.map(|(item, _)| item)
}

/// A quaternion subalgebra containing `e` and `g` plus a doubling element.
pub fn quat_subalgebra_containing<S: Scalar>(
    e: &Octonion<S>,
    g: &Octonion<S>,
) -> Result<QuatSubalgebra<S>> {
    e.check(g)?;
    let alg = e.algebra();
    let tol_e = structural_tol(1.0 + e.max_abs());
    let tol_g = structural_tol(1.0 + g.max_abs());
    let e_central = e.is_nearly_central(tol_e);
    let g_central = g.is_nearly_central(tol_g);
    if e_central && g_central {
        return Err(Error::DegenerateCommutative);
    }
    let one = Octonion::one(alg);
    let u = normalize(&if e_central { g.im() } else { e.im() });
    if u.norm().is_negligible(structural_tol(u.coord_len().powi(2))) {
        return Err(Error::Unsupported(format!(
            "imaginary part of {u} is isotropic"
        )));
    }
    let v_from_g = (!e_central && !g_central)
        .then(|| orthogonalize(&g.im(), std::slice::from_ref(&u)))
        .filter(|w| !w.norm().is_negligible(structural_tol((1.0 + g.max_abs()).powi(2))));
    let (v0, v) = match v_from_g {
        Some(w) => (g.im(), w),
        None => {
            let w = orthogonal_search(alg, &[one.clone(), u.clone()], 1)
                .ok_or_else(|| Error::Internal("no anisotropic vector orthogonal to u".into()))?;
            (w.clone(), w)
        }
    };
    let v = normalize(&v);
    let uv = &u * &v;
    let basis = [one, u, v, uv];
    let ell = orthogonal_unit(alg, &basis)
        .or_else(|| associator_search(alg, &basis[1], &v0))
        .or_else(|| orthogonal_search(alg, &basis, 0))
        .ok_or_else(|| Error::Internal("no anisotropic vector orthogonal to Q".into()))?;
    let ell = normalize(&ell);
    let gamma_eff = -ell.norm();
    Ok(QuatSubalgebra {
        basis,
        ell,
        gamma_eff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn alg() -> Arc<Algebra<Rational>> {
        Algebra::standard()
    }

    fn e(a: usize) -> Octonion<Rational> {
        Octonion::basis(&alg(), a)
    }

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn oct(c: [i64; 8]) -> Octonion<Rational> {
        Octonion::new(&alg(), c.map(r))
    }

    #[test]
    fn basis_products() {
        let (i, j, k, l) = (e(1), e(2), e(3), e(4));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&l * &l, oct([-1, 0, 0, 0, 0, 0, 0, 0]));
        // (iℓ)(jℓ) = γ j̄ i = ji = -k
        assert_eq!(&e(5) * &e(6), -&k);
        assert_eq!(&i * &i, oct([-1, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn general_params_relations() {
        let p = AlgebraParams::new(r(2), r(-3), r(5)).unwrap();
        let alg = Algebra::new(p);
        let b = |a| Octonion::basis(&alg, a);
        let sc = |s: i64| Octonion::from_scalar(&alg, r(s));
        assert_eq!(&b(1) * &b(1), sc(2));
        assert_eq!(&b(2) * &b(2), sc(-3));
        assert_eq!(&b(3) * &b(3), sc(6));
        assert_eq!(&b(4) * &b(4), sc(5));
        assert_eq!(&b(1) * &b(2), -(&b(2) * &b(1)));
        // norm(a + bi + cj + dk) = a² - αb² - βc² + αβd²
        let z = Octonion::new(&alg, [1, 2, 3, 4, 0, 0, 0, 0].map(r));
        assert_eq!(z.norm(), r(1 - 2 * 4 + 3 * 9 - 6 * 16));
        assert_eq!(z.norm(), (&z * &z.conj()).re());
    }

    #[test]
    fn zero_params_rejected() {
        assert!(AlgebraParams::new(r(0), r(1), r(1)).is_err());
    }

    #[test]
    fn conj_trace_norm() {
        let x = oct([1, 1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(x.conj(), oct([1, -1, 0, 0, -1, 0, 0, 0]));
        assert_eq!(x.trace(), r(2));
        assert_eq!(x.norm(), r(3));
        assert_eq!(e(1).commutator(&e(2)).unwrap(), oct([0, 0, 0, 2, 0, 0, 0, 0]));
    }

    #[test]
    fn inverses() {
        assert_eq!(e(1).inverse().unwrap(), -&e(1));
        assert_eq!(e(5).inverse().unwrap(), -&e(5));
        assert_eq!(
            oct([2, 0, 0, 0, 0, 0, 0, 0]).inverse().unwrap(),
            Octonion::from_scalar(&alg(), Rational::from_ratio(1, 2))
        );
        assert_eq!(Octonion::zero(&alg()).inverse(), Err(Error::NotInvertible));
        let x = oct([1, -2, 3, 0, 1, 1, 0, -1]);
        assert_eq!(&x * &x.inverse().unwrap(), Octonion::one(&alg()));
        assert_eq!(&x.inverse().unwrap() * &x, Octonion::one(&alg()));
    }

    #[test]
    fn params_mismatch_is_an_error() {
        let other = Algebra::new(AlgebraParams::new(r(-1), r(-1), r(1)).unwrap());
        let y = Octonion::basis(&other, 1);
        assert_eq!(e(1).try_mul(&y), Err(Error::ParamsMismatch));
    }

    #[test]
    fn conjugating_examples() {
        let d = conjugating_element(&e(2), &-&e(2), 1).unwrap();
        assert_eq!(d.trace(), r(0));
        assert_eq!(&d * &e(2), &-&e(2) * &d);
        assert_eq!(d, e(1));

        assert_eq!(conjugating_element(&e(1), &e(1), 1).unwrap(), e(1));

        let d = conjugating_element(&e(1), &e(2), 1).unwrap();
        assert_eq!(d.trace(), r(0));
        assert_eq!(&d * &e(1), &e(2) * &d);
        assert!(!d.norm().is_exactly_zero());
    }

    #[test]
    fn conjugating_rejects() {
        assert!(matches!(
            conjugating_element(&e(1), &oct([1, 0, 0, 0, 0, 0, 0, 0]), 0),
            Err(Error::NotConjugate(_))
        ));
        let two = oct([2, 0, 0, 0, 0, 0, 0, 0]);
        let three = oct([3, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(
            conjugating_element(&two, &three, 0),
            Err(Error::NotConjugate(_))
        ));
    }

    fn check_subalgebra(q: &QuatSubalgebra<Rational>, members: &[&Octonion<Rational>]) {
        for x in &q.basis {
            for y in &q.basis {
                let p = x * y;
                assert_eq!(q.project(&p), p, "not closed");
            }
            assert!(x.polar(&q.ell).is_exactly_zero());
        }
        for m in members {
            assert_eq!(&q.project(m), *m, "{m} not contained");
        }
        assert_eq!(&q.ell * &q.ell, Octonion::from_scalar(&alg(), q.gamma_eff.clone()));
    }

    #[test]
    fn subalgebra_examples() {
        let (ei, g) = (e(1), -&e(3));
        let q = quat_subalgebra_containing(&ei, &g).unwrap();
        check_subalgebra(&q, &[&ei, &g, &e(2)]);
        assert_eq!(q.ell, e(4));

        let e1 = oct([1, 1, 0, 0, 0, 0, 0, 0]);
        let q = quat_subalgebra_containing(&e1, &e(1)).unwrap();
        check_subalgebra(&q, &[&e1, &e(1)]);

        let q = quat_subalgebra_containing(&e(4), &e(5)).unwrap();
        check_subalgebra(&q, &[&e(4), &e(5)]);

        assert_eq!(
            quat_subalgebra_containing(&oct([1, 0, 0, 0, 0, 0, 0, 0]), &oct([2, 0, 0, 0, 0, 0, 0, 0]))
                .unwrap_err(),
            Error::DegenerateCommutative
        );
    }

    #[test]
    fn real_mode_subalgebra_is_normalized() {
        let alg = Algebra::<f64>::standard();
        let e = Octonion::new(&alg, [0.5, 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let g = Octonion::new(&alg, [0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        let q = quat_subalgebra_containing(&e, &g).unwrap();
        for b in &q.basis {
            assert!((b.norm() - 1.0).abs() < 1e-12);
        }
        assert!((q.gamma_eff + 1.0).abs() < 1e-12);
        assert!((&q.project(&e) - &e).max_abs() < 1e-12);
        assert!((&q.project(&g) - &g).max_abs() < 1e-12);
    }
}
