//! Polynomials over octonion algebras: arithmetic, roots, the root sets of
//! scalar multiples, and the dynamics of monic quadratics.
//!
//! Everything is generic over the ground field through [`Scalar`], with an
//! exact rational backend ([`Rational`]) and an `f64` backend.
//!
//! ```
//! use octopoly::{parse_polynomial, roots, Rational};
//!
//! let f = parse_polynomial::<Rational>("x^2 + ix - ij + 1").unwrap();
//! let set = roots(&f).unwrap();
//! let found: Vec<String> = set.isolated_roots().map(|r| r.to_string()).collect();
//! assert_eq!(found, ["j", "-i + j"]);
//! ```

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod format;
mod linalg;
pub mod poly;
pub mod render;
pub mod roots;
pub mod scalar;

pub use algebra::{
    conjugating_element, quat_subalgebra_containing, Algebra, AlgebraParams, Octonion,
    QuatSubalgebra,
};
pub use dynamics::{
    classify_fixed, classify_pseudo_periodic, cycle_factor, detect_pseudo_period, fixed_points,
    orbit, verify_composition_fixed, FixedPointReport, OrbitRecord, PseudoPeriodReport, Verdict,
};
pub use error::{Error, Result};
pub use format::{parse_octonion, parse_octonion_any, parse_polynomial};
pub use poly::OPolynomial;
pub use render::SliceSpec;
pub use roots::{
    lmr_contains, lmr_describe, lmr_sample, multiple_root, reduce_linear, rmr_classes,
    rmr_contains, rmr_witness, roots, ConjClass, LinearReduction, LmrClassDescription, LmrKind,
    RootSet, Side,
};
pub use scalar::{epsilon, set_epsilon, CentralPoly, ClassCandidate, Rational, Scalar};
