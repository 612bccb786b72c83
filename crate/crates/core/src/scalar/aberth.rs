use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sort_candidates, CentralPoly, ClassCandidate};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 1000;
const MAX_RESTARTS: usize = 8;
const RESIDUAL_TARGET: f64 = 1e-12;
const CLUSTER_RADIUS: f64 = 1e-2;
const PAIRING_TOLERANCE: f64 = 1e-8;
const SOLVER_SEED: u64 = 0xC0FFEE;

/// All complex roots of a real polynomial (ascending coefficients),
/// computed by simultaneous Aberth iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last() == Some(&0.0) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("zero polynomial has no root set".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    let mut roots = Vec::new();
    let zeros = coeffs.iter().take_while(|c| **c == 0.0).count();
    roots.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zeros));
    let coeffs = &coeffs[zeros..];
    let lead = *coeffs.last().unwrap();
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    match monic.len() - 1 {
        0 => {}
        1 => roots.push(Complex64::new(-monic[0], 0.0)),
        _ => roots.extend(aberth(&monic)?),
    }
    Ok(roots)
}

fn eval_with_derivative(monic: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in monic.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn eval_bound(monic: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    monic.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

fn aberth(monic: &[f64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    let radius = (0..n)
        .map(|k| monic[k].abs().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(SOLVER_SEED);
    for _ in 0..=MAX_RESTARTS {
        let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = radius * rng.gen_range(0.8..1.2);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                Complex64::from_polar(r, offset + std::f64::consts::TAU * k as f64 / n as f64)
            })
            .collect();
        if iterate(monic, &mut z) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

fn iterate(monic: &[f64], z: &mut [Complex64]) -> bool {
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut settled = true;
        let mut stalled = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(monic, z[i]);
            if p.norm() <= RESIDUAL_TARGET * eval_bound(monic, z[i]) {
                continue;
            }
            settled = false;
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return false;
            }
            z[i] -= step;
            if step.norm() > 1e-15 * (1.0 + z[i].norm()) {
                stalled = false;
            }
        }
        if settled || stalled {
            return z.iter().all(|r| r.is_finite());
        }
    }
    false
}

/// Groups the roots into conjugacy-class candidates.
pub(super) fn central_roots(p: &CentralPoly<f64>) -> Result<Vec<ClassCandidate<f64>>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let roots = polynomial_roots(p.coeffs())?;
    let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let clusters = cluster(p.coeffs(), &roots, scale);

    let mut out = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (center, mult) in clusters {
        if center.im.abs() <= PAIRING_TOLERANCE * scale {
            out.push(ClassCandidate::CentralRoot {
                root: center.re,
                multiplicity: mult,
            });
        } else if center.im > 0.0 {
            upper.push((center, mult));
        } else {
            lower.push((center, mult));
        }
    }
    for (z, mult) in upper {
        let best = lower
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| *m == mult)
            .map(|(k, (w, _))| (k, (z - w.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((k, dist)) = best else {
            return Err(Error::Internal(format!("complex root {z} has no conjugate partner")));
        };
        if dist > PAIRING_TOLERANCE * scale {
            return Err(Error::Internal(format!(
                "complex root {z} has no conjugate partner within tolerance (closest at {dist:e})"
            )));
        }
        let (w, _) = lower.swap_remove(k);
        let mid = (z + w.conj()) * 0.5;
        out.push(ClassCandidate::QuadraticClass {
            trace: 2.0 * mid.re,
            norm: mid.norm_sqr(),
            multiplicity: mult,
        });
    }
    if !lower.is_empty() {
        return Err(Error::Internal("unpaired complex roots".into()));
    }
    sort_candidates(&mut out);
    Ok(out)
}

/// Merges nearby approximations of a multiple root. Around each root the
/// nearest neighbours within the cluster radius are tried as a group of
/// size `k`, largest first: the group mean is refined by Newton's method on
/// `p^(k-1)` and accepted when the first `k - 1` derivatives also vanish
/// (relatively) at the refined point.
fn cluster(coeffs: &[f64], roots: &[Complex64], scale: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut near: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != i && !used[j])
            .map(|j| (j, (roots[i] - roots[j]).norm()))
            .filter(|(_, d)| *d < CLUSTER_RADIUS * scale)
            .collect();
        near.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut accepted = None;
        for k in (2..=near.len() + 1).rev() {
            let members: Vec<usize> = std::iter::once(i)
                .chain(near.iter().take(k - 1).map(|(j, _)| *j))
                .collect();
            let mean = members.iter().map(|&j| roots[j]).sum::<Complex64>() / k as f64;
            let refined = refine(&derivative(coeffs, k - 1), mean);
            if is_multiple_root(coeffs, refined, k) {
                accepted = Some((members, refined));
                break;
            }
        }
        match accepted {
            Some((members, center)) => {
                for &j in &members {
                    used[j] = true;
                }
                out.push((center, members.len()));
            }
            None => {
                used[i] = true;
                out.push((roots[i], 1));
            }
        }
    }
    out
}

fn derivative(coeffs: &[f64], order: usize) -> Vec<f64> {
    let mut d = coeffs.to_vec();
    for _ in 0..order {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
    }
    d
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Newton's method on `d` from `z`, for at most 50 steps.
fn refine(d: &[f64], mut z: Complex64) -> Complex64 {
    let dd = derivative(d, 1);
    for _ in 0..50 {
        let step = eval_complex(d, z) / eval_complex(&dd, z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn is_multiple_root(coeffs: &[f64], z: Complex64, mult: usize) -> bool {
    (0..mult).all(|order| {
        let d = derivative(coeffs, order);
        let bound = d.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.abs());
        eval_complex(&d, z).norm() <= 1e-9 * bound
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn candidates(c: &[f64]) -> Vec<ClassCandidate<f64>> {
        central_roots(&CentralPoly::new(c.to_vec())).unwrap()
    }

    fn assert_quadratic(c: &ClassCandidate<f64>, t: f64, n: f64, m: usize) {
        match c {
            ClassCandidate::QuadraticClass {
                trace,
                norm,
                multiplicity,
            } => {
                assert!((trace - t).abs() < 1e-9, "trace {trace} vs {t}");
                assert!((norm - n).abs() < 1e-9, "norm {norm} vs {n}");
                assert_eq!(*multiplicity, m);
            }
            other => panic!("expected quadratic class, got {other:?}"),
        }
    }

    fn assert_central(c: &ClassCandidate<f64>, r: f64, m: usize) {
        match c {
            ClassCandidate::CentralRoot { root, multiplicity } => {
                assert!((root - r).abs() < 1e-9, "root {root} vs {r}");
                assert_eq!(*multiplicity, m);
            }
            other => panic!("expected central root, got {other:?}"),
        }
    }

    #[test]
    fn quartic_with_two_classes() {
        // x^4 + 3x^2 + 2
        let c = candidates(&[2.0, 0.0, 3.0, 0.0, 1.0]);
        assert_eq!(c.len(), 2);
        assert_quadratic(&c[0], 0.0, 1.0, 1);
        assert_quadratic(&c[1], 0.0, 2.0, 1);
    }

    #[test]
    fn real_roots_sorted_descending() {
        let c = candidates(&[-1.0, 0.0, 1.0]);
        assert_eq!(c.len(), 2);
        assert_central(&c[0], 1.0, 1);
        assert_central(&c[1], -1.0, 1);
    }

    #[test]
    fn mixed_cubic() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let c = candidates(&[-2.0, 1.0, -2.0, 1.0]);
        assert_eq!(c.len(), 2);
        assert_central(&c[0], 2.0, 1);
        assert_quadratic(&c[1], 0.0, 1.0, 1);
    }

    #[test]
    fn repeated_classes_merge() {
        // (x^2 + 1)^2
        let c = candidates(&[1.0, 0.0, 2.0, 0.0, 1.0]);
        assert_eq!(c.len(), 1);
        assert_quadratic(&c[0], 0.0, 1.0, 2);
        // x^2 (x - 1)^2
        let c = candidates(&[0.0, 0.0, 1.0, -2.0, 1.0]);
        assert_eq!(c.len(), 2);
        assert_central(&c[0], 1.0, 2);
        assert_central(&c[1], 0.0, 2);
        // (x^2 - x + 1)^3
        let c = candidates(&[1.0, -3.0, 6.0, -7.0, 6.0, -3.0, 1.0]);
        assert_eq!(c.len(), 1);
        assert_quadratic(&c[0], 1.0, 1.0, 3);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            central_roots(&CentralPoly::new(vec![0.0])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn residual_small_for_returned_classes() {
        let coeffs = [3.0, -1.5, 2.25, 0.5, -4.0, 1.0, 2.0];
        let p = CentralPoly::new(coeffs.to_vec());
        let scale = 1.0 + p.max_abs_coeff();
        let mut count = 0;
        for c in central_roots(&p).unwrap() {
            count += c.root_count();
            let (t, n) = c.trace_norm();
            let disc: f64 = (4.0 * n - t * t).max(0.0);
            let z = Complex64::new(t / 2.0, disc.sqrt() / 2.0);
            assert!(p.eval_complex(z).norm() < 1e-8 * scale);
        }
        assert_eq!(count, 6);
    }
}
