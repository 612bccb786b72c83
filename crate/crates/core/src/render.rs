//! Escape-time images of planar slices through the octonions.

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::poly::OPolynomial;

/// A rectangular pixel grid mapped onto the plane `base + x·u + y·v`.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub base: Octonion<f64>,
    pub dir_u: Octonion<f64>,
    pub dir_v: Octonion<f64>,
    pub width: usize,
    pub height: usize,
    /// Units per pixel.
    pub scale: f64,
    pub max_iter: u32,
    pub escape_radius: f64,
}

impl SliceSpec {
    /// Centre of pixel `(px, py)`, with `y` growing upwards.
    pub fn point(&self, px: usize, py: usize) -> Octonion<f64> {
        let x = (px as f64 + 0.5 - self.width as f64 / 2.0) * self.scale;
        let y = (self.height as f64 / 2.0 - py as f64 - 0.5) * self.scale;
        &(&self.base + &self.dir_u.scale(&x)) + &self.dir_v.scale(&y)
    }

    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidInput("image has no pixels".into()));
        }
        if self.width.saturating_mul(self.height) > 1 << 26 {
            return Err(Error::ResourceLimit(format!(
                "{}x{} image is too large",
                self.width, self.height
            )));
        }
        if self.dir_u.is_exactly_zero() || self.dir_v.is_exactly_zero() {
            return Err(Error::InvalidInput("slice directions must be nonzero".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        if !(self.escape_radius > 0.0) || self.max_iter == 0 {
            return Err(Error::InvalidInput(
                "escape radius and iteration count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The first `k ≤ max_iter` with `|f^{*k}(λ)| ≥ R`, or `None` if the orbit
/// stays bounded that long.
pub fn escape_step(f: &OPolynomial<f64>, lambda: &Octonion<f64>, max_iter: u32, radius: f64) -> Option<u32> {
    let mut z = lambda.clone();
    for k in 0..=max_iter {
        if !(z.coord_len() < radius) {
            return Some(k);
        }
        if k < max_iter {
            z = f.eval(&z);
        }
    }
    None
}

fn row(f: &OPolynomial<f64>, spec: &SliceSpec, py: usize) -> Vec<Option<u32>> {
    (0..spec.width)
        .map(|px| escape_step(f, &spec.point(px, py), spec.max_iter, spec.escape_radius))
        .collect()
}

/// Escape steps for every pixel, row-major from the top-left corner.
pub fn escape_steps(f: &OPolynomial<f64>, spec: &SliceSpec) -> Result<Vec<Option<u32>>> {
    spec.validate()?;
    for d in [&spec.base, &spec.dir_u, &spec.dir_v] {
        if !d.same_algebra(&f.coeff(0)) {
            return Err(Error::ParamsMismatch);
        }
    }
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<Option<u32>>> = {
        use rayon::prelude::*;
        (0..spec.height).into_par_iter().map(|py| row(f, spec, py)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<Option<u32>>> = (0..spec.height).map(|py| row(f, spec, py)).collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Gray level of an escape step: 0 for bounded orbits, brighter for fast
/// escape, never 0 for escaping ones.
pub fn intensity(step: Option<u32>, max_iter: u32) -> u8 {
    match step {
        None => 0,
        Some(s) => {
            let s = s.min(max_iter) as u64;
            let m = max_iter as u64;
            (1 + 254 * (m - s) / m) as u8
        }
    }
}

/// 8-bit grayscale pixels, row-major.
pub fn render_gray(f: &OPolynomial<f64>, spec: &SliceSpec) -> Result<Vec<u8>> {
    Ok(escape_steps(f, spec)?
        .into_iter()
        .map(|s| intensity(s, spec.max_iter))
        .collect())
}

/// Binary PGM (P5) encoding.
pub fn encode_pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    assert_eq!(pixels.len(), width * height, "pixel count");
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}
