//! Browser bindings for the octopoly demo page.
//!
//! Each exported function has a plain Rust counterpart in [`inner`] so the
//! logic can be tested natively.

use wasm_bindgen::prelude::*;

pub mod inner {
    use octopoly::format::{class_json, fixed_report_json, octonion_json, octonion_to_text};
    use octopoly::render::escape_steps;
    use octopoly::{
        classify_fixed, fixed_points, lmr_describe, lmr_sample, parse_octonion_any,
        parse_polynomial, LmrKind, SliceSpec,
    };
    use serde_json::{json, Value};

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    #[derive(Clone, Debug)]
    pub struct Slice<'a> {
        pub base: &'a str,
        pub dir_u: &'a str,
        pub dir_v: &'a str,
        pub width: usize,
        pub height: usize,
        pub scale: f64,
        pub max_iter: u32,
    }

    /// Color for an escape step; bounded orbits are black.
    fn shade(step: Option<u32>, max_iter: u32) -> [u8; 4] {
        match step {
            None => [0, 0, 0, 255],
            Some(s) => {
                let t = 1.0 - f64::from(s.min(max_iter)) / f64::from(max_iter);
                let t = t.powf(0.6);
                [
                    (255.0 * t) as u8,
                    (255.0 * t * t) as u8,
                    (80.0 + 175.0 * (1.0 - t)) as u8,
                    255,
                ]
            }
        }
    }

    /// Escape-time image of the slice as RGBA bytes, row-major.
    pub fn render_slice(poly: &str, slice: &Slice) -> Result<Vec<u8>, String> {
        let f = parse_polynomial::<f64>(poly).map_err(err)?;
        let alg = f.algebra();
        let spec = SliceSpec {
            base: parse_octonion_any(slice.base, alg).map_err(err)?,
            dir_u: parse_octonion_any(slice.dir_u, alg).map_err(err)?,
            dir_v: parse_octonion_any(slice.dir_v, alg).map_err(err)?,
            width: slice.width,
            height: slice.height,
            scale: slice.scale,
            max_iter: slice.max_iter,
            escape_radius: 2.0,
        };
        let steps = escape_steps(&f, &spec).map_err(err)?;
        Ok(steps
            .into_iter()
            .flat_map(|s| shade(s, slice.max_iter))
            .collect())
    }

    /// Fixed points of a monic quadratic with their classification.
    pub fn classify_fixed_points(poly: &str) -> Result<String, String> {
        let f = parse_polynomial::<f64>(poly).map_err(err)?;
        let set = fixed_points(&f).map_err(err)?;
        let mut reports = Vec::new();
        for a in set.isolated_roots() {
            let mut r = fixed_report_json(&classify_fixed(&f, a).map_err(err)?);
            r["text"] = Value::String(octonion_to_text(a));
            reports.push(r);
        }
        let out = json!({
            "fixed_points": reports,
            "spherical": set.spherical.iter().map(class_json).collect::<Vec<_>>(),
        });
        Ok(out.to_string())
    }

    /// Seeded points of the left multiple root set, tagged by class.
    pub fn lmr_sample_json(poly: &str, count: usize, seed: u64) -> Result<String, String> {
        if count > 10_000 {
            return Err(format!("at most 10000 samples per class ({count} requested)"));
        }
        let f = parse_polynomial::<f64>(poly).map_err(err)?;
        let mut classes = Vec::new();
        for d in lmr_describe(&f).map_err(err)? {
            let points: Vec<Value> = match &d.kind {
                LmrKind::WholeClass => Vec::new(),
                _ => lmr_sample(&d, count, seed)
                    .map_err(err)?
                    .iter()
                    .map(|s| octonion_json(&s.point))
                    .collect(),
            };
            classes.push(json!({
                "class": class_json(&d.class),
                "kind": d.kind.tag(),
                "points": points,
            }));
        }
        Ok(Value::Array(classes).to_string())
    }
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn render_slice(
    poly: &str,
    base: &str,
    dir_u: &str,
    dir_v: &str,
    width: usize,
    height: usize,
    scale: f64,
    max_iter: u32,
) -> Result<Vec<u8>, JsValue> {
    let slice = inner::Slice {
        base,
        dir_u,
        dir_v,
        width,
        height,
        scale,
        max_iter,
    };
    inner::render_slice(poly, &slice).map_err(js)
}

#[wasm_bindgen]
pub fn classify_fixed_points(poly: &str) -> Result<String, JsValue> {
    inner::classify_fixed_points(poly).map_err(js)
}

#[wasm_bindgen]
pub fn lmr_sample_json(poly: &str, count: usize, seed: u32) -> Result<String, JsValue> {
    inner::lmr_sample_json(poly, count, u64::from(seed)).map_err(js)
}
