use octopoly_wasm::inner::{classify_fixed_points, lmr_sample_json, render_slice, Slice};
use serde_json::Value;

fn slice(width: usize, height: usize) -> Slice<'static> {
    Slice {
        base: "0",
        dir_u: "1",
        dir_v: "i",
        width,
        height,
        scale: 4.0 / width.max(height) as f64,
        max_iter: 40,
    }
}

#[test]
fn render_gives_rgba_with_black_unit_disk() {
    let (w, h) = (41, 41);
    let px = render_slice("x^2", &slice(w, h)).unwrap();
    assert_eq!(px.len(), w * h * 4);
    let at = |x: usize, y: usize| &px[4 * (y * w + x)..4 * (y * w + x) + 4];
    assert_eq!(at(20, 20), [0, 0, 0, 255]);
    assert_ne!(at(0, 0), [0, 0, 0, 255]);
    assert!(px.chunks(4).all(|p| p[3] == 255));
}

#[test]
fn render_reports_bad_input() {
    assert!(render_slice("x^2 +", &slice(4, 4)).unwrap_err().contains("column"));
    let mut s = slice(4, 4);
    s.dir_u = "0";
    assert!(render_slice("x^2", &s).is_err());
}

#[test]
fn classify_reports_ambivalent_point() {
    let out: Value = serde_json::from_str(&classify_fixed_points("x^2 + ix - 1/2 i - 1/4").unwrap()).unwrap();
    let reports = out["fixed_points"].as_array().unwrap();
    assert!(reports
        .iter()
        .any(|r| {
            let a: Vec<f64> = r["alpha"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
            let off = a.iter().enumerate().map(|(k, x)| if k == 1 { (x + 0.5).abs() } else { x.abs() });
            off.fold(0.0, f64::max) < 1e-9 && r["verdict"] == "ambivalent"
        }));
    assert!(classify_fixed_points("x^3").is_err());
}

#[test]
fn lmr_samples_are_seeded_and_grouped() {
    let poly = "x^2 + ix - ij + 1";
    let a = lmr_sample_json(poly, 6, 9).unwrap();
    assert_eq!(a, lmr_sample_json(poly, 6, 9).unwrap());
    assert_ne!(a, lmr_sample_json(poly, 6, 10).unwrap());
    let v: Value = serde_json::from_str(&a).unwrap();
    let classes = v.as_array().unwrap();
    assert_eq!(classes.len(), 2);
    for c in classes {
        assert_eq!(c["points"].as_array().unwrap().len(), 6);
    }
    assert!(lmr_sample_json(poly, 100_000, 1).is_err());
}
