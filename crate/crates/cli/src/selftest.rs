//! Reproduces the worked examples and prints a table of
//! id / expected / got.

use std::sync::Arc;

use octopoly::format::octonion_to_text;
use octopoly::roots::LmrKind;
use octopoly::{
    classify_fixed, fixed_points, lmr_describe, multiple_root, parse_octonion, parse_polynomial,
    quat_subalgebra_containing, reduce_linear, rmr_contains, rmr_witness, roots, verify_composition_fixed,
    Algebra, ClassCandidate, ConjClass, Octonion, Rational, Result, Scalar, Side, Verdict,
};

pub struct SelfTestRow {
    pub id: &'static str,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

fn q() -> Arc<Algebra<Rational>> {
    Algebra::standard()
}

fn oct(text: &str) -> Octonion<Rational> {
    parse_octonion(text, &q()).expect("literal")
}

fn ok_row(id: &'static str, expected: String, got: String) -> SelfTestRow {
    SelfTestRow {
        pass: expected == got,
        id,
        expected,
        got,
    }
}

fn run(id: &'static str, expected: &str, check: impl FnOnce() -> Result<String>) -> SelfTestRow {
    match check() {
        Ok(got) => ok_row(id, expected.to_string(), got),
        Err(e) => SelfTestRow {
            id,
            expected: expected.to_string(),
            got: format!("error: {e}"),
            pass: false,
        },
    }
}

fn classes_text<S: Scalar>(c: &[ClassCandidate<S>]) -> String {
    c.iter()
        .map(|c| match c {
            ClassCandidate::CentralRoot { root, .. } => format!("{root}"),
            ClassCandidate::QuadraticClass { trace, norm, .. } => format!("(T={trace},N={norm})"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn root_text(f: &str) -> Result<String> {
    let set = roots(&parse_polynomial::<Rational>(f)?)?;
    Ok(set
        .isolated_roots()
        .map(octonion_to_text)
        .collect::<Vec<_>>()
        .join(", "))
}

pub fn selftest_rows() -> Vec<SelfTestRow> {
    let worked = "x^2 + ix - ij + 1";
    let ambivalent = "x^2 + ix - 1/2 i - 1/4";
    vec![
        run("companion-classes-exact", "(T=0,N=1) (T=0,N=2)", || {
            let p = octopoly::CentralPoly::new([2, 0, 3, 0, 1].map(Rational::from_i64).to_vec());
            Ok(classes_text(&Rational::central_roots(&p)?))
        }),
        run("companion-classes-real", "(T=0,N=1) (T=0,N=2)", || {
            let p = octopoly::CentralPoly::new(vec![2.0, 0.0, 3.0, 0.0, 1.0]);
            let c = f64::central_roots(&p)?;
            let rounded: Vec<ClassCandidate<f64>> = c
                .iter()
                .map(|c| {
                    let (t, n) = c.trace_norm();
                    ClassCandidate::QuadraticClass {
                        trace: (t * 1e9).round() / 1e9 + 0.0,
                        norm: (n * 1e9).round() / 1e9,
                        multiplicity: c.multiplicity(),
                    }
                })
                .collect();
            Ok(classes_text(&rounded))
        }),
        run("ell-squared", "-1", || Ok(octonion_to_text(&(&oct("l") * &oct("l"))))),
        run("right-multiple", "(il)x + (jl)", || {
            let f = parse_polynomial::<Rational>("ix + j")?;
            Ok(f.scale_right(&oct("l"))?.to_string())
        }),
        run("left-multiple", "(-il)x + (-jl)", || {
            let f = parse_polynomial::<Rational>("ix + j")?;
            Ok(f.scale_left(&oct("l"))?.to_string())
        }),
        run("companion", "2 + 3x^2 + x^4", || {
            let c = parse_polynomial::<Rational>(worked)?.companion()?;
            Ok(c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_exactly_zero())
                .map(|(t, v)| match t {
                    0 => format!("{v}"),
                    1 => format!("{v}x"),
                    _ if *v == Rational::from_i64(1) => format!("x^{t}"),
                    _ => format!("{v}x^{t}"),
                })
                .collect::<Vec<_>>()
                .join(" + "))
        }),
        run("eval-linear-root", "0", || {
            Ok(parse_polynomial::<Rational>("ix + j")?.eval(&oct("ij")).to_string())
        }),
        run("eval-right-multiple-root", "0", || {
            Ok(parse_polynomial::<Rational>("(il)x + jl")?.eval(&oct("-ij")).to_string())
        }),
        run("linear-reduction", "E = i, G = -k", || {
            let f = parse_polynomial::<Rational>(worked)?;
            let r = reduce_linear(&f, &ConjClass::new(Rational::from_i64(0), Rational::from_i64(1)))?;
            Ok(format!("E = {}, G = {}", r.e, r.g))
        }),
        run("quaternion-subalgebra", "contains i, j, k; ell = l", || {
            let s = quat_subalgebra_containing(&oct("i"), &oct("-ij"))?;
            let inside = ["i", "j", "k"].map(|u| if s.project(&oct(u)) == oct(u) { u } else { "?" });
            Ok(format!("contains {}; ell = {}", inside.join(", "), s.ell))
        }),
        run("roots-worked-example", "j, -i + j", || root_text(worked)),
        run("roots-linear", "k", || root_text("ix + j")),
        run("roots-right-multiple", "-k", || root_text("(il)x + jl")),
        run("roots-left-multiple", "-k", || root_text("(-il)x - jl")),
        run("rmr-contains", "true", || {
            let f = parse_polynomial::<Rational>("ix + j")?;
            Ok(rmr_contains(&f, &oct("-ij"))?.to_string())
        }),
        run("rmr-witness", "0", || {
            let f = parse_polynomial::<Rational>("ix + j")?;
            let c = rmr_witness(&f, &oct("-ij"), crate::DEFAULT_SEED)?;
            Ok(f.scale_right(&c)?.eval(&oct("-ij")).to_string())
        }),
        run("multiple-root-right", "-k", || {
            let f = parse_polynomial::<Rational>("ix + j")?;
            let class = ConjClass::new(Rational::from_i64(0), Rational::from_i64(1));
            Ok(multiple_root(&f, &class, &oct("l"), Side::Right)?.to_string())
        }),
        run("lmr-class-of-j", "parametrized: E^-1 G = -j, G E^-1 = j, N([G*, E^-1]) = 4", || {
            let f = parse_polynomial::<Rational>(worked)?;
            let d = lmr_describe(&f)?;
            let first = d.first().ok_or(octopoly::Error::Internal("no classes".into()))?;
            Ok(match &first.kind {
                LmrKind::Parametrized(p) => format!(
                    "parametrized: E^-1 G = {}, G E^-1 = {}, N([G*, E^-1]) = {}",
                    p.einv_g, p.g_einv, p.comm_norm
                ),
                other => other.tag().to_string(),
            })
        }),
        run("fixed-point-minus-half-i", "true", || {
            let f = parse_polynomial::<f64>(ambivalent)?;
            let target = parse_octonion("-1/2 i", f.algebra())?;
            let set = fixed_points(&f)?;
            let found = set.isolated_roots().any(|r| (r - &target).abs() < 1e-9);
            Ok(found.to_string())
        }),
        run("classify-ambivalent", "M = 1, m = 0, ambivalent", || {
            let f = parse_polynomial::<f64>(ambivalent)?;
            let r = classify_fixed(&f, &parse_octonion("-1/2 i", f.algebra())?)?;
            let round = |x: f64| (x * 1e9).round() / 1e9 + 0.0;
            Ok(format!("M = {}, m = {}, {}", round(r.big_m), round(r.small_m), r.verdict.as_str()))
        }),
        run("composition-fixed", "true", || {
            let f = parse_polynomial::<Rational>(ambivalent)?;
            Ok(verify_composition_fixed(&f, &parse_octonion("-1/2 i", f.algebra())?, 3)?
                .holds
                .to_string())
        }),
        run("zero-linear-term-multiplier", "true", || {
            let f = parse_polynomial::<f64>("x^2 - 1")?;
            let b = f.coeff(1);
            Ok([0.0, -1.0, 0.5]
                .iter()
                .all(|&a| {
                    let a = Octonion::from_scalar(f.algebra(), a);
                    let m = octopoly::cycle_factor(&a, &b).sqrt();
                    (m - a.scale(&2.0).abs()).abs() < 1e-12
                })
                .to_string())
        }),
        run("verdict-ambivalent-not-attracting", "false", || {
            let f = parse_polynomial::<f64>(ambivalent)?;
            let r = classify_fixed(&f, &parse_octonion("-1/2 i", f.algebra())?)?;
            Ok((r.verdict == Verdict::Attracting).to_string())
        }),
    ]
}

/// Runs every example; returns whether all passed and the printed table.
pub fn cmd_selftest() -> (bool, String) {
    let rows = selftest_rows();
    let w_id = rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
    let w_exp = rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
    let mut out = format!("{:<w_id$}  {:<w_exp$}  {}\n", "id", "expected", "got");
    for r in &rows {
        out.push_str(&format!(
            "{:<w_id$}  {:<w_exp$}  {}  [{}]\n",
            r.id,
            r.expected,
            r.got,
            if r.pass { "ok" } else { "FAIL" }
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} passed, {failed} failed\n", rows.len() - failed));
    (failed == 0, out)
}
