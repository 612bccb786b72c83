//! Commands behind the `octopoly` binary. Each returns its output as a
//! string (or bytes for images) so that it can be tested without a process.

use std::fmt;

use octopoly::format::{
    central_poly_json, class_json, fixed_report_json, lmr_description_json, octonion_json,
    orbit_csv, pseudo_report_json, root_set_json,
};
use octopoly::render::{encode_pgm, render_gray};
use octopoly::{
    classify_fixed, classify_pseudo_periodic, detect_pseudo_period, fixed_points, lmr_contains,
    lmr_describe, lmr_sample, orbit, parse_octonion_any, parse_polynomial, rmr_classes,
    rmr_contains, rmr_witness, roots, Error, Octonion, OPolynomial, Rational, Scalar, SliceSpec,
};
use serde_json::{json, Value};

mod selftest;

pub use selftest::{cmd_selftest, SelfTestRow};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    Exact,
    #[default]
    Real,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
    SelfTestFailed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Core(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "{e}"),
            Self::SelfTestFailed => f.write_str("self-test failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl CliError {
    /// 2 parse, 3 math domain, 4 resource limit, 5 self-test, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(Error::Parse { .. }) => 2,
            Self::Core(Error::ResourceLimit(_) | Error::NoConvergence { .. }) => 4,
            Self::Core(Error::Internal(_)) | Self::Io(_) => 1,
            Self::Core(_) => 3,
            Self::SelfTestFailed => 5,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn element<S: Scalar>(f: &OPolynomial<S>, text: &str) -> CliResult<Octonion<S>> {
    Ok(parse_octonion_any(text, f.algebra())?)
}

/// Runs `$body` with `$s` bound to the scalar type of `$mode`.
macro_rules! with_mode {
    ($mode:expr, $s:ident => $body:expr) => {
        match $mode {
            Mode::Exact => {
                type $s = Rational;
                $body
            }
            Mode::Real => {
                type $s = f64;
                $body
            }
        }
    };
}

pub fn cmd_roots(input: &str, mode: Mode) -> CliResult<String> {
    with_mode!(mode, S => {
        let f = parse_polynomial::<S>(input)?;
        Ok(pretty(&root_set_json(&roots(&f)?)))
    })
}

pub fn cmd_companion(input: &str, mode: Mode) -> CliResult<String> {
    with_mode!(mode, S => {
        let f = parse_polynomial::<S>(input)?;
        Ok(pretty(&central_poly_json(&f.companion()?)))
    })
}

pub fn cmd_rmr(input: &str, mode: Mode, element_text: Option<&str>, seed: u64) -> CliResult<String> {
    with_mode!(mode, S => {
        let f = parse_polynomial::<S>(input)?;
        let classes: Vec<Value> = rmr_classes(&f)?.iter().map(class_json).collect();
        let mut out = json!({ "classes": classes });
        if let Some(text) = element_text {
            let mu = element(&f, text)?;
            let contains = rmr_contains(&f, &mu)?;
            out["contains"] = Value::Bool(contains);
            if contains {
                out["witness"] = octonion_json(&rmr_witness(&f, &mu, seed)?);
            }
        }
        Ok(pretty(&out))
    })
}

#[derive(Clone, Debug)]
pub enum LmrAction {
    Describe,
    Sample { count: usize, seed: u64 },
    Contains { element: String },
}

pub fn cmd_lmr(input: &str, mode: Mode, action: &LmrAction) -> CliResult<String> {
    with_mode!(mode, S => {
        let f = parse_polynomial::<S>(input)?;
        let descs = lmr_describe(&f)?;
        let out = match action {
            LmrAction::Describe => Value::Array(descs.iter().map(lmr_description_json).collect()),
            LmrAction::Sample { count, seed } => {
                let mut points = Vec::new();
                for d in &descs {
                    points.extend(lmr_sample(d, *count, *seed)?.iter().map(|s| octonion_json(&s.point)));
                }
                Value::Array(points)
            }
            LmrAction::Contains { element: text } => {
                let mu = element(&f, text)?;
                let mut per_class = Vec::new();
                let mut any = false;
                for d in &descs {
                    let hit = lmr_contains(d, &mu)?;
                    any |= hit;
                    per_class.push(json!({
                        "class": class_json(&d.class),
                        "kind": d.kind.tag(),
                        "contains": hit,
                    }));
                }
                json!({ "contains": any, "classes": per_class })
            }
        };
        Ok(pretty(&out))
    })
}

/// Fixed-point reports for every isolated fixed point, or the report for
/// `alpha` (as a fixed point, else as a pseudo-periodic point of order at
/// most `max_iter`).
pub fn cmd_classify(input: &str, alpha: Option<&str>, max_iter: usize) -> CliResult<String> {
    let f = parse_polynomial::<f64>(input)?;
    let out = match alpha {
        Some(text) => {
            let a = element(&f, text)?;
            match classify_fixed(&f, &a) {
                Ok(r) => json!({ "kind": "fixed", "report": fixed_report_json(&r) }),
                Err(Error::NotAFixedPoint { residual }) => {
                    let tol = octopoly::dynamics::PERIOD_TOL * (1.0 + a.abs());
                    let n = detect_pseudo_period(&f, &a, max_iter, tol)
                        .ok_or(Error::NotAFixedPoint { residual })?;
                    let r = classify_pseudo_periodic(&f, &a, n)?;
                    json!({ "kind": "pseudo-periodic", "report": pseudo_report_json(&r) })
                }
                Err(e) => return Err(e.into()),
            }
        }
        None => {
            let set = fixed_points(&f)?;
            let reports = set
                .isolated_roots()
                .map(|a| classify_fixed(&f, a).map(|r| fixed_report_json(&r)))
                .collect::<Result<Vec<_>, _>>()?;
            json!({
                "fixed_points": reports,
                "spherical": set.spherical.iter().map(class_json).collect::<Vec<_>>(),
                "anomalies": set.anomalies.iter().map(|a| json!({
                    "class": class_json(&a.class),
                    "reason": a.reason,
                })).collect::<Vec<_>>(),
            })
        }
    };
    Ok(pretty(&out))
}

pub fn cmd_orbit(
    input: &str,
    start: &str,
    max_iter: usize,
    escape_radius: f64,
    tol: f64,
) -> CliResult<String> {
    let f = parse_polynomial::<f64>(input)?;
    let z = element(&f, start)?;
    Ok(orbit_csv(&orbit(&f, &z, max_iter, escape_radius, tol)?))
}

/// Plane and grid for `cmd_render`, with octonions still in text form.
#[derive(Clone, Debug)]
pub struct RenderArgs {
    pub base: String,
    pub dir_u: String,
    pub dir_v: String,
    pub width: usize,
    pub height: usize,
    /// Units per pixel; defaults to fitting `[-2, 2]` across the wider side.
    pub scale: Option<f64>,
    pub max_iter: u32,
    pub escape_radius: f64,
}

impl Default for RenderArgs {
    fn default() -> Self {
        Self {
            base: "0".into(),
            dir_u: "1".into(),
            dir_v: "i".into(),
            width: 256,
            height: 256,
            scale: None,
            max_iter: 50,
            escape_radius: 2.0,
        }
    }
}

pub fn slice_spec(f: &OPolynomial<f64>, args: &RenderArgs) -> CliResult<SliceSpec> {
    Ok(SliceSpec {
        base: element(f, &args.base)?,
        dir_u: element(f, &args.dir_u)?,
        dir_v: element(f, &args.dir_v)?,
        width: args.width,
        height: args.height,
        scale: args
            .scale
            .unwrap_or(4.0 / args.width.max(args.height).max(1) as f64),
        max_iter: args.max_iter,
        escape_radius: args.escape_radius,
    })
}

/// A binary PGM image of escape steps over the slice.
pub fn cmd_render(input: &str, args: &RenderArgs) -> CliResult<Vec<u8>> {
    let f = parse_polynomial::<f64>(input)?;
    let spec = slice_spec(&f, args)?;
    let pixels = render_gray(&f, &spec)?;
    Ok(encode_pgm(spec.width, spec.height, &pixels))
}
