//! Text and JSON forms of octonions, polynomials and reports.
//!
//! Octonion text: `c0 + c1 i + c2 j + c3 k + c4 l + c5 il + c6 jl + c7 kl`
//! with zero terms omitted, unit coefficients optional, `ij` accepted for
//! `k` and `ℓ` for `l`. Polynomial text: a sum of terms `(octonion)x^n`,
//! where simple coefficients (`2`, `i`, `-1/2 jl`) may drop the
//! parentheses, preceded by an optional `params: α, β, γ` line. `#` starts
//! a comment.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, AlgebraParams, Octonion, BASIS_NAMES};
use crate::dynamics::{FixedPointReport, OrbitRecord, PseudoPeriodReport};
use crate::error::{Error, Result};
use crate::poly::OPolynomial;
use crate::roots::{ConjClass, LmrClassDescription, LmrKind, RootSet};
use crate::scalar::{CentralPoly, Scalar};

pub fn octonion_to_text<S: Scalar>(x: &Octonion<S>) -> String {
    let mut out = String::new();
    for (a, c) in x.coords().iter().enumerate() {
        if c.is_exactly_zero() {
            continue;
        }
        let negative = c.is_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if a == 0 {
            out.push_str(&magnitude.to_string());
        } else if magnitude == S::one() {
            out.push_str(BASIS_NAMES[a]);
        } else {
            out.push_str(&format!("{magnitude} {}", BASIS_NAMES[a]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn poly_to_text<S: Scalar>(f: &OPolynomial<S>) -> String {
    let mut terms = Vec::new();
    for (t, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_exactly_zero() {
            continue;
        }
        let x = match t {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{t}"),
        };
        terms.push(format!("({}){x}", octonion_to_text(c)));
    }
    if terms.is_empty() {
        "(0)".into()
    } else {
        terms.join(" + ")
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A character cursor over one or more lines of input that reports
/// 1-based line and column positions.
struct Cursor {
    chars: Vec<char>,
    /// `(line, column)` of every char, plus one past the end.
    positions: Vec<(usize, usize)>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Self::from_lines(&[(1, src)])
    }

    fn from_lines(lines: &[(usize, &str)]) -> Self {
        let mut chars = Vec::new();
        let mut positions = Vec::new();
        for (line, text) in lines {
            for (col, c) in text.chars().enumerate() {
                chars.push(c);
                positions.push((*line, col + 1));
            }
            chars.push('\n');
            positions.push((*line, text.chars().count() + 1));
        }
        let end = positions.last().copied().unwrap_or((1, 1));
        positions.push(end);
        Self {
            chars,
            positions,
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.positions[self.pos.min(self.chars.len())];
        parse_error(line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn starts_number(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.')
    }

    /// Reads `digits[.digits][e±digits][/digits[.digits][e±digits]]`.
    fn number<S: Scalar>(&mut self) -> Result<S> {
        let start = self.pos;
        let (line, column) = self.positions[start];
        self.unsigned_decimal();
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            if !self.starts_number() {
                return Err(self.error("expected a denominator"));
            }
            self.unsigned_decimal();
        } else {
            self.pos = save;
        }
        let text: String = self.chars[start..self.pos].iter().filter(|c| !c.is_whitespace()).collect();
        S::parse_scalar(&text).map_err(|m| parse_error(line, column, m))
    }

    fn unsigned_decimal(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let signed = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if signed { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += digit_at;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            }
        }
    }

    /// A basis unit name, longest match first.
    fn unit(&mut self) -> Option<usize> {
        self.skip_ws();
        let is_l = |c: Option<char>| matches!(c, Some('l' | 'ℓ'));
        let first = self.peek()?;
        let second = self.peek_at(1);
        let (index, len) = match first {
            'i' if is_l(second) => (5, 2),
            'j' if is_l(second) => (6, 2),
            'k' if is_l(second) => (7, 2),
            'i' if second == Some('j') => (3, 2),
            'i' => (1, 1),
            'j' => (2, 1),
            'k' => (3, 1),
            'l' | 'ℓ' => (4, 1),
            _ => return None,
        };
        let after = self.peek_at(len);
        if after.is_some_and(|c| c.is_alphanumeric() && c != 'x') {
            return None;
        }
        self.pos += len;
        Some(index)
    }
}

/// One signed term `[number] [*] [unit]`, at least one part present.
fn octonion_term<S: Scalar>(cur: &mut Cursor, coords: &mut [S; 8], negative: bool) -> Result<()> {
    cur.skip_ws();
    let value = if cur.starts_number() {
        let v = cur.number::<S>()?;
        cur.eat('*');
        Some(v)
    } else {
        None
    };
    let unit = cur.unit();
    let (index, value) = match (unit, value) {
        (Some(a), Some(v)) => (a, v),
        (Some(a), None) => (a, S::one()),
        (None, Some(v)) => (0, v),
        (None, None) => return Err(cur.error("expected a number or a basis unit")),
    };
    let value = if negative { -value } else { value };
    coords[index] = coords[index].clone() + value;
    Ok(())
}

/// Parses a sum of octonion terms up to the end of input or a `)`.
fn octonion_sum<S: Scalar>(cur: &mut Cursor, alg: &Arc<Algebra<S>>) -> Result<Octonion<S>> {
    let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = if cur.eat('-') {
            true
        } else {
            if !cur.eat('+') && !first {
                break;
            }
            false
        };
        first = false;
        octonion_term(cur, &mut coords, negative)?;
        cur.skip_ws();
        if cur.peek().is_none() || cur.peek() == Some(')') {
            break;
        }
        if !matches!(cur.peek(), Some('+' | '-')) {
            return Err(cur.error(format!("unexpected '{}'", cur.peek().unwrap_or(' '))));
        }
    }
    Ok(Octonion::new(alg, coords))
}

/// Parses the text form of an octonion.
pub fn parse_octonion<S: Scalar>(text: &str, alg: &Arc<Algebra<S>>) -> Result<Octonion<S>> {
    let mut cur = Cursor::new(text);
    let x = octonion_sum(&mut cur, alg)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(x)
}

/// Parses either `[c0, …, c7]` (JSON) or the text form.
pub fn parse_octonion_any<S: Scalar>(text: &str, alg: &Arc<Algebra<S>>) -> Result<Octonion<S>> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(json_error)?;
        octonion_from_json(&v, alg)
    } else {
        parse_octonion(text, alg)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    parse_error(e.line(), e.column(), e.to_string())
}

fn json_scalar<S: Scalar>(v: &Value) -> Result<S> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(parse_error(0, 0, format!("expected a number, got {other}")));
        }
    };
    S::parse_scalar(&text).map_err(|m| parse_error(0, 0, m))
}

pub fn octonion_from_json<S: Scalar>(v: &Value, alg: &Arc<Algebra<S>>) -> Result<Octonion<S>> {
    let items = v
        .as_array()
        .filter(|a| a.len() == 8)
        .ok_or_else(|| parse_error(0, 0, "an octonion is an array of 8 scalars"))?;
    let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
    for (c, item) in coords.iter_mut().zip(items) {
        *c = json_scalar(item)?;
    }
    Ok(Octonion::new(alg, coords))
}

/// Exact scalars as strings (`"3/4"`), approximate ones as numbers.
pub fn scalar_json<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_string())
    } else {
        serde_json::Number::from_f64(s.to_f64()).map_or(Value::Null, Value::Number)
    }
}

pub fn octonion_json<S: Scalar>(x: &Octonion<S>) -> Value {
    Value::Array(x.coords().iter().map(scalar_json).collect())
}

fn params_json<S: Scalar>(p: &AlgebraParams<S>) -> Value {
    json!([scalar_json(&p.alpha), scalar_json(&p.beta), scalar_json(&p.gamma)])
}

pub fn poly_json<S: Scalar>(f: &OPolynomial<S>) -> Value {
    json!({
        "params": params_json(f.algebra().params()),
        "coeffs": f.coeffs().iter().map(octonion_json).collect::<Vec<_>>(),
    })
}

fn params_from_values<S: Scalar>(items: &[Value]) -> Result<AlgebraParams<S>> {
    if items.len() != 3 {
        return Err(parse_error(0, 0, "params must have three entries"));
    }
    AlgebraParams::new(json_scalar(&items[0])?, json_scalar(&items[1])?, json_scalar(&items[2])?)
}

pub fn poly_from_json<S: Scalar>(v: &Value) -> Result<OPolynomial<S>> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_error(0, 0, "a polynomial is a JSON object"))?;
    let params = match obj.get("params") {
        Some(p) => params_from_values(
            p.as_array()
                .ok_or_else(|| parse_error(0, 0, "params must be an array"))?,
        )?,
        None => AlgebraParams::standard(),
    };
    let alg = Algebra::new(params);
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(0, 0, "missing coeffs array"))?
        .iter()
        .map(|c| octonion_from_json(c, &alg))
        .collect::<Result<Vec<_>>>()?;
    OPolynomial::new(&alg, coeffs)
}

/// Largest exponent accepted in polynomial text.
pub const MAX_PARSED_DEGREE: usize = 1024;

/// Parses a polynomial file, JSON if it starts with `{`, text otherwise.
pub fn parse_polynomial<S: Scalar>(input: &str) -> Result<OPolynomial<S>> {
    if input.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(input).map_err(json_error)?;
        return poly_from_json(&v);
    }
    let mut params = None;
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (k, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.trim_start().strip_prefix("params:") {
            let offset = line.len() - rest.len();
            params = Some(parse_params_line(rest, k + 1, offset)?);
            continue;
        }
        body.push((k + 1, line));
    }
    if body.is_empty() {
        return Err(parse_error(1, 1, "no polynomial found"));
    }
    let alg = Algebra::new(params.unwrap_or_else(AlgebraParams::standard));
    let mut coeffs: Vec<Octonion<S>> = Vec::new();
    let mut cur = Cursor::from_lines(&body);
    let mut first = true;
    while !cur.at_end() {
        let (degree, c) = poly_term(&mut cur, &alg, first)?;
        first = false;
        if degree > MAX_PARSED_DEGREE {
            return Err(cur.error(format!("degree {degree} exceeds {MAX_PARSED_DEGREE}")));
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, Octonion::zero(&alg));
        }
        coeffs[degree] = &coeffs[degree] + &c;
    }
    OPolynomial::new(&alg, coeffs)
}

fn parse_params_line<S: Scalar>(rest: &str, line: usize, offset: usize) -> Result<AlgebraParams<S>> {
    let trimmed = rest.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(parse_error(line, offset + 1, "params needs three values"));
    }
    let values = parts
        .iter()
        .map(|p| S::parse_scalar(p).map_err(|m| parse_error(line, offset + 1, m)))
        .collect::<Result<Vec<S>>>()?;
    let [a, b, g]: [S; 3] = values.try_into().expect("three values");
    AlgebraParams::new(a, b, g).map_err(|e| parse_error(line, offset + 1, e.to_string()))
}

/// One signed term `coeff [x[^n]] [(coeff)]`.
fn poly_term<S: Scalar>(cur: &mut Cursor, alg: &Arc<Algebra<S>>, first: bool) -> Result<(usize, Octonion<S>)> {
    cur.skip_ws();
    let negative = if cur.eat('-') {
        true
    } else {
        if !cur.eat('+') && !first {
            return Err(cur.error("expected '+' or '-' between terms"));
        }
        false
    };
    cur.skip_ws();
    let mut coeff = if cur.eat('(') {
        let c = octonion_sum(cur, alg)?;
        if !cur.eat(')') {
            return Err(cur.error("expected ')'"));
        }
        cur.eat('*');
        Some(c)
    } else if cur.starts_number() || (cur.peek().is_some_and(|c| c != 'x') && cur.clone_unit_ahead()) {
        let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
        octonion_term(cur, &mut coords, false)?;
        cur.eat('*');
        Some(Octonion::new(alg, coords))
    } else {
        None
    };
    cur.skip_ws();
    let degree = if cur.peek() == Some('x') {
        cur.pos += 1;
        if cur.eat('^') {
            cur.skip_ws();
            let start = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            let digits: String = cur.chars[start..cur.pos].iter().collect();
            digits.parse::<usize>().map_err(|_| cur.error("expected an exponent"))?
        } else {
            1
        }
    } else if coeff.is_none() {
        return Err(cur.error("expected a term"));
    } else {
        0
    };
    if degree > 0 && cur.eat('(') {
        let right = octonion_sum(cur, alg)?;
        if !cur.eat(')') {
            return Err(cur.error("expected ')'"));
        }
        coeff = Some(match coeff {
            Some(c) => c.try_mul(&right)?,
            None => right,
        });
    }
    let c = coeff.unwrap_or_else(|| Octonion::one(alg));
    Ok((degree, if negative { -c } else { c }))
}

impl Cursor {
    fn clone_unit_ahead(&mut self) -> bool {
        let save = self.pos;
        let found = self.unit().is_some();
        self.pos = save;
        found
    }
}

pub fn central_poly_json<S: Scalar>(p: &CentralPoly<S>) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(scalar_json).collect::<Vec<_>>(),
        "degree": p.degree(),
    })
}

pub fn class_json<S: Scalar>(c: &ConjClass<S>) -> Value {
    json!({ "T": scalar_json(&c.trace), "N": scalar_json(&c.norm), "central": c.central })
}

pub fn root_set_json<S: Scalar>(set: &RootSet<S>) -> Value {
    json!({
        "isolated": set.isolated.iter().map(|(r, c)| json!({
            "root": octonion_json(r),
            "text": octonion_to_text(r),
            "class": class_json(c),
        })).collect::<Vec<_>>(),
        "spherical": set.spherical.iter().map(class_json).collect::<Vec<_>>(),
        "anomalies": set.anomalies.iter().map(|a| json!({
            "class": class_json(&a.class),
            "reason": a.reason,
        })).collect::<Vec<_>>(),
    })
}

pub fn lmr_description_json<S: Scalar>(d: &LmrClassDescription<S>) -> Value {
    let mut m = Map::new();
    m.insert("class".into(), class_json(&d.class));
    m.insert("kind".into(), Value::String(d.kind.tag().into()));
    match &d.kind {
        LmrKind::WholeClass => {}
        LmrKind::SinglePoint(x) => {
            m.insert("point".into(), octonion_json(x));
        }
        LmrKind::Parametrized(p) => {
            m.insert("E".into(), octonion_json(&p.e));
            m.insert("G".into(), octonion_json(&p.g));
            m.insert("EinvG".into(), octonion_json(&p.einv_g));
            m.insert("GEinv".into(), octonion_json(&p.g_einv));
            m.insert("commNorm".into(), scalar_json(&p.comm_norm));
            m.insert(
                "Q".into(),
                Value::Array(p.q.basis.iter().map(octonion_json).collect()),
            );
            m.insert("ell".into(), octonion_json(&p.q.ell));
        }
    }
    Value::Object(m)
}

pub fn fixed_report_json(r: &FixedPointReport) -> Value {
    json!({
        "alpha": octonion_json(&r.alpha),
        "B": octonion_json(&r.b),
        "M": r.big_m,
        "m": r.small_m,
        "verdict": r.verdict.as_str(),
    })
}

pub fn pseudo_report_json(r: &PseudoPeriodReport) -> Value {
    json!({
        "alpha": octonion_json(&r.alpha),
        "n": r.n,
        "cycle": r.cycle.iter().map(octonion_json).collect::<Vec<_>>(),
        "Mi": r.m_i,
        "product": r.product,
        "verdict": r.verdict.as_str(),
    })
}

/// CSV with columns `step,c0..c7,abs` and a trailing `#` status line.
pub fn orbit_csv(o: &OrbitRecord) -> String {
    let mut out = String::from("step,c0,c1,c2,c3,c4,c5,c6,c7,abs\n");
    for (k, z) in o.iterates.iter().enumerate() {
        let coords: Vec<String> = z.coords().iter().map(f64::to_string).collect();
        out.push_str(&format!("{k},{},{}\n", coords.join(","), z.abs()));
    }
    let period = o
        .detected_period
        .map_or_else(|| "none".to_string(), |p| p.to_string());
    out.push_str(&format!("# escaped={} period={period}\n", o.escaped));
    out
}
