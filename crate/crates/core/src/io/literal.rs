use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalMode, IntervalSemiring};
use crate::real::{NumericMode, Real};
use crate::semiring::{Kind, Semiring};

/// Algebras whose values have a text form.
pub trait Literal: Algebra {
    fn parse_value(&self, token: &str) -> Result<Self::Value>;
    fn format_value(&self, v: &Self::Value) -> String;
    /// Header token naming the algebra in file formats.
    fn descriptor(&self) -> String;
}

impl Literal for Semiring {
    fn parse_value(&self, token: &str) -> Result<Element> {
        parse_element(self, token)
    }

    fn format_value(&self, v: &Element) -> String {
        v.to_string()
    }

    fn descriptor(&self) -> String {
        self.to_string()
    }
}

impl Literal for IntervalSemiring {
    fn parse_value(&self, token: &str) -> Result<Interval> {
        parse_interval(self, token)
    }

    fn format_value(&self, v: &Interval) -> String {
        v.to_string()
    }

    fn descriptor(&self) -> String {
        let prefix = match self.mode() {
            IntervalMode::Weak => "weak",
            IntervalMode::Strong => "strong",
        };
        format!("{prefix}:{}", self.base())
    }
}

fn syntax(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Splits on `sep` outside parentheses and brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax(format!("unbalanced `{c}` in `{s}`")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax(format!("unbalanced brackets in `{s}`")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_exact_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    if exp.unsigned_abs() > 4096 {
        return None;
    }
    let (neg, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let ten = BigRational::from_integer(BigInt::from(10));
    let shift = exp - frac.len() as i32;
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    value = if shift >= 0 {
        value * scale
    } else {
        value / scale
    };
    Some(if neg { -value } else { value })
}

fn parse_ratio(mode: NumericMode, t: &str) -> Result<Real> {
    let bad = || syntax(format!("`{t}` is not a number"));
    let (p, q) = t.split_once('/').ok_or_else(bad)?;
    match mode {
        NumericMode::ExactRational => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(syntax(format!("zero denominator in `{t}`")));
            }
            Ok(Real::exact(BigRational::new(p, q)))
        }
        NumericMode::Float64 => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            let v = p / q;
            if !v.is_finite() {
                return Err(bad());
            }
            Ok(Real::float(v))
        }
    }
}

/// A finite number: decimal (with optional exponent) or `p/q`.
pub fn parse_real(mode: NumericMode, t: &str) -> Result<Real> {
    if t.contains('/') {
        return parse_ratio(mode, t);
    }
    match mode {
        NumericMode::ExactRational => parse_exact_decimal(t)
            .map(Real::exact)
            .ok_or_else(|| syntax(format!("`{t}` is not a number"))),
        NumericMode::Float64 => match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Real::float(v)),
            _ => Err(syntax(format!("`{t}` is not a finite number"))),
        },
    }
}

/// Element literal: a number, `p/q`, `-inf`, `+inf`, `0b`, `1b`, or a tuple
/// `(a,b,…)` for products. Infinity tokens are case-insensitive.
pub fn parse_element(s: &Semiring, token: &str) -> Result<Element> {
    let t = token.trim();
    let e = if let Some(inner) = t.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| syntax(format!("unclosed tuple `{t}`")))?;
        let Kind::Product(factors) = s.kind() else {
            return Err(syntax(format!("tuple `{t}` given for {s}")));
        };
        let parts = split_top_level(inner, ',')?;
        if parts.len() != factors.len() {
            return Err(syntax(format!(
                "tuple `{t}` needs {} components",
                factors.len()
            )));
        }
        Element::Tuple(
            factors
                .iter()
                .zip(parts)
                .map(|(f, p)| parse_element(f, p))
                .collect::<Result<_>>()?,
        )
    } else {
        match t.to_ascii_lowercase().as_str() {
            "-inf" => Element::NegInf,
            "+inf" | "inf" => Element::PosInf,
            "0b" => Element::Bool(false),
            "1b" => Element::Bool(true),
            _ => Element::Finite(parse_real(s.mode(), t)?),
        }
    };
    s.validate(&e)?;
    Ok(e)
}

/// Interval literal `[lo,hi]`; a bare element literal is read as `[x,x]`.
pub fn parse_interval(iv: &IntervalSemiring, token: &str) -> Result<Interval> {
    let t = token.trim();
    match t.strip_prefix('[') {
        Some(inner) => {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| syntax(format!("unclosed interval `{t}`")))?;
            let parts = split_top_level(inner, ',')?;
            let [lo, hi] = parts.as_slice() else {
                return Err(syntax(format!("interval `{t}` needs two bounds")));
            };
            iv.interval(parse_element(iv.base(), lo)?, parse_element(iv.base(), hi)?)
        }
        None => iv.embed(parse_element(iv.base(), t)?),
    }
}
