//! Concrete idempotent semirings selected at runtime.
//!
//! | instance        | ⊕   | ⊙   | 𝟘    | 𝟙    |
//! |-----------------|-----|-----|------|------|
//! | `rmax`          | max | +   | -inf | 0    |
//! | `rmin`          | min | +   | +inf | 0    |
//! | `rmax-complete` | max | +   | -inf | 0    | (with a greatest element +inf, `+inf ⊙ 𝟘 = 𝟘`)
//! | `bool`          | or  | and | 0b   | 1b   |
//! | `maxmin`        | max | min | -inf | +inf |
//! | `prod:…`        | componentwise            |

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::algebra::{Algebra, Flags, Sample};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::real::{NumericMode, Real};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Kind {
    RMax,
    RMin,
    RMaxComplete,
    Bool,
    MaxMin,
    Product(Vec<Semiring>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semiring {
    kind: Kind,
    mode: NumericMode,
    strict_product: bool,
    flags: Flags,
}

impl Semiring {
    fn base(kind: Kind) -> Self {
        let flags = match kind {
            Kind::RMax | Kind::RMin => Flags {
                a_complete: false,
                ..Flags::ALL
            },
            Kind::RMaxComplete | Kind::Bool | Kind::MaxMin => Flags {
                cancellative: false,
                ..Flags::ALL
            },
            Kind::Product(_) => unreachable!("products use Semiring::product"),
        };
        Semiring {
            kind,
            mode: NumericMode::Float64,
            strict_product: false,
            flags,
        }
    }

    pub fn rmax() -> Self {
        Self::base(Kind::RMax)
    }

    pub fn rmin() -> Self {
        Self::base(Kind::RMin)
    }

    pub fn rmax_complete() -> Self {
        Self::base(Kind::RMaxComplete)
    }

    pub fn boolean() -> Self {
        Self::base(Kind::Bool)
    }

    pub fn maxmin() -> Self {
        Self::base(Kind::MaxMin)
    }

    /// Full product `S₁ × ⋯ × Sₙ` with componentwise operations.
    pub fn product(factors: Vec<Semiring>) -> Result<Self> {
        Self::make_product(factors, false)
    }

    /// Punctured product `(S₁∖𝟘) × ⋯ × (Sₙ∖𝟘) ∪ {𝟘}`.
    pub fn strict_product(factors: Vec<Semiring>) -> Result<Self> {
        Self::make_product(factors, true)
    }

    fn make_product(factors: Vec<Semiring>, strict: bool) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidDescriptor(
                "empty product has a single element, so 𝟘 = 𝟙".into(),
            ));
        };
        let mode = first.mode;
        if factors.iter().any(|f| f.mode != mode) {
            return Err(Error::InvalidDescriptor(
                "product factors mix numeric modes".into(),
            ));
        }
        let mut flags = factors.iter().fold(Flags::ALL, |acc, f| acc.and(f.flags));
        if factors.len() >= 2 {
            flags.totally_ordered = false;
            if !strict {
                // (𝟘,x)⊙(y,𝟘) = 𝟘 and y = (𝟘,1) never makes xⁿ⊕y settle in the
                // second coordinate's favour; both properties fail on S̃.
                flags.zero_divisor_free = false;
                flags.cancellative = false;
                flags.stabilizing = false;
            }
        }
        Ok(Semiring {
            kind: Kind::Product(factors),
            mode,
            strict_product: strict,
            flags,
        })
    }

    /// Same instance in the given numeric mode (recursively for products).
    pub fn with_mode(mut self, mode: NumericMode) -> Self {
        self.mode = mode;
        if let Kind::Product(fs) = &mut self.kind {
            for f in fs.iter_mut() {
                *f = f.clone().with_mode(mode);
            }
        }
        self
    }

    pub fn exact(self) -> Self {
        self.with_mode(NumericMode::ExactRational)
    }

    /// Replaces the declared capability flags. Useful for user-flagged
    /// instances; nothing re-verifies the new flags.
    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn mode(&self) -> NumericMode {
        self.mode
    }

    pub fn is_strict_product(&self) -> bool {
        self.strict_product
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn factors(&self) -> &[Semiring] {
        match &self.kind {
            Kind::Product(fs) => fs,
            _ => &[],
        }
    }

    /// True for the instances whose eigenvalue is a cycle mean (Karp applies).
    pub fn is_cycle_mean(&self) -> bool {
        matches!(self.kind, Kind::RMax | Kind::RMin)
    }

    pub fn zero_element(&self) -> Element {
        match &self.kind {
            Kind::RMax | Kind::RMaxComplete | Kind::MaxMin => Element::NegInf,
            Kind::RMin => Element::PosInf,
            Kind::Bool => Element::Bool(false),
            Kind::Product(fs) => Element::Tuple(fs.iter().map(|f| f.zero_element()).collect()),
        }
    }

    pub fn one_element(&self) -> Element {
        match &self.kind {
            Kind::RMax | Kind::RMin | Kind::RMaxComplete => Element::Finite(Real::zero(self.mode)),
            Kind::MaxMin => Element::PosInf,
            Kind::Bool => Element::Bool(true),
            Kind::Product(fs) => Element::Tuple(fs.iter().map(|f| f.one_element()).collect()),
        }
    }

    /// Finite real in this semiring's numeric mode.
    pub fn real(&self, v: i64) -> Element {
        Element::int(self.mode, v)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Element {
        Element::ratio(self.mode, num, den)
    }

    fn invalid(&self, e: &Element, detail: &str) -> Error {
        Error::InvalidElement {
            semiring: self.to_string(),
            detail: format!("{e}: {detail}"),
        }
    }

    fn check_finite(&self, e: &Element, r: &Real) -> Result<()> {
        if r.mode() != self.mode {
            return Err(self.invalid(e, "numeric mode mismatch"));
        }
        if !r.is_finite() {
            return Err(self.invalid(e, "non-finite payload"));
        }
        Ok(())
    }

    pub fn validate(&self, e: &Element) -> Result<()> {
        match (&self.kind, e) {
            (Kind::RMax, Element::NegInf)
            | (Kind::RMin, Element::PosInf)
            | (Kind::RMaxComplete | Kind::MaxMin, Element::NegInf | Element::PosInf)
            | (Kind::Bool, Element::Bool(_)) => Ok(()),
            (Kind::RMax | Kind::RMin | Kind::RMaxComplete | Kind::MaxMin, Element::Finite(r)) => {
                self.check_finite(e, r)
            }
            (Kind::Product(fs), Element::Tuple(xs)) => {
                if fs.len() != xs.len() {
                    return Err(self.invalid(e, "wrong tuple arity"));
                }
                for (f, x) in fs.iter().zip(xs) {
                    f.validate(x)?;
                }
                if self.strict_product {
                    let zeros = fs
                        .iter()
                        .zip(xs)
                        .filter(|(f, x)| f.is_zero_element(x))
                        .count();
                    if zeros != 0 && zeros != xs.len() {
                        return Err(self.invalid(e, "partially zero tuple in strict product"));
                    }
                }
                Ok(())
            }
            _ => Err(self.invalid(e, "wrong element kind")),
        }
    }

    pub fn is_zero_element(&self, e: &Element) -> bool {
        *e == self.zero_element()
    }

    /// `a ⊕ b` without validation.
    pub(crate) fn oplus(&self, a: &Element, b: &Element) -> Element {
        match &self.kind {
            Kind::RMax | Kind::RMaxComplete | Kind::MaxMin => ext_max(a, b),
            Kind::RMin => ext_min(a, b),
            Kind::Bool => Element::Bool(as_bool(a) || as_bool(b)),
            Kind::Product(fs) => zip_with(fs, a, b, |f, x, y| f.oplus(x, y)),
        }
    }

    /// `a ⊙ b` without validation.
    pub(crate) fn otimes(&self, a: &Element, b: &Element) -> Element {
        use Element::*;
        match &self.kind {
            Kind::RMax => match (a, b) {
                (Finite(x), Finite(y)) => Finite(x.add(y)),
                _ => NegInf,
            },
            Kind::RMin => match (a, b) {
                (Finite(x), Finite(y)) => Finite(x.add(y)),
                _ => PosInf,
            },
            Kind::RMaxComplete => match (a, b) {
                (NegInf, _) | (_, NegInf) => NegInf,
                (PosInf, _) | (_, PosInf) => PosInf,
                (Finite(x), Finite(y)) => Finite(x.add(y)),
                _ => unreachable!(),
            },
            Kind::MaxMin => ext_min(a, b),
            Kind::Bool => Bool(as_bool(a) && as_bool(b)),
            Kind::Product(fs) => zip_with(fs, a, b, |f, x, y| f.otimes(x, y)),
        }
    }

    /// Greatest lower bound in the canonical order. Every shipped instance
    /// is a lattice, so the meet always exists.
    pub(crate) fn meet_raw(&self, a: &Element, b: &Element) -> Element {
        match &self.kind {
            Kind::RMax | Kind::RMaxComplete | Kind::MaxMin => ext_min(a, b),
            Kind::RMin => ext_max(a, b),
            Kind::Bool => Element::Bool(as_bool(a) && as_bool(b)),
            Kind::Product(fs) => zip_with(fs, a, b, |f, x, y| f.meet_raw(x, y)),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.oplus(a, b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.otimes(a, b))
    }

    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.add(a, b)? == *b)
    }

    /// Strict order `a ≺ b`: `a ≼ b` and `a ≠ b`.
    pub fn lt(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(a != b && self.leq(a, b)?)
    }

    pub fn meet(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.meet_raw(a, b))
    }

    /// `xⁿ`, with `x⁰ = 𝟙`.
    pub fn pow(&self, x: &Element, n: u64) -> Result<Element> {
        self.validate(x)?;
        Ok(self.pow_raw(x, n))
    }

    pub(crate) fn pow_raw(&self, x: &Element, n: u64) -> Element {
        match (&self.kind, x) {
            (Kind::RMax | Kind::RMin | Kind::RMaxComplete, Element::Finite(r)) => {
                Element::Finite(r.mul_int(n))
            }
            (Kind::Product(fs), Element::Tuple(xs)) => {
                Element::Tuple(fs.iter().zip(xs).map(|(f, x)| f.pow_raw(x, n)).collect())
            }
            _ if n == 0 => self.one_element(),
            // infinities, booleans and max-min values are ⊙-idempotent
            _ => x.clone(),
        }
    }

    /// A solution of `xⁿ = y`.
    pub fn nth_root(&self, y: &Element, n: u64) -> Result<Element> {
        if n == 0 {
            return Err(Error::InvalidArgument("root index must be positive".into()));
        }
        if !self.flags.algebraically_closed {
            return Err(Error::NotAlgebraicallyClosed);
        }
        self.validate(y)?;
        Ok(self.root_raw(y, n))
    }

    fn root_raw(&self, y: &Element, n: u64) -> Element {
        match (&self.kind, y) {
            (Kind::RMax | Kind::RMin | Kind::RMaxComplete, Element::Finite(r)) => {
                Element::Finite(r.div_int(n))
            }
            (Kind::Product(fs), Element::Tuple(ys)) => {
                Element::Tuple(fs.iter().zip(ys).map(|(f, y)| f.root_raw(y, n)).collect())
            }
            // 𝟘, +inf, booleans and max-min values are their own roots
            _ => y.clone(),
        }
    }

    /// Multiplicative inverse, when it exists.
    pub fn inv(&self, x: &Element) -> Result<Element> {
        self.validate(x)?;
        let fail = || Error::NotInvertible(x.to_string());
        match (&self.kind, x) {
            (Kind::RMax | Kind::RMin | Kind::RMaxComplete, Element::Finite(r)) => {
                Ok(Element::Finite(r.neg()))
            }
            (Kind::Bool, Element::Bool(true)) | (Kind::MaxMin, Element::PosInf) => Ok(x.clone()),
            (Kind::Product(fs), Element::Tuple(xs)) => fs
                .iter()
                .zip(xs)
                .map(|(f, x)| f.inv(x).map_err(|_| fail()))
                .collect::<Result<Vec<_>>>()
                .map(Element::Tuple),
            _ => Err(fail()),
        }
    }

    /// Supremum of a finite family; the empty family sums to 𝟘.
    pub fn big_sum<'a, I>(&self, xs: I) -> Result<Element>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut acc: Option<Element> = None;
        for x in xs {
            self.validate(x)?;
            acc = Some(match acc {
                None => x.clone(),
                Some(a) => self.oplus(&a, x),
            });
        }
        match acc {
            Some(a) => Ok(a),
            None if self.flags.has_zero => Ok(self.zero_element()),
            None => Err(Error::EmptyNoZero),
        }
    }

    /// Draws a nonzero sample.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        loop {
            let x = self.sample(rng);
            if !self.is_zero_element(&x) {
                return x;
            }
        }
    }

    fn sample_real<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        // quarters keep float sums exact
        self.ratio(rng.gen_range(-20..=20), 4)
    }
}

fn as_bool(e: &Element) -> bool {
    matches!(e, Element::Bool(true))
}

fn ext_max(a: &Element, b: &Element) -> Element {
    match a.ext_cmp(b) {
        Some(Ordering::Less) => b.clone(),
        _ => a.clone(),
    }
}

fn ext_min(a: &Element, b: &Element) -> Element {
    match a.ext_cmp(b) {
        Some(Ordering::Greater) => b.clone(),
        _ => a.clone(),
    }
}

fn zip_with<F>(fs: &[Semiring], a: &Element, b: &Element, op: F) -> Element
where
    F: Fn(&Semiring, &Element, &Element) -> Element,
{
    match (a, b) {
        (Element::Tuple(xs), Element::Tuple(ys)) => Element::Tuple(
            fs.iter()
                .zip(xs.iter().zip(ys))
                .map(|(f, (x, y))| op(f, x, y))
                .collect(),
        ),
        _ => unreachable!("validated product elements are tuples"),
    }
}

impl Algebra for Semiring {
    type Value = Element;

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Semiring::add(self, a, b)
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Semiring::mul(self, a, b)
    }

    fn zero(&self) -> Option<Element> {
        self.flags.has_zero.then(|| self.zero_element())
    }

    fn one(&self) -> Option<Element> {
        self.flags.has_unity.then(|| self.one_element())
    }

    fn flags(&self) -> Flags {
        self.flags
    }

    fn validate(&self, v: &Element) -> Result<()> {
        Semiring::validate(self, v)
    }
}

impl Sample for Semiring {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let p: f64 = rng.gen();
        match &self.kind {
            Kind::RMax if p < 0.1 => Element::NegInf,
            Kind::RMin if p < 0.1 => Element::PosInf,
            Kind::RMaxComplete if p < 0.1 => Element::NegInf,
            Kind::RMaxComplete if p < 0.15 => Element::PosInf,
            Kind::MaxMin if p < 0.1 => Element::NegInf,
            Kind::MaxMin if p < 0.2 => Element::PosInf,
            Kind::RMax | Kind::RMin | Kind::RMaxComplete | Kind::MaxMin => self.sample_real(rng),
            Kind::Bool => Element::Bool(p < 0.5),
            Kind::Product(fs) if self.strict_product => {
                if p < 0.1 {
                    self.zero_element()
                } else {
                    Element::Tuple(fs.iter().map(|f| f.sample_nonzero(rng)).collect())
                }
            }
            Kind::Product(fs) => Element::Tuple(fs.iter().map(|f| f.sample(rng)).collect()),
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.selection_name())?;
        if self.mode == NumericMode::ExactRational {
            f.write_str("@exact")?;
        }
        Ok(())
    }
}

impl Semiring {
    fn selection_name(&self) -> String {
        match &self.kind {
            Kind::RMax => "rmax".into(),
            Kind::RMin => "rmin".into(),
            Kind::RMaxComplete => "rmax-complete".into(),
            Kind::Bool => "bool".into(),
            Kind::MaxMin => "maxmin".into(),
            Kind::Product(fs) => {
                let names: Vec<_> = fs.iter().map(|f| f.selection_name()).collect();
                let head = if self.strict_product { "sprod" } else { "prod" };
                format!("{head}:{}", names.join(","))
            }
        }
    }
}

/// Parses a selection string such as `rmax`, `rmin@exact` or
/// `prod:rmax,rmax`. The `sprod:` prefix selects the strict product.
impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, mode) = match s.strip_suffix("@exact") {
            Some(rest) => (rest, NumericMode::ExactRational),
            None => (s, NumericMode::Float64),
        };
        let lower = name.to_ascii_lowercase();
        let parsed = if let Some(list) = lower.strip_prefix("prod:") {
            Semiring::product(parse_factor_list(list)?)?
        } else if let Some(list) = lower.strip_prefix("sprod:") {
            Semiring::strict_product(parse_factor_list(list)?)?
        } else {
            parse_simple(&lower)?
        };
        Ok(parsed.with_mode(mode))
    }
}

fn parse_simple(name: &str) -> Result<Semiring> {
    match name {
        "rmax" => Ok(Semiring::rmax()),
        "rmin" => Ok(Semiring::rmin()),
        "rmax-complete" => Ok(Semiring::rmax_complete()),
        "bool" => Ok(Semiring::boolean()),
        "maxmin" => Ok(Semiring::maxmin()),
        other => Err(Error::InvalidDescriptor(format!(
            "unknown semiring `{other}`"
        ))),
    }
}

fn parse_factor_list(list: &str) -> Result<Vec<Semiring>> {
    list.split(',').map(|f| parse_simple(f.trim())).collect()
}
