use std::cmp::Ordering;
use std::fmt;

use crate::real::{NumericMode, Real};

/// A value of some semiring. Which variants are legal depends on the
/// semiring; see [`Semiring::validate`](crate::Semiring::validate).
///
/// `Ord` is a structural order used for deterministic set iteration. It is
/// unrelated to the canonical order of any semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Finite(Real),
    NegInf,
    PosInf,
    Bool(bool),
    Tuple(Vec<Element>),
}

impl Element {
    pub fn float(x: f64) -> Self {
        if x == f64::NEG_INFINITY {
            Element::NegInf
        } else if x == f64::INFINITY {
            Element::PosInf
        } else {
            Element::Finite(Real::float(x))
        }
    }

    pub fn int(mode: NumericMode, v: i64) -> Self {
        Element::Finite(Real::from_int(mode, v))
    }

    pub fn ratio(mode: NumericMode, num: i64, den: i64) -> Self {
        Element::Finite(Real::ratio(mode, num, den))
    }

    pub fn exact(v: i64) -> Self {
        Self::int(NumericMode::ExactRational, v)
    }

    pub fn tuple<I: IntoIterator<Item = Element>>(items: I) -> Self {
        Element::Tuple(items.into_iter().collect())
    }

    pub fn as_real(&self) -> Option<&Real> {
        match self {
            Element::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Element::Finite(_))
    }

    /// Extended-real view: `-inf < finite < +inf`. `None` for booleans,
    /// tuples and mixed numeric modes.
    pub(crate) fn ext_cmp(&self, other: &Element) -> Option<Ordering> {
        use Element::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, Finite(_) | PosInf) | (Finite(_), PosInf) => Some(Ordering::Less),
            (PosInf, Finite(_) | NegInf) | (Finite(_), NegInf) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp_num(b),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Element::NegInf => 0,
            Element::Finite(_) => 1,
            Element::PosInf => 2,
            Element::Bool(_) => 3,
            Element::Tuple(_) => 4,
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Finite(a), Element::Finite(b)) => a.structural_cmp(b),
            (Element::Bool(a), Element::Bool(b)) => a.cmp(b),
            (Element::Tuple(a), Element::Tuple(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Finite(r) => write!(f, "{r}"),
            Element::NegInf => f.write_str("-inf"),
            Element::PosInf => f.write_str("+inf"),
            Element::Bool(true) => f.write_str("1b"),
            Element::Bool(false) => f.write_str("0b"),
            Element::Tuple(items) => {
                f.write_str("(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
        }
    }
}
