//! Finite real payloads in either floating or exact rational representation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// How finite reals are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NumericMode {
    #[default]
    Float64,
    ExactRational,
}

/// A finite real number. Float payloads compare bitwise; `-0.0` is
/// normalized to `0.0` on construction so that bitwise equality agrees with
/// numeric equality.
#[derive(Clone, Debug)]
pub enum Real {
    Float(f64),
    Exact(BigRational),
}

impl Real {
    pub fn float(x: f64) -> Self {
        Real::Float(if x == 0.0 { 0.0 } else { x })
    }

    pub fn exact(r: BigRational) -> Self {
        Real::Exact(r)
    }

    pub fn from_int(mode: NumericMode, v: i64) -> Self {
        match mode {
            NumericMode::Float64 => Real::float(v as f64),
            NumericMode::ExactRational => Real::Exact(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn ratio(mode: NumericMode, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        match mode {
            NumericMode::Float64 => Real::float(num as f64 / den as f64),
            NumericMode::ExactRational => {
                Real::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Converts an `f64` into the requested mode. Exact conversion is
    /// lossless (every finite double is a dyadic rational).
    pub fn from_f64(mode: NumericMode, x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        match mode {
            NumericMode::Float64 => Some(Real::float(x)),
            NumericMode::ExactRational => BigRational::from_float(x).map(Real::Exact),
        }
    }

    pub fn zero(mode: NumericMode) -> Self {
        Self::from_int(mode, 0)
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            Real::Float(_) => NumericMode::Float64,
            Real::Exact(_) => NumericMode::ExactRational,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Real::Float(x) => x.is_finite(),
            Real::Exact(_) => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Float(x) => *x == 0.0,
            Real::Exact(r) => r.is_zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Float(x) => *x,
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Numeric comparison; `None` when the modes differ.
    pub fn partial_cmp_num(&self, other: &Real) -> Option<Ordering> {
        match (self, other) {
            (Real::Float(a), Real::Float(b)) => a.partial_cmp(b),
            (Real::Exact(a), Real::Exact(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }

    /// Sum of two reals of the same mode.
    ///
    /// # Panics
    /// On mixed modes. Callers validate elements before arithmetic.
    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Float(a), Real::Float(b)) => Real::float(a + b),
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => panic!("mixed numeric modes"),
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Float(a) => Real::float(-a),
            Real::Exact(a) => Real::Exact(-a),
        }
    }

    pub fn mul_int(&self, n: u64) -> Real {
        match self {
            Real::Float(a) => Real::float(a * n as f64),
            Real::Exact(a) => Real::Exact(a * BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn div_int(&self, n: u64) -> Real {
        assert!(n != 0, "division by zero");
        match self {
            Real::Float(a) => Real::float(a / n as f64),
            Real::Exact(a) => Real::Exact(a / BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Float(a) => Real::float(a.abs()),
            Real::Exact(a) => Real::Exact(a.abs()),
        }
    }

    /// Structural total order: float before exact, floats by `total_cmp`.
    pub(crate) fn structural_cmp(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::Float(a), Real::Float(b)) => a.total_cmp(b),
            (Real::Exact(a), Real::Exact(b)) => a.cmp(b),
            (Real::Float(_), Real::Exact(_)) => Ordering::Less,
            (Real::Exact(_), Real::Float(_)) => Ordering::Greater,
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Float(a), Real::Float(b)) => a.to_bits() == b.to_bits(),
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Real {}

impl Hash for Real {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Real::Float(a) => {
                0u8.hash(state);
                a.to_bits().hash(state);
            }
            Real::Exact(a) => {
                1u8.hash(state);
                a.hash(state);
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Float(a) => write!(f, "{a}"),
            Real::Exact(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Real::Exact(a) => write!(f, "{}/{}", a.numer(), a.denom()),
        }
    }
}
