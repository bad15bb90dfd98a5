//! Closed intervals over an idempotent semiring.
//!
//! Both extensions use the hull operations `x ⋆̄ y = [x̲ ⋆ y̲, x̄ ⋆ ȳ]`. The weak
//! extension `I(S)` admits every interval; the strong extension `𝐈(S)`
//! admits only `[𝟘,𝟘]` and intervals whose lower bound is nonzero, which is
//! what lets it inherit cancellation and stabilization from `S`.

mod fraction;
mod sets;

pub use fraction::{Fraction, FractionSemifield, GeneralizedInterval, KaucherSemifield};
pub use sets::{interval_hull, set_star, NaiveSetAlgebra, SetOp};

use std::fmt;

use rand::Rng;

use crate::algebra::{Algebra, Flags, Sample};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semiring::{Kind, Semiring};

/// `[lo, hi]` with `lo ≼ hi`. Only an [`IntervalSemiring`] constructs these,
/// so the bound order is always checked against the right semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Element,
    hi: Element,
}

impl Interval {
    pub fn lo(&self) -> &Element {
        &self.lo
    }

    pub fn hi(&self) -> &Element {
        &self.hi
    }

    pub fn into_bounds(self) -> (Element, Element) {
        (self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalMode {
    Weak,
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSemiring {
    base: Semiring,
    mode: IntervalMode,
}

impl IntervalSemiring {
    pub fn weak(base: Semiring) -> Self {
        IntervalSemiring {
            base,
            mode: IntervalMode::Weak,
        }
    }

    /// The strong extension needs a zero. If the base has zero divisors the
    /// extension may fail to be closed; products that leave it are reported
    /// as [`Error::StrongModeViolation`].
    pub fn strong(base: Semiring) -> Result<Self> {
        if !base.flags().has_zero {
            return Err(Error::MissingCapability(
                "strong interval extension needs a zero".into(),
            ));
        }
        Ok(IntervalSemiring {
            base,
            mode: IntervalMode::Strong,
        })
    }

    pub fn new(base: Semiring, mode: IntervalMode) -> Result<Self> {
        match mode {
            IntervalMode::Weak => Ok(Self::weak(base)),
            IntervalMode::Strong => Self::strong(base),
        }
    }

    pub fn base(&self) -> &Semiring {
        &self.base
    }

    pub fn mode(&self) -> IntervalMode {
        self.mode
    }

    pub fn is_strong(&self) -> bool {
        self.mode == IntervalMode::Strong
    }

    /// Builds `[lo, hi]`, rejecting `lo ⋠ hi` (bounds are never swapped).
    pub fn interval(&self, lo: Element, hi: Element) -> Result<Interval> {
        self.base.validate(&lo)?;
        self.base.validate(&hi)?;
        if !self.base.leq(&lo, &hi)? {
            return Err(Error::OrderViolation {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let x = Interval { lo, hi };
        self.check_strong(&x)?;
        Ok(x)
    }

    /// Degenerate interval `[x, x]`.
    pub fn embed(&self, x: Element) -> Result<Interval> {
        self.interval(x.clone(), x)
    }

    pub fn zero_interval(&self) -> Interval {
        let z = self.base.zero_element();
        Interval {
            lo: z.clone(),
            hi: z,
        }
    }

    pub fn one_interval(&self) -> Interval {
        let e = self.base.one_element();
        Interval {
            lo: e.clone(),
            hi: e,
        }
    }

    /// `x = [𝟘,𝟘]` or `𝟘 ≺ lo(x)`.
    pub fn strong_valid(&self, x: &Interval) -> bool {
        let zero = self.base.zero_element();
        (x.lo == zero && x.hi == zero) || x.lo != zero
    }

    fn check_strong(&self, x: &Interval) -> Result<()> {
        if self.is_strong() && !self.strong_valid(x) {
            return Err(Error::StrongModeViolation(x.to_string()));
        }
        Ok(())
    }

    pub fn hull_add(&self, x: &Interval, y: &Interval) -> Result<Interval> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(Interval {
            lo: self.base.oplus(&x.lo, &y.lo),
            hi: self.base.oplus(&x.hi, &y.hi),
        })
    }

    pub fn hull_mul(&self, x: &Interval, y: &Interval) -> Result<Interval> {
        self.validate(x)?;
        self.validate(y)?;
        let z = Interval {
            lo: self.base.otimes(&x.lo, &y.lo),
            hi: self.base.otimes(&x.hi, &y.hi),
        };
        self.check_strong(&z)?;
        Ok(z)
    }

    pub fn hull(&self, op: SetOp, x: &Interval, y: &Interval) -> Result<Interval> {
        match op {
            SetOp::Add => self.hull_add(x, y),
            SetOp::Mul => self.hull_mul(x, y),
        }
    }

    /// `[⊕ lo, ⊕ hi]`; the empty family gives `[𝟘,𝟘]`.
    pub fn big_hull_sum<'a, I>(&self, xs: I) -> Result<Interval>
    where
        I: IntoIterator<Item = &'a Interval>,
    {
        let xs: Vec<&Interval> = xs.into_iter().collect();
        for x in &xs {
            self.validate(x)?;
        }
        let lo = self.base.big_sum(xs.iter().map(|x| &x.lo))?;
        let hi = self.base.big_sum(xs.iter().map(|x| &x.hi))?;
        Ok(Interval { lo, hi })
    }

    /// Hull power `xⁿ = [x̲ⁿ, x̄ⁿ]`.
    pub fn pow(&self, x: &Interval, n: u64) -> Result<Interval> {
        self.validate(x)?;
        Ok(Interval {
            lo: self.base.pow_raw(&x.lo, n),
            hi: self.base.pow_raw(&x.hi, n),
        })
    }

    /// A `z` with `zⁿ = y`: roots of both bounds, with the upper root
    /// replaced by `z̲ ⊕ z̄` so the bounds stay ordered.
    pub fn nth_root(&self, y: &Interval, n: u64) -> Result<Interval> {
        self.validate(y)?;
        let lo = self.base.nth_root(&y.lo, n)?;
        let hi = self.base.nth_root(&y.hi, n)?;
        let hi = self.base.oplus(&lo, &hi);
        let z = Interval { lo, hi };
        self.check_strong(&z)?;
        Ok(z)
    }

    /// Draws an interval whose bounds are random base samples.
    fn sample_interval<R: Rng + ?Sized>(&self, rng: &mut R) -> Interval {
        let a = self.base.sample(rng);
        let b = self.base.sample(rng);
        let hi = self.base.oplus(&a, &b);
        let x = Interval { lo: a, hi };
        if self.strong_valid(&x) || !self.is_strong() {
            x
        } else {
            self.zero_interval()
        }
    }
}

impl Algebra for IntervalSemiring {
    type Value = Interval;

    fn add(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        self.hull_add(a, b)
    }

    fn mul(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        self.hull_mul(a, b)
    }

    fn zero(&self) -> Option<Interval> {
        self.base.flags().has_zero.then(|| self.zero_interval())
    }

    fn one(&self) -> Option<Interval> {
        self.base.flags().has_unity.then(|| self.one_interval())
    }

    /// Properties inherited from the base. The weak extension loses
    /// cancellation and stabilization; the strong one keeps them.
    fn flags(&self) -> Flags {
        let b = self.base.flags();
        let two_point = matches!(self.base.kind(), Kind::Bool);
        match self.mode {
            IntervalMode::Weak => Flags {
                cancellative: false,
                stabilizing: false,
                totally_ordered: b.totally_ordered && two_point,
                ..b
            },
            IntervalMode::Strong => Flags {
                totally_ordered: b.totally_ordered && two_point,
                ..b
            },
        }
    }

    fn validate(&self, x: &Interval) -> Result<()> {
        self.base.validate(&x.lo)?;
        self.base.validate(&x.hi)?;
        if !self.base.leq(&x.lo, &x.hi)? {
            return Err(Error::OrderViolation {
                lo: x.lo.to_string(),
                hi: x.hi.to_string(),
            });
        }
        self.check_strong(x)
    }
}

impl Sample for IntervalSemiring {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Interval {
        self.sample_interval(rng)
    }
}
