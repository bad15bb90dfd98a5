//! Semifield of fractions and the idempotent analogue of Kaucher intervals.

use super::{Interval, IntervalSemiring};
use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Formal quotient `num / den`. Fractions are never reduced; compare them
/// with [`FractionSemifield::equiv`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction<V> {
    num: V,
    den: V,
}

impl<V> Fraction<V> {
    pub fn num(&self) -> &V {
        &self.num
    }

    pub fn den(&self) -> &V {
        &self.den
    }
}

/// Fractions over a commutative cancellative semiring with zero, with
/// `(x,y) ⊕ (z,t) = (x⊙t ⊕ y⊙z, y⊙t)` and `(x,y) ⊙ (z,t) = (x⊙z, y⊙t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionSemifield<A: Algebra> {
    base: A,
}

impl<A: Algebra> FractionSemifield<A> {
    pub fn new(base: A) -> Result<Self> {
        let f = base.flags();
        if !(f.commutative && f.cancellative && f.has_zero) {
            return Err(Error::MissingCapability(
                "fractions need a commutative cancellative semiring with zero".into(),
            ));
        }
        Ok(FractionSemifield { base })
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn fraction(&self, num: A::Value, den: A::Value) -> Result<Fraction<A::Value>> {
        self.base.validate(&num)?;
        self.base.validate(&den)?;
        if self.base.is_zero(&den) {
            return Err(Error::ZeroDenominator);
        }
        Ok(Fraction { num, den })
    }

    fn unity(&self) -> Result<A::Value> {
        self.base.one().ok_or(Error::NoUnity)
    }

    /// `x ↦ x / 𝟙`.
    pub fn embed(&self, x: A::Value) -> Result<Fraction<A::Value>> {
        let one = self.unity()?;
        self.fraction(x, one)
    }

    pub fn zero(&self) -> Result<Fraction<A::Value>> {
        let zero = self.base.zero().ok_or(Error::EmptyNoZero)?;
        self.embed(zero)
    }

    pub fn one(&self) -> Result<Fraction<A::Value>> {
        let one = self.unity()?;
        self.fraction(one.clone(), one)
    }

    pub fn is_zero(&self, p: &Fraction<A::Value>) -> bool {
        self.base.is_zero(&p.num)
    }

    pub fn add(
        &self,
        p: &Fraction<A::Value>,
        q: &Fraction<A::Value>,
    ) -> Result<Fraction<A::Value>> {
        let b = &self.base;
        let num = b.add(&b.mul(&p.num, &q.den)?, &b.mul(&p.den, &q.num)?)?;
        let den = b.mul(&p.den, &q.den)?;
        self.fraction(num, den)
    }

    pub fn mul(
        &self,
        p: &Fraction<A::Value>,
        q: &Fraction<A::Value>,
    ) -> Result<Fraction<A::Value>> {
        let b = &self.base;
        self.fraction(b.mul(&p.num, &q.num)?, b.mul(&p.den, &q.den)?)
    }

    /// `(x,y) ~ (z,t)` iff `x⊙t = y⊙z`.
    pub fn equiv(&self, p: &Fraction<A::Value>, q: &Fraction<A::Value>) -> Result<bool> {
        Ok(self.base.mul(&p.num, &q.den)? == self.base.mul(&p.den, &q.num)?)
    }

    pub fn inv(&self, p: &Fraction<A::Value>) -> Result<Fraction<A::Value>> {
        if self.is_zero(p) {
            return Err(Error::InverseOfZero);
        }
        self.fraction(p.den.clone(), p.num.clone())
    }
}

/// A pair `(a, b)` of elements of the fraction semifield with no order
/// constraint between the coordinates; `b ≺ a` encodes a reversed interval.
/// The carrier is pairs of nonzero fractions plus the zero pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedInterval {
    a: Fraction<Element>,
    b: Fraction<Element>,
}

impl GeneralizedInterval {
    pub fn a(&self) -> &Fraction<Element> {
        &self.a
    }

    pub fn b(&self) -> &Fraction<Element> {
        &self.b
    }
}

/// The fraction semifield of the strong interval extension `𝐈(S)`,
/// represented through its isomorphism with `(S̃∖𝟘)² ∪ {𝟘}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KaucherSemifield {
    scalars: FractionSemifield<Semiring>,
    intervals: FractionSemifield<IntervalSemiring>,
}

impl KaucherSemifield {
    pub fn new(base: Semiring) -> Result<Self> {
        let scalars = FractionSemifield::new(base.clone())?;
        let intervals = FractionSemifield::new(IntervalSemiring::strong(base)?)?;
        Ok(KaucherSemifield { scalars, intervals })
    }

    pub fn scalars(&self) -> &FractionSemifield<Semiring> {
        &self.scalars
    }

    /// Fractions of strong intervals, the domain of [`Self::phi`].
    pub fn interval_fractions(&self) -> &FractionSemifield<IntervalSemiring> {
        &self.intervals
    }

    pub fn interval_semiring(&self) -> &IntervalSemiring {
        self.intervals.base()
    }

    pub fn generalized(
        &self,
        a: Fraction<Element>,
        b: Fraction<Element>,
    ) -> Result<GeneralizedInterval> {
        let a = self.scalars.fraction(a.num, a.den)?;
        let b = self.scalars.fraction(b.num, b.den)?;
        if self.scalars.is_zero(&a) != self.scalars.is_zero(&b) {
            return Err(Error::InvalidArgument(
                "generalized interval needs both coordinates zero or both nonzero".into(),
            ));
        }
        Ok(GeneralizedInterval { a, b })
    }

    pub fn zero(&self) -> Result<GeneralizedInterval> {
        Ok(GeneralizedInterval {
            a: self.scalars.zero()?,
            b: self.scalars.zero()?,
        })
    }

    pub fn is_zero(&self, g: &GeneralizedInterval) -> bool {
        self.scalars.is_zero(&g.a)
    }

    /// `φ((x, y)) = (x̲ ⊙ y̲⁻¹, x̄ ⊙ ȳ⁻¹)`, kept as the fractions
    /// `(x̲, y̲)` and `(x̄, ȳ)`.
    pub fn phi(&self, p: &Fraction<Interval>) -> Result<GeneralizedInterval> {
        let p = self.intervals.fraction(p.num.clone(), p.den.clone())?;
        let (x, y) = (&p.num, &p.den);
        let a = self.scalars.fraction(x.lo().clone(), y.lo().clone())?;
        let b = self.scalars.fraction(x.hi().clone(), y.hi().clone())?;
        Ok(GeneralizedInterval { a, b })
    }

    /// Constructs a fraction of strong intervals mapping to `g` under φ.
    /// For `a = a₁/a₂`, `b = b₁/b₂`:
    /// `x̲ = a₁b₁b₂`, `x̄ = a₁b₁b₂ ⊕ a₂b₁²`, `y̲ = a₂b₁b₂`, `ȳ = a₁b₂² ⊕ a₂b₁b₂`.
    pub fn preimage(&self, g: &GeneralizedInterval) -> Result<Fraction<Interval>> {
        let iv = self.intervals.base();
        if self.is_zero(g) {
            return self
                .intervals
                .fraction(iv.zero_interval(), iv.one_interval());
        }
        let s = self.scalars.base();
        let (a1, a2) = (&g.a.num, &g.a.den);
        let (b1, b2) = (&g.b.num, &g.b.den);
        let m = |x: &Element, y: &Element| s.mul(x, y);
        let b1b2 = m(b1, b2)?;
        let x_lo = m(a1, &b1b2)?;
        let x_hi = s.add(&x_lo, &m(a2, &m(b1, b1)?)?)?;
        let y_lo = m(a2, &b1b2)?;
        let y_hi = s.add(&m(a1, &m(b2, b2)?)?, &y_lo)?;
        self.intervals
            .fraction(iv.interval(x_lo, x_hi)?, iv.interval(y_lo, y_hi)?)
    }

    pub fn add(
        &self,
        g: &GeneralizedInterval,
        h: &GeneralizedInterval,
    ) -> Result<GeneralizedInterval> {
        Ok(GeneralizedInterval {
            a: self.scalars.add(&g.a, &h.a)?,
            b: self.scalars.add(&g.b, &h.b)?,
        })
    }

    pub fn mul(
        &self,
        g: &GeneralizedInterval,
        h: &GeneralizedInterval,
    ) -> Result<GeneralizedInterval> {
        Ok(GeneralizedInterval {
            a: self.scalars.mul(&g.a, &h.a)?,
            b: self.scalars.mul(&g.b, &h.b)?,
        })
    }

    pub fn inv(&self, g: &GeneralizedInterval) -> Result<GeneralizedInterval> {
        Ok(GeneralizedInterval {
            a: self.scalars.inv(&g.a)?,
            b: self.scalars.inv(&g.b)?,
        })
    }

    pub fn equiv(&self, g: &GeneralizedInterval, h: &GeneralizedInterval) -> Result<bool> {
        Ok(self.scalars.equiv(&g.a, &h.a)? && self.scalars.equiv(&g.b, &h.b)?)
    }

    /// Evaluates both coordinates when the base is itself a semifield
    /// (every nonzero element invertible), e.g. `rmax` or `rmin`.
    pub fn evaluate(&self, g: &GeneralizedInterval) -> Result<(Element, Element)> {
        let s = self.scalars.base();
        let eval = |f: &Fraction<Element>| -> Result<Element> { s.mul(&f.num, &s.inv(&f.den)?) };
        Ok((eval(&g.a)?, eval(&g.b)?))
    }
}
