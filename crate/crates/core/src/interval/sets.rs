use std::collections::BTreeSet;

use rand::Rng;

use super::{Interval, IntervalSemiring};
use crate::algebra::{Algebra, Flags, Sample};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semiring::Semiring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Add,
    Mul,
}

/// Exact image `{x ⋆ y | x ∈ xs, y ∈ ys}`.
pub fn set_star(
    s: &Semiring,
    xs: &BTreeSet<Element>,
    ys: &BTreeSet<Element>,
    op: SetOp,
) -> Result<BTreeSet<Element>> {
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            out.insert(match op {
                SetOp::Add => s.add(x, y)?,
                SetOp::Mul => s.mul(x, y)?,
            });
        }
    }
    Ok(out)
}

/// Least interval containing a finite nonempty set: `[inf X, sup X]`.
pub fn interval_hull<'a, I>(s: &IntervalSemiring, xs: I) -> Result<Interval>
where
    I: IntoIterator<Item = &'a Element>,
{
    let base = s.base();
    let mut bounds: Option<(Element, Element)> = None;
    for x in xs {
        base.validate(x)?;
        bounds = Some(match bounds {
            None => (x.clone(), x.clone()),
            Some((lo, hi)) => (base.meet_raw(&lo, x), base.oplus(&hi, x)),
        });
    }
    let (lo, hi) = bounds.ok_or(Error::EmptySet)?;
    s.interval(lo, hi)
}

/// Finite subsets of a semiring under the naive elementwise operations.
/// This is not an idempotent semiring in general; it exists so the axiom
/// harness can exhibit the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveSetAlgebra {
    base: Semiring,
    max_len: usize,
}

impl NaiveSetAlgebra {
    pub fn new(base: Semiring) -> Self {
        NaiveSetAlgebra { base, max_len: 3 }
    }
}

impl Algebra for NaiveSetAlgebra {
    type Value = BTreeSet<Element>;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        set_star(&self.base, a, b, SetOp::Add)
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        set_star(&self.base, a, b, SetOp::Mul)
    }

    fn zero(&self) -> Option<Self::Value> {
        None
    }

    fn one(&self) -> Option<Self::Value> {
        None
    }

    fn flags(&self) -> Flags {
        Flags::default()
    }

    fn validate(&self, v: &Self::Value) -> Result<()> {
        if v.is_empty() {
            return Err(Error::EmptySet);
        }
        v.iter().try_for_each(|x| self.base.validate(x))
    }
}

impl Sample for NaiveSetAlgebra {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Value {
        let len = rng.gen_range(1..=self.max_len);
        (0..len).map(|_| self.base.sample(rng)).collect()
    }
}
