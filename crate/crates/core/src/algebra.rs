//! The runtime algebra abstraction shared by scalars, intervals and matrices.

use std::fmt;

use rand::Rng;

use crate::error::Result;

/// Structural properties an algebra declares about itself. They are
/// hypotheses, not computed facts; [`check_axioms`](crate::check_axioms)
/// samples them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Flags {
    pub commutative: bool,
    pub has_zero: bool,
    pub has_unity: bool,
    pub a_complete: bool,
    pub b_complete: bool,
    pub cancellative: bool,
    pub stabilizing: bool,
    pub algebraically_closed: bool,
    pub zero_divisor_free: bool,
    pub totally_ordered: bool,
}

impl Flags {
    pub const ALL: Flags = Flags {
        commutative: true,
        has_zero: true,
        has_unity: true,
        a_complete: true,
        b_complete: true,
        cancellative: true,
        stabilizing: true,
        algebraically_closed: true,
        zero_divisor_free: true,
        totally_ordered: true,
    };

    /// Conjunction of every flag.
    pub fn and(self, o: Flags) -> Flags {
        Flags {
            commutative: self.commutative && o.commutative,
            has_zero: self.has_zero && o.has_zero,
            has_unity: self.has_unity && o.has_unity,
            a_complete: self.a_complete && o.a_complete,
            b_complete: self.b_complete && o.b_complete,
            cancellative: self.cancellative && o.cancellative,
            stabilizing: self.stabilizing && o.stabilizing,
            algebraically_closed: self.algebraically_closed && o.algebraically_closed,
            zero_divisor_free: self.zero_divisor_free && o.zero_divisor_free,
            totally_ordered: self.totally_ordered && o.totally_ordered,
        }
    }
}

/// An idempotent semiring whose operations are chosen at runtime.
///
/// Operations fail on values that do not pass [`Algebra::validate`] and on
/// closure failures (a strong interval product that lands outside the
/// strong extension, for instance).
pub trait Algebra: Clone + PartialEq + fmt::Debug {
    type Value: Clone + PartialEq + fmt::Debug;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn zero(&self) -> Option<Self::Value>;
    fn one(&self) -> Option<Self::Value>;
    fn flags(&self) -> Flags;
    fn validate(&self, v: &Self::Value) -> Result<()>;

    /// Canonical order: `a ≼ b` iff `a ⊕ b = b`.
    fn leq(&self, a: &Self::Value, b: &Self::Value) -> Result<bool> {
        Ok(self.add(a, b)? == *b)
    }

    fn is_zero(&self, v: &Self::Value) -> bool {
        self.zero().is_some_and(|z| z == *v)
    }
}

/// Random generation of algebra values for property checks.
pub trait Sample: Algebra {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Value;
}
