//! Randomized verification of the idempotent-semiring axioms.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Sample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    AddAssociative,
    MulAssociative,
    AddCommutative,
    AddIdempotent,
    LeftDistributive,
    RightDistributive,
    ZeroIdentity,
    ZeroAnnihilates,
    UnityIdentity,
    PartialOrder,
    ZeroLeast,
    Monotone,
    MulCommutative,
    Cancellation,
    NoZeroDivisors,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::AddAssociative => "add-associative",
            Law::MulAssociative => "mul-associative",
            Law::AddCommutative => "add-commutative",
            Law::AddIdempotent => "add-idempotent",
            Law::LeftDistributive => "left-distributive",
            Law::RightDistributive => "right-distributive",
            Law::ZeroIdentity => "zero-identity",
            Law::ZeroAnnihilates => "zero-annihilates",
            Law::UnityIdentity => "unity-identity",
            Law::PartialOrder => "partial-order",
            Law::ZeroLeast => "zero-least",
            Law::Monotone => "order-monotone",
            Law::MulCommutative => "mul-commutative",
            Law::Cancellation => "cancellation",
            Law::NoZeroDivisors => "no-zero-divisors",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: Law,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub outcomes: Vec<LawOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.counterexample.is_none())
    }

    pub fn outcome(&self, law: Law) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.law == law)
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        self.outcomes
            .iter()
            .filter(|o| o.counterexample.is_some())
            .map(|o| o.law)
            .collect()
    }

    pub fn first_failure(&self) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| o.counterexample.is_some())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.counterexample {
                None => writeln!(f, "{:<20} pass ({} checks)", o.law.to_string(), o.checked)?,
                Some(c) => writeln!(f, "{:<20} FAIL {c}", o.law.to_string())?,
            }
        }
        Ok(())
    }
}

struct Recorder {
    outcomes: Vec<LawOutcome>,
}

impl Recorder {
    fn record(&mut self, law: Law, verdict: Result<bool>, witness: impl FnOnce() -> String) {
        let idx = match self.outcomes.iter().position(|o| o.law == law) {
            Some(i) => i,
            None => {
                self.outcomes.push(LawOutcome {
                    law,
                    checked: 0,
                    counterexample: None,
                });
                self.outcomes.len() - 1
            }
        };
        let slot = &mut self.outcomes[idx];
        slot.checked += 1;
        if slot.counterexample.is_some() {
            return;
        }
        match verdict {
            Ok(true) => {}
            Ok(false) => slot.counterexample = Some(witness()),
            Err(e) => slot.counterexample = Some(format!("{} (operation failed: {e})", witness())),
        }
    }
}

/// Draws `sample_count` random triples and checks every axiom, plus the
/// optional laws the algebra's flags claim (commutativity of ⊙,
/// cancellation, absence of zero divisors).
pub fn check_axioms<A: Sample>(alg: &A, sample_count: usize, seed: u64) -> Result<AxiomReport> {
    if sample_count == 0 {
        return Err(Error::InvalidArgument(
            "sample_count must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder {
        outcomes: Vec::new(),
    };
    let flags = alg.flags();
    let zero = alg.zero();
    let one = alg.one();

    for _ in 0..sample_count {
        let x = alg.sample(&mut rng);
        let y = alg.sample(&mut rng);
        let z = alg.sample(&mut rng);
        let w = || format!("x={x:?}, y={y:?}, z={z:?}");

        let add = |a: &A::Value, b: &A::Value| alg.add(a, b);
        let mul = |a: &A::Value, b: &A::Value| alg.mul(a, b);

        rec.record(
            Law::AddAssociative,
            (|| Ok(add(&add(&x, &y)?, &z)? == add(&x, &add(&y, &z)?)?))(),
            w,
        );
        rec.record(
            Law::MulAssociative,
            (|| Ok(mul(&mul(&x, &y)?, &z)? == mul(&x, &mul(&y, &z)?)?))(),
            w,
        );
        rec.record(
            Law::AddCommutative,
            (|| Ok(add(&x, &y)? == add(&y, &x)?))(),
            w,
        );
        rec.record(Law::AddIdempotent, (|| Ok(add(&x, &x)? == x))(), w);
        rec.record(
            Law::LeftDistributive,
            (|| Ok(mul(&x, &add(&y, &z)?)? == add(&mul(&x, &y)?, &mul(&x, &z)?)?))(),
            w,
        );
        rec.record(
            Law::RightDistributive,
            (|| Ok(mul(&add(&x, &y)?, &z)? == add(&mul(&x, &z)?, &mul(&y, &z)?)?))(),
            w,
        );

        if let Some(o) = &zero {
            rec.record(
                Law::ZeroIdentity,
                (|| Ok(add(o, &x)? == x && add(&x, o)? == x))(),
                w,
            );
            rec.record(
                Law::ZeroAnnihilates,
                (|| Ok(mul(o, &x)? == *o && mul(&x, o)? == *o))(),
                w,
            );
            rec.record(Law::ZeroLeast, alg.leq(o, &x), w);
        }
        if let Some(e) = &one {
            rec.record(
                Law::UnityIdentity,
                (|| Ok(mul(e, &x)? == x && mul(&x, e)? == x))(),
                w,
            );
        }

        rec.record(
            Law::PartialOrder,
            (|| {
                let reflexive = alg.leq(&x, &x)?;
                let antisymmetric = !(alg.leq(&x, &y)? && alg.leq(&y, &x)?) || x == y;
                // force a chain x ≼ u ≼ v so transitivity is exercised
                let u = add(&x, &y)?;
                let v = add(&u, &z)?;
                let chain = alg.leq(&x, &u)? && alg.leq(&u, &v)?;
                let transitive = !chain || alg.leq(&x, &v)?;
                Ok(reflexive && antisymmetric && transitive)
            })(),
            w,
        );

        rec.record(
            Law::Monotone,
            (|| {
                let hi = add(&x, &y)?;
                if !alg.leq(&x, &hi)? {
                    return Ok(false);
                }
                Ok(alg.leq(&add(&x, &z)?, &add(&hi, &z)?)?
                    && alg.leq(&add(&z, &x)?, &add(&z, &hi)?)?
                    && alg.leq(&mul(&x, &z)?, &mul(&hi, &z)?)?
                    && alg.leq(&mul(&z, &x)?, &mul(&z, &hi)?)?)
            })(),
            w,
        );

        if flags.commutative {
            rec.record(
                Law::MulCommutative,
                (|| Ok(mul(&x, &y)? == mul(&y, &x)?))(),
                w,
            );
        }
        if flags.cancellative {
            rec.record(
                Law::Cancellation,
                (|| {
                    if alg.is_zero(&x) {
                        return Ok(true);
                    }
                    let left = mul(&x, &y)? != mul(&x, &z)? || y == z;
                    let right = mul(&y, &x)? != mul(&z, &x)? || y == z;
                    Ok(left && right)
                })(),
                w,
            );
        }
        if flags.zero_divisor_free && zero.is_some() {
            rec.record(
                Law::NoZeroDivisors,
                (|| Ok(!alg.is_zero(&mul(&x, &y)?) || alg.is_zero(&x) || alg.is_zero(&y)))(),
                w,
            );
        }
    }

    Ok(AxiomReport {
        samples: sample_count,
        seed,
        outcomes: rec.outcomes,
    })
}
