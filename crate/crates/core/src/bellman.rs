//! The stationary Bellman equation `X = AX ⊕ B`, solved by the iteration
//! `X_{k+1} = AX_k ⊕ B`.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::interval::IntervalSemiring;
use crate::matrix::{closure, is_semidefinite, split, ClosureOptions, Matrix};
use crate::semiring::Semiring;
use crate::spectral::rho;

/// Which criterion guaranteed stabilization before iterating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precheck {
    SemidefiniteOk,
    RhoOk,
    Skipped,
}

/// Stabilization test run before solving.
pub trait BellmanPrecheck: Algebra + Sized {
    /// The criterion that holds, or `PrecheckFailed`.
    fn precheck(a: &Matrix<Self>) -> Result<Precheck>;
}

impl BellmanPrecheck for Semiring {
    fn precheck(a: &Matrix<Self>) -> Result<Precheck> {
        if is_semidefinite(a)? {
            Ok(Precheck::SemidefiniteOk)
        } else {
            Err(Error::PrecheckFailed("matrix is not semi-definite".into()))
        }
    }
}

/// `ρ(𝐀) ≼ 𝟙` over `rmax`/`rmin`; elsewhere semidefiniteness of the upper
/// matrix, which is what that criterion amounts to.
impl BellmanPrecheck for IntervalSemiring {
    fn precheck(a: &Matrix<Self>) -> Result<Precheck> {
        let base = a.algebra().base();
        if base.is_cycle_mean() {
            let r = rho(a)?;
            if base.leq(&r, &base.one_element())? {
                Ok(Precheck::RhoOk)
            } else {
                Err(Error::PrecheckFailed(format!("rho = {r} exceeds unity")))
            }
        } else if is_semidefinite(&split(a)?.1)? {
            Ok(Precheck::SemidefiniteOk)
        } else {
            Err(Error::PrecheckFailed(
                "upper matrix is not semi-definite".into(),
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions<A: Algebra> {
    /// Starting point; `O` when absent.
    pub x0: Option<Matrix<A>>,
    /// Iterates to compute before giving up; `2n + 1` when absent.
    pub max_iter: Option<usize>,
    /// Skip the precheck.
    pub force: bool,
}

impl<A: Algebra> Default for SolveOptions<A> {
    fn default() -> Self {
        SolveOptions {
            x0: None,
            max_iter: None,
            force: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<A: Algebra> {
    pub solution: Matrix<A>,
    /// Least `k` with `X_k = X_{k+1}`.
    pub iterations_used: usize,
    pub stabilized: bool,
    pub precheck: Precheck,
    pub residual_ok: bool,
}

fn conformable<A: Algebra>(a: &Matrix<A>, b: &Matrix<A>) -> Result<usize> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n} but B has {} rows",
            b.rows()
        )));
    }
    if a.algebra() != b.algebra() {
        return Err(Error::SemiringMismatch);
    }
    Ok(n)
}

/// `X_0, X_1, …, X_steps`.
pub fn iterate<A: Algebra>(
    a: &Matrix<A>,
    b: &Matrix<A>,
    x0: Option<&Matrix<A>>,
    steps: usize,
) -> Result<Vec<Matrix<A>>> {
    conformable(a, b)?;
    let mut x = match x0 {
        Some(x) => x.clone(),
        None => Matrix::zeros(a.algebra().clone(), b.rows(), b.cols())?,
    };
    let mut out = Vec::with_capacity(steps + 1);
    for _ in 0..steps {
        let next = a.mul(&x)?.add(b)?;
        out.push(std::mem::replace(&mut x, next));
    }
    out.push(x);
    Ok(out)
}

/// Iterates until two successive iterates are equal.
///
/// A starting point that is not below `A*B` may converge to another
/// solution or not at all; when `A*` can be computed such starts are
/// rejected with `NotStabilized`.
pub fn solve<A: BellmanPrecheck>(
    a: &Matrix<A>,
    b: &Matrix<A>,
    opts: SolveOptions<A>,
) -> Result<SolveReport<A>> {
    let n = conformable(a, b)?;
    let precheck = if opts.force {
        Precheck::Skipped
    } else {
        A::precheck(a)?
    };
    let max_iter = opts.max_iter.unwrap_or(2 * n + 1);
    let custom_start = opts.x0.is_some();
    let x0 = match opts.x0 {
        Some(x) => {
            if (x.rows(), x.cols()) != (b.rows(), b.cols()) {
                return Err(Error::DimensionMismatch("X0 and B differ in shape".into()));
            }
            x
        }
        None => Matrix::zeros(a.algebra().clone(), b.rows(), b.cols())?,
    };

    if custom_start {
        let star = closure(a, ClosureOptions::default()).or_else(|_| {
            closure(
                a,
                ClosureOptions {
                    allow_unchecked: true,
                    ..Default::default()
                },
            )
        });
        if let Ok(star) = star {
            if !x0.leq(&star.mul(b)?)? {
                return Err(Error::NotStabilized(0));
            }
        }
    }

    let mut x = x0;
    for k in 0..max_iter {
        let next = a.mul(&x)?.add(b)?;
        if next == x {
            let residual_ok = verify(a, b, &x)?;
            return Ok(SolveReport {
                solution: x,
                iterations_used: k,
                stabilized: true,
                precheck,
                residual_ok,
            });
        }
        x = next;
    }
    Err(Error::NotStabilized(max_iter))
}

/// `AX ⊕ B = X`, exactly.
pub fn verify<A: Algebra>(a: &Matrix<A>, b: &Matrix<A>, x: &Matrix<A>) -> Result<bool> {
    conformable(a, b)?;
    Ok(a.mul(x)?.add(b)? == *x)
}

/// Whether `A*B ≼ X` for a solution `X`.
pub fn minimality_check<A: Algebra>(a: &Matrix<A>, b: &Matrix<A>, x: &Matrix<A>) -> Result<bool> {
    if !verify(a, b, x)? {
        return Err(Error::NotASolution);
    }
    closure(a, ClosureOptions::default())?.mul(b)?.leq(x)
}
