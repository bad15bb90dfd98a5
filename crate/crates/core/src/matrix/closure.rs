use super::Matrix;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    /// Repeated squaring of `E ⊕ A`.
    #[default]
    Squaring,
    /// Single pass of Floyd–Warshall–Kleene elimination.
    Kleene,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClosureOptions {
    pub backend: Backend,
    /// Skip the semidefiniteness test and instead require the partial sums
    /// to be constant from `n−1` through `2n` terms.
    pub allow_unchecked: bool,
}

/// `E ⊕ A ⊕ ⋯ ⊕ Aᵏ`.
pub fn partial_sum<A: Algebra>(a: &Matrix<A>, k: usize) -> Result<Matrix<A>> {
    let n = a.require_square()?;
    let e = Matrix::identity(a.algebra().clone(), n)?;
    if k == 0 {
        return Ok(e);
    }
    e.add(&plus_sum(a, k)?)
}

/// `A ⊕ A² ⊕ ⋯ ⊕ Aᵏ` for `k ≥ 1`.
pub fn plus_sum<A: Algebra>(a: &Matrix<A>, k: usize) -> Result<Matrix<A>> {
    a.require_square()?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "plus_sum needs at least one term".into(),
        ));
    }
    let mut power = a.clone();
    let mut sum = a.clone();
    for _ in 1..k {
        power = a.mul(&power)?;
        sum = sum.add(&power)?;
    }
    Ok(sum)
}

fn diagonal_test<A: Algebra>(a: &Matrix<A>, strict: bool) -> Result<bool> {
    let n = a.require_square()?;
    let one = a.algebra().one().ok_or(Error::NoUnity)?;
    let s = plus_sum(a, n)?;
    for i in 0..n {
        let d = s.get(i, i);
        if !a.algebra().leq(d, &one)? || (strict && *d == one) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every closed path has weight `≼ 𝟙`. Closed paths longer than `n`
/// decompose into shorter ones, so the diagonal of `A ⊕ ⋯ ⊕ Aⁿ` decides it.
pub fn is_semidefinite<A: Algebra>(a: &Matrix<A>) -> Result<bool> {
    diagonal_test(a, false)
}

/// Every closed path has weight `≺ 𝟙`. Tested as `d ≼ 𝟙, d ≠ 𝟙` on the
/// same diagonal; over a partially ordered semiring this is sufficient but
/// not necessary, since incomparable cycle weights can join to `𝟙`.
pub fn is_definite<A: Algebra>(a: &Matrix<A>) -> Result<bool> {
    diagonal_test(a, true)
}

/// `A* = E ⊕ A ⊕ ⋯ ⊕ Aⁿ⁻¹`.
pub fn closure<A: Algebra>(a: &Matrix<A>, opts: ClosureOptions) -> Result<Matrix<A>> {
    let n = a.require_square()?;
    if opts.allow_unchecked {
        return unchecked(a, n);
    }
    if !is_semidefinite(a)? {
        return Err(Error::NotSemidefinite);
    }
    match opts.backend {
        Backend::Squaring => squaring(a, n),
        Backend::Kleene => kleene(a, n),
    }
}

fn unchecked<A: Algebra>(a: &Matrix<A>, n: usize) -> Result<Matrix<A>> {
    let limit = 2 * n;
    let mut power = Matrix::identity(a.algebra().clone(), n)?;
    let mut sum = power.clone();
    let mut truncated = None;
    for l in 1..=limit {
        if l == n {
            truncated = Some(sum.clone());
        }
        power = a.mul(&power)?;
        sum = sum.add(&power)?;
    }
    let truncated = truncated.unwrap_or_else(|| sum.clone());
    if truncated != sum {
        return Err(Error::Diverged(limit));
    }
    Ok(truncated)
}

fn squaring<A: Algebra>(a: &Matrix<A>, n: usize) -> Result<Matrix<A>> {
    let mut m = Matrix::identity(a.algebra().clone(), n)?.add(a)?;
    let mut covered = 1;
    while covered < n.saturating_sub(1) {
        m = m.mul(&m)?;
        covered *= 2;
    }
    Ok(m)
}

fn kleene<A: Algebra>(a: &Matrix<A>, n: usize) -> Result<Matrix<A>> {
    let alg = a.algebra().clone();
    let one = alg.one().ok_or(Error::NoUnity)?;
    let mut m = a.clone();
    for k in 0..n {
        // c* = 𝟙 whenever c ≼ 𝟙
        if !alg.leq(m.get(k, k), &one)? {
            return Err(Error::NotSemidefinite);
        }
        for i in 0..n {
            if alg.is_zero(m.get(i, k)) {
                continue;
            }
            for j in 0..n {
                let via = alg.mul(m.get(i, k), m.get(k, j))?;
                let v = alg.add(m.get(i, j), &via)?;
                m.set(i, j, v)?;
            }
        }
    }
    Matrix::identity(alg, n)?.add(&m)
}
