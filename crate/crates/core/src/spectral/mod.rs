//! Irreducibility, block decomposition and eigen analysis.
//!
//! Eigenvalues are defined for irreducible square matrices over commutative,
//! cancellative, stabilizing, algebraically closed semirings. For `rmax` and
//! `rmin` the eigenvalue is the maximum (minimum) cycle mean and is computed
//! by Karp's recurrence; other instances enumerate elementary cycles, which
//! is limited to small matrices.

mod blocks;

pub use blocks::{block_form, is_irreducible, BlockForm};

use num_integer::Integer;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::interval::IntervalSemiring;
use crate::matrix::{closure, join, plus_sum, split, ClosureOptions, Matrix};
use crate::real::NumericMode;
use crate::semiring::{Kind, Semiring};

/// Largest order handled by cycle enumeration.
pub const CYCLE_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<A: Algebra> {
    pub value: A::Value,
    /// Column vector, never the zero vector.
    pub vector: Matrix<A>,
}

fn require_hypotheses(s: &Semiring) -> Result<()> {
    let f = s.flags();
    let missing: Vec<&str> = [
        (f.commutative, "commutative"),
        (f.cancellative, "cancellative"),
        (f.stabilizing, "stabilizing"),
        (f.algebraically_closed, "algebraically closed"),
        (f.has_zero, "zero"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, name)| name)
    .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::MissingCapability(format!(
            "{s} lacks: {}",
            missing.join(", ")
        )))
    }
}

/// The eigenvalue of an irreducible matrix.
pub fn eigenvalue(a: &Matrix<Semiring>) -> Result<Element> {
    a.require_square()?;
    require_hypotheses(a.algebra())?;
    if !is_irreducible(a)? {
        return Err(Error::Reducible);
    }
    if a.algebra().is_cycle_mean() {
        max_cycle_mean(a)
    } else {
        eigenvalue_by_cycles(a)
    }
}

/// Karp's recurrence over `rmax` or `rmin`:
/// `λ = ⊕_v ⊓_k (Dₙ(v) − D_k(v)) / (n − k)` where `D_k(v)` is the best weight
/// of a length-`k` path ending at `v`. Works on reducible matrices too and
/// gives `𝟘` when there is no cycle.
pub fn max_cycle_mean(a: &Matrix<Semiring>) -> Result<Element> {
    let n = a.require_square()?;
    let s = a.algebra();
    if !s.is_cycle_mean() {
        return Err(Error::MissingCapability(format!(
            "{s} has no cycle-mean eigenvalue"
        )));
    }
    let mut d = vec![vec![s.one_element(); n]];
    for k in 1..=n {
        let prev = &d[k - 1];
        let next = (0..n)
            .map(|v| {
                s.big_sum(
                    &(0..n)
                        .map(|u| s.otimes(&prev[u], a.get(u, v)))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        d.push(next);
    }
    let mut best: Option<Element> = None;
    for v in 0..n {
        let Some(dn) = d[n][v].as_real() else {
            continue;
        };
        let mut worst: Option<Element> = None;
        for (k, dk) in d.iter().enumerate().take(n) {
            let Some(dk) = dk[v].as_real() else { continue };
            let mean = Element::Finite(dn.sub(dk).div_int((n - k) as u64));
            worst = Some(match worst {
                None => mean,
                Some(w) => s.meet_raw(&w, &mean),
            });
        }
        if let Some(w) = worst {
            best = Some(match best {
                None => w,
                Some(b) => s.oplus(&b, &w),
            });
        }
    }
    Ok(best.unwrap_or_else(|| s.zero_element()))
}

/// Calls `f(length, weight)` for every elementary cycle with nonzero weight.
fn for_each_cycle(
    a: &Matrix<Semiring>,
    mut f: impl FnMut(usize, &Element) -> Result<()>,
) -> Result<()> {
    let n = a.require_square()?;
    if n > CYCLE_LIMIT {
        return Err(Error::TooLarge {
            limit: CYCLE_LIMIT,
            got: n,
        });
    }
    let s = a.algebra();
    // each cycle is generated once, from its smallest node
    fn walk(
        a: &Matrix<Semiring>,
        start: usize,
        at: usize,
        weight: &Element,
        path: &mut Vec<usize>,
        f: &mut dyn FnMut(usize, &Element) -> Result<()>,
    ) -> Result<()> {
        let s = a.algebra();
        for next in start..a.rows() {
            let arc = a.get(at, next);
            if s.is_zero_element(arc) {
                continue;
            }
            let w = s.otimes(weight, arc);
            if next == start {
                if !s.is_zero_element(&w) {
                    f(path.len(), &w)?;
                }
            } else if !path.contains(&next) {
                path.push(next);
                walk(a, start, next, &w, path, f)?;
                path.pop();
            }
        }
        Ok(())
    }
    let one = s.one_element();
    for start in 0..n {
        walk(a, start, start, &one, &mut vec![start], &mut f)?;
    }
    Ok(())
}

/// `⊕` over elementary cycles of `ⁿ√(cycle weight)`, `n` the cycle length.
pub fn eigenvalue_by_cycles(a: &Matrix<Semiring>) -> Result<Element> {
    let s = a.algebra();
    let mut acc = s.zero_element();
    for_each_cycle(a, |len, w| {
        acc = s.oplus(&acc, &s.nth_root(w, len as u64)?);
        Ok(())
    })?;
    Ok(acc)
}

/// The cycle-invariant form `λ^φ(n) = ⊕ (cycle weight)^(φ(n)/l)` with
/// `φ(n) = lcm(1, …, n)`. The powers grow quickly, so only exact mode is
/// accepted.
pub fn eigenvalue_cycle_invariant(a: &Matrix<Semiring>) -> Result<Element> {
    let s = a.algebra();
    if s.mode() != NumericMode::ExactRational {
        return Err(Error::ExactModeRequired(
            "cycle-invariant eigenvalue".into(),
        ));
    }
    let n = a.require_square()?;
    let phi = (1..=n as u64).fold(1u64, |acc, k| acc.lcm(&k));
    let mut acc = s.zero_element();
    for_each_cycle(a, |len, w| {
        acc = s.oplus(&acc, &s.pow(w, phi / len as u64)?);
        Ok(())
    })?;
    s.nth_root(&acc, phi)
}

/// An eigenvector for `lambda`: a column `j` of `(λ⁻¹A)*` whose diagonal
/// entry in `λ⁻¹A ⊕ ⋯ ⊕ (λ⁻¹A)ⁿ` is `𝟙`. Products are solved factor by
/// factor since their critical nodes may differ between factors.
pub fn eigenvector(a: &Matrix<Semiring>, lambda: &Element) -> Result<Matrix<Semiring>> {
    let n = a.require_square()?;
    let s = a.algebra();
    s.validate(lambda)?;
    let v = match (s.kind(), lambda) {
        (Kind::Product(fs), Element::Tuple(ls)) => {
            let parts = fs
                .iter()
                .zip(ls)
                .enumerate()
                .map(|(c, (f, l))| {
                    let m = a.map(f.clone(), |x| component(x, c))?;
                    eigenvector(&m, l)
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_fn(s.clone(), n, 1, |i, _| {
                Element::Tuple(parts.iter().map(|p| p.get(i, 0).clone()).collect())
            })?
        }
        _ => critical_column(a, lambda)?,
    };
    if a.mul(&v)? != v.scale(lambda)? {
        return Err(Error::NotEigenvalue(lambda.to_string()));
    }
    Ok(v)
}

fn component(x: &Element, c: usize) -> Element {
    match x {
        Element::Tuple(xs) => xs[c].clone(),
        _ => x.clone(),
    }
}

fn critical_column(a: &Matrix<Semiring>, lambda: &Element) -> Result<Matrix<Semiring>> {
    let n = a.rows();
    let s = a.algebra();
    let not_eigen = || Error::NotEigenvalue(lambda.to_string());
    let b = a.scale(&s.inv(lambda)?)?;
    let plus = plus_sum(&b, n)?;
    let one = s.one_element();
    let j = (0..n)
        .find(|&j| *plus.get(j, j) == one)
        .ok_or_else(not_eigen)?;
    let star = closure(&b, ClosureOptions::default()).map_err(|e| match e {
        Error::NotSemidefinite => not_eigen(),
        e => e,
    })?;
    star.column(j)
}

pub fn eigenpair(a: &Matrix<Semiring>) -> Result<EigenPair<Semiring>> {
    let value = eigenvalue(a)?;
    let vector = eigenvector(a, &value)?;
    Ok(EigenPair { value, vector })
}

/// Scales a nonzero vector so the `⊕` of its coordinates is `𝟙`.
pub fn normalize(v: &Matrix<Semiring>) -> Result<Matrix<Semiring>> {
    let s = v.algebra();
    let top = s.big_sum(v.entries())?;
    v.scale(&s.inv(&top)?)
}

/// Interval eigenpair from the eigenpairs of the lower and upper matrices.
/// Both vectors are normalized before joining; when that leaves the lower
/// vector not below the upper one the result is `OrderViolation`.
pub fn eigen_interval(m: &Matrix<IntervalSemiring>) -> Result<EigenPair<IntervalSemiring>> {
    let iv = m.algebra();
    m.require_square()?;
    if !iv.is_strong() {
        return Err(Error::MissingCapability(
            "interval eigenpairs need the strong extension".into(),
        ));
    }
    if !is_irreducible(m)? {
        return Err(Error::Reducible);
    }
    let (lo, hi) = split(m)?;
    let lower = eigenpair(&lo)?;
    let upper = eigenpair(&hi)?;
    let value = iv.interval(lower.value, upper.value)?;
    let vector = join(iv, &normalize(&lower.vector)?, &normalize(&upper.vector)?)?;
    if m.mul(&vector)? != vector.scale(&value)? {
        return Err(Error::NotEigenvalue(value.to_string()));
    }
    Ok(EigenPair { value, vector })
}

/// `⊕` of the eigenvalues of the diagonal blocks; all-`𝟘` blocks count as `𝟘`.
pub fn spectral_radius(a: &Matrix<Semiring>) -> Result<Element> {
    a.require_square()?;
    let s = a.algebra();
    let mut acc = s.zero_element();
    for block in block_form(a)?.block_matrices {
        if !block.is_zero_matrix() {
            acc = s.oplus(&acc, &eigenvalue(&block)?);
        }
    }
    Ok(acc)
}

/// `ρ(𝐀)`: the spectral radius of the upper matrix.
pub fn rho(m: &Matrix<IntervalSemiring>) -> Result<Element> {
    spectral_radius(&split(m)?.1)
}
