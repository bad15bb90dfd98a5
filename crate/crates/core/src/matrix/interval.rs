use super::Matrix;
use crate::error::{Error, Result};
use crate::interval::IntervalSemiring;
use crate::semiring::Semiring;

/// Lower and upper matrices `(𝐀̲, 𝐀̄)`.
pub fn split(m: &Matrix<IntervalSemiring>) -> Result<(Matrix<Semiring>, Matrix<Semiring>)> {
    let base = m.algebra().base().clone();
    let lo = m.map(base.clone(), |x| x.lo().clone())?;
    let hi = m.map(base, |x| x.hi().clone())?;
    Ok((lo, hi))
}

/// Inverse of [`split`]; fails with `OrderViolation` where `L ⋠ U`.
pub fn join(
    algebra: &IntervalSemiring,
    lo: &Matrix<Semiring>,
    hi: &Matrix<Semiring>,
) -> Result<Matrix<IntervalSemiring>> {
    if lo.algebra() != algebra.base() || hi.algebra() != algebra.base() {
        return Err(Error::SemiringMismatch);
    }
    if (lo.rows(), lo.cols()) != (hi.rows(), hi.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            lo.rows(),
            lo.cols(),
            hi.rows(),
            hi.cols()
        )));
    }
    let data = lo
        .entries()
        .iter()
        .zip(hi.entries())
        .map(|(l, h)| algebra.interval(l.clone(), h.clone()))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(algebra.clone(), lo.rows(), lo.cols(), data)
}
