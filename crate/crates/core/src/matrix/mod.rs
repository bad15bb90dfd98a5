//! Dense matrices over any [`Algebra`], including interval semirings.

mod closure;
mod graph;
mod interval;

pub use closure::{
    closure, is_definite, is_semidefinite, partial_sum, plus_sum, Backend, ClosureOptions,
};
pub use graph::{Edge, GraphSpec};
pub use interval::{join, split};

use std::fmt;

use rand::Rng;

use crate::algebra::{Algebra, Flags, Sample};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<A: Algebra> {
    algebra: A,
    rows: usize,
    cols: usize,
    data: Vec<A::Value>,
}

impl<A: Algebra> Matrix<A> {
    /// Row-major construction; every entry is validated.
    pub fn new(algebra: A, rows: usize, cols: usize, data: Vec<A::Value>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "empty matrix {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for v in &data {
            algebra.validate(v)?;
        }
        Ok(Matrix {
            algebra,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(algebra: A, rows: Vec<Vec<A::Value>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(algebra, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        algebra: A,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> A::Value,
    ) -> Result<Self> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(algebra, rows, cols, data)
    }

    /// The zero matrix `O`.
    pub fn zeros(algebra: A, rows: usize, cols: usize) -> Result<Self> {
        let z = algebra.zero().ok_or(Error::EmptyNoZero)?;
        Self::new(algebra, rows, cols, vec![z; rows * cols])
    }

    /// The unity matrix `E = (δ_ij)`.
    pub fn identity(algebra: A, n: usize) -> Result<Self> {
        let z = algebra.zero().ok_or(Error::EmptyNoZero)?;
        let e = algebra.one().ok_or(Error::NoUnity)?;
        Self::from_fn(
            algebra,
            n,
            n,
            |i, j| if i == j { e.clone() } else { z.clone() },
        )
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Entry `(i, j)`, 0-based. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &A::Value {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[A::Value] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[A::Value] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Result<Matrix<A>> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        let data = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        Ok(Matrix {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: 1,
            data,
        })
    }

    /// Replaces entry `(i, j)` after validating the value.
    pub fn set(&mut self, i: usize, j: usize, v: A::Value) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        self.algebra.validate(&v)?;
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    /// Applies `f` entrywise into a matrix over another algebra.
    pub fn map<B: Algebra>(
        &self,
        algebra: B,
        mut f: impl FnMut(&A::Value) -> B::Value,
    ) -> Result<Matrix<B>> {
        Matrix::new(
            algebra,
            self.rows,
            self.cols,
            self.data.iter().map(&mut f).collect(),
        )
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::SemiringMismatch);
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.same_algebra(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.algebra.add(a, b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `(AB)_ij = ⊕_k a_ik ⊙ b_kj`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let alg = &self.algebra;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = alg.mul(self.get(i, 0), other.get(0, j))?;
                for k in 1..self.cols {
                    acc = alg.add(&acc, &alg.mul(self.get(i, k), other.get(k, j))?)?;
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            algebra: alg.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `A⁰ = E`, `Aᵏ = A·Aᵏ⁻¹`.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = Self::identity(self.algebra.clone(), n)?;
        for _ in 0..k {
            out = self.mul(&out)?;
        }
        Ok(out)
    }

    /// `c ⊙ A`, multiplying from the left.
    pub fn scale(&self, c: &A::Value) -> Result<Self> {
        self.algebra.validate(c)?;
        let data = self
            .data
            .iter()
            .map(|a| self.algebra.mul(c, a))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise canonical order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_shape(other)?;
        for (a, b) in self.data.iter().zip(&other.data) {
            if !self.algebra.leq(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| self.algebra.is_zero(v))
    }
}

impl<A: Algebra> fmt::Display for Matrix<A>
where
    A::Value: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `Mat_nn(S)` as an algebra in its own right, so the axiom harness can
/// run over matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixAlgebra<A: Algebra> {
    base: A,
    n: usize,
}

impl<A: Algebra> MatrixAlgebra<A> {
    pub fn new(base: A, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "matrix order must be positive".into(),
            ));
        }
        Ok(MatrixAlgebra { base, n })
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl<A: Algebra> Algebra for MatrixAlgebra<A> {
    type Value = Matrix<A>;

    fn add(&self, a: &Matrix<A>, b: &Matrix<A>) -> Result<Matrix<A>> {
        self.validate(a)?;
        a.add(b)
    }

    fn mul(&self, a: &Matrix<A>, b: &Matrix<A>) -> Result<Matrix<A>> {
        self.validate(a)?;
        self.validate(b)?;
        a.mul(b)
    }

    fn zero(&self) -> Option<Matrix<A>> {
        Matrix::zeros(self.base.clone(), self.n, self.n).ok()
    }

    fn one(&self) -> Option<Matrix<A>> {
        Matrix::identity(self.base.clone(), self.n).ok()
    }

    /// For `n ≥ 2` the product is neither commutative nor cancellative and
    /// there are zero divisors.
    fn flags(&self) -> Flags {
        let b = self.base.flags();
        if self.n == 1 {
            return b;
        }
        Flags {
            commutative: false,
            cancellative: false,
            stabilizing: false,
            algebraically_closed: false,
            zero_divisor_free: false,
            totally_ordered: false,
            has_unity: b.has_unity && b.has_zero,
            ..b
        }
    }

    fn validate(&self, m: &Matrix<A>) -> Result<()> {
        if m.algebra != self.base {
            return Err(Error::SemiringMismatch);
        }
        if (m.rows, m.cols) != (self.n, self.n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0}, got {1}x{2}",
                self.n, m.rows, m.cols
            )));
        }
        m.data.iter().try_for_each(|v| self.base.validate(v))
    }
}

impl<A: Sample> Sample for MatrixAlgebra<A> {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<A> {
        let data = (0..self.n * self.n)
            .map(|_| self.base.sample(rng))
            .collect();
        Matrix {
            algebra: self.base.clone(),
            rows: self.n,
            cols: self.n,
            data,
        }
    }
}
