pub mod algebra;
pub mod app;
pub mod axioms;
pub mod bellman;
pub mod dequant;
pub mod element;
pub mod error;
pub mod interval;
pub mod io;
pub mod matrix;
pub mod real;
pub mod semiring;
pub mod spectral;

pub use algebra::{Algebra, Flags, Sample};
pub use axioms::{check_axioms, AxiomReport, Law};
pub use element::Element;
pub use error::{Error, Result};
pub use interval::{Interval, IntervalMode, IntervalSemiring};
pub use matrix::{GraphSpec, Matrix, MatrixAlgebra};
pub use real::{NumericMode, Real};
pub use semiring::{Kind, Semiring};
