//! Dequantization `w = h ln u` and calculus on finite grids.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Kind, Semiring};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DequantParams {
    h: f64,
}

impl DequantParams {
    pub fn new(h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::NonpositiveH(h));
        }
        Ok(DequantParams { h })
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

fn check_log_value(w: f64) -> Result<()> {
    if w.is_nan() || w == f64::INFINITY {
        return Err(Error::InvalidArgument(format!(
            "{w} is not a real number or -inf"
        )));
    }
    Ok(())
}

/// `w₁ ⊕ₕ w₂ = h ln(e^{w₁/h} + e^{w₂/h})`, evaluated as
/// `max + h ln(1 + e^{−|w₁−w₂|/h})`.
pub fn oplus_h(w1: f64, w2: f64, p: DequantParams) -> Result<f64> {
    check_log_value(w1)?;
    check_log_value(w2)?;
    if w1 == f64::NEG_INFINITY {
        return Ok(w2);
    }
    if w2 == f64::NEG_INFINITY {
        return Ok(w1);
    }
    let m = w1.max(w2);
    let d = p.h * (-(w1 - w2).abs() / p.h).exp().ln_1p();
    // Round toward m so that 0 ≤ result − m ≤ d also holds in floating point.
    let mut r = m + d;
    while r - m > d {
        r = r.next_down();
    }
    Ok(r)
}

/// `D_h(u) = h ln u`, with `D_h(0) = −∞`.
pub fn dequantize(u: f64, p: DequantParams) -> Result<f64> {
    if u.is_nan() || u < 0.0 {
        return Err(Error::NegativeInput(u));
    }
    if u == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(p.h * u.ln())
}

/// `u = e^{w/h}`.
pub fn quantize(w: f64, p: DequantParams) -> Result<f64> {
    check_log_value(w)?;
    Ok((w / p.h).exp())
}

/// One line of the `⊕ₕ → max` table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub value: f64,
    /// `(w₁ ⊕ₕ w₂) − max(w₁, w₂)`.
    pub gap: f64,
    /// `h ln 2`.
    pub bound: f64,
}

pub fn convergence_table(w1: f64, w2: f64, hs: &[f64]) -> Result<Vec<ConvergenceRow>> {
    hs.iter()
        .map(|&h| {
            let value = oplus_h(w1, w2, DequantParams::new(h)?)?;
            Ok(ConvergenceRow {
                h,
                value,
                gap: value - w1.max(w2),
                bound: h * std::f64::consts::LN_2,
            })
        })
        .collect()
}

/// A function sampled on distinct points of `ℝᵈ`, with values in a semiring.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    semiring: Semiring,
    dim: usize,
    points: Vec<Vec<f64>>,
    values: Vec<Element>,
}

impl GridFunction {
    pub fn new(
        semiring: Semiring,
        dim: usize,
        points: Vec<Vec<f64>>,
        values: Vec<Element>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "grid dimension must be positive".into(),
            ));
        }
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        for (i, x) in points.iter().enumerate() {
            if x.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "point {i} has dimension {}",
                    x.len()
                )));
            }
            if x.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "point {i} has a non-finite coordinate"
                )));
            }
            if points[..i].contains(x) {
                return Err(Error::InvalidArgument(format!("point {i} is repeated")));
            }
        }
        for v in &values {
            semiring.validate(v)?;
        }
        Ok(GridFunction {
            semiring,
            dim,
            points,
            values,
        })
    }

    /// One-dimensional grid.
    pub fn on_line(semiring: Semiring, xs: &[f64], values: Vec<Element>) -> Result<Self> {
        Self::new(semiring, 1, xs.iter().map(|&x| vec![x]).collect(), values)
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch);
        }
        if self.points != other.points {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Pointwise `⊕`.
    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.semiring.add(a, b))
            .collect::<Result<_>>()?;
        Ok(GridFunction {
            values,
            ..self.clone()
        })
    }

    /// `c ⊙ f`.
    pub fn scale(&self, c: &Element) -> Result<GridFunction> {
        let values = self
            .values
            .iter()
            .map(|v| self.semiring.mul(c, v))
            .collect::<Result<_>>()?;
        Ok(GridFunction {
            values,
            ..self.clone()
        })
    }

    /// The values as an `n×1` matrix.
    pub fn as_column(&self) -> Result<Matrix<Semiring>> {
        if self.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Matrix::new(self.semiring.clone(), self.len(), 1, self.values.clone())
    }
}

/// `∫⊕ φ(x) dx = ⊕ of the sampled values`.
pub fn idempotent_integral(f: &GridFunction) -> Result<Element> {
    if f.is_empty() {
        return Err(Error::EmptyGrid);
    }
    f.semiring.big_sum(&f.values)
}

/// `m_φ(B) = ⊕_{i∈B} φ(xᵢ)`; the empty subset has measure `𝟘`.
pub fn measure(f: &GridFunction, subset: &[usize]) -> Result<Element> {
    for &i in subset {
        if i >= f.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: f.len(),
            });
        }
    }
    f.semiring.big_sum(subset.iter().map(|&i| &f.values[i]))
}

/// `⟨φ, ψ⟩ = ∫⊕ φ(x) ⊙ ψ(x) dx`.
pub fn scalar_product(f: &GridFunction, g: &GridFunction) -> Result<Element> {
    f.same_grid(g)?;
    if f.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let products = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| f.semiring.mul(a, b))
        .collect::<Result<Vec<_>>>()?;
    f.semiring.big_sum(&products)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rmax_values(f: &GridFunction) -> Result<Vec<f64>> {
    if !matches!(f.semiring.kind(), Kind::RMax) {
        return Err(Error::MissingCapability(format!(
            "the transform needs rmax, not {}",
            f.semiring
        )));
    }
    if f.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(f.values
        .iter()
        .map(|v| v.as_real().map_or(f64::NEG_INFINITY, |r| r.to_f64()))
        .collect())
}

fn check_dims(f: &GridFunction, targets: &[Vec<f64>]) -> Result<()> {
    match targets.iter().find(|t| t.len() != f.dim) {
        Some(t) => Err(Error::DimensionMismatch(format!(
            "expected dimension {}, got {}",
            f.dim,
            t.len()
        ))),
        None => Ok(()),
    }
}

fn float_grid(targets: &[Vec<f64>], dim: usize, values: Vec<f64>) -> Result<GridFunction> {
    GridFunction::new(
        Semiring::rmax(),
        dim,
        targets.to_vec(),
        values.into_iter().map(Element::float).collect(),
    )
}

/// `φ̃(ξ) = sup_x (ξ·x + φ(x))` for each `ξ` in `xis`. Values are computed in
/// floating point whatever the numeric mode of `f`.
pub fn legendre(f: &GridFunction, xis: &[Vec<f64>]) -> Result<GridFunction> {
    let phi = rmax_values(f)?;
    check_dims(f, xis)?;
    let out = xis
        .iter()
        .map(|xi| {
            f.points
                .iter()
                .zip(&phi)
                .map(|(x, v)| dot(xi, x) + v)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    float_grid(xis, f.dim, out)
}

/// `inf_ξ (g(ξ) − ξ·x)` for each `x` in `xs`. Applied to `legendre(φ)` it
/// returns the least concave majorant of `φ` at points where the slopes
/// in the `ξ` grid suffice.
pub fn legendre_inverse(g: &GridFunction, xs: &[Vec<f64>]) -> Result<GridFunction> {
    let psi = rmax_values(g)?;
    check_dims(g, xs)?;
    let out = xs
        .iter()
        .map(|x| {
            g.points
                .iter()
                .zip(&psi)
                .map(|(xi, v)| v - dot(xi, x))
                .fold(f64::INFINITY, f64::min)
        })
        .map(|v| {
            if v == f64::INFINITY {
                f64::NEG_INFINITY
            } else {
                v
            }
        })
        .collect();
    float_grid(xs, g.dim, out)
}

/// `(Kφ)(x) = ⊕_y K(x, y) ⊙ φ(y)`; row `i` of `K` belongs to `out_points[i]`.
pub fn kernel_apply(
    k: &Matrix<Semiring>,
    f: &GridFunction,
    out_points: Vec<Vec<f64>>,
) -> Result<GridFunction> {
    if k.cols() != f.len() {
        return Err(Error::DimensionMismatch(format!(
            "kernel has {} columns, grid has {} points",
            k.cols(),
            f.len()
        )));
    }
    if out_points.len() != k.rows() {
        return Err(Error::DimensionMismatch(format!(
            "kernel has {} rows, {} output points",
            k.rows(),
            out_points.len()
        )));
    }
    if k.algebra() != &f.semiring {
        return Err(Error::SemiringMismatch);
    }
    let column = k.mul(&f.as_column()?)?;
    let dim = out_points.first().map_or(f.dim, Vec::len);
    GridFunction::new(
        f.semiring.clone(),
        dim,
        out_points,
        column.entries().to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(v: f64) -> DequantParams {
        DequantParams::new(v).unwrap()
    }

    #[test]
    fn smoothed_sum_examples() {
        assert!((oplus_h(0.0, 0.0, h(1.0)).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(oplus_h(2.5, f64::NEG_INFINITY, h(0.3)).unwrap(), 2.5);
        assert_eq!(
            oplus_h(f64::NEG_INFINITY, f64::NEG_INFINITY, h(0.3)).unwrap(),
            f64::NEG_INFINITY
        );
        let v = oplus_h(3.0, 5.0, h(0.01)).unwrap();
        assert!(v >= 5.0 && v - 5.0 <= 0.01 * std::f64::consts::LN_2);
        assert!(oplus_h(1000.0, 1000.0, h(1e-3)).unwrap().is_finite());
    }

    proptest::proptest! {
        #[test]
        fn gap_stays_within_bound(w1 in -1e6f64..1e6, dw in -50f64..50.0, hv in 1e-4f64..10.0) {
            let w2 = if dw.abs() < 1.0 { w1 } else { w1 + dw };
            let gap = oplus_h(w1, w2, h(hv)).unwrap() - w1.max(w2);
            proptest::prop_assert!(gap >= 0.0 && gap <= hv * std::f64::consts::LN_2);
        }
    }

    #[test]
    fn parameter_and_input_errors() {
        assert_eq!(DequantParams::new(0.0), Err(Error::NonpositiveH(0.0)));
        assert!(DequantParams::new(-1.0).is_err());
        assert!(DequantParams::new(f64::NAN).is_err());
        assert_eq!(dequantize(-1.0, h(1.0)), Err(Error::NegativeInput(-1.0)));
        assert!(oplus_h(f64::INFINITY, 0.0, h(1.0)).is_err());
    }

    #[test]
    fn change_of_variables() {
        let p = h(0.25);
        assert_eq!(dequantize(1.0, p).unwrap(), 0.0);
        assert_eq!(dequantize(0.0, p).unwrap(), f64::NEG_INFINITY);
        assert_eq!(quantize(f64::NEG_INFINITY, p).unwrap(), 0.0);
        for u in [1e-6, 0.3, 1.0, 7.5, 1e4] {
            let back = quantize(dequantize(u, p).unwrap(), p).unwrap();
            assert!((back - u).abs() <= 1e-12 * u);
        }
    }

    #[test]
    fn convergence_rows_respect_bound() {
        let rows = convergence_table(3.0, 5.0, &[1.0, 0.1, 0.01]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].gap <= w[0].gap);
        }
        assert!(rows.iter().all(|r| r.gap >= 0.0 && r.gap <= r.bound));
    }

    fn line(s: &Semiring, vals: &[i64]) -> GridFunction {
        let xs: Vec<f64> = (0..vals.len()).map(|i| i as f64).collect();
        GridFunction::on_line(s.clone(), &xs, vals.iter().map(|&v| s.real(v)).collect()).unwrap()
    }

    #[test]
    fn integrals_and_measures() {
        let s = Semiring::rmax().exact();
        let f = line(&s, &[1, 4, 2]);
        assert_eq!(idempotent_integral(&f).unwrap(), s.real(4));
        assert_eq!(measure(&f, &[0, 1, 2]).unwrap(), s.real(4));
        assert_eq!(measure(&f, &[2]).unwrap(), s.real(2));
        assert_eq!(measure(&f, &[]).unwrap(), Element::NegInf);
        assert!(matches!(
            measure(&f, &[3]),
            Err(Error::IndexOutOfRange { .. })
        ));
        let rmin = Semiring::rmin().exact();
        assert_eq!(
            idempotent_integral(&line(&rmin, &[1, 4, 2])).unwrap(),
            rmin.real(1)
        );
        let empty = GridFunction::new(s, 1, vec![], vec![]).unwrap();
        assert_eq!(idempotent_integral(&empty), Err(Error::EmptyGrid));
    }

    #[test]
    fn measure_is_additive() {
        let s = Semiring::rmax().exact();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let vals: Vec<Element> = (0..8).map(|_| s.sample(&mut rng)).collect();
            let xs: Vec<f64> = (0..8).map(f64::from).collect();
            let f = GridFunction::on_line(s.clone(), &xs, vals).unwrap();
            let (b1, b2): (Vec<usize>, Vec<usize>) = (0..8).partition(|_| rng.gen_bool(0.5));
            let all: Vec<usize> = (0..8).collect();
            let joined = s
                .add(&measure(&f, &b1).unwrap(), &measure(&f, &b2).unwrap())
                .unwrap();
            assert_eq!(measure(&f, &all).unwrap(), joined);
        }
    }

    #[test]
    fn scalar_products() {
        let s = Semiring::rmax().exact();
        let f = line(&s, &[1, 2]);
        let g = line(&s, &[3, 0]);
        assert_eq!(scalar_product(&f, &g).unwrap(), s.real(4));
        assert_eq!(scalar_product(&g, &f).unwrap(), s.real(4));
        let unit = line(&s, &[0, 0]);
        assert_eq!(
            scalar_product(&f, &unit).unwrap(),
            idempotent_integral(&f).unwrap()
        );
        let other =
            GridFunction::on_line(s.clone(), &[0.0, 2.0], vec![s.real(0), s.real(0)]).unwrap();
        assert_eq!(scalar_product(&f, &other), Err(Error::GridMismatch));
    }

    #[test]
    fn legendre_examples() {
        let s = Semiring::rmax();
        let f = GridFunction::on_line(s.clone(), &[-1.0, 0.0, 1.0], vec![s.real(0); 3]).unwrap();
        let xis: Vec<Vec<f64>> = [-1.0, 0.0, 1.0].iter().map(|&x| vec![x]).collect();
        let t = legendre(&f, &xis).unwrap();
        assert_eq!(
            t.values(),
            &[
                Element::float(1.0),
                Element::float(0.0),
                Element::float(1.0)
            ]
        );

        let single = GridFunction::on_line(s.clone(), &[2.0], vec![Element::float(-1.0)]).unwrap();
        let t = legendre(&single, &[vec![3.0]]).unwrap();
        assert_eq!(t.values(), &[Element::float(5.0)]);

        assert!(matches!(
            legendre(&f, &[vec![1.0, 2.0]]),
            Err(Error::DimensionMismatch(_))
        ));
        let rmin =
            GridFunction::on_line(Semiring::rmin(), &[0.0], vec![Element::float(0.0)]).unwrap();
        assert!(matches!(
            legendre(&rmin, &xis),
            Err(Error::MissingCapability(_))
        ));
    }

    #[test]
    fn kernel_is_a_homomorphism() {
        let s = Semiring::rmax().exact();
        let f = line(&s, &[1, 4, 2]);
        let g = line(&s, &[3, -1, 0]);
        let pts = f.points().to_vec();
        let id = Matrix::identity(s.clone(), 3).unwrap();
        assert_eq!(kernel_apply(&id, &f, pts.clone()).unwrap(), f);
        let k = Matrix::from_fn(s.clone(), 3, 3, |i, j| s.real(i as i64 - 2 * j as i64)).unwrap();
        let lhs = kernel_apply(&k, &f.add(&g).unwrap(), pts.clone()).unwrap();
        let rhs = kernel_apply(&k, &f, pts.clone())
            .unwrap()
            .add(&kernel_apply(&k, &g, pts.clone()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        let c = s.real(7);
        assert_eq!(
            kernel_apply(&k, &f.scale(&c).unwrap(), pts.clone()).unwrap(),
            kernel_apply(&k, &f, pts).unwrap().scale(&c).unwrap()
        );
    }
}
