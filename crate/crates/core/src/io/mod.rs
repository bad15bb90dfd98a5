//! Text formats for matrices, graphs, grid functions and reports.
//!
//! ```text
//! matrix <rows> <cols> <algebra>     graph <n>          grid <d> <n>
//! <row of entries>                   <u> <v> <weight>   <x1> … <xd> <value>
//! ```
//!
//! `<algebra>` is a semiring selection string such as `rmax` or
//! `prod:rmax,rmin@exact`, optionally prefixed with `weak:` or `strong:`
//! for interval matrices. Graph node ids are 1-based. Blank lines and lines
//! starting with `#` are ignored.

mod literal;
mod report;

pub use literal::{parse_element, parse_interval, parse_real, Literal};
pub use report::{extract_block, parse_key_values, MachineReport};

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::dequant::GridFunction;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::interval::{IntervalMode, IntervalSemiring};
use crate::matrix::{Edge, GraphSpec, Matrix};
use crate::real::NumericMode;
use crate::semiring::Semiring;

/// A scalar semiring or an interval extension of one.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyAlgebra {
    Scalar(Semiring),
    Interval(IntervalSemiring),
}

impl AnyAlgebra {
    pub fn base(&self) -> &Semiring {
        match self {
            AnyAlgebra::Scalar(s) => s,
            AnyAlgebra::Interval(iv) => iv.base(),
        }
    }

    pub fn with_mode(self, mode: NumericMode) -> Result<Self> {
        Ok(match self {
            AnyAlgebra::Scalar(s) => AnyAlgebra::Scalar(s.with_mode(mode)),
            AnyAlgebra::Interval(iv) => AnyAlgebra::Interval(IntervalSemiring::new(
                iv.base().clone().with_mode(mode),
                iv.mode(),
            )?),
        })
    }
}

impl FromStr for AnyAlgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("weak:") {
            Ok(AnyAlgebra::Interval(IntervalSemiring::weak(rest.parse()?)))
        } else if let Some(rest) = lower.strip_prefix("strong:") {
            Ok(AnyAlgebra::Interval(IntervalSemiring::new(
                rest.parse()?,
                IntervalMode::Strong,
            )?))
        } else {
            Ok(AnyAlgebra::Scalar(s.parse()?))
        }
    }
}

impl fmt::Display for AnyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyAlgebra::Scalar(s) => f.write_str(&s.descriptor()),
            AnyAlgebra::Interval(iv) => f.write_str(&iv.descriptor()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Scalar(Matrix<Semiring>),
    Interval(Matrix<IntervalSemiring>),
}

impl AnyMatrix {
    pub fn rows(&self) -> usize {
        match self {
            AnyMatrix::Scalar(m) => m.rows(),
            AnyMatrix::Interval(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            AnyMatrix::Scalar(m) => m.cols(),
            AnyMatrix::Interval(m) => m.cols(),
        }
    }
}

fn located(line: usize, col: usize, e: Error) -> Error {
    match e {
        Error::OrderViolation { .. } | Error::StrongModeViolation(_) | Error::Parse { .. } => e,
        Error::InvalidArgument(msg) => Error::Parse { line, col, msg },
        other => Error::Parse {
            line,
            col,
            msg: other.to_string(),
        },
    }
}

/// Whitespace-separated tokens with 1-based columns; whitespace inside
/// brackets does not split.
fn tokenize(line: &str, lineno: usize) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<(usize, usize)> = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse {
                line: lineno,
                col: col + 1,
                msg: format!("unexpected `{c}`"),
            });
        }
        if c.is_whitespace() && depth == 0 {
            if let Some((s, scol)) = start.take() {
                out.push((scol, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col + 1));
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            line: lineno,
            col: line.chars().count(),
            msg: "unbalanced brackets".into(),
        });
    }
    if let Some((s, scol)) = start {
        out.push((scol, &line[s..]));
    }
    Ok(out)
}

type Tokens<'a> = Vec<(usize, &'a str)>;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next meaningful line, tokenized.
    fn next_tokens(&mut self) -> Result<Option<(usize, Tokens<'a>)>> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok(Some((i + 1, tokenize(line, i + 1)?)));
        }
        Ok(None)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Tokens<'a>)> {
        self.next_tokens()?.ok_or_else(|| Error::Parse {
            line: self.last + 1,
            col: 1,
            msg: format!("missing {what}"),
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_tokens()? {
            None => Ok(()),
            Some((line, toks)) => Err(Error::Parse {
                line,
                col: toks[0].0,
                msg: "unexpected trailing content".into(),
            }),
        }
    }
}

fn header<'a>(
    line: usize,
    toks: &[(usize, &'a str)],
    keyword: &str,
    arity: usize,
) -> Result<Vec<(usize, &'a str)>> {
    if toks.first().map(|t| t.1) != Some(keyword) {
        return Err(Error::Parse {
            line,
            col: toks.first().map_or(1, |t| t.0),
            msg: format!("expected `{keyword}` header"),
        });
    }
    if toks.len() != arity + 1 {
        return Err(Error::Parse {
            line,
            col: toks[0].0,
            msg: format!("`{keyword}` header takes {arity} fields"),
        });
    }
    Ok(toks[1..].to_vec())
}

fn count(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        col,
        msg: format!("{what} must be a nonnegative integer"),
    })
}

fn read_rows<A: Literal>(
    lines: &mut Lines,
    alg: &A,
    rows: usize,
    cols: usize,
) -> Result<Matrix<A>> {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, toks) = lines.expect("matrix row")?;
        if toks.len() != cols {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!("expected {cols} entries, found {}", toks.len()),
            });
        }
        for (col, tok) in toks {
            data.push(alg.parse_value(tok).map_err(|e| located(line, col, e))?);
        }
    }
    Matrix::new(alg.clone(), rows, cols, data)
}

/// Parses a matrix file. `mode` overrides the numeric mode named in the
/// header.
pub fn parse_matrix(text: &str, mode: Option<NumericMode>) -> Result<AnyMatrix> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("`matrix` header")?;
    let h = header(line, &toks, "matrix", 3)?;
    let rows = count(line, h[0], "row count")?;
    let cols = count(line, h[1], "column count")?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse {
            line,
            col: h[0].0,
            msg: "dimensions must be positive".into(),
        });
    }
    let mut alg: AnyAlgebra = h[2].1.parse().map_err(|e| located(line, h[2].0, e))?;
    if let Some(mode) = mode {
        alg = alg.with_mode(mode)?;
    }
    let m = match &alg {
        AnyAlgebra::Scalar(s) => AnyMatrix::Scalar(read_rows(&mut lines, s, rows, cols)?),
        AnyAlgebra::Interval(iv) => AnyMatrix::Interval(read_rows(&mut lines, iv, rows, cols)?),
    };
    lines.finish()?;
    Ok(m)
}

pub fn format_matrix<A: Literal>(m: &Matrix<A>) -> String {
    let mut out = format!(
        "matrix {} {} {}\n",
        m.rows(),
        m.cols(),
        m.algebra().descriptor()
    );
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|v| m.algebra().format_value(v))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_any_matrix(m: &AnyMatrix) -> String {
    match m {
        AnyMatrix::Scalar(m) => format_matrix(m),
        AnyMatrix::Interval(m) => format_matrix(m),
    }
}

/// Parses a graph file with weights in `alg`; node ids become 0-based.
pub fn parse_graph<A: Literal>(text: &str, alg: &A) -> Result<GraphSpec<A::Value>> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("`graph` header")?;
    let h = header(line, &toks, "graph", 1)?;
    let n = count(line, h[0], "node count")?;
    let mut g = GraphSpec::new(n);
    let mut seen = BTreeSet::new();
    while let Some((line, toks)) = lines.next_tokens()? {
        if toks.len() != 3 {
            return Err(Error::Parse {
                line,
                col: toks[0].0,
                msg: "arc lines are `u v weight`".into(),
            });
        }
        let id = |(col, tok): (usize, &str)| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(Error::Parse {
                    line,
                    col,
                    msg: format!("node id `{tok}` outside 1..={n}"),
                }),
            }
        };
        let from = id(toks[0])?;
        let to = id(toks[1])?;
        if !seen.insert((from, to)) {
            return Err(Error::Parse {
                line,
                col: toks[0].0,
                msg: format!("duplicate arc {} -> {}", from + 1, to + 1),
            });
        }
        let weight = alg
            .parse_value(toks[2].1)
            .map_err(|e| located(line, toks[2].0, e))?;
        g.arcs.push(Edge { from, to, weight });
    }
    Ok(g)
}

pub fn format_graph<A: Literal>(g: &GraphSpec<A::Value>, alg: &A) -> String {
    let mut out = format!("graph {}\n", g.node_count);
    for a in &g.arcs {
        out.push_str(&format!(
            "{} {} {}\n",
            a.from + 1,
            a.to + 1,
            alg.format_value(&a.weight)
        ));
    }
    out
}

/// Parses a grid file with values in `s`.
pub fn parse_grid(text: &str, s: &Semiring) -> Result<GridFunction> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("`grid` header")?;
    let h = header(line, &toks, "grid", 2)?;
    let d = count(line, h[0], "dimension")?;
    let n = count(line, h[1], "point count")?;
    if d == 0 {
        return Err(Error::Parse {
            line,
            col: h[0].0,
            msg: "dimension must be positive".into(),
        });
    }
    let mut points = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, toks) = lines.expect("grid point")?;
        if toks.len() != d + 1 {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!("expected {d} coordinates and a value"),
            });
        }
        let mut x = Vec::with_capacity(d);
        for &(col, tok) in &toks[..d] {
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => x.push(v),
                _ => {
                    return Err(Error::Parse {
                        line,
                        col,
                        msg: format!("`{tok}` is not a finite coordinate"),
                    })
                }
            }
        }
        let (col, tok) = toks[d];
        values.push(parse_element(s, tok).map_err(|e| located(line, col, e))?);
        points.push(x);
    }
    lines.finish()?;
    GridFunction::new(s.clone(), d, points, values).map_err(|e| located(line, 1, e))
}

pub fn format_grid(f: &GridFunction) -> String {
    let mut out = format!("grid {} {}\n", f.dim(), f.len());
    for (x, v) in f.points().iter().zip(f.values()) {
        let coords: Vec<String> = x.iter().map(f64::to_string).collect();
        out.push_str(&format!("{} {}\n", coords.join(" "), Element::to_string(v)));
    }
    out
}

pub fn read_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
