//! Subcommand dispatch behind the `idem` binary.
//!
//! [`run`] never prints or touches the filesystem except to read inputs;
//! [`execute`] adds printing and the `--out` file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::algebra::Sample;
use crate::axioms::{check_axioms, AxiomReport};
use crate::bellman::{solve, BellmanPrecheck, Precheck, SolveOptions};
use crate::dequant::{convergence_table, legendre};
use crate::error::{Error, Result};
use crate::interval::{IntervalMode, IntervalSemiring};
use crate::io::{
    format_grid, format_matrix, parse_grid, parse_matrix, read_file, AnyAlgebra, AnyMatrix,
    Literal, MachineReport,
};
use crate::matrix::{closure, Backend, ClosureOptions, Matrix};
use crate::real::NumericMode;
use crate::semiring::Semiring;
use crate::spectral::{
    block_form, eigen_interval, eigenpair, is_irreducible, normalize, rho, spectral_radius,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Closure,
    Solve,
    Eig,
    Rho,
    Blocks,
    Legendre,
    DequantDemo,
    CheckAxioms,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Closure,
        Command::Solve,
        Command::Eig,
        Command::Rho,
        Command::Blocks,
        Command::Legendre,
        Command::DequantDemo,
        Command::CheckAxioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Closure => "closure",
            Command::Solve => "solve",
            Command::Eig => "eig",
            Command::Rho => "rho",
            Command::Blocks => "blocks",
            Command::Legendre => "legendre",
            Command::DequantDemo => "dequant-demo",
            Command::CheckAxioms => "check-axioms",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModeSel {
    #[default]
    Scalar,
    WeakInterval,
    StrongInterval,
}

impl FromStr for ModeSel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(ModeSel::Scalar),
            "weak-interval" | "weak" => Ok(ModeSel::WeakInterval),
            "strong-interval" | "strong" => Ok(ModeSel::StrongInterval),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for ModeSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeSel::Scalar => "scalar",
            ModeSel::WeakInterval => "weak-interval",
            ModeSel::StrongInterval => "strong-interval",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Semiring selection for inputs without a header naming one.
    pub semiring: Option<String>,
    /// `None` defers to the matrix header, and means scalar elsewhere.
    pub mode: Option<ModeSel>,
    pub inputs: Vec<PathBuf>,
    pub out: Option<PathBuf>,
    pub max_iter: Option<usize>,
    pub seed: u64,
    pub exact: bool,
    pub allow_unchecked: bool,
    pub backend: Backend,
    /// Sample count for `check-axioms`.
    pub samples: usize,
    /// Operands for `dequant-demo`.
    pub w: (f64, f64),
    pub hs: Vec<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            semiring: None,
            mode: None,
            inputs: Vec::new(),
            out: None,
            max_iter: None,
            seed: 0,
            exact: false,
            allow_unchecked: false,
            backend: Backend::Squaring,
            samples: 1000,
            w: (3.0, 5.0),
            hs: vec![1.0, 0.5, 0.1, 0.01, 0.001],
        }
    }

    pub fn input(mut self, path: impl Into<PathBuf>) -> Self {
        self.inputs.push(path.into());
        self
    }

    fn numeric_mode(&self) -> Option<NumericMode> {
        self.exact.then_some(NumericMode::ExactRational)
    }

    /// The algebra named by `--semiring`, `--mode` and `--exact`.
    pub fn algebra(&self) -> Result<AnyAlgebra> {
        let mut s: Semiring = self.semiring.as_deref().unwrap_or("rmax").parse()?;
        if self.exact {
            s = s.with_mode(NumericMode::ExactRational);
        }
        let alg = match self.mode.unwrap_or_default() {
            ModeSel::Scalar => AnyAlgebra::Scalar(s),
            ModeSel::WeakInterval => AnyAlgebra::Interval(IntervalSemiring::weak(s)),
            ModeSel::StrongInterval => AnyAlgebra::Interval(IntervalSemiring::strong(s)?),
        };
        check_strong(&alg)?;
        Ok(alg)
    }
}

fn check_strong(alg: &AnyAlgebra) -> Result<()> {
    if let AnyAlgebra::Interval(iv) = alg {
        if iv.is_strong() && !iv.base().flags().zero_divisor_free {
            return Err(Error::InvalidArgument(format!(
                "strong-interval mode needs a semiring without zero divisors, {} has them",
                iv.base()
            )));
        }
    }
    Ok(())
}

fn mode_of(alg: &AnyAlgebra) -> ModeSel {
    match alg {
        AnyAlgebra::Scalar(_) => ModeSel::Scalar,
        AnyAlgebra::Interval(iv) if iv.mode() == IntervalMode::Weak => ModeSel::WeakInterval,
        AnyAlgebra::Interval(_) => ModeSel::StrongInterval,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    /// Report for people.
    pub human: String,
    /// `key=value` lines and blocks; the `--out` file.
    pub machine: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecheckFailed(_) => 2,
        Error::NotStabilized(_) => 3,
        _ => 1,
    }
}

pub fn run(cfg: &RunConfig) -> RunOutput {
    match dispatch(cfg) {
        Ok((human, report, ok)) => RunOutput {
            exit_code: if ok { 0 } else { 1 },
            human,
            machine: report.to_string(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let mut r = MachineReport::new(cfg.command.name());
            r.kv("status", "error")
                .kv("exit_code", code)
                .kv("error", &e);
            RunOutput {
                exit_code: code,
                human: format!("error: {e}\n"),
                machine: r.to_string(),
            }
        }
    }
}

/// Runs, prints the human report, writes `--out`, and returns the exit code.
pub fn execute(cfg: &RunConfig) -> i32 {
    let out = run(cfg);
    if out.exit_code == 0 {
        print!("{}", out.human);
    } else {
        eprint!("{}", out.human);
    }
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, &out.machine) {
            eprintln!("error: {}: {e}", path.display());
            return 1;
        }
    }
    out.exit_code
}

type Dispatched = (String, MachineReport, bool);

fn dispatch(cfg: &RunConfig) -> Result<Dispatched> {
    let want = match cfg.command {
        Command::Solve => 2..=2,
        Command::Legendre => 1..=2usize,
        Command::DequantDemo | Command::CheckAxioms => 0..=0,
        _ => 1..=1,
    };
    if !want.contains(&cfg.inputs.len()) {
        return Err(Error::InvalidArgument(format!(
            "{} takes {} input file(s), got {}",
            cfg.command,
            describe(&want),
            cfg.inputs.len()
        )));
    }
    match cfg.command {
        Command::Closure => match load_matrix(cfg, 0)? {
            AnyMatrix::Scalar(a) => cmd_closure(cfg, &a),
            AnyMatrix::Interval(a) => cmd_closure(cfg, &a),
        },
        Command::Solve => match (load_matrix(cfg, 0)?, load_matrix(cfg, 1)?) {
            (AnyMatrix::Scalar(a), AnyMatrix::Scalar(b)) => cmd_solve(cfg, &a, &b),
            (AnyMatrix::Interval(a), AnyMatrix::Interval(b)) => cmd_solve(cfg, &a, &b),
            _ => Err(Error::SemiringMismatch),
        },
        Command::Eig => cmd_eig(cfg, load_matrix(cfg, 0)?),
        Command::Rho => cmd_rho(cfg, load_matrix(cfg, 0)?),
        Command::Blocks => match load_matrix(cfg, 0)? {
            AnyMatrix::Scalar(a) => cmd_blocks(cfg, &a),
            AnyMatrix::Interval(a) => cmd_blocks(cfg, &a),
        },
        Command::Legendre => cmd_legendre(cfg),
        Command::DequantDemo => cmd_dequant_demo(cfg),
        Command::CheckAxioms => match cfg.algebra()? {
            AnyAlgebra::Scalar(s) => cmd_check_axioms(cfg, &s),
            AnyAlgebra::Interval(iv) => cmd_check_axioms(cfg, &iv),
        },
    }
}

fn describe(r: &std::ops::RangeInclusive<usize>) -> String {
    if r.start() == r.end() {
        r.start().to_string()
    } else {
        format!("{} to {}", r.start(), r.end())
    }
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
}

/// Matrix files carry their algebra; graph files take it from the config.
fn load_matrix(cfg: &RunConfig, idx: usize) -> Result<AnyMatrix> {
    let text = read_file(&cfg.inputs[idx])?;
    match first_keyword(&text) {
        Some("graph") => {
            let alg = cfg.algebra()?;
            Ok(match alg {
                AnyAlgebra::Scalar(s) => AnyMatrix::Scalar(Matrix::from_graph(
                    s.clone(),
                    &crate::io::parse_graph(&text, &s)?,
                )?),
                AnyAlgebra::Interval(iv) => AnyMatrix::Interval(Matrix::from_graph(
                    iv.clone(),
                    &crate::io::parse_graph(&text, &iv)?,
                )?),
            })
        }
        _ => {
            let m = parse_matrix(&text, cfg.numeric_mode())?;
            let alg = match &m {
                AnyMatrix::Scalar(a) => AnyAlgebra::Scalar(a.algebra().clone()),
                AnyMatrix::Interval(a) => AnyAlgebra::Interval(a.algebra().clone()),
            };
            if let Some(mode) = cfg.mode {
                if mode != mode_of(&alg) {
                    return Err(Error::InvalidArgument(format!(
                        "--mode {mode} conflicts with the `{alg}` matrix header"
                    )));
                }
            }
            check_strong(&alg)?;
            Ok(m)
        }
    }
}

/// Right-aligned columns for the human report.
fn pretty<A: Literal>(m: &Matrix<A>) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| m.algebra().format_value(v))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str("  ");
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

fn header<A: Literal>(r: &mut MachineReport, m: &Matrix<A>) {
    r.kv("algebra", m.algebra().descriptor()).kv("n", m.rows());
}

fn cmd_closure<A: Literal>(cfg: &RunConfig, a: &Matrix<A>) -> Result<Dispatched> {
    let opts = ClosureOptions {
        backend: cfg.backend,
        allow_unchecked: cfg.allow_unchecked,
    };
    let star = closure(a, opts)?;
    let backend = match cfg.backend {
        Backend::Squaring => "squaring",
        Backend::Kleene => "kleene",
    };
    let mut r = MachineReport::new("closure");
    header(&mut r, a);
    r.kv("backend", backend)
        .kv("checked", !cfg.allow_unchecked)
        .kv("status", "ok");
    r.block("closure", &format_matrix(&star));
    let human = format!(
        "closure over {} ({backend})\nA* =\n{}",
        a.algebra().descriptor(),
        pretty(&star)
    );
    Ok((human, r, true))
}

fn precheck_name(p: Precheck) -> &'static str {
    match p {
        Precheck::SemidefiniteOk => "semidefinite",
        Precheck::RhoOk => "rho",
        Precheck::Skipped => "skipped",
    }
}

fn cmd_solve<A: Literal + BellmanPrecheck>(
    cfg: &RunConfig,
    a: &Matrix<A>,
    b: &Matrix<A>,
) -> Result<Dispatched> {
    let opts = SolveOptions {
        max_iter: cfg.max_iter,
        ..Default::default()
    };
    let rep = solve(a, b, opts)?;
    let mut r = MachineReport::new("solve");
    header(&mut r, a);
    r.kv("precheck", precheck_name(rep.precheck))
        .kv("iterations_used", rep.iterations_used)
        .kv("stabilized", rep.stabilized)
        .kv("residual_ok", rep.residual_ok)
        .kv("status", "ok");
    r.block("solution", &format_matrix(&rep.solution));
    let human = format!(
        "X = AX + B over {}\nprecheck: {}\nstabilized after {} iteration(s)\nX =\n{}",
        a.algebra().descriptor(),
        precheck_name(rep.precheck),
        rep.iterations_used,
        pretty(&rep.solution)
    );
    Ok((human, r, true))
}

fn cmd_eig(_cfg: &RunConfig, m: AnyMatrix) -> Result<Dispatched> {
    let mut r = MachineReport::new("eig");
    let human = match m {
        AnyMatrix::Scalar(a) => {
            let pair = eigenpair(&a)?;
            let v = normalize(&pair.vector)?;
            header(&mut r, &a);
            r.kv("lambda", &pair.value).kv("status", "ok");
            r.block("eigenvector", &format_matrix(&v));
            format!(
                "eigenvalue over {}\nlambda = {}\nV =\n{}",
                a.algebra().descriptor(),
                pair.value,
                pretty(&v)
            )
        }
        AnyMatrix::Interval(a) => {
            let pair = eigen_interval(&a)?;
            header(&mut r, &a);
            r.kv("lambda", &pair.value).kv("status", "ok");
            r.block("eigenvector", &format_matrix(&pair.vector));
            format!(
                "interval eigenvalue over {}\nlambda = {}\nV =\n{}",
                a.algebra().descriptor(),
                pair.value,
                pretty(&pair.vector)
            )
        }
    };
    Ok((human, r, true))
}

fn cmd_rho(_cfg: &RunConfig, m: AnyMatrix) -> Result<Dispatched> {
    let (desc, n, value) = match &m {
        AnyMatrix::Scalar(a) => (a.algebra().descriptor(), a.rows(), spectral_radius(a)?),
        AnyMatrix::Interval(a) => (a.algebra().descriptor(), a.rows(), rho(a)?),
    };
    let mut r = MachineReport::new("rho");
    r.kv("algebra", &desc)
        .kv("n", n)
        .kv("rho", &value)
        .kv("status", "ok");
    Ok((
        format!("spectral radius over {desc}\nrho = {value}\n"),
        r,
        true,
    ))
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_blocks<A: Literal>(_cfg: &RunConfig, a: &Matrix<A>) -> Result<Dispatched> {
    let bf = block_form(a)?;
    let irreducible = is_irreducible(a)?;
    let permuted = bf.permuted(a)?;
    let mut r = MachineReport::new("blocks");
    header(&mut r, a);
    r.kv("irreducible", irreducible)
        .kv("block_count", bf.blocks.len())
        .kv("permutation", join_ids(&bf.permutation));
    let mut human = format!(
        "block triangular form over {}\nirreducible: {irreducible}\norder: {}\n",
        a.algebra().descriptor(),
        join_ids(&bf.permutation)
    );
    for (k, b) in bf.blocks.iter().enumerate() {
        r.kv(&format!("block.{}", k + 1), join_ids(b));
        human.push_str(&format!("block {}: {}\n", k + 1, join_ids(b)));
    }
    r.kv("status", "ok");
    r.block("permuted", &format_matrix(&permuted));
    human.push_str(&format!("P A P^T =\n{}", pretty(&permuted)));
    Ok((human, r, true))
}

fn cmd_legendre(cfg: &RunConfig) -> Result<Dispatched> {
    let s = match cfg.algebra()? {
        AnyAlgebra::Scalar(s) => s,
        AnyAlgebra::Interval(_) => {
            return Err(Error::InvalidArgument(
                "legendre works on scalar grid functions".into(),
            ))
        }
    };
    let f = parse_grid(&read_file(&cfg.inputs[0])?, &s)?;
    let xis = match cfg.inputs.get(1) {
        Some(p) => parse_grid(&read_file(p)?, &s)?.points().to_vec(),
        None => f.points().to_vec(),
    };
    let g = legendre(&f, &xis)?;
    let mut r = MachineReport::new("legendre");
    r.kv("algebra", s.descriptor())
        .kv("dim", f.dim())
        .kv("points", f.len())
        .kv("status", "ok");
    r.block("transform", &format_grid(&g));
    let mut human = String::from("Legendre transform sup_x (xi.x + f(x))\n");
    for (xi, v) in g.points().iter().zip(g.values()) {
        let coords: Vec<String> = xi.iter().map(f64::to_string).collect();
        human.push_str(&format!("  xi = ({})  ->  {v}\n", coords.join(", ")));
    }
    Ok((human, r, true))
}

fn cmd_dequant_demo(cfg: &RunConfig) -> Result<Dispatched> {
    let (w1, w2) = cfg.w;
    let rows = convergence_table(w1, w2, &cfg.hs)?;
    let all_ok = rows
        .iter()
        .all(|row| row.gap >= 0.0 && row.gap <= row.bound);
    let mut r = MachineReport::new("dequant-demo");
    r.kv("w1", w1)
        .kv("w2", w2)
        .kv("max", w1.max(w2))
        .kv("rows", rows.len())
        .kv("within_bound", all_ok);
    r.kv("status", if all_ok { "ok" } else { "fail" });
    let mut table = String::from("h value gap bound\n");
    let mut human = format!("w1 (+)_h w2 -> max(w1, w2) = {} as h -> 0\n", w1.max(w2));
    human.push_str(&format!(
        "  {:>8}  {:>22}  {:>24}  {:>24}  ok\n",
        "h", "w1 (+)_h w2", "gap", "h ln 2"
    ));
    for row in &rows {
        table.push_str(&format!(
            "{} {} {} {}\n",
            row.h, row.value, row.gap, row.bound
        ));
        human.push_str(&format!(
            "  {:>8}  {:>22}  {:>24}  {:>24}  {}\n",
            row.h,
            row.value,
            row.gap,
            row.bound,
            if row.gap >= 0.0 && row.gap <= row.bound {
                "yes"
            } else {
                "no"
            }
        ));
    }
    r.block("table", &table);
    Ok((human, r, all_ok))
}

fn cmd_check_axioms<A: Literal + Sample>(cfg: &RunConfig, alg: &A) -> Result<Dispatched> {
    let rep: AxiomReport = check_axioms(alg, cfg.samples, cfg.seed)?;
    let mut r = MachineReport::new("check-axioms");
    r.kv("algebra", alg.descriptor())
        .kv("samples", rep.samples)
        .kv("seed", rep.seed);
    let mut human = format!(
        "axioms of {} ({} samples, seed {})\n",
        alg.descriptor(),
        rep.samples,
        rep.seed
    );
    for o in &rep.outcomes {
        let verdict = if o.counterexample.is_none() {
            "pass"
        } else {
            "fail"
        };
        r.kv(&format!("law.{}", o.law), verdict);
        human.push_str(&format!("  {:<20} {verdict}", o.law.to_string()));
        if let Some(c) = &o.counterexample {
            human.push_str(&format!("  {c}"));
        }
        human.push('\n');
    }
    r.kv("passed", rep.passed())
        .kv("status", if rep.passed() { "ok" } else { "fail" });
    Ok((human, r, rep.passed()))
}
