//! Acceptance suite. One PASS/FAIL line per criterion; exits nonzero if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use idempotent::axioms::Law;
use idempotent::bellman::{solve, Precheck, SolveOptions};
use idempotent::dequant::{dequantize, oplus_h, DequantParams};
use idempotent::interval::{
    interval_hull, set_star, Fraction, FractionSemifield, KaucherSemifield, SetOp,
};
use idempotent::matrix::{closure, partial_sum, split, ClosureOptions};
use idempotent::spectral::{eigen_interval, eigenpair, eigenvalue_cycle_invariant, normalize};
use idempotent::{check_axioms, Element, Error, Interval, IntervalSemiring, Matrix, Semiring};
use num_rational::Ratio;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const AXIOM_SAMPLES: usize = 1000;
const AXIOM_LIMIT: Duration = Duration::from_secs(5);
const INTERVAL_AXIOM_LIMIT: Duration = Duration::from_secs(10);
const HULL_PAIRS: usize = 500;
const HULL_POINTS: usize = 50;
const TRUNCATION_MATRICES: usize = 200;
const TRUNCATION_MAX_N: usize = 8;
const TRUNCATION_LIMIT: Duration = Duration::from_secs(30);
const PATH_GRAPHS: usize = 100;
const PATH_MAX_N: usize = 10;
const BELLMAN_SYSTEMS: usize = 200;
const INTERVAL_SYSTEMS: usize = 50;
const EIGEN_MATRICES: usize = 100;
const EIGEN_MAX_N: usize = 5;
const CYCLE_INVARIANT_MAX_N: usize = 4;
const INTERVAL_EIGEN_MATRICES: usize = 50;
const DEQUANT_GRID: usize = 20;
const DEQUANT_HS: [f64; 5] = [1.0, 0.5, 0.1, 0.01, 0.001];
const DEQUANT_REL_TOL: f64 = 1e-9;
const CANCELLATION_TRIPLES: usize = 500;
const FRACTIONS: usize = 500;
const KAUCHER_TARGETS: usize = 200;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: idempotent::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let instances = [
        Semiring::rmax(),
        Semiring::rmin(),
        Semiring::rmax_complete(),
        Semiring::boolean(),
        Semiring::maxmin(),
        lib(Semiring::product(vec![Semiring::rmax(), Semiring::rmin()]))?,
    ];
    for (k, s) in instances.iter().enumerate() {
        let rep = lib(check_axioms(s, AXIOM_SAMPLES, 100 + k as u64))?;
        ensure(rep.passed(), || format!("{s}: {rep}"))?;
        for law in [Law::PartialOrder, Law::ZeroLeast, Law::Monotone] {
            ensure(rep.outcome(law).is_some(), || {
                format!("{s}: {law} not checked")
            })?;
        }
    }
    within(start, AXIOM_LIMIT)?;
    Ok(format!(
        "6 instances x {AXIOM_SAMPLES} triples in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn interval_axiom_suite() -> Outcome {
    let start = Instant::now();
    let bases = [
        Semiring::rmax().exact(),
        Semiring::rmin().exact(),
        Semiring::boolean(),
        lib(Semiring::product(vec![Semiring::rmax(), Semiring::rmin()]))?.exact(),
    ];
    for (k, base) in bases.into_iter().enumerate() {
        let iv = IntervalSemiring::weak(base);
        let rep = lib(check_axioms(&iv, AXIOM_SAMPLES, 200 + k as u64))?;
        ensure(rep.passed(), || format!("I({}): {rep}", iv.base()))?;
        for law in [Law::LeftDistributive, Law::RightDistributive] {
            let o = rep
                .outcome(law)
                .ok_or_else(|| format!("{law} not checked"))?;
            ensure(o.checked == AXIOM_SAMPLES, || {
                format!("{law} checked {} times", o.checked)
            })?;
        }
    }
    within(start, INTERVAL_AXIOM_LIMIT)?;
    Ok(format!(
        "4 extensions x {AXIOM_SAMPLES} triples in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

/// Endpoints plus interior rationals with denominator 64; a `𝟘` lower
/// bound contributes itself and points up to 20 below the upper bound.
fn sample_interval_points<R: Rng>(r: &mut R, s: &Semiring, x: &Interval) -> BTreeSet<Element> {
    let max_plus = s == &Semiring::rmax().exact();
    let num = |e: &Element| {
        e.as_real()
            .map(|v| Ratio::new((v.to_f64() * 64.0) as i64, 64))
    };
    let hi = num(x.hi()).unwrap();
    let lo = num(x.lo()).unwrap_or(if max_plus { hi - 20 } else { hi + 20 });
    let mut pts: BTreeSet<Element> = [x.lo().clone(), x.hi().clone()].into();
    let (a, b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (a, b) = ((a * 64).to_integer(), (b * 64).to_integer());
    let mut guard = 0;
    while pts.len() < HULL_POINTS && guard < 10 * HULL_POINTS {
        pts.insert(s.ratio(r.gen_range(a..=b), 64));
        guard += 1;
    }
    pts
}

fn random_weak_interval<R: Rng>(r: &mut R, iv: &IntervalSemiring) -> Interval {
    let s = iv.base();
    // At least 65 grid points, so 50 distinct samples exist.
    let a = r.gen_range(-640..=640);
    let (a, b) = (s.ratio(a, 64), s.ratio(a + r.gen_range(64..=640), 64));
    let (lo, hi) = if s.leq(&a, &b).unwrap() {
        (a, b)
    } else {
        (b, a)
    };
    let lo = if r.gen_bool(0.1) {
        s.zero_element()
    } else {
        lo
    };
    iv.interval(lo, hi).unwrap()
}

fn hull_vs_sets() -> Outcome {
    let mut r = rng(3);
    let mut checked = 0;
    for s in [Semiring::rmax().exact(), Semiring::rmin().exact()] {
        let iv = IntervalSemiring::weak(s.clone());
        for _ in 0..HULL_PAIRS / 2 {
            let (x, y) = (
                random_weak_interval(&mut r, &iv),
                random_weak_interval(&mut r, &iv),
            );
            let (xs, ys) = (
                sample_interval_points(&mut r, &s, &x),
                sample_interval_points(&mut r, &s, &y),
            );
            ensure(xs.len() == HULL_POINTS && ys.len() == HULL_POINTS, || {
                "short sample".into()
            })?;
            for op in [SetOp::Add, SetOp::Mul] {
                let from_sets = lib(interval_hull(&iv, &lib(set_star(&s, &xs, &ys, op))?))?;
                let formula = lib(iv.hull(op, &x, &y))?;
                ensure(from_sets == formula, || {
                    format!("{op:?} on {x} and {y}: sets give {from_sets}, formula {formula}")
                })?;
            }
            checked += 1;
        }
    }

    let plane = lib(Semiring::strict_product(vec![
        Semiring::rmax(),
        Semiring::rmax(),
    ]))?
    .exact();
    let p = |a: i64, b: i64| Element::tuple([Element::exact(a), Element::exact(b)]);
    let x: BTreeSet<_> = [p(0, 1), p(1, 0)].into();
    let y: BTreeSet<_> = [p(1, 0)].into();
    let z: BTreeSet<_> = [p(0, 1)].into();
    let xx = lib(set_star(&plane, &x, &x, SetOp::Add))?;
    let lhs = lib(set_star(
        &plane,
        &x,
        &lib(set_star(&plane, &y, &z, SetOp::Add))?,
        SetOp::Mul,
    ))?;
    let rhs = lib(set_star(
        &plane,
        &lib(set_star(&plane, &x, &y, SetOp::Mul))?,
        &lib(set_star(&plane, &x, &z, SetOp::Mul))?,
        SetOp::Add,
    ))?;
    let show = |s: &BTreeSet<Element>| {
        s.iter()
            .map(Element::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    ensure(xx == [p(0, 1), p(1, 0), p(1, 1)].into(), || {
        format!("x+x = {{{}}}", show(&xx))
    })?;
    ensure(lhs == [p(1, 2), p(2, 1)].into(), || {
        format!("x(y+z) = {{{}}}", show(&lhs))
    })?;
    ensure(rhs == [p(1, 1), p(1, 2), p(2, 1), p(2, 2)].into(), || {
        format!("xy+xz = {{{}}}", show(&rhs))
    })?;
    Ok(format!(
        "{checked} pairs x 2 ops; x+x={{{}}}, x(y+z)={{{}}} vs xy+xz={{{}}}",
        show(&xx),
        show(&lhs),
        show(&rhs)
    ))
}

fn semidefinite<R: Rng>(r: &mut R, s: &Semiring, n: usize) -> Matrix<Semiring> {
    let sign = if s.is_cycle_mean() && s == &Semiring::rmin().exact() {
        1
    } else {
        -1
    };
    let density = r.gen_range(0.3..0.9);
    to_matrix(s, &potential_weights(r, n, density, sign))
}

fn carre_truncation() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    for k in 0..TRUNCATION_MATRICES {
        let s = if k % 2 == 0 {
            Semiring::rmax().exact()
        } else {
            Semiring::rmin().exact()
        };
        let n = r.gen_range(1..=TRUNCATION_MAX_N);
        let a = semidefinite(&mut r, &s, n);
        let first = lib(partial_sum(&a, n - 1))?;
        let mut sum = first.clone();
        let mut power = lib(a.pow(n as u32 - 1))?;
        for m in n..=2 * n {
            power = lib(power.mul(&a))?;
            sum = lib(sum.add(&power))?;
            ensure(sum == first, || {
                format!("{s} n={n}: partial sum {m} differs from {}", n - 1)
            })?;
        }
        let star = lib(closure(&a, ClosureOptions::default()))?;
        ensure(star == first, || {
            format!("{s} n={n}: closure differs from truncation")
        })?;
        let e = lib(Matrix::identity(s.clone(), n))?;
        ensure(lib(lib(a.mul(&star))?.add(&e))? == star, || {
            format!("{s} n={n}: A* != AA* + E")
        })?;
    }
    within(start, TRUNCATION_LIMIT)?;
    Ok(format!(
        "{TRUNCATION_MATRICES} matrices in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn shortest_paths() -> Outcome {
    let mut r = rng(5);
    let s = Semiring::rmin().exact();
    for _ in 0..PATH_GRAPHS {
        let n = r.gen_range(1..=PATH_MAX_N);
        let density = r.gen_range(0.1..0.6);
        let w = random_weights(&mut r, n, density, 0, 20);
        let star = lib(closure(&to_matrix(&s, &w), ClosureOptions::default()))?;
        ensure(star == to_matrix(&s, &floyd_warshall(&w)), || {
            format!("min-plus closure differs on {w:?}")
        })?;
        let reach = lib(closure(&to_bool_matrix(&w), ClosureOptions::default()))?;
        let bfs = reachability(&w);
        for (i, row) in bfs.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                ensure(reach.get(i, j) == &Element::Bool(b), || {
                    format!("reachability ({i},{j}) on {w:?}")
                })?;
            }
        }
    }
    Ok(format!("{PATH_GRAPHS} graphs, min-plus and boolean"))
}

fn interval_system<R: Rng>(
    r: &mut R,
    iv: &IntervalSemiring,
    n: usize,
) -> (Matrix<IntervalSemiring>, Matrix<IntervalSemiring>) {
    let s = iv.base();
    let max_plus = s == &Semiring::rmax().exact();
    let sign = if max_plus { -1 } else { 1 };
    let upper = potential_weights(r, n, 0.6, sign);
    let widen = |r: &mut R, v: i64| {
        if max_plus {
            v - r.gen_range(0..=4)
        } else {
            v + r.gen_range(0..=4)
        }
    };
    let a = Matrix::from_fn(iv.clone(), n, n, |i, j| match upper[i][j] {
        None => iv.zero_interval(),
        Some(v) => iv.interval(s.real(widen(r, v)), s.real(v)).unwrap(),
    })
    .unwrap();
    let b = Matrix::from_fn(iv.clone(), n, 1, |_, _| {
        if r.gen_bool(0.3) {
            iv.zero_interval()
        } else {
            let v = r.gen_range(-10..=10);
            iv.interval(s.real(widen(r, v)), s.real(v)).unwrap()
        }
    })
    .unwrap();
    (a, b)
}

fn bellman() -> Outcome {
    let mut r = rng(6);
    for k in 0..BELLMAN_SYSTEMS {
        let s = if k % 2 == 0 {
            Semiring::rmax().exact()
        } else {
            Semiring::rmin().exact()
        };
        let n = r.gen_range(1..=8);
        let a = semidefinite(&mut r, &s, n);
        let cols = r.gen_range(1..=3);
        let b = to_matrix(&s, &random_weights(&mut r, n.max(cols), 0.5, -10, 10));
        let b = lib(Matrix::from_fn(s.clone(), n, cols, |i, j| {
            b.get(i, j).clone()
        }))?;
        let rep = lib(solve(&a, &b, SolveOptions::default()))?;
        ensure(rep.iterations_used <= n, || {
            format!("{s} n={n}: {} iterations", rep.iterations_used)
        })?;
        let expected = lib(lib(closure(&a, ClosureOptions::default()))?.mul(&b))?;
        ensure(rep.solution == expected, || {
            format!("{s} n={n}: solution differs from A*B")
        })?;
    }
    let mut interval = 0;
    for k in 0..INTERVAL_SYSTEMS {
        let base = if k % 2 == 0 {
            Semiring::rmax().exact()
        } else {
            Semiring::rmin().exact()
        };
        let iv = lib(IntervalSemiring::strong(base))?;
        let n = r.gen_range(1..=6);
        let (a, b) = interval_system(&mut r, &iv, n);
        let rep = lib(solve(&a, &b, SolveOptions::default()))?;
        ensure(rep.precheck == Precheck::RhoOk, || {
            format!("precheck {:?}", rep.precheck)
        })?;
        ensure(rep.iterations_used <= n, || {
            format!("interval n={n}: {} iterations", rep.iterations_used)
        })?;
        let ((la, ua), (lb, ub)) = (lib(split(&a))?, lib(split(&b))?);
        let lo = lib(solve(&la, &lb, SolveOptions::default()))?.solution;
        let hi = lib(solve(&ua, &ub, SolveOptions::default()))?.solution;
        ensure(lib(split(&rep.solution))? == (lo, hi), || {
            "interval solution does not split".into()
        })?;
        interval += 1;
    }
    Ok(format!(
        "{BELLMAN_SYSTEMS} scalar and {interval} interval systems"
    ))
}

fn eigen() -> Outcome {
    let mut r = rng(7);
    let s = Semiring::rmax().exact();
    let mut invariant = 0;
    for _ in 0..EIGEN_MATRICES {
        let n = r.gen_range(1..=EIGEN_MAX_N);
        let w = strongly_connected(&mut r, n, 0.5, -9, 9);
        let a = to_matrix(&s, &w);
        let brute = ratio_element(&s, max_cycle_mean(&w).unwrap());
        let pair = lib(eigenpair(&a))?;
        ensure(pair.value == brute, || {
            format!("lambda {} vs brute force {brute} on {w:?}", pair.value)
        })?;
        ensure(
            lib(a.mul(&pair.vector))? == lib(pair.vector.scale(&pair.value))?,
            || format!("AV != lambda V on {w:?}"),
        )?;
        ensure(
            pair.vector.entries().iter().all(|v| !s.is_zero_element(v)),
            || "eigenvector has a zero entry".into(),
        )?;
        if n <= CYCLE_INVARIANT_MAX_N {
            let v = lib(eigenvalue_cycle_invariant(&a))?;
            ensure(v == brute, || {
                format!("cycle-invariant formula gives {v}, expected {brute}")
            })?;
            invariant += 1;
        }
    }
    Ok(format!(
        "{EIGEN_MATRICES} matrices, {invariant} also by the cycle-invariant formula"
    ))
}

fn interval_eigen() -> Outcome {
    let mut r = rng(8);
    let base = Semiring::rmax().exact();
    let iv = lib(IntervalSemiring::strong(base.clone()))?;
    let (mut verified, mut violations) = (0, 0);
    for _ in 0..INTERVAL_EIGEN_MATRICES {
        let n = r.gen_range(1..=5);
        let upper = strongly_connected(&mut r, n, 0.5, -6, 6);
        let m = lib(Matrix::from_fn(iv.clone(), n, n, |i, j| {
            match upper[i][j] {
                None => iv.zero_interval(),
                Some(v) => iv
                    .interval(base.real(v - r.gen_range(0..=3)), base.real(v))
                    .unwrap(),
            }
        }))?;
        let (lo, hi) = lib(split(&m))?;
        let v_lo = lib(normalize(&lib(eigenpair(&lo))?.vector))?;
        let v_hi = lib(normalize(&lib(eigenpair(&hi))?.vector))?;
        let ordered = lib(v_lo.leq(&v_hi))?;
        match eigen_interval(&m) {
            Ok(pair) => {
                ensure(ordered, || {
                    "eigen_interval succeeded with unordered bounds".into()
                })?;
                let lambda_v = lib(Matrix::from_fn(iv.clone(), n, 1, |i, _| {
                    iv.hull_mul(&pair.value, pair.vector.get(i, 0)).unwrap()
                }))?;
                ensure(lib(m.mul(&pair.vector))? == lambda_v, || {
                    format!("AV != lambda V for {m}")
                })?;
                verified += 1;
            }
            Err(Error::OrderViolation { .. }) => {
                ensure(!ordered, || "OrderViolation with ordered bounds".into())?;
                violations += 1;
            }
            Err(e) => return Err(format!("unexpected error {e}")),
        }
    }
    ensure(verified > 0, || {
        format!("no case verified ({violations} order violations)")
    })?;
    Ok(format!(
        "{verified} verified exactly, {violations} order violations reported"
    ))
}

fn dequantization() -> Outcome {
    let ws: Vec<f64> = (0..DEQUANT_GRID)
        .map(|k| -10.0 + 20.0 * k as f64 / (DEQUANT_GRID - 1) as f64)
        .collect();
    let us: Vec<f64> = (0..DEQUANT_GRID).map(|k| 0.05 + 0.5 * k as f64).collect();
    let mut worst = 0.0f64;
    for &h in &DEQUANT_HS {
        let p = lib(DequantParams::new(h))?;
        let bound = h * std::f64::consts::LN_2;
        for &w1 in &ws {
            for &w2 in &ws {
                let gap = lib(oplus_h(w1, w2, p))? - w1.max(w2);
                ensure((0.0..=bound).contains(&gap), || {
                    format!("h={h} w=({w1},{w2}): gap {gap:e} outside [0, {bound:e}]")
                })?;
            }
        }
        for &u1 in &us {
            for &u2 in &us {
                let (d1, d2) = (lib(dequantize(u1, p))?, lib(dequantize(u2, p))?);
                for (lhs, rhs) in [
                    (lib(dequantize(u1 * u2, p))?, d1 + d2),
                    (lib(dequantize(u1 + u2, p))?, lib(oplus_h(d1, d2, p))?),
                ] {
                    let rel = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(h);
                    worst = worst.max(rel);
                    ensure(rel <= DEQUANT_REL_TOL, || {
                        format!("h={h} u=({u1},{u2}): {lhs} vs {rhs}")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{} points x {} h values, worst relative error {worst:.1e}",
        DEQUANT_GRID * DEQUANT_GRID,
        DEQUANT_HS.len()
    ))
}

fn weak_strong_contrast() -> Outcome {
    let s = Semiring::rmax().exact();
    let e = |v: i64| s.real(v);
    let weak = IntervalSemiring::weak(s.clone());
    let x = lib(weak.interval(e(0), e(2)))?;
    let y = lib(weak.interval(e(1), e(2)))?;
    let z = lib(weak.interval(s.zero_element(), e(1)))?;
    let (xz, yz) = (lib(weak.hull_mul(&x, &z))?, lib(weak.hull_mul(&y, &z))?);
    ensure(x != y && xz == yz, || {
        format!("weak: {x}*{z} = {xz}, {y}*{z} = {yz}")
    })?;

    let strong = lib(IntervalSemiring::strong(s.clone()))?;
    ensure(
        matches!(
            strong.interval(s.zero_element(), e(1)),
            Err(Error::StrongModeViolation(_))
        ),
        || "strong extension accepted a zero lower bound".into(),
    )?;

    // Bounds from a small pool, so distinct factors often meet.
    let mut r = rng(10);
    let pick = |r: &mut rand_chacha::ChaCha8Rng, nonzero: bool| -> Interval {
        if !nonzero && r.gen_bool(0.1) {
            return strong.zero_interval();
        }
        let a = r.gen_range(-2..=1);
        strong.interval(e(a), e(a + r.gen_range(0..=1))).unwrap()
    };
    let mut equal_products = 0;
    for _ in 0..CANCELLATION_TRIPLES {
        let (x, y, z) = (pick(&mut r, false), pick(&mut r, false), pick(&mut r, true));
        for (p, q) in [
            (lib(strong.hull_mul(&x, &z))?, lib(strong.hull_mul(&y, &z))?),
            (lib(strong.hull_mul(&z, &x))?, lib(strong.hull_mul(&z, &y))?),
        ] {
            if p == q {
                equal_products += 1;
                ensure(x == y, || {
                    format!("strong: {x} and {y} agree after multiplying by {z}")
                })?;
            }
        }
    }
    let rep = lib(check_axioms(&strong, CANCELLATION_TRIPLES, 11))?;
    let law = rep
        .outcome(Law::Cancellation)
        .ok_or("cancellation not checked")?;
    ensure(law.counterexample.is_none(), || format!("{rep}"))?;
    Ok(format!(
        "weak: {x}*{z} = {y}*{z} = {xz}; strong: {CANCELLATION_TRIPLES} triples, {equal_products} equal products all cancelled"
    ))
}

fn rmax_value(f: &Fraction<Element>) -> Option<Ratio<i64>> {
    let num = f.num().as_real()?.to_f64();
    let den = f.den().as_real()?.to_f64();
    Some(Ratio::new(((num - den) * 64.0).round() as i64, 64))
}

fn fractions() -> Outcome {
    let s = Semiring::rmax().exact();
    let fs = lib(FractionSemifield::new(s.clone()))?;
    let mut r = rng(12);
    let pick = |r: &mut rand_chacha::ChaCha8Rng| {
        let num = if r.gen_bool(0.05) {
            s.zero_element()
        } else {
            s.ratio(r.gen_range(-640..=640), 64)
        };
        fs.fraction(num, s.ratio(r.gen_range(-640..=640), 64))
            .unwrap()
    };
    let one = lib(fs.one())?;
    for _ in 0..FRACTIONS {
        let (p, q, t) = (pick(&mut r), pick(&mut r), pick(&mut r));
        let eq = |a: &Fraction<Element>, b: &Fraction<Element>| fs.equiv(a, b).unwrap();
        let add = |a: &Fraction<Element>, b: &Fraction<Element>| fs.add(a, b).unwrap();
        let mul = |a: &Fraction<Element>, b: &Fraction<Element>| fs.mul(a, b).unwrap();
        ensure(eq(&add(&p, &add(&q, &t)), &add(&add(&p, &q), &t)), || {
            "add-associative".into()
        })?;
        ensure(eq(&add(&p, &q), &add(&q, &p)), || "add-commutative".into())?;
        ensure(eq(&add(&p, &p), &p), || "add-idempotent".into())?;
        ensure(eq(&mul(&p, &mul(&q, &t)), &mul(&mul(&p, &q), &t)), || {
            "mul-associative".into()
        })?;
        ensure(eq(&mul(&p, &q), &mul(&q, &p)), || "mul-commutative".into())?;
        ensure(
            eq(&mul(&p, &add(&q, &t)), &add(&mul(&p, &q), &mul(&p, &t))),
            || "distributive".into(),
        )?;
        ensure(eq(&mul(&p, &one), &p), || "unity".into())?;
        // Quotients of max-plus numbers are differences.
        if let (Some(a), Some(b)) = (rmax_value(&p), rmax_value(&q)) {
            ensure(rmax_value(&add(&p, &q)) == Some(a.max(b)), || {
                "sum is not the max of differences".into()
            })?;
            ensure(rmax_value(&mul(&p, &q)) == Some(a + b), || {
                "product is not the sum of differences".into()
            })?;
        }
        if fs.is_zero(&p) {
            ensure(fs.inv(&p) == Err(Error::InverseOfZero), || {
                "zero fraction inverted".into()
            })?;
        } else {
            let inv = lib(fs.inv(&p))?;
            ensure(eq(&mul(&p, &inv), &one), || {
                format!("p * inv(p) != 1 for {:?}", p)
            })?;
        }
    }

    let k = lib(KaucherSemifield::new(s.clone()))?;
    let iv = k.interval_semiring().clone();
    let ifs = k.interval_fractions();
    let pick_iv = |r: &mut rand_chacha::ChaCha8Rng| {
        let a = r.gen_range(-400..=400);
        iv.interval(s.ratio(a, 16), s.ratio(a + r.gen_range(0..=100), 16))
            .unwrap()
    };
    let (mut reversed, mut homomorphisms) = (0, 0);
    for _ in 0..KAUCHER_TARGETS {
        let p = lib(ifs.fraction(pick_iv(&mut r), pick_iv(&mut r)))?;
        let q = lib(ifs.fraction(pick_iv(&mut r), pick_iv(&mut r)))?;
        let (pp, pq) = (lib(k.phi(&p))?, lib(k.phi(&q))?);
        ensure(
            lib(k.equiv(&lib(k.phi(&lib(ifs.add(&p, &q))?))?, &lib(k.add(&pp, &pq))?))?,
            || "phi(p+q) != phi(p)+phi(q)".into(),
        )?;
        ensure(
            lib(k.equiv(&lib(k.phi(&lib(ifs.mul(&p, &q))?))?, &lib(k.mul(&pp, &pq))?))?,
            || "phi(pq) != phi(p)phi(q)".into(),
        )?;
        let (x, y) = (p.num(), p.den());
        let direct = (
            lib(s.mul(x.lo(), &lib(s.inv(y.lo()))?))?,
            lib(s.mul(x.hi(), &lib(s.inv(y.hi()))?))?,
        );
        ensure(lib(k.evaluate(&pp))? == direct, || {
            "phi disagrees with the bound quotients".into()
        })?;
        homomorphisms += 1;

        let a = s.ratio(r.gen_range(-640..=640), 64);
        let b = s.ratio(r.gen_range(-640..=640), 64);
        if s.lt(&b, &a).unwrap() {
            reversed += 1;
        }
        let frac = |v: &Element, r: &mut rand_chacha::ChaCha8Rng| {
            let d = s.ratio(r.gen_range(-64..=64), 16);
            k.scalars().fraction(s.mul(v, &d).unwrap(), d).unwrap()
        };
        let g = lib(k.generalized(frac(&a, &mut r), frac(&b, &mut r)))?;
        let back = lib(k.phi(&lib(k.preimage(&g))?))?;
        ensure(lib(k.equiv(&back, &g))?, || {
            format!("preimage round-trip fails for ({a}, {b})")
        })?;
        ensure(lib(k.evaluate(&back))? == (a.clone(), b.clone()), || {
            format!("round-trip evaluates wrong for ({a}, {b})")
        })?;
    }
    ensure(reversed > KAUCHER_TARGETS / 4, || {
        format!("only {reversed} reversed targets")
    })?;
    Ok(format!(
        "{FRACTIONS} fractions; {homomorphisms} phi homomorphism checks; {KAUCHER_TARGETS} preimages ({reversed} reversed)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("semiring axioms", axiom_suite),
        ("interval semiring axioms", interval_axiom_suite),
        ("hull formula vs set oracle", hull_vs_sets),
        ("closure truncation", carre_truncation),
        ("shortest-path oracle", shortest_paths),
        ("Bellman stabilization", bellman),
        ("eigen suite", eigen),
        ("interval eigen", interval_eigen),
        ("dequantization convergence", dequantization),
        ("weak vs strong extension", weak_strong_contrast),
        ("fraction semifield", fractions),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
