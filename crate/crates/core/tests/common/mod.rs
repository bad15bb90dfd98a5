//! Random inputs and brute-force oracles shared by the integration tests
//! and the acceptance suite. Nothing here calls into the library except to
//! build matrices.
#![allow(dead_code)]

use idempotent::{Element, Matrix, Semiring};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `w[i][j]` is the weight of arc `i -> j`, `None` for no arc.
pub type Weights = Vec<Vec<Option<i64>>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_weights<R: Rng>(rng: &mut R, n: usize, density: f64, lo: i64, hi: i64) -> Weights {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_bool(density).then(|| rng.gen_range(lo..=hi)))
                .collect()
        })
        .collect()
}

/// Random weights plus a random Hamiltonian cycle, so the graph is strongly
/// connected.
pub fn strongly_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
    lo: i64,
    hi: i64,
) -> Weights {
    let mut w = random_weights(rng, n, density, lo, hi);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 0..n {
        let (i, j) = (order[k], order[(k + 1) % n]);
        if w[i][j].is_none() {
            w[i][j] = Some(rng.gen_range(lo..=hi));
        }
    }
    w
}

/// `a_ij = p_i − p_j + sign·c_ij` with `c_ij ≥ 0`: every cycle weighs
/// `sign·Σc`, so `sign = −1` gives a semidefinite max-plus matrix and
/// `sign = +1` a semidefinite min-plus one.
pub fn potential_weights<R: Rng>(rng: &mut R, n: usize, density: f64, sign: i64) -> Weights {
    let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    rng.gen_bool(density)
                        .then(|| p[i] - p[j] + sign * rng.gen_range(0..=6))
                })
                .collect()
        })
        .collect()
}

pub fn to_matrix(s: &Semiring, w: &Weights) -> Matrix<Semiring> {
    let rows = w
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| v.map_or(s.zero_element(), |v| s.real(v)))
                .collect()
        })
        .collect();
    Matrix::from_rows(s.clone(), rows).unwrap()
}

pub fn to_bool_matrix(w: &Weights) -> Matrix<Semiring> {
    let rows = w
        .iter()
        .map(|r| r.iter().map(|v| Element::Bool(v.is_some())).collect())
        .collect();
    Matrix::from_rows(Semiring::boolean(), rows).unwrap()
}

/// Shortest path lengths, `Some(0)` on the diagonal.
pub fn floyd_warshall(w: &Weights) -> Weights {
    let n = w.len();
    let mut d = w.clone();
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(row[i].map_or(0, |v| v.min(0)));
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Reflexive reachability by breadth-first search.
pub fn reachability(w: &Weights) -> Vec<Vec<bool>> {
    let n = w.len();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if w[u][v].is_some() && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Best total weight over walks of exactly `k` arcs from `i` to `j`, by
/// enumerating them; `maximize` picks max-plus or min-plus.
pub fn best_walk(w: &Weights, i: usize, j: usize, k: usize, maximize: bool) -> Option<i64> {
    if k == 0 {
        return (i == j).then_some(0);
    }
    let mut best: Option<i64> = None;
    for m in 0..w.len() {
        let Some(first) = w[i][m] else { continue };
        if let Some(rest) = best_walk(w, m, j, k - 1, maximize) {
            let total = first + rest;
            best = Some(match best {
                None => total,
                Some(b) if maximize => b.max(total),
                Some(b) => b.min(total),
            });
        }
    }
    best
}

/// Every elementary cycle as a node sequence, smallest node first.
pub fn elementary_cycles(w: &Weights) -> Vec<Vec<usize>> {
    fn extend(
        w: &Weights,
        start: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        for v in start..w.len() {
            if w[u][v].is_none() {
                continue;
            }
            if v == start {
                out.push(path.clone());
            } else if !on[v] {
                on[v] = true;
                path.push(v);
                extend(w, start, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..w.len() {
        let mut on = vec![false; w.len()];
        on[s] = true;
        extend(w, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn cycle_weight(w: &Weights, c: &[usize]) -> i64 {
    (0..c.len())
        .map(|k| w[c[k]][c[(k + 1) % c.len()]].unwrap())
        .sum()
}

/// Largest mean weight over all cycles, `None` if acyclic.
pub fn max_cycle_mean(w: &Weights) -> Option<Ratio<i64>> {
    elementary_cycles(w)
        .iter()
        .map(|c| Ratio::new(cycle_weight(w, c), c.len() as i64))
        .max()
}

pub fn ratio_element(s: &Semiring, r: Ratio<i64>) -> Element {
    s.ratio(*r.numer(), *r.denom())
}
