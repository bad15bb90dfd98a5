use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::matrix::{plus_sum, Matrix};

/// Symmetric reordering of a square matrix into upper block triangular form.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm<A: Algebra> {
    /// `permutation[k]` is the original index placed at position `k`.
    pub permutation: Vec<usize>,
    /// Original indices of each diagonal block, in order.
    pub blocks: Vec<Vec<usize>>,
    pub block_matrices: Vec<Matrix<A>>,
}

impl<A: Algebra> BlockForm<A> {
    /// `Q⁻¹AQ`: rows and columns of `a` reordered by the permutation.
    pub fn permuted(&self, a: &Matrix<A>) -> Result<Matrix<A>> {
        let p = &self.permutation;
        Matrix::from_fn(a.algebra().clone(), p.len(), p.len(), |i, j| {
            a.get(p[i], p[j]).clone()
        })
    }

    /// Position of each original index in the permuted order.
    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.permutation.len()];
        for (k, &i) in self.permutation.iter().enumerate() {
            inv[i] = k;
        }
        inv
    }
}

fn pattern_graph<A: Algebra>(a: &Matrix<A>) -> Result<DiGraph<(), ()>> {
    let n = a.require_square()?;
    let mut g = DiGraph::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if !a.algebra().is_zero(a.get(i, j)) {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    Ok(g)
}

/// Every ordered pair of distinct nodes is joined by a path of nonzero
/// weight. Without zero divisors this is strong connectivity of the pattern
/// of `A`; otherwise the off-diagonal of `A ⊕ ⋯ ⊕ Aⁿ` is inspected, which is
/// exact for products of zero-divisor-free factors. A single node counts as
/// irreducible even when its entry is `𝟘`.
pub fn is_irreducible<A: Algebra>(a: &Matrix<A>) -> Result<bool> {
    let n = a.require_square()?;
    if a.algebra().flags().zero_divisor_free {
        return Ok(tarjan_scc(&pattern_graph(a)?).len() == 1);
    }
    let s = plus_sum(a, n)?;
    Ok((0..n).all(|i| (0..n).all(|j| i == j || !s.algebra().is_zero(s.get(i, j)))))
}

/// Strongly connected components of the pattern of `A`, ordered so that
/// every arc between blocks points forward, which makes the permuted matrix
/// upper block triangular.
pub fn block_form<A: Algebra>(a: &Matrix<A>) -> Result<BlockForm<A>> {
    let g = pattern_graph(a)?;
    // tarjan_scc yields sink components first
    let blocks: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .rev()
        .map(|c| {
            let mut ids: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    let permutation = blocks.iter().flatten().copied().collect();
    let block_matrices = blocks
        .iter()
        .map(|b| {
            Matrix::from_fn(a.algebra().clone(), b.len(), b.len(), |i, j| {
                a.get(b[i], b[j]).clone()
            })
        })
        .collect::<Result<_>>()?;
    Ok(BlockForm {
        permutation,
        blocks,
        block_matrices,
    })
}
