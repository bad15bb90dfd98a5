use std::collections::BTreeSet;

use super::Matrix;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// A weighted arc. Node ids are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<V> {
    pub from: usize,
    pub to: usize,
    pub weight: V,
}

/// A weighted digraph with at most one arc per ordered pair. Loops are
/// allowed and land on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec<V> {
    pub node_count: usize,
    pub arcs: Vec<Edge<V>>,
}

impl<V> GraphSpec<V> {
    pub fn new(node_count: usize) -> Self {
        GraphSpec {
            node_count,
            arcs: Vec::new(),
        }
    }

    pub fn arc(mut self, from: usize, to: usize, weight: V) -> Self {
        self.arcs.push(Edge { from, to, weight });
        self
    }

    /// Sorts arcs by `(from, to)`.
    pub fn normalized(mut self) -> Self {
        self.arcs.sort_by_key(|a| (a.from, a.to));
        self
    }
}

impl<A: Algebra> Matrix<A> {
    /// Adjacency matrix; missing arcs become `𝟘`.
    pub fn from_graph(algebra: A, g: &GraphSpec<A::Value>) -> Result<Self> {
        let n = g.node_count;
        let mut seen = BTreeSet::new();
        for a in &g.arcs {
            for id in [a.from, a.to] {
                if id >= n {
                    return Err(Error::BadNodeId { id, node_count: n });
                }
            }
            if !seen.insert((a.from, a.to)) {
                return Err(Error::DuplicateArc {
                    from: a.from,
                    to: a.to,
                });
            }
        }
        let mut m = Matrix::zeros(algebra, n, n)?;
        for a in &g.arcs {
            m.set(a.from, a.to, a.weight.clone())?;
        }
        Ok(m)
    }

    /// Arcs for every non-`𝟘` entry, in row-major order.
    pub fn to_graph(&self) -> Result<GraphSpec<A::Value>> {
        let n = self.require_square()?;
        let mut g = GraphSpec::new(n);
        for i in 0..n {
            for j in 0..n {
                let w = self.get(i, j);
                if !self.algebra().is_zero(w) {
                    g.arcs.push(Edge {
                        from: i,
                        to: j,
                        weight: w.clone(),
                    });
                }
            }
        }
        Ok(g)
    }
}
