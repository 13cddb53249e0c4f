//! Weighted digraph model and its Laplacian.
//!
//! Adjacency follows the consensus convention: `a_ij != 0` means node `i`
//! receives from node `j`, i.e. there is an edge oriented `j -> i`. The
//! Laplacian is `L_ij = -a_ij` off the diagonal and `L_ii = sum_j a_ij`, where
//! the sum includes a self-loop weight `a_ii`. Every row of `L` therefore sums
//! to `a_ii`.
//!
//! Node labels are 1-based in every public signature; storage is 0-based.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A directed edge `tail -> head` with weight `a_{head,tail}`, 1-based labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(tail: usize, head: usize, weight: f64) -> Self {
        Edge { tail, head, weight }
    }

    pub fn is_self_loop(&self) -> bool {
        self.tail == self.head
    }
}

impl From<(usize, usize, f64)> for Edge {
    fn from((tail, head, weight): (usize, usize, f64)) -> Self {
        Edge { tail, head, weight }
    }
}

/// Records how a graph was constructed, so that pattern-based classification
/// survives a save/load round trip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// Directed cyclical interconnection of `m` copies of a base graph.
    Dcid { m: usize },
    /// Two-graph composition; nodes `1..=split` come from the first graph.
    Compose { split: usize },
}

/// Kind of interaction between two distinct nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InteractionKind {
    None,
    Unidirectional,
    DigonSymmetric,
    DigonAsymmetric,
    /// Both directions present with weights of opposite sign. Reported on its
    /// own even though it is also asymmetric.
    DigonSignAsymmetric,
}

impl InteractionKind {
    pub fn classify(a_ij: f64, a_ji: f64) -> Self {
        match (a_ij != 0.0, a_ji != 0.0) {
            (false, false) => InteractionKind::None,
            (true, false) | (false, true) => InteractionKind::Unidirectional,
            (true, true) if a_ij * a_ji < 0.0 => InteractionKind::DigonSignAsymmetric,
            (true, true) if a_ij == a_ji => InteractionKind::DigonSymmetric,
            (true, true) => InteractionKind::DigonAsymmetric,
        }
    }

    /// Asymmetric in the broad sense: unequal weights in both directions,
    /// whether or not the signs differ.
    pub fn is_asymmetric(self) -> bool {
        matches!(
            self,
            InteractionKind::DigonAsymmetric | InteractionKind::DigonSignAsymmetric
        )
    }
}

/// Weighted directed graph on nodes `1..=n`.
///
/// Immutable after construction. Self-loops and negative weights are allowed;
/// zero weights are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    // (receiver, sender), 0-based; value is a_{receiver, sender}
    weights: BTreeMap<(usize, usize), f64>,
    provenance: Option<Provenance>,
}

impl Digraph {
    /// Builds a digraph from `(tail, head, weight)` triples.
    ///
    /// Each triple installs `a_{head,tail} = weight`; `tail == head` is a
    /// self-loop. Rejects out-of-range labels, zero or non-finite weights and
    /// repeated `(tail, head)` pairs.
    pub fn new<E: Into<Edge> + Copy>(n: usize, edges: &[E]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        let mut weights = BTreeMap::new();
        for e in edges {
            let Edge { tail, head, weight } = (*e).into();
            for label in [tail, head] {
                if label == 0 || label > n {
                    return Err(Error::NodeOutOfRange { label, n });
                }
            }
            if !weight.is_finite() || weight == 0.0 {
                return Err(Error::InvalidWeight { tail, head, weight });
            }
            if weights.insert((head - 1, tail - 1), weight).is_some() {
                return Err(Error::DuplicateEdge { tail, head });
            }
        }
        Ok(Digraph {
            n,
            weights,
            provenance: None,
        })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new::<Edge>(n, &[])
    }

    /// Internal constructor over 0-based `(receiver, sender) -> weight` entries.
    /// Zero entries are dropped.
    pub(crate) fn from_entries(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize), f64)>,
    ) -> Self {
        let weights = entries
            .into_iter()
            .filter(|&(_, w)| w != 0.0)
            .inspect(|&((i, j), w)| debug_assert!(i < n && j < n && w.is_finite()))
            .collect();
        Digraph {
            n,
            weights,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Option<Provenance>) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored nonzero weights, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// `a_ij` for 1-based labels; zero when absent or out of range.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i == 0 || j == 0 {
            return 0.0;
        }
        self.w0(i - 1, j - 1)
    }

    pub(crate) fn w0(&self, i: usize, j: usize) -> f64 {
        self.weights.get(&(i, j)).copied().unwrap_or(0.0)
    }

    /// All stored edges, ordered by receiving node then sending node.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.weights.iter().map(|(&(i, j), &w)| Edge {
            tail: j + 1,
            head: i + 1,
            weight: w,
        })
    }

    pub(crate) fn entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    pub fn has_self_loops(&self) -> bool {
        self.weights.keys().any(|&(i, j)| i == j)
    }

    /// True when every stored weight equals one.
    pub fn is_unweighted(&self) -> bool {
        self.weights.values().all(|&w| w == 1.0)
    }

    /// 0-based adjacency lists following edge direction: `out[j]` holds every
    /// node that receives from `j`.
    pub(crate) fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(i, j) in self.weights.keys() {
            if i != j {
                out[j].push(i);
            }
        }
        out
    }

    pub fn laplacian(&self) -> Laplacian {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for (&(i, j), &w) in &self.weights {
            if i != j {
                m[(i, j)] = -w;
            }
            m[(i, i)] += w;
        }
        Laplacian(m)
    }

    fn check_label(&self, label: usize) -> Result<usize> {
        if label == 0 || label > self.n {
            Err(Error::NodeOutOfRange { label, n: self.n })
        } else {
            Ok(label - 1)
        }
    }

    /// Interaction between distinct nodes `i` and `j`.
    pub fn interaction_kind(&self, i: usize, j: usize) -> Result<InteractionKind> {
        let (i0, j0) = (self.check_label(i)?, self.check_label(j)?);
        if i0 == j0 {
            return Err(Error::SelfPair(i));
        }
        Ok(InteractionKind::classify(self.w0(i0, j0), self.w0(j0, i0)))
    }

    /// Every unordered pair `{i, j}` (labels, `i < j`) with a non-`None` kind.
    pub fn interactions(&self) -> Vec<(usize, usize, InteractionKind)> {
        let mut pairs: Vec<(usize, usize)> = self
            .weights
            .keys()
            .filter(|&&(i, j)| i != j)
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
            .into_iter()
            .map(|(i, j)| {
                let kind = InteractionKind::classify(self.w0(i, j), self.w0(j, i));
                (i + 1, j + 1, kind)
            })
            .collect()
    }

    /// First pair (labels) whose digon weights have opposite signs.
    pub fn find_digon_sign_asymmetric(&self) -> Option<(usize, usize)> {
        self.interactions()
            .into_iter()
            .find(|&(_, _, k)| k == InteractionKind::DigonSignAsymmetric)
            .map(|(i, j, _)| (i, j))
    }

    pub fn has_digon_sign_asymmetric(&self) -> bool {
        self.find_digon_sign_asymmetric().is_some()
    }

    /// True if any pair is a digon with unequal weights (signs may agree).
    pub fn has_digon_asymmetric(&self) -> bool {
        self.interactions()
            .iter()
            .any(|&(_, _, k)| k.is_asymmetric())
    }

    /// `A == A^T` off the diagonal. Self-loops do not matter.
    pub fn is_undirected(&self) -> bool {
        self.weights
            .iter()
            .all(|(&(i, j), &w)| i == j || self.w0(j, i) == w)
    }

    /// Subgraph induced by the label set `nodes`.
    ///
    /// Returns the relabeled graph together with the map from new label
    /// `k + 1` to the original label `map[k]` (ascending). Self-loops of the
    /// members are kept; edges leaving or entering the set are dropped.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<(Digraph, Vec<usize>)> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut idx = nodes
            .iter()
            .map(|&l| self.check_label(l))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        let g = self.induced0(&idx);
        Ok((g, idx.into_iter().map(|i| i + 1).collect()))
    }

    /// Induced subgraph on sorted, distinct 0-based indices.
    pub(crate) fn induced0(&self, idx: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let entries = self
            .weights
            .iter()
            .filter(|(&(i, j), _)| pos[i] != usize::MAX && pos[j] != usize::MAX)
            .map(|(&(i, j), &w)| ((pos[i], pos[j]), w));
        Digraph::from_entries(idx.len(), entries)
    }

    /// Undirected-version adjacency (0-based): `{i, j}` linked when either
    /// direction carries a weight. Self-loops are ignored.
    pub(crate) fn undirected_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in self.weights.keys() {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// Dense Laplacian matrix of a [`Digraph`].
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian(DMatrix<f64>);

impl Laplacian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// `L_{rows, cols}`: entries for the given label sets in ascending label
    /// order.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
        block_submatrix(&self.0, rows, cols)
    }
}

/// Block of `m` with rows and columns indexed by 1-based label sets, taken in
/// ascending label order.
pub fn block_submatrix(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
    let sorted = |set: &[usize], bound: usize| -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut v = set
            .iter()
            .map(|&l| {
                if l == 0 || l > bound {
                    Err(Error::NodeOutOfRange { label: l, n: bound })
                } else {
                    Ok(l - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    };
    let r = sorted(rows, m.nrows())?;
    let c = sorted(cols, m.ncols())?;
    Ok(DMatrix::from_fn(r.len(), c.len(), |a, b| m[(r[a], c[b])]))
}
