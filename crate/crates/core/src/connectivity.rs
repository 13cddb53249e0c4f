//! Strongly connected components and the recursive block-triangular
//! decomposition of a digraph Laplacian.
//!
//! Components are ordered receivers first: a node in an earlier component may
//! receive from a later component but never the other way round. Renumbering
//! nodes by that order makes the Laplacian block upper triangular.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::graph::Digraph;

/// Maximal strongly connected node sets (1-based labels, each ascending), in
/// block upper triangular order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccPartition {
    pub components: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component labels concatenated in order.
    pub fn order(&self) -> Vec<usize> {
        self.components.iter().flatten().copied().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    Undirected,
    SingleNode,
    TwoNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub nodes: Vec<usize>,
    pub kind: BlockKind,
}

/// Terminal diagonal blocks of the recursive decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn order(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|b| b.nodes.iter().copied())
            .collect()
    }

    pub fn node_sets(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.nodes.clone()).collect()
    }
}

/// A strongly connected set of three or more nodes whose induced subgraph is
/// not undirected; no further split is possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotDecomposable {
    pub witness: Vec<usize>,
}

/// Tarjan's algorithm over 0-based lists where `out[j]` holds every node that
/// receives from `j`. Returns components as sorted 0-based index lists, in
/// arbitrary order.
fn tarjan(out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = out.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = out[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Components of `out` (0-based) in receivers-first order, ties broken by the
/// smallest contained index.
pub(crate) fn ordered_components(out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut comps = tarjan(out);
    comps.sort_by_key(|c| c[0]);
    let mut comp_of = vec![0; out.len()];
    for (c, nodes) in comps.iter().enumerate() {
        for &v in nodes {
            comp_of[v] = c;
        }
    }
    // Component X must precede Y when X receives from Y. `pending[Y]` counts
    // the distinct receivers of Y still waiting to be emitted.
    let k = comps.len();
    let mut receivers: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (j, targets) in out.iter().enumerate() {
        for &i in targets {
            let (cy, cx) = (comp_of[j], comp_of[i]);
            if cx != cy {
                receivers[cy].push(cx);
            }
        }
    }
    let mut senders_of: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut pending = vec![0; k];
    for (cy, list) in receivers.iter_mut().enumerate() {
        list.sort_unstable();
        list.dedup();
        pending[cy] = list.len();
        for &cx in list.iter() {
            senders_of[cx].push(cy);
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
        .filter(|&c| pending[c] == 0)
        .map(|c| Reverse((comps[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(c);
        for &cy in &senders_of[c] {
            pending[cy] -= 1;
            if pending[cy] == 0 {
                ready.push(Reverse((comps[cy][0], cy)));
            }
        }
    }
    debug_assert_eq!(order.len(), k);
    let mut slots: Vec<Option<Vec<usize>>> = comps.into_iter().map(Some).collect();
    order
        .into_iter()
        .map(|c| slots[c].take().unwrap())
        .collect()
}

/// Diagonal blocks (0-based) that put a square matrix in block upper
/// triangular form, from its off-diagonal nonzero pattern.
pub(crate) fn matrix_components(m: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut out = vec![Vec::new(); n];
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] != 0.0 {
                out[j].push(i);
            }
        }
    }
    ordered_components(&out)
}

pub fn strongly_connected_components(g: &Digraph) -> SccPartition {
    let components = ordered_components(&g.out_lists())
        .into_iter()
        .map(|c| c.into_iter().map(|i| i + 1).collect())
        .collect();
    SccPartition { components }
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    tarjan(&g.out_lists()).len() == 1
}

fn terminal_kind(g: &Digraph, idx: &[usize]) -> Option<BlockKind> {
    match idx.len() {
        1 => Some(BlockKind::SingleNode),
        _ if g.induced0(idx).is_undirected() => Some(BlockKind::Undirected),
        2 => Some(BlockKind::TwoNode),
        _ => None,
    }
}

/// Splits the node set along the SCC condensation until every block is a
/// single node, two nodes, or induces an undirected subgraph.
///
/// Fails with the offending component when an SCC of three or more nodes is
/// not undirected.
pub fn block_decomposition(g: &Digraph) -> Result<BlockDecomposition, NotDecomposable> {
    let labels = |idx: &[usize]| idx.iter().map(|i| i + 1).collect::<Vec<_>>();
    let all: Vec<usize> = (0..g.n()).collect();
    if let Some(kind) = terminal_kind(g, &all) {
        return Ok(BlockDecomposition {
            blocks: vec![Block {
                nodes: labels(&all),
                kind,
            }],
        });
    }
    let mut blocks = Vec::new();
    for comp in ordered_components(&g.out_lists()) {
        match terminal_kind(g, &comp) {
            Some(kind) => blocks.push(Block {
                nodes: labels(&comp),
                kind,
            }),
            None => {
                return Err(NotDecomposable {
                    witness: labels(&comp),
                })
            }
        }
    }
    Ok(BlockDecomposition { blocks })
}

/// `L` with rows and columns permuted into the given label order.
pub fn permuted_laplacian(g: &Digraph, order: &[usize]) -> DMatrix<f64> {
    let l = g.laplacian().into_matrix();
    DMatrix::from_fn(order.len(), order.len(), |a, b| {
        l[(order[a] - 1, order[b] - 1)]
    })
}
