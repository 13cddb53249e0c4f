//! Structural tests that decide whether a Laplacian spectrum must be real or
//! must contain complex eigenvalues, with an optional numerical fallback.

use serde::{Deserialize, Serialize};

use crate::connectivity::{block_decomposition, ordered_components, BlockDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Digraph, InteractionKind};
use crate::multilayer::recognize_dcid;
use crate::spectra::{SpectralReport, DEFAULT_TOLERANCE};

/// Largest graph accepted by [`real_conditions_bruteforce`].
pub const BRUTEFORCE_MAX_NODES: usize = 14;

/// Why the real-spectrum certificate could not be issued.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealViolation {
    /// Pair `(i, j)` with `a_ij * a_ji < 0`.
    SignAsymmetricPair { pair: (usize, usize) },
    /// Strongly connected set of three or more nodes that is not undirected.
    DirectedComponent { nodes: Vec<usize> },
}

/// Certifies a real spectrum when no digon is sign-asymmetric and every
/// strongly connected component of three or more nodes is undirected.
///
/// An induced subgraph that is strongly connected lies inside a single
/// component, and every induced subgraph of an undirected graph is undirected,
/// so checking components is the same as checking every node subset of size
/// three or more.
pub fn real_spectrum_certificate(
    g: &Digraph,
) -> std::result::Result<BlockDecomposition, RealViolation> {
    if let Some(pair) = g.find_digon_sign_asymmetric() {
        return Err(RealViolation::SignAsymmetricPair { pair });
    }
    block_decomposition(g).map_err(|e| RealViolation::DirectedComponent { nodes: e.witness })
}

fn mask_reach(start: usize, mask: u32, adj: &[u32]) -> u32 {
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Same conditions as [`real_spectrum_certificate`], checked literally over
/// every node subset of size three or more.
pub fn real_conditions_bruteforce(g: &Digraph) -> Result<bool> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_NODES {
        return Err(Error::TooLarge {
            n,
            max: BRUTEFORCE_MAX_NODES,
        });
    }
    if g.has_digon_sign_asymmetric() {
        return Ok(false);
    }
    // out_mask[j]: nodes receiving from j; in_mask[i]: nodes i receives from
    let mut out_mask = vec![0u32; n];
    let mut in_mask = vec![0u32; n];
    // asym[i]: nodes k with a_ik != a_ki
    let mut asym = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if g.w0(i, j) != 0.0 {
                out_mask[j] |= 1 << i;
                in_mask[i] |= 1 << j;
            }
            if g.w0(i, j) != g.w0(j, i) {
                asym[i] |= 1 << j;
            }
        }
    }
    for s in 0u32..(1 << n) {
        if s.count_ones() < 3 {
            continue;
        }
        let undirected = (0..n)
            .filter(|&i| s >> i & 1 == 1)
            .all(|i| asym[i] & s == 0);
        if undirected {
            continue;
        }
        let root = s.trailing_zeros() as usize;
        if mask_reach(root, s, &out_mask) == s && mask_reach(root, s, &in_mask) == s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every strongly connected component with two or more nodes is undirected.
/// Stricter than [`real_spectrum_certificate`]; used for reporting.
pub fn nontrivial_components_undirected(g: &Digraph) -> bool {
    ordered_components(&g.out_lists())
        .iter()
        .all(|c| c.len() < 2 || g.induced0(c).is_undirected())
}

/// Undirected version is connected and acyclic.
pub fn is_tree_type(g: &Digraph) -> bool {
    let lists = g.undirected_lists();
    let n = g.n();
    let links: usize = lists.iter().map(Vec::len).sum::<usize>() / 2;
    if links + 1 != n {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &lists[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Tree-type digraph whose pairs are all unidirectional or symmetric digons.
pub fn is_symmetric_tree_type(g: &Digraph) -> bool {
    !g.has_digon_asymmetric() && is_tree_type(g)
}

/// A directed cycle found in a graph: `n` nodes in the graph, `m` on the
/// cycle, listed in edge direction starting from the smallest label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePattern {
    pub n: usize,
    pub m: usize,
    pub cycle: Vec<usize>,
}

/// Follows a successor map (0-based, `usize::MAX` for none) from `start` and
/// returns the 1-based cycle if it closes after visiting exactly `len` nodes.
fn trace_cycle(next: &[usize], start: usize, len: usize) -> Option<Vec<usize>> {
    let mut cycle = vec![start + 1];
    let mut v = next[start];
    while v != start {
        if v == usize::MAX || cycle.len() == len {
            return None;
        }
        cycle.push(v + 1);
        v = next[v];
    }
    (cycle.len() == len).then_some(cycle)
}

/// The graph is exactly an unweighted directed cycle through all `n >= 3`
/// nodes with no self-loops.
pub fn detect_cycle(g: &Digraph) -> Option<CyclePattern> {
    let n = g.n();
    if n < 3 || g.edge_count() != n || !g.is_unweighted() || g.has_self_loops() {
        return None;
    }
    let mut next = vec![usize::MAX; n];
    for e in g.edges() {
        if next[e.tail - 1] != usize::MAX {
            return None;
        }
        next[e.tail - 1] = e.head - 1;
    }
    trace_cycle(&next, 0, n).map(|cycle| CyclePattern { n, m: n, cycle })
}

/// Unweighted complete graph whose one-way pairs form a single directed cycle
/// of three or more nodes, every other pair being a symmetric digon.
pub fn detect_udcec(g: &Digraph) -> Option<CyclePattern> {
    let n = g.n();
    if n < 3 || !g.is_unweighted() || g.has_self_loops() {
        return None;
    }
    let mut next = vec![usize::MAX; n];
    let mut has_pred = vec![false; n];
    let mut m = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (tail, head) = match InteractionKind::classify(g.w0(i, j), g.w0(j, i)) {
                InteractionKind::DigonSymmetric => continue,
                InteractionKind::Unidirectional if g.w0(i, j) != 0.0 => (j, i),
                InteractionKind::Unidirectional => (i, j),
                _ => return None,
            };
            if next[tail] != usize::MAX || has_pred[head] {
                return None;
            }
            next[tail] = head;
            has_pred[head] = true;
            m += 1;
        }
    }
    if m < 3 {
        return None;
    }
    let start = next.iter().position(|&v| v != usize::MAX)?;
    trace_cycle(&next, start, m).map(|cycle| CyclePattern { n, m, cycle })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    GuaranteedReal,
    GuaranteedComplex,
    Undetermined,
}

/// Which structural rule produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Block-triangular split into undirected, single-node and two-node
    /// blocks with no sign-asymmetric digon.
    RealBlocks,
    /// Tree-type digraph with only one-way edges and symmetric digons.
    SymmetricTree,
    /// Unweighted directed cycle.
    DirectedCycle,
    /// Unweighted complete graph with one embedded one-way cycle.
    CycleEmbeddedComplete,
    /// Built as a ring of layer copies.
    LayerRing,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Blocks(BlockDecomposition),
    Tree,
    Cycle(CyclePattern),
    LayerRing { base_nodes: usize, layers: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub verdict: Verdict,
    pub basis: Basis,
    pub certificate: Option<Certificate>,
    pub violation: Option<RealViolation>,
    /// Every strongly connected component of two or more nodes is undirected.
    pub components_undirected: bool,
    pub spectrum: Option<SpectralReport>,
}

/// Applies the real-spectrum rules first, then the complex-spectrum
/// patterns. With `with_numerics` the numerical spectrum is attached.
pub fn classify(g: &Digraph, with_numerics: bool) -> Result<ClassificationVerdict> {
    let real = real_spectrum_certificate(g);
    let (verdict, basis, certificate) = match &real {
        Ok(blocks) => (
            Verdict::GuaranteedReal,
            Basis::RealBlocks,
            Some(Certificate::Blocks(blocks.clone())),
        ),
        Err(_) if is_symmetric_tree_type(g) => (
            Verdict::GuaranteedReal,
            Basis::SymmetricTree,
            Some(Certificate::Tree),
        ),
        Err(_) => {
            if let Some(p) = detect_cycle(g) {
                (
                    Verdict::GuaranteedComplex,
                    Basis::DirectedCycle,
                    Some(Certificate::Cycle(p)),
                )
            } else if let Some(p) = detect_udcec(g) {
                (
                    Verdict::GuaranteedComplex,
                    Basis::CycleEmbeddedComplete,
                    Some(Certificate::Cycle(p)),
                )
            } else if let Some((base, m)) = recognize_dcid(g) {
                let cert = Certificate::LayerRing {
                    base_nodes: base.n(),
                    layers: m,
                };
                (Verdict::GuaranteedComplex, Basis::LayerRing, Some(cert))
            } else {
                (Verdict::Undetermined, Basis::None, None)
            }
        }
    };
    let spectrum = if with_numerics {
        Some(SpectralReport::of_graph(g, DEFAULT_TOLERANCE)?)
    } else {
        None
    };
    Ok(ClassificationVerdict {
        verdict,
        basis,
        certificate,
        violation: real.err(),
        components_undirected: nontrivial_components_undirected(g),
        spectrum,
    })
}
