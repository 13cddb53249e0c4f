//! Graph constructions: directed cycles, cycle-embedded complete graphs,
//! directed cyclical interconnections of layer copies (DCID), and two-graph
//! compositions.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::classifier::real_spectrum_certificate;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge, Provenance};
use crate::spectra::{is_real_spectrum, spectrum, DEFAULT_TOLERANCE};

/// Unweighted directed `n`-cycle: node `k` receives from `k + 1`, node `n`
/// receives from node 1.
pub fn build_cycle(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::param(format!(
            "a directed cycle needs at least 3 nodes, got {n}"
        )));
    }
    let edges: Vec<Edge> = (1..=n).map(|k| Edge::new(k % n + 1, k, 1.0)).collect();
    Digraph::new(n, &edges)
}

/// Unweighted complete graph on `n` nodes in which the pairs `{k, k+1}`
/// (`k < m`) and `{m, 1}` are one-way, leaving a single directed cycle
/// `m -> m-1 -> ... -> 1 -> m` through nodes `1..=m`.
///
/// Node `k` keeps only its edge from `k + 1`, and node `m` keeps only its edge
/// from node 1, so row `k` of the Laplacian has a zero in column `k - 1` and
/// row 1 has a zero in column `m`.
pub fn build_udcec(n: usize, m: usize) -> Result<Digraph> {
    if m < 3 || m > n {
        return Err(Error::param(format!(
            "need 3 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    // (tail, head) pairs that are dropped
    let removed = |tail: usize, head: usize| -> bool {
        (head <= m && tail <= m) && ((head >= 2 && tail == head - 1) || (head == 1 && tail == m))
    };
    let mut edges = Vec::with_capacity(n * (n - 1) - m);
    for head in 1..=n {
        for tail in 1..=n {
            if tail != head && !removed(tail, head) {
                edges.push(Edge::new(tail, head, 1.0));
            }
        }
    }
    Digraph::new(n, &edges)
}

/// `m` layers of a base graph joined in a directed ring.
#[derive(Debug, Clone, PartialEq)]
pub struct DcidGraph {
    pub base: Digraph,
    pub layers: usize,
    pub graph: Digraph,
}

/// Global label of base node `i` (1-based) in layer `layer` (1-based).
pub fn dcid_label(n: usize, layer: usize, i: usize) -> usize {
    (layer - 1) * n + i
}

/// Copies `g` into `m >= 3` layers and adds, for every node `i` and layer `l`,
/// a unit edge from node `i` of layer `l mod m + 1` to node `i` of layer `l`.
///
/// The resulting Laplacian has `L_G + I` on every diagonal block, `-I` on the
/// block to the right of the diagonal, and `-I` in the bottom-left corner.
pub fn build_dcid(g: &Digraph, m: usize) -> Result<DcidGraph> {
    if m < 3 {
        return Err(Error::param(format!("need at least 3 layers, got {m}")));
    }
    let n = g.n();
    let mut entries = Vec::with_capacity(m * (g.edge_count() + n));
    for layer in 0..m {
        let off = layer * n;
        entries.extend(g.entries().map(|((i, j), w)| ((off + i, off + j), w)));
        let next = ((layer + 1) % m) * n;
        entries.extend((0..n).map(|i| ((off + i, next + i), 1.0)));
    }
    let graph = Digraph::from_entries(m * n, entries).with_provenance(Some(Provenance::Dcid { m }));
    Ok(DcidGraph {
        base: g.clone(),
        layers: m,
        graph,
    })
}

/// The block layout of a DCID Laplacian built directly from the base
/// Laplacian.
pub fn dcid_block_laplacian(base: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let n = base.nrows();
    let mut out = DMatrix::zeros(m * n, m * n);
    for layer in 0..m {
        let off = layer * n;
        let next = ((layer + 1) % m) * n;
        for i in 0..n {
            for j in 0..n {
                out[(off + i, off + j)] = base[(i, j)];
            }
            out[(off + i, off + i)] += 1.0;
            out[(off + i, next + i)] = -1.0;
        }
    }
    out
}

/// Verifies a graph tagged as a DCID really has that structure and returns
/// `(base, m)`.
pub fn recognize_dcid(g: &Digraph) -> Option<(Digraph, usize)> {
    let Some(Provenance::Dcid { m }) = g.provenance() else {
        return None;
    };
    if m < 3 || !g.n().is_multiple_of(m) {
        return None;
    }
    let n = g.n() / m;
    let base = g.induced0(&(0..n).collect::<Vec<_>>());
    let expected = m * (base.edge_count() + n);
    if g.edge_count() != expected {
        return None;
    }
    let consistent = g.entries().all(|((i, j), w)| {
        let (li, lj, ri, rj) = (i / n, j / n, i % n, j % n);
        if li == lj {
            base.w0(ri, rj) == w
        } else {
            ri == rj && lj == (li + 1) % m && w == 1.0
        }
    });
    consistent.then_some((base, m))
}

/// Two graphs joined by cross edges. `e12` edges run from `g1` nodes to `g2`
/// nodes, `e21` edges from `g2` nodes to `g1` nodes; labels in each edge are
/// local to their own graph. In `result`, `g1` keeps labels `1..=n1` and `g2`
/// node `k` becomes `n1 + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub g1: Digraph,
    pub g2: Digraph,
    pub e12: Vec<Edge>,
    pub e21: Vec<Edge>,
    pub result: Digraph,
}

fn check_cross(e: &Edge, tails: usize, heads: usize) -> Result<()> {
    if e.tail == 0 || e.tail > tails {
        return Err(Error::NodeOutOfRange {
            label: e.tail,
            n: tails,
        });
    }
    if e.head == 0 || e.head > heads {
        return Err(Error::NodeOutOfRange {
            label: e.head,
            n: heads,
        });
    }
    if !e.weight.is_finite() || e.weight == 0.0 {
        return Err(Error::InvalidWeight {
            tail: e.tail,
            head: e.head,
            weight: e.weight,
        });
    }
    Ok(())
}

pub fn compose(g1: &Digraph, g2: &Digraph, e12: &[Edge], e21: &[Edge]) -> Result<Composition> {
    let (n1, n2) = (g1.n(), g2.n());
    let mut edges: Vec<Edge> = g1.edges().collect();
    edges.extend(
        g2.edges()
            .map(|e| Edge::new(e.tail + n1, e.head + n1, e.weight)),
    );
    for e in e12 {
        check_cross(e, n1, n2)?;
        edges.push(Edge::new(e.tail, e.head + n1, e.weight));
    }
    for e in e21 {
        check_cross(e, n2, n1)?;
        edges.push(Edge::new(e.tail + n1, e.head, e.weight));
    }
    let result =
        Digraph::new(n1 + n2, &edges)?.with_provenance(Some(Provenance::Compose { split: n1 }));
    Ok(Composition {
        g1: g1.clone(),
        g2: g2.clone(),
        e12: e12.to_vec(),
        e21: e21.to_vec(),
        result,
    })
}

impl Composition {
    /// `g1` with every incoming cross edge turned into a self-loop of the same
    /// weight at its head. Its Laplacian is the `V1` diagonal block of the
    /// composed Laplacian.
    pub fn augmented_g1(&self) -> Digraph {
        let mut entries: BTreeMap<(usize, usize), f64> = self.g1.entries().collect();
        for e in &self.e21 {
            *entries.entry((e.head - 1, e.head - 1)).or_insert(0.0) += e.weight;
        }
        Digraph::from_entries(self.g1.n(), entries)
    }

    /// No edges from `g1` into `g2`, so `g2` feeds `g1` one way only and the
    /// composed spectrum is the union of the two diagonal blocks.
    pub fn is_one_way(&self) -> bool {
        self.e12.is_empty()
    }

    /// Sufficient condition for an all-real composed spectrum: one-way
    /// coupling, the augmented `g1` carries a real-spectrum certificate, and
    /// `g2` has a (numerically) real spectrum.
    pub fn preserves_real_spectrum(&self) -> Result<bool> {
        if !self.is_one_way() || real_spectrum_certificate(&self.augmented_g1()).is_err() {
            return Ok(false);
        }
        Ok(is_real_spectrum(&spectrum(&self.g2)?, DEFAULT_TOLERANCE))
    }

    /// Sufficient condition for a complex composed spectrum: one-way coupling
    /// and a (numerically) complex `g2` spectrum, which the composition
    /// inherits.
    pub fn inherits_complex_spectrum(&self) -> Result<bool> {
        if !self.is_one_way() {
            return Ok(false);
        }
        Ok(!is_real_spectrum(&spectrum(&self.g2)?, DEFAULT_TOLERANCE))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_strongly_connected;
    use crate::fixtures;
    use crate::spectra::{cycle_spectrum, dcid_spectrum, spectra_match, udcec_spectrum, Complex64};
    use nalgebra::Complex;

    #[test]
    fn cycle_builder_matches_three_cycle_triples() {
        let g = build_cycle(3).unwrap();
        let expected = Digraph::new(3, &[(2, 1, 1.0), (3, 2, 1.0), (1, 3, 1.0)]).unwrap();
        assert_eq!(g, expected);
        assert!(build_cycle(2).is_err());
    }

    #[test]
    fn udcec_laplacian_pattern() {
        let (n, m) = (6, 4);
        let g = build_udcec(n, m).unwrap();
        let l = g.laplacian().into_matrix();
        for i in 0..n {
            let row_sum: f64 = l.row(i).iter().sum();
            assert_eq!(row_sum, 0.0);
            let expected_diag = if i < m { n - 2 } else { n - 1 } as f64;
            assert_eq!(l[(i, i)], expected_diag);
        }
        // zeros of the cycle block
        assert_eq!(l[(0, m - 1)], 0.0);
        for k in 1..m {
            assert_eq!(l[(k, k - 1)], 0.0);
        }
        assert!(is_strongly_connected(&g));
        assert_eq!(build_udcec(3, 3).unwrap(), build_cycle(3).unwrap());
        assert!(build_udcec(3, 4).is_err());
    }

    #[test]
    fn udcec_five_three_spectrum() {
        let eigs = spectrum(&build_udcec(5, 3).unwrap()).unwrap();
        assert!(
            spectra_match(&eigs, &udcec_spectrum(5, 3).unwrap(), 1e-8),
            "{eigs:?}"
        );
    }

    #[test]
    fn dcid_of_two_node_complete() {
        let d = build_dcid(&fixtures::two_node_complete(), 4).unwrap();
        assert_eq!(d.graph.n(), 8);
        assert_eq!(
            d.graph.laplacian().into_matrix(),
            dcid_block_laplacian(fixtures::two_node_complete().laplacian().matrix(), 4)
        );
        let mu: Vec<Complex64> = vec![Complex::new(0.0, 0.0), Complex::new(2.0, 0.0)];
        let eigs = spectrum(&d.graph).unwrap();
        assert!(
            spectra_match(&eigs, &dcid_spectrum(&mu, 4).unwrap(), 1e-8),
            "{eigs:?}"
        );
        assert_eq!(recognize_dcid(&d.graph), Some((d.base.clone(), 4)));
    }

    #[test]
    fn dcid_of_single_node_is_three_cycle() {
        let d = build_dcid(&Digraph::empty(1).unwrap(), 3).unwrap();
        let eigs = spectrum(&d.graph).unwrap();
        assert!(spectra_match(&eigs, &cycle_spectrum(3).unwrap(), 1e-8));
        assert!(build_dcid(&Digraph::empty(1).unwrap(), 2).is_err());
    }

    #[test]
    fn dcid_tag_is_verified() {
        let d = build_dcid(&fixtures::two_node_complete(), 3).unwrap();
        // same edges, wrong layer count
        let forged = d
            .graph
            .clone()
            .with_provenance(Some(Provenance::Dcid { m: 6 }));
        assert!(recognize_dcid(&forged).is_none());
        assert!(recognize_dcid(&d.graph.clone().with_provenance(None)).is_none());
    }

    #[test]
    fn disjoint_union_spectrum() {
        let g1 = fixtures::six_node_mixed();
        let g2 = build_cycle(3).unwrap();
        let c = compose(&g1, &g2, &[], &[]).unwrap();
        let mut parts = spectrum(&g1).unwrap();
        parts.extend(spectrum(&g2).unwrap());
        assert!(spectra_match(&spectrum(&c.result).unwrap(), &parts, 1e-8));
        assert_eq!(c.augmented_g1(), g1);
    }

    #[test]
    fn compose_rejects_bad_cross_edges() {
        let g = build_cycle(3).unwrap();
        assert!(matches!(
            compose(&g, &g, &[Edge::new(4, 1, 1.0)], &[]),
            Err(Error::NodeOutOfRange { label: 4, n: 3 })
        ));
        assert!(matches!(
            compose(&g, &g, &[], &[Edge::new(1, 2, 0.0)]),
            Err(Error::InvalidWeight { .. })
        ));
    }

    #[test]
    fn real_preserving_composition() {
        let c = fixtures::real_preserving_composition();
        assert!(c.preserves_real_spectrum().unwrap());
        assert!(!c.inherits_complex_spectrum().unwrap());
        let expected = [-2.4, 0.0, 1.6, 2.0, 3.0, 7.1].map(|x| Complex::new(x, 0.0));
        let eigs = spectrum(&c.result).unwrap();
        assert!(spectra_match(&eigs, &expected, 1e-8), "{eigs:?}");
    }

    #[test]
    fn complex_inheriting_composition() {
        let c = fixtures::complex_inheriting_composition();
        assert!(c.inherits_complex_spectrum().unwrap());
        assert!(!c.preserves_real_spectrum().unwrap());
        let h = 3f64.sqrt() / 2.0;
        let expected = [
            Complex::new(0.0, 0.0),
            Complex::new(1.5, h),
            Complex::new(1.5, -h),
            Complex::new(2.0, 0.0),
            Complex::new(3.0, 0.0),
            Complex::new(7.1, 0.0),
        ];
        assert!(spectra_match(
            &spectrum(&c.result).unwrap(),
            &expected,
            1e-8
        ));
    }

    #[test]
    fn two_way_coupling_disables_both_predicates() {
        let g = build_cycle(3).unwrap();
        let c = compose(&g, &g, &[Edge::new(1, 1, 1.0)], &[]).unwrap();
        assert!(!c.preserves_real_spectrum().unwrap());
        assert!(!c.inherits_complex_spectrum().unwrap());
    }

    #[test]
    fn undirected_g2_does_not_inherit_complex() {
        let g1 = build_cycle(3).unwrap();
        let c = compose(
            &g1,
            &fixtures::two_node_complete(),
            &[],
            &[Edge::new(1, 1, 2.0)],
        )
        .unwrap();
        assert!(!c.inherits_complex_spectrum().unwrap());
    }
}
