//! Reference graphs used by the tests, the CLI and the demo.

use crate::graph::{Digraph, Edge};
use crate::multilayer::{build_cycle, compose, Composition};

fn build(n: usize, edges: &[(usize, usize, f64)]) -> Digraph {
    Digraph::new(n, edges).expect("fixture edges are valid")
}

/// Six nodes in three strongly connected groups `{1}`, `{2,3,4}`, `{5,6}`
/// with a self-loop at 1 and 5, an undirected middle block and a negative
/// one-way edge from 5 into 4.
pub fn six_node_mixed() -> Digraph {
    build(
        6,
        &[
            (1, 1, 2.0),
            (2, 1, 1.0),
            (3, 2, 4.0),
            (2, 3, 4.0),
            (4, 2, 1.5),
            (2, 4, 1.5),
            (4, 3, 3.0),
            (3, 4, 3.0),
            (5, 4, -7.0),
            (5, 5, 3.6),
            (6, 5, 1.4),
            (5, 6, 2.1),
        ],
    )
}

pub fn directed_cycle(n: usize) -> Digraph {
    build_cycle(n).expect("cycle length is at least 3")
}

/// Three-cycle with weights 1, 1, 4: `a_12 = a_23 = 1`, `a_31 = 4`. Its
/// spectrum `{0, 3, 3}` is real although the graph is a directed cycle.
pub fn weighted_three_cycle() -> Digraph {
    build(3, &[(2, 1, 1.0), (3, 2, 1.0), (1, 3, 4.0)])
}

pub fn two_node_complete() -> Digraph {
    build(2, &[(1, 2, 1.0), (2, 1, 1.0)])
}

/// Four agents, unweighted, spectrum `{0, 0.53, 2.23 ± 0.79i}`.
pub fn consensus_complex() -> Digraph {
    build(
        4,
        &[
            (4, 2, 1.0),
            (1, 3, 1.0),
            (2, 3, 1.0),
            (1, 4, 1.0),
            (3, 4, 1.0),
        ],
    )
}

/// [`consensus_complex`] without the edge from 2 into 3; spectrum
/// `{0, 1, 1, 2}`.
pub fn consensus_real() -> Digraph {
    build(4, &[(4, 2, 1.0), (1, 3, 1.0), (1, 4, 1.0), (3, 4, 1.0)])
}

/// Initial agent states for the consensus regressions.
pub const CONSENSUS_X0: [f64; 4] = [-0.4, 0.2, 0.9, -0.1];

/// Three-node digraph with spectrum `{0, 2, 2}` that is strongly connected
/// but not undirected.
pub fn three_node_real_directed() -> Digraph {
    build(3, &[(3, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)])
}

/// Two copies of [`three_node_real_directed`] (each with spectrum `{0, 2, 2}`)
/// joined by one unit edge from node 1 of `g2` into node 2 of `g1`. The
/// composed spectrum `{0.16, 2.42 ± 0.61i, 0, 2, 2}` is complex.
pub fn complex_from_real_layers() -> Composition {
    let g = three_node_real_directed();
    compose(&g, &g, &[], &[Edge::new(1, 2, 1.0)]).expect("fixture composition is valid")
}

fn directed_path_layer() -> Digraph {
    build(3, &[(1, 2, 3.0), (2, 3, 1.8)])
}

fn composition_cross_edges() -> [Edge; 2] {
    [Edge::new(3, 1, 2.0), Edge::new(1, 3, 5.3)]
}

/// A directed path `1 -> 2 -> 3` fed one way by a real-spectrum layer that
/// carries a negative edge. Composed spectrum `{-2.4, 0, 1.6, 2, 3, 7.1}`.
pub fn real_preserving_composition() -> Composition {
    let g2 = build(3, &[(1, 2, -3.2), (3, 2, 1.2), (2, 3, 1.2)]);
    compose(&directed_path_layer(), &g2, &[], &composition_cross_edges())
        .expect("fixture composition is valid")
}

/// Same first layer and cross edges as [`real_preserving_composition`], with
/// an unweighted directed 3-cycle as the second layer. Composed spectrum
/// `{0, 1.5 ± 0.866i, 2, 3, 7.1}`.
pub fn complex_inheriting_composition() -> Composition {
    compose(
        &directed_path_layer(),
        &directed_cycle(3),
        &[],
        &composition_cross_edges(),
    )
    .expect("fixture composition is valid")
}
