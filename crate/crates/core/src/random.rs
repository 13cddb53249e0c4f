//! Random digraph generators for test campaigns and demos.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Digraph, Edge};
use crate::multilayer::{compose, Composition};

/// Weight pool with negative values, fractions and repeated magnitudes so
/// that symmetric digons and sign-asymmetric digons both occur.
pub const WEIGHT_POOL: [f64; 10] = [2.0, -2.0, 1.0, -1.0, 0.5, -0.5, 1.5, -1.5, 3.0, -3.0];

fn pick(rng: &mut impl Rng, pool: &[f64]) -> f64 {
    *pool.choose(rng).expect("non-empty pool")
}

/// Each ordered pair (and each self-loop when `self_loops`) carries an edge
/// with probability `density`, weight drawn from `pool`. Symmetric digons are
/// boosted: with probability `symmetric` a new reverse edge copies the weight.
pub fn random_digraph(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    symmetric: f64,
    self_loops: bool,
    pool: &[f64],
) -> Digraph {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                if self_loops && rng.gen_bool(density) {
                    entries.push(((i, i), pick(rng, pool)));
                }
                continue;
            }
            if j < i {
                continue;
            }
            let fwd = rng.gen_bool(density).then(|| pick(rng, pool));
            let back = if fwd.is_some() && rng.gen_bool(symmetric) {
                fwd
            } else {
                rng.gen_bool(density).then(|| pick(rng, pool))
            };
            if let Some(w) = fwd {
                entries.push(((i, j), w));
            }
            if let Some(w) = back {
                entries.push(((j, i), w));
            }
        }
    }
    Digraph::from_entries(n, entries)
}

/// Unweighted loopless digraph whose adjacency pattern is the bits of `code`
/// over the ordered pairs `(i, j)`, `i != j`, in row-major order.
pub fn unweighted_from_code(n: usize, code: u64) -> Digraph {
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let entries = pairs
        .enumerate()
        .filter(|(k, _)| code >> k & 1 == 1)
        .map(|(_, p)| (p, 1.0));
    Digraph::from_entries(n, entries)
}

/// Weight uniform in `[0.25, 2]` with a random sign when `signed`.
pub fn continuous_weight(rng: &mut impl Rng, signed: bool) -> f64 {
    let w = rng.gen_range(0.25..=2.0);
    if signed && rng.gen_bool(0.5) {
        -w
    } else {
        w
    }
}

/// Positive weights on a random Hamiltonian cycle plus extra edges with
/// probability `density`; always strongly connected and loopless.
pub fn random_strongly_connected(rng: &mut impl Rng, n: usize, density: f64) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut entries = std::collections::BTreeMap::new();
    if n > 1 {
        for k in 0..n {
            entries.insert(
                (order[(k + 1) % n], order[k]),
                continuous_weight(rng, false),
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !entries.contains_key(&(i, j)) && rng.gen_bool(density) {
                entries.insert((i, j), continuous_weight(rng, false));
            }
        }
    }
    Digraph::from_entries(n, entries)
}

/// A graph built to carry a real-spectrum certificate: nodes are split into
/// blocks of one node, two nodes (any digon without sign asymmetry) or an
/// undirected group; edges between blocks run only from later blocks into
/// earlier ones; self-loops are arbitrary. Labels are shuffled.
pub fn random_certified_real(rng: &mut impl Rng, n: usize) -> Digraph {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut rest = &labels[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len().min(4));
        blocks.push(rest[..size].to_vec());
        rest = &rest[size..];
    }
    let mut entries = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        for (x, &i) in block.iter().enumerate() {
            if rng.gen_bool(0.3) {
                entries.push(((i, i), pick(rng, &WEIGHT_POOL)));
            }
            for &j in &block[x + 1..] {
                if block.len() == 2 {
                    // any pair without opposite signs
                    let w = pick(rng, &WEIGHT_POOL);
                    let v = pick(rng, &WEIGHT_POOL).abs() * w.signum();
                    match rng.gen_range(0..3) {
                        0 => entries.push(((i, j), w)),
                        1 => entries.push(((j, i), w)),
                        _ => entries.extend([((i, j), w), ((j, i), v)]),
                    }
                } else if rng.gen_bool(0.7) {
                    let w = pick(rng, &WEIGHT_POOL);
                    entries.extend([((i, j), w), ((j, i), w)]);
                }
            }
            // receive from later blocks only
            for later in &blocks[b + 1..] {
                for &j in later {
                    if rng.gen_bool(0.3) {
                        entries.push(((i, j), pick(rng, &WEIGHT_POOL)));
                    }
                }
            }
        }
    }
    Digraph::from_entries(n, entries)
}

/// One-way composition (`e12` empty) of two random graphs with random cross
/// edges from `g2` into `g1`.
pub fn random_one_way_composition(rng: &mut impl Rng, g1: Digraph, g2: Digraph) -> Composition {
    let mut e21 = Vec::new();
    for tail in 1..=g2.n() {
        for head in 1..=g1.n() {
            if rng.gen_bool(0.3) {
                e21.push(Edge::new(tail, head, pick(rng, &WEIGHT_POOL)));
            }
        }
    }
    compose(&g1, &g2, &[], &e21).expect("generated cross edges are valid")
}
