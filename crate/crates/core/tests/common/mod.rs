#![allow(dead_code)]

use digraph_spectra::random::WEIGHT_POOL;
use digraph_spectra::{Complex64, Digraph, Edge};
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;

/// Digraph on `1..=max_n` nodes; each ordered pair carries an edge with
/// probability `density`. Self-loops only when `self_loops`.
pub fn digraph(
    max_n: usize,
    density: f64,
    self_loops: bool,
    weight: BoxedStrategy<f64>,
) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::option::weighted(density, weight.clone()), n * n).prop_map(
            move |cells| {
                let edges: Vec<Edge> = cells
                    .iter()
                    .enumerate()
                    .filter_map(|(k, w)| {
                        let (i, j) = (k / n, k % n);
                        let w = (*w)?;
                        (self_loops || i != j).then(|| Edge::new(j + 1, i + 1, w))
                    })
                    .collect();
                Digraph::new(n, &edges).unwrap()
            },
        )
    })
}

pub fn pool_weight() -> BoxedStrategy<f64> {
    prop::sample::select(WEIGHT_POOL.to_vec()).boxed()
}

pub fn continuous_weight() -> BoxedStrategy<f64> {
    (0.1f64..3.0, any::<bool>())
        .prop_map(|(w, neg)| if neg { -w } else { w })
        .boxed()
}

pub fn positive_weight() -> BoxedStrategy<f64> {
    (0.1f64..3.0).boxed()
}

/// Transitive closure by repeated squaring of the boolean reachability
/// relation; `reach[i][j]` means a directed path from `i` to `j` exists.
pub fn reachability(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut r = vec![vec![false; n]; n];
    for e in g.edges() {
        r[e.tail - 1][e.head - 1] = true;
    }
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Characteristic polynomial coefficients `c[0..=n]` of `det(lambda I - M)`
/// with `c[n] = 1`, by the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut mk = DMatrix::<f64>::zeros(n, n);
    let id = DMatrix::<f64>::identity(n, n);
    for k in 1..=n {
        mk = m * &mk + c[n - k + 1] * &id;
        c[n - k] = -(m * &mk).trace() / k as f64;
    }
    c
}

/// All complex roots of a monic polynomial by Durand-Kerner iteration.
pub fn polynomial_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| {
        c.iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound * 0.5).collect();
    for _ in 0..5000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    z
}

/// True when `eigs`, rounded to two decimals, equal `target` as multisets.
pub fn matches_to_two_decimals(eigs: &[Complex64], target: &[Complex64]) -> bool {
    let round = |x: f64| (x * 100.0).round() / 100.0;
    let rounded: Vec<Complex64> = eigs
        .iter()
        .map(|z| Complex::new(round(z.re), round(z.im)))
        .collect();
    eigs.len() == target.len()
        && digraph_spectra::spectra::multiset_distance(&rounded, target).unwrap() <= 1e-9
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}
