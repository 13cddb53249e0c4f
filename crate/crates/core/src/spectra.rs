//! Numerical eigenvalues of real non-symmetric matrices, realness testing,
//! and closed-form Laplacian spectra for directed cycles, cycle-embedded
//! complete graphs and directed cyclical interconnections.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::connectivity::matrix_components;
use crate::error::{Error, Result};
use crate::graph::Digraph;

pub type Complex64 = Complex<f64>;

/// Relative tolerance on `|Im λ|` used when no other tolerance is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Computed eigenvalues closer than this (relative to the block's scale) are
/// treated as one perturbed multiple eigenvalue and replaced by their mean.
const CLUSTER_RTOL: f64 = 1e-6;

/// `max(1, max |λ|)`.
pub fn spectral_scale(eigs: &[Complex64]) -> f64 {
    eigs.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// True when every `|Im λ| <= tol * max(1, max |λ|)`.
pub fn is_real_spectrum(eigs: &[Complex64], tol: f64) -> bool {
    let bound = tol * spectral_scale(eigs);
    eigs.iter().all(|z| z.im.abs() <= bound)
}

/// Sorts by real part, then imaginary part, ascending.
pub fn sort_spectrum(eigs: &mut [Complex64]) {
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn validate(m: &DMatrix<f64>) -> Result<()> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    for j in 0..cols {
        for i in 0..rows {
            if !m[(i, j)].is_finite() {
                return Err(Error::NonFinite {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }
    Ok(())
}

/// All eigenvalues of a real square matrix with algebraic multiplicity,
/// sorted by `(Re, Im)`.
///
/// The matrix is first permuted to block upper triangular form along the
/// strongly connected components of its nonzero pattern, so eigenvalues of
/// reducible matrices come from the diagonal blocks. Each block goes to the
/// cheapest exact route: 1x1 directly, 2x2 by the quadratic formula,
/// symmetric blocks by a symmetric eigensolver, anything else by Hessenberg
/// reduction and double-shift QR.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    validate(m)?;
    let mut out = Vec::with_capacity(m.nrows());
    for block in matrix_components(m) {
        let sub = DMatrix::from_fn(block.len(), block.len(), |a, b| m[(block[a], block[b])]);
        out.extend(block_eigenvalues(sub)?);
    }
    sort_spectrum(&mut out);
    Ok(out)
}

/// Eigenvalues from a single Hessenberg-QR pass over the whole matrix, with no
/// reducibility split, symmetric dispatch or cluster averaging. Multiple
/// eigenvalues with non-trivial Jordan structure come back perturbed by about
/// `sqrt(eps)`.
pub fn eigenvalues_dense(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    validate(m)?;
    let mut out = crate::hqr::eigenvalues(m.clone())?;
    sort_spectrum(&mut out);
    Ok(out)
}

/// Eigenvalues of `laplacian(g)`.
pub fn spectrum(g: &Digraph) -> Result<Vec<Complex64>> {
    eigenvalues(g.laplacian().matrix())
}

fn block_eigenvalues(b: DMatrix<f64>) -> Result<Vec<Complex64>> {
    match b.nrows() {
        1 => Ok(vec![Complex::new(b[(0, 0)], 0.0)]),
        2 => {
            let (x, y) = two_node_spectrum(b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]);
            Ok(vec![x, y])
        }
        _ if b == b.transpose() => Ok(SymmetricEigen::new(b)
            .eigenvalues
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect()),
        _ => {
            let mut eigs = crate::hqr::eigenvalues(b)?;
            merge_clusters(&mut eigs);
            Ok(eigs)
        }
    }
}

/// Replaces every single-linkage cluster of nearly equal eigenvalues by its
/// mean. The mean of a perturbed multiple eigenvalue is far better
/// conditioned than the individual members.
fn merge_clusters(eigs: &mut [Complex64]) {
    let k = eigs.len();
    let radius = CLUSTER_RTOL * spectral_scale(eigs);
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..k {
        for b in a + 1..k {
            if (eigs[a] - eigs[b]).norm() <= radius {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut sums = vec![(Complex::new(0.0, 0.0), 0usize); k];
    for a in 0..k {
        let r = find(&mut parent, a);
        sums[r].0 += eigs[a];
        sums[r].1 += 1;
    }
    for a in 0..k {
        let r = find(&mut parent, a);
        let (s, c) = sums[r];
        if c > 1 {
            eigs[a] = s / c as f64;
        }
    }
}

/// Roots of `λ² - (m11 + m22) λ + (m11 m22 - m12 m21)`, larger real part
/// (or positive imaginary part) first.
///
/// The discriminant is formed as `((m11 - m22)/2)² + m12 m21`, a sum of
/// non-negative terms whenever `m12 m21 >= 0`, so such matrices always yield
/// exactly real roots.
pub fn two_node_spectrum(m11: f64, m12: f64, m21: f64, m22: f64) -> (Complex64, Complex64) {
    let mean = 0.5 * (m11 + m22);
    let half_gap = 0.5 * (m11 - m22);
    let disc = half_gap * half_gap + m12 * m21;
    if disc >= 0.0 {
        let s = disc.sqrt();
        (Complex::new(mean + s, 0.0), Complex::new(mean - s, 0.0))
    } else {
        let s = (-disc).sqrt();
        (Complex::new(mean, s), Complex::new(mean, -s))
    }
}

fn unit_root(k: usize, n: usize) -> Complex64 {
    Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// `{1 - e^{i 2πk/n} : k = 0..n}`, the Laplacian spectrum of an unweighted
/// directed `n`-cycle. Not sorted; index `k` holds the `k`-th term.
pub fn cycle_spectrum(n: usize) -> Result<Vec<Complex64>> {
    if n < 3 {
        return Err(Error::param(format!(
            "a directed cycle needs at least 3 nodes, got {n}"
        )));
    }
    Ok((0..n)
        .map(|k| Complex::new(1.0, 0.0) - unit_root(k, n))
        .collect())
}

/// Laplacian spectrum of the `n`-node complete graph with a directed `m`-cycle
/// embedded: `0`, `n - 1 + e^{i 2πk/m}` for `k = 1..m`, and `n` with
/// multiplicity `n - m`.
pub fn udcec_spectrum(n: usize, m: usize) -> Result<Vec<Complex64>> {
    if m < 3 || m > n {
        return Err(Error::param(format!(
            "need 3 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    let mut out = Vec::with_capacity(n);
    out.push(Complex::new(0.0, 0.0));
    out.extend((1..m).map(|k| Complex::new((n - 1) as f64, 0.0) + unit_root(k, m)));
    out.extend(std::iter::repeat_n(Complex::new(n as f64, 0.0), n - m));
    Ok(out)
}

/// Spectrum of an `m`-layer directed cyclical interconnection whose base
/// graph has Laplacian spectrum `mu`: `μ + 1 - e^{i 2πk/m}` for every `μ` and
/// `k = 0..m`.
pub fn dcid_spectrum(mu: &[Complex64], m: usize) -> Result<Vec<Complex64>> {
    if m < 3 {
        return Err(Error::param(format!("need at least 3 layers, got {m}")));
    }
    if mu.is_empty() {
        return Err(Error::param("base spectrum must not be empty"));
    }
    Ok(mu
        .iter()
        .flat_map(|&z| (0..m).map(move |k| z + Complex::new(1.0, 0.0) - unit_root(k, m)))
        .collect())
}

/// Smallest `d` such that the two multisets can be perfectly matched with
/// every matched pair within distance `d` (bottleneck matching). `None` when
/// the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0.0);
    }
    let mut cands: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x - y).norm()))
        .collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(a, b, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(cands[lo])
}

/// True when the multisets have equal size and match pairwise within `tol`.
pub fn spectra_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && perfect_matching(a, b, tol)
}

// Kuhn's augmenting-path bipartite matching on the `dist <= tol` graph.
fn perfect_matching(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let n = a.len();
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|x| (0..n).filter(|&j| (x - b[j]).norm() <= tol).collect())
        .collect();
    let mut owner = vec![usize::MAX; n];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v] == usize::MAX || augment(owner[v], adj, seen, owner) {
                    owner[v] = u;
                    return true;
                }
            }
        }
        false
    }
    (0..n).all(|u| {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut owner)
    })
}

/// Eigenvalue multiset with its realness verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub eigenvalues: Vec<Complex64>,
    pub is_real: bool,
    pub realness_tolerance: f64,
    pub scale: f64,
}

impl SpectralReport {
    pub fn new(mut eigenvalues: Vec<Complex64>, tol: f64) -> Self {
        sort_spectrum(&mut eigenvalues);
        SpectralReport {
            is_real: is_real_spectrum(&eigenvalues, tol),
            scale: spectral_scale(&eigenvalues),
            realness_tolerance: tol,
            eigenvalues,
        }
    }

    pub fn of_graph(g: &Digraph, tol: f64) -> Result<Self> {
        Ok(Self::new(spectrum(g)?, tol))
    }
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    eigenvalues: Vec<[f64; 2]>,
    is_real: bool,
    tolerance: f64,
}

impl Serialize for SpectralReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportWire {
            eigenvalues: self.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
            is_real: self.is_real,
            tolerance: self.realness_tolerance,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectralReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ReportWire::deserialize(d)?;
        let eigenvalues: Vec<Complex64> = w
            .eigenvalues
            .iter()
            .map(|&[re, im]| Complex::new(re, im))
            .collect();
        Ok(SpectralReport {
            scale: spectral_scale(&eigenvalues),
            is_real: w.is_real,
            realness_tolerance: w.tolerance,
            eigenvalues,
        })
    }
}
