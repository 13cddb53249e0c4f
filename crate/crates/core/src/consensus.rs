//! Delayed consensus `x'(t) = -L x(t - tau)` integrated with fixed-step RK4.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::spectra::{spectral_scale, Complex64};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_THRESHOLD: f64 = 1e-3;
pub const DEFAULT_DIVERGENCE_BOUND: f64 = 1e3;
pub const DEFAULT_SAMPLE_STRIDE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub tau: f64,
    pub step: f64,
    pub t_max: f64,
    pub threshold: f64,
    pub divergence_bound: f64,
    pub x0: Vec<f64>,
    /// Record a sample every this many steps.
    pub sample_stride: usize,
}

impl SimConfig {
    /// Defaults for everything except the delay, horizon and initial state.
    /// The step is shrunk to `tau / 10` when the default would be too coarse.
    pub fn new(tau: f64, t_max: f64, x0: Vec<f64>) -> Self {
        let step = if tau > 0.0 {
            DEFAULT_STEP.min(tau / 10.0)
        } else {
            DEFAULT_STEP
        };
        SimConfig {
            tau,
            step,
            t_max,
            threshold: DEFAULT_THRESHOLD,
            divergence_bound: DEFAULT_DIVERGENCE_BOUND,
            x0,
            sample_stride: DEFAULT_SAMPLE_STRIDE,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite_pos = |x: f64| x.is_finite() && x > 0.0;
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return Err(Error::param(format!(
                "tau must be finite and >= 0, got {}",
                self.tau
            )));
        }
        if !finite_pos(self.step) {
            return Err(Error::param(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.tau > 0.0 && self.step > self.tau / 10.0 {
            return Err(Error::param(format!(
                "step {} exceeds tau / 10 = {}",
                self.step,
                self.tau / 10.0
            )));
        }
        if !finite_pos(self.t_max) {
            return Err(Error::param(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if !finite_pos(self.threshold) {
            return Err(Error::param(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        if self.divergence_bound.is_nan() || self.divergence_bound <= self.threshold {
            return Err(Error::param("divergence bound must exceed the threshold"));
        }
        if self.x0.is_empty() || self.x0.iter().any(|x| !x.is_finite()) {
            return Err(Error::param("initial state must be non-empty and finite"));
        }
        if self.sample_stride == 0 {
            return Err(Error::param("sample stride must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t", rename_all = "snake_case")]
pub enum Outcome {
    Converged(f64),
    Diverged(f64),
    Timeout,
}

impl Outcome {
    pub fn time(&self) -> Option<f64> {
        match *self {
            Outcome::Converged(t) | Outcome::Diverged(t) => Some(t),
            Outcome::Timeout => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Converged(_) => "converged",
            Outcome::Diverged(_) => "diverged",
            Outcome::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub samples: Vec<(f64, Vec<f64>)>,
    pub outcome: Outcome,
    pub disagreement_trace: Vec<(f64, f64)>,
    pub tau: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub outcome: String,
    pub t_event: Option<f64>,
    pub tau: f64,
    pub step: f64,
}

impl SimulationResult {
    pub fn summary(&self) -> SimulationSummary {
        SimulationSummary {
            outcome: self.outcome.name().to_string(),
            t_event: self.outcome.time(),
            tau: self.tau,
            step: self.step,
        }
    }

    /// Samples as CSV with header `t,x1,...,xn,disagreement`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map_or(0, |(_, x)| x.len());
        let mut out = String::from("t");
        for i in 1..=n {
            let _ = write!(out, ",x{i}");
        }
        out.push_str(",disagreement\n");
        for (t, x) in &self.samples {
            let _ = write!(out, "{t}");
            for v in x {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{}", disagreement(x));
        }
        out
    }
}

/// `max_i x_i - min_i x_i`; infinite when any entry is not finite.
pub fn disagreement(x: &[f64]) -> f64 {
    if x.iter().any(|v| !v.is_finite()) {
        return f64::INFINITY;
    }
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// Largest delay for which every mode `s' = -lambda s(t - tau)` is stable:
/// the minimum of `(pi/2 - |arg lambda|) / |lambda|` over nonzero
/// eigenvalues. Zero when some nonzero eigenvalue has `Re <= 0`, infinite
/// when all eigenvalues are zero.
pub fn delay_margin(eigs: &[Complex64]) -> f64 {
    let zero_tol = 1e-9 * spectral_scale(eigs);
    let mut margin = f64::INFINITY;
    for l in eigs {
        let rho = l.norm();
        if rho <= zero_tol {
            continue;
        }
        if l.re <= 0.0 {
            return 0.0;
        }
        margin = margin.min((FRAC_PI_2 - l.im.atan2(l.re).abs()) / rho);
    }
    margin
}

/// Trajectory on the uniform grid `t_k = k * step`, stored row by row, with
/// constant history `x0` for `t <= 0`.
struct History {
    n: usize,
    step: f64,
    data: Vec<f64>,
}

impl History {
    fn at(&self, k: usize) -> &[f64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    /// Linear interpolation at time `s`, which must not lie past the last
    /// stored grid point.
    fn interpolate(&self, s: f64, out: &mut DVector<f64>) {
        if s <= 0.0 {
            out.copy_from_slice(self.at(0));
            return;
        }
        let pos = s / self.step;
        let k = pos.floor() as usize;
        let last = self.data.len() / self.n - 1;
        if k >= last {
            out.copy_from_slice(self.at(last));
            return;
        }
        let frac = pos - k as f64;
        let (a, b) = (self.at(k), self.at(k + 1));
        for i in 0..self.n {
            out[i] = a[i] + frac * (b[i] - a[i]);
        }
    }
}

pub fn simulate(g: &Digraph, cfg: &SimConfig) -> Result<SimulationResult> {
    cfg.validate()?;
    let n = g.n();
    if cfg.x0.len() != n {
        return Err(Error::param(format!(
            "initial state has {} entries, graph has {n} nodes",
            cfg.x0.len()
        )));
    }
    let neg_l: DMatrix<f64> = -g.laplacian().into_matrix();
    let h = cfg.step;
    let tau = cfg.tau;
    let steps = (cfg.t_max / h).round() as usize;

    let mut hist = History {
        n,
        step: h,
        data: cfg.x0.clone(),
    };
    let mut x = DVector::from_vec(cfg.x0.clone());
    let mut samples = vec![(0.0, cfg.x0.clone())];
    let d0 = disagreement(&cfg.x0);
    let mut trace = vec![(0.0, d0)];
    let mut outcome = Outcome::Timeout;
    if d0 < cfg.threshold {
        outcome = Outcome::Converged(0.0);
    }

    let mut delayed = DVector::zeros(n);
    let mut rhs = |t_stage: f64, x_stage: &DVector<f64>, hist: &History| -> DVector<f64> {
        if tau == 0.0 {
            &neg_l * x_stage
        } else {
            hist.interpolate(t_stage - tau, &mut delayed);
            &neg_l * &delayed
        }
    };

    let mut k = 0;
    while outcome == Outcome::Timeout && k < steps {
        let t = k as f64 * h;
        let k1 = rhs(t, &x, &hist);
        let k2 = rhs(t + 0.5 * h, &(&x + 0.5 * h * &k1), &hist);
        let k3 = rhs(t + 0.5 * h, &(&x + 0.5 * h * &k2), &hist);
        let k4 = rhs(t + h, &(&x + h * &k3), &hist);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        k += 1;
        hist.data.extend(x.iter());

        let t_next = k as f64 * h;
        let d = disagreement(x.as_slice());
        if d < cfg.threshold {
            outcome = Outcome::Converged(t_next);
        } else if d > cfg.divergence_bound {
            outcome = Outcome::Diverged(t_next);
        }
        if k % cfg.sample_stride == 0 || outcome != Outcome::Timeout || k == steps {
            samples.push((t_next, x.as_slice().to_vec()));
            trace.push((t_next, d));
        }
    }
    Ok(SimulationResult {
        samples,
        outcome,
        disagreement_trace: trace,
        tau,
        step: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectra::spectrum;
    use approx::assert_relative_eq;
    use nalgebra::Complex;

    #[test]
    fn disagreement_examples() {
        assert_eq!(disagreement(&[0.3, 0.3, 0.3]), 0.0);
        assert_eq!(disagreement(&[1.0, -1.0]), 2.0);
        assert_relative_eq!(disagreement(&fixtures::CONSENSUS_X0), 1.3, epsilon = 1e-15);
        assert_eq!(disagreement(&[1.0, f64::NAN]), f64::INFINITY);
    }

    #[test]
    fn margin_examples() {
        let real = [0.0, 1.0, 1.0, 2.0].map(|x| Complex::new(x, 0.0));
        assert_relative_eq!(
            delay_margin(&real),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-12
        );
        let complex = spectrum(&fixtures::consensus_complex()).unwrap();
        assert!((delay_margin(&complex) - 0.52).abs() < 0.01);
        assert_eq!(delay_margin(&[Complex::new(0.0, 0.0)]), f64::INFINITY);
        assert_eq!(
            delay_margin(&[Complex::new(0.0, 0.0), Complex::new(-1.0, 0.0)]),
            0.0
        );
    }

    #[test]
    fn config_validation() {
        let ok = SimConfig::new(0.3, 10.0, vec![0.0, 1.0]);
        assert!(ok.validate().is_ok());
        assert!(ok.clone().with_step(0.05).validate().is_err());
        assert!(SimConfig::new(-1.0, 10.0, vec![0.0]).validate().is_err());
        assert!(SimConfig::new(0.0, 0.0, vec![0.0]).validate().is_err());
        assert!(SimConfig::new(0.0, 1.0, vec![]).validate().is_err());
        let mut bad = ok.clone();
        bad.divergence_bound = bad.threshold;
        assert!(bad.validate().is_err());
        let g = fixtures::consensus_real();
        assert!(simulate(&g, &ok).is_err());
    }

    #[test]
    fn undelayed_consensus_converges() {
        let g = fixtures::consensus_real();
        let cfg = SimConfig::new(0.0, 30.0, fixtures::CONSENSUS_X0.to_vec());
        let r = simulate(&g, &cfg).unwrap();
        assert!(matches!(r.outcome, Outcome::Converged(t) if t > 0.0 && t < 30.0));
    }

    #[test]
    fn delayed_fixtures_behave_as_expected() {
        let x0 = fixtures::CONSENSUS_X0.to_vec();
        let real = simulate(
            &fixtures::consensus_real(),
            &SimConfig::new(0.3, 20.0, x0.clone()),
        )
        .unwrap();
        let cplx = simulate(
            &fixtures::consensus_complex(),
            &SimConfig::new(0.3, 20.0, x0.clone()),
        )
        .unwrap();
        let (Outcome::Converged(tr), Outcome::Converged(tc)) = (real.outcome, cplx.outcome) else {
            panic!("{:?} {:?}", real.outcome, cplx.outcome);
        };
        assert!(tr < tc);
        let div = simulate(
            &fixtures::consensus_complex(),
            &SimConfig::new(0.6, 100.0, x0),
        )
        .unwrap();
        assert!(matches!(div.outcome, Outcome::Diverged(_)));
    }

    #[test]
    fn already_agreed_state_converges_at_zero() {
        let g = fixtures::consensus_real();
        let r = simulate(&g, &SimConfig::new(0.3, 1.0, vec![0.5; 4])).unwrap();
        assert_eq!(r.outcome, Outcome::Converged(0.0));
        assert_eq!(r.samples.len(), 1);
    }

    #[test]
    fn csv_and_summary() {
        let g = fixtures::two_node_complete();
        let mut cfg = SimConfig::new(0.0, 0.05, vec![1.0, -1.0]);
        cfg.sample_stride = 25;
        let r = simulate(&g, &cfg).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,x1,x2,disagreement");
        assert_eq!(lines.len(), 1 + r.samples.len());
        assert_eq!(r.samples.len(), 3);
        let s = serde_json::to_value(r.summary()).unwrap();
        assert_eq!(s["outcome"], "timeout");
        assert!(s["t_event"].is_null());
        assert_eq!(s["step"], 1e-3);
    }

    #[test]
    fn undelayed_two_node_matches_exponential() {
        // x1 - x2 decays as exp(-2t) for the symmetric pair
        let g = fixtures::two_node_complete();
        let mut cfg = SimConfig::new(0.0, 1.0, vec![1.0, -1.0]);
        cfg.threshold = 1e-9;
        let r = simulate(&g, &cfg).unwrap();
        let (t, x) = r.samples.last().unwrap();
        assert_relative_eq!(x[0] - x[1], 2.0 * (-2.0 * t).exp(), epsilon = 1e-10);
    }
}
