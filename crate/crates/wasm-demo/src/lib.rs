//! Browser bindings for the demo page in `www/`. Every entry point takes and
//! returns JSON strings; the plain Rust functions below the bindings do the
//! work and are tested natively.

use digraph_spectra::consensus::SimConfig;
use digraph_spectra::io::{parse_graph, parse_vector};
use digraph_spectra::multilayer::{build_cycle, build_dcid, build_udcec};
use digraph_spectra::spectra::{
    cycle_spectrum, dcid_spectrum, multiset_distance, udcec_spectrum, DEFAULT_TOLERANCE,
};
use digraph_spectra::{classify, delay_margin, simulate, spectrum, Complex64, SpectralReport};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Closed-form and numerical spectra of a generated graph. `kind` is
/// `cycle`, `udcec` or `dcid`; `dcid` rings `m` copies of `base_text`.
#[wasm_bindgen]
pub fn layered_spectra(kind: &str, n: usize, m: usize, base_text: &str) -> Result<String, JsValue> {
    layered_spectra_json(kind, n, m, base_text).map_err(|e| JsValue::from_str(&e))
}

/// Structural verdict with the numerical spectrum attached.
#[wasm_bindgen]
pub fn classify_graph(text: &str) -> Result<String, JsValue> {
    classify_json(text).map_err(|e| JsValue::from_str(&e))
}

/// Delayed consensus trajectory. `x0_text` holds one number per node.
#[wasm_bindgen]
pub fn consensus_run(text: &str, tau: f64, t_max: f64, x0_text: &str) -> Result<String, JsValue> {
    consensus_json(text, tau, t_max, x0_text).map_err(|e| JsValue::from_str(&e))
}

fn pairs(eigs: &[Complex64]) -> Value {
    json!(eigs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

pub fn layered_spectra_json(
    kind: &str,
    n: usize,
    m: usize,
    base_text: &str,
) -> Result<String, String> {
    let err = |e: digraph_spectra::Error| e.to_string();
    let (graph, closed) = match kind {
        "cycle" => (
            build_cycle(n).map_err(err)?,
            cycle_spectrum(n).map_err(err)?,
        ),
        "udcec" => (
            build_udcec(n, m).map_err(err)?,
            udcec_spectrum(n, m).map_err(err)?,
        ),
        "dcid" => {
            let base = parse_graph(base_text).map_err(err)?;
            let mu = spectrum(&base).map_err(err)?;
            (
                build_dcid(&base, m).map_err(err)?.graph,
                dcid_spectrum(&mu, m).map_err(err)?,
            )
        }
        other => return Err(format!("unknown kind `{other}`")),
    };
    let numeric = spectrum(&graph).map_err(err)?;
    let distance = multiset_distance(&closed, &numeric).unwrap_or(f64::INFINITY);
    let report = SpectralReport::new(numeric.clone(), DEFAULT_TOLERANCE);
    Ok(json!({
        "n": graph.n(),
        "edges": graph.edge_count(),
        "closed_form": pairs(&closed),
        "numeric": pairs(&numeric),
        "distance": distance,
        "is_real": report.is_real,
    })
    .to_string())
}

pub fn classify_json(text: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let verdict = classify(&g, true).map_err(|e| e.to_string())?;
    serde_json::to_string(&verdict).map_err(|e| e.to_string())
}

pub fn consensus_json(text: &str, tau: f64, t_max: f64, x0_text: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let x0 = parse_vector(x0_text).map_err(|e| e.to_string())?;
    let mut cfg = SimConfig::new(tau, t_max, x0);
    // keep the trajectory small enough to plot
    cfg.sample_stride = ((t_max / cfg.step) / 2000.0).ceil().max(1.0) as usize;
    let run = simulate(&g, &cfg).map_err(|e| e.to_string())?;
    let margin = delay_margin(&spectrum(&g).map_err(|e| e.to_string())?);
    Ok(json!({
        "summary": run.summary(),
        "delay_margin": if margin.is_finite() { json!(margin) } else { Value::Null },
        "t": run.samples.iter().map(|(t, _)| *t).collect::<Vec<_>>(),
        "x": run.samples.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>(),
    })
    .to_string())
}
