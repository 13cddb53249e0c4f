//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use digraph_spectra::classifier::{real_conditions_bruteforce, real_spectrum_certificate};
use digraph_spectra::consensus::SimConfig;
use digraph_spectra::fixtures::{self, CONSENSUS_X0};
use digraph_spectra::io::{parse_graph, to_json, to_text};
use digraph_spectra::multilayer::dcid_block_laplacian;
use digraph_spectra::random::{
    random_certified_real, random_digraph, random_one_way_composition, unweighted_from_code,
    WEIGHT_POOL,
};
use digraph_spectra::spectra::{
    cycle_spectrum, dcid_spectrum, multiset_distance, udcec_spectrum, DEFAULT_TOLERANCE,
};
use digraph_spectra::{
    build_cycle, build_dcid, build_udcec, classify, delay_margin, is_real_spectrum, simulate,
    spectrum, Complex64, Digraph, Edge, Outcome, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(
        elapsed.as_secs_f64() < limit_s,
        format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()),
    )
}

fn rounded(eigs: &[Complex64]) -> Vec<Complex64> {
    let r = |x: f64| (x * 100.0).round() / 100.0;
    eigs.iter().map(|z| c(r(z.re), r(z.im))).collect()
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    multiset_distance(a, b).unwrap_or(f64::INFINITY)
}

fn six_node_regression() -> Check {
    let start = Instant::now();
    let g = fixtures::six_node_mixed();
    let eigs = spectrum(&g).map_err(|e| e.to_string())?;
    let expected = [3.0, 10.47, 3.65, -4.12, 5.80, 1.3].map(|x| c(x, 0.0));
    let d = distance(&rounded(&eigs), &expected);
    ensure(
        d <= 5e-3,
        format!("rounded spectrum {:?} is {d} from target", rounded(&eigs)),
    )?;
    let blocks = real_spectrum_certificate(&g).map_err(|v| format!("certificate failed: {v:?}"))?;
    let mut sets = blocks.node_sets();
    sets.iter_mut().for_each(|s| s.sort_unstable());
    sets.sort();
    ensure(
        sets == vec![vec![1], vec![2, 3, 4], vec![5, 6]],
        format!("blocks {sets:?}"),
    )?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("matching distance {d:.1e}, blocks {sets:?}"))
}

fn three_cycle_pair() -> Check {
    let h = 3f64.sqrt() / 2.0;
    let expected = [c(0.0, 0.0), c(1.5, h), c(1.5, -h)];
    let closed = cycle_spectrum(3).map_err(|e| e.to_string())?;
    let numeric = spectrum(&build_cycle(3).unwrap()).map_err(|e| e.to_string())?;
    let (d1, d2) = (distance(&closed, &expected), distance(&numeric, &expected));
    ensure(
        d1 <= 1e-8 && d2 <= 1e-8,
        format!("closed form {d1}, numerical {d2}"),
    )?;
    let w = fixtures::weighted_three_cycle();
    let d3 = distance(
        &spectrum(&w).map_err(|e| e.to_string())?,
        &[c(0.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)],
    );
    ensure(
        d3 <= 1e-8,
        format!("weighted 3-cycle is {d3} from {{0, 3, 3}}"),
    )?;
    let verdict = classify(&w, false).map_err(|e| e.to_string())?.verdict;
    ensure(
        verdict == Verdict::Undetermined,
        format!("weighted 3-cycle classified {verdict:?}"),
    )?;
    Ok(format!(
        "distances {d1:.1e} / {d2:.1e} / {d3:.1e}, weighted verdict {verdict:?}"
    ))
}

fn closed_forms_match_numerics() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut record =
        |got: Vec<Complex64>, want: Vec<Complex64>, what: String| -> Result<(), String> {
            let d = distance(&got, &want);
            worst = worst.max(d);
            count += 1;
            ensure(d <= 1e-6, format!("{what}: distance {d}"))
        };
    for n in 3..=12 {
        record(
            spectrum(&build_cycle(n).unwrap()).unwrap(),
            cycle_spectrum(n).unwrap(),
            format!("cycle {n}"),
        )?;
    }
    for n in 3..=10 {
        for m in 3..=n {
            let got = spectrum(&build_udcec(n, m).unwrap()).unwrap();
            record(
                got,
                udcec_spectrum(n, m).unwrap(),
                format!("udcec ({n}, {m})"),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..50 {
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(3..=6));
        let base = random_digraph(&mut rng, n, 0.4, 0.5, true, &WEIGHT_POOL);
        let d = build_dcid(&base, m).map_err(|e| e.to_string())?;
        let got = spectrum(&d.graph).map_err(|e| e.to_string())?;
        let want = dcid_spectrum(&spectrum(&base).unwrap(), m).unwrap();
        record(got, want, format!("dcid instance {k} (n = {n}, m = {m})"))?;
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!("{count} instances, worst distance {worst:.1e}"))
}

/// The random weighted graphs shared by the oracle and soundness campaigns.
fn campaign_graphs() -> Vec<Digraph> {
    let mut graphs: Vec<Digraph> = (0..1u64 << 12)
        .map(|code| unweighted_from_code(4, code))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.6);
        // every fourth graph is built to pass, so both outcomes are well covered
        graphs.push(if k % 4 == 0 {
            random_certified_real(&mut rng, n)
        } else {
            random_digraph(&mut rng, n, density, 0.6, true, &WEIGHT_POOL)
        });
    }
    graphs
}

fn oracle_equivalence(graphs: &[Digraph]) -> Check {
    let mut disagreements = 0;
    let mut holds = 0;
    for g in graphs {
        let fast = real_spectrum_certificate(g).is_ok();
        let slow = real_conditions_bruteforce(g).map_err(|e| e.to_string())?;
        disagreements += (fast != slow) as usize;
        holds += fast as usize;
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    let weighted = graphs.iter().skip(4096);
    let negative = weighted
        .clone()
        .filter(|g| g.edges().any(|e| e.weight < 0.0))
        .count();
    let looped = weighted.filter(|g| g.has_self_loops()).count();
    ensure(
        negative > 0 && looped > 0,
        "campaign lacks negative weights or self-loops",
    )?;
    Ok(format!(
        "{} graphs (4096 exhaustive), 0 disagreements, {holds} certified, {negative} with negative weights, {looped} with self-loops",
        graphs.len()
    ))
}

fn soundness(graphs: &[Digraph]) -> Check {
    let mut checked = 0;
    for g in graphs
        .iter()
        .filter(|g| real_spectrum_certificate(g).is_ok())
    {
        let eigs = spectrum(g).map_err(|e| e.to_string())?;
        ensure(
            is_real_spectrum(&eigs, DEFAULT_TOLERANCE),
            format!("certified graph with complex spectrum: {g:?}"),
        )?;
        checked += 1;
    }
    let mut generated = Vec::new();
    generated.extend((3..=12).map(|n| build_cycle(n).unwrap()));
    for n in 3..=10 {
        generated.extend((3..=n).map(|m| build_udcec(n, m).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(3..=6));
        let base = random_digraph(&mut rng, n, 0.4, 0.5, true, &WEIGHT_POOL);
        generated.push(build_dcid(&base, m).unwrap().graph);
    }
    for g in &generated {
        let eigs = spectrum(g).map_err(|e| e.to_string())?;
        ensure(
            !is_real_spectrum(&eigs, DEFAULT_TOLERANCE),
            format!("generated graph with real spectrum: {g:?}"),
        )?;
    }
    Ok(format!(
        "{checked} certified graphs real, {} generated graphs complex",
        generated.len()
    ))
}

fn composition_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut worst, mut real_cases, mut complex_cases) = (0.0f64, 0, 0);
    for k in 0..1000 {
        let (n1, n2) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let g1 = random_digraph(&mut rng, n1, 0.4, 0.5, true, &WEIGHT_POOL);
        let g2 = match k % 3 {
            0 => random_certified_real(&mut rng, n2),
            1 => random_digraph(&mut rng, n2, 0.4, 0.3, false, &WEIGHT_POOL),
            _ => build_cycle(n2 + 2).unwrap(),
        };
        let comp = random_one_way_composition(&mut rng, g1, g2);
        let whole = spectrum(&comp.result).map_err(|e| e.to_string())?;
        let mut parts = spectrum(&comp.augmented_g1()).map_err(|e| e.to_string())?;
        parts.extend(spectrum(&comp.g2).map_err(|e| e.to_string())?);
        let d = distance(&whole, &parts);
        worst = worst.max(d);
        ensure(d <= 1e-8, format!("composition {k}: union distance {d}"))?;
        if comp.preserves_real_spectrum().map_err(|e| e.to_string())? {
            real_cases += 1;
            ensure(
                is_real_spectrum(&whole, DEFAULT_TOLERANCE),
                format!("composition {k}: real predicted, complex found"),
            )?;
        }
        if comp
            .inherits_complex_spectrum()
            .map_err(|e| e.to_string())?
        {
            complex_cases += 1;
            ensure(
                !is_real_spectrum(&whole, DEFAULT_TOLERANCE),
                format!("composition {k}: complex predicted, real found"),
            )?;
        }
    }
    ensure(
        real_cases > 0 && complex_cases > 0,
        "a predicate never fired",
    )?;
    Ok(format!(
        "1000 compositions, worst union distance {worst:.1e}, {real_cases} real-preserving, {complex_cases} complex-inheriting"
    ))
}

fn real_layers_complex_composition() -> Check {
    let comp = fixtures::complex_from_real_layers();
    let real = |g: &Digraph| is_real_spectrum(&spectrum(g).unwrap(), DEFAULT_TOLERANCE);
    ensure(real(&comp.g1) && real(&comp.g2), "layers are not both real")?;
    ensure(comp.e12.is_empty(), "coupling is not one way")?;
    let eigs = spectrum(&comp.result).map_err(|e| e.to_string())?;
    ensure(
        !is_real_spectrum(&eigs, DEFAULT_TOLERANCE),
        "composed spectrum is real",
    )?;
    let target = [
        c(0.16, 0.0),
        c(2.42, 0.61),
        c(2.42, -0.61),
        c(0.0, 0.0),
        c(2.0, 0.0),
        c(2.0, 0.0),
    ];
    let d = distance(&rounded(&eigs), &target);
    ensure(
        d <= 5e-3,
        format!(
            "rounded spectrum {:?} misses the reconstructed values",
            rounded(&eigs)
        ),
    )?;
    Ok("real layers {0, 2, 2} compose to {0.16, 2.42 ± 0.61i, 0, 2, 2}".into())
}

fn run_consensus(g: &Digraph, tau: f64, t_max: f64, step_factor: f64) -> Result<Outcome, String> {
    let cfg = SimConfig::new(tau, t_max, CONSENSUS_X0.to_vec());
    let cfg = cfg.clone().with_step(cfg.step * step_factor);
    Ok(simulate(g, &cfg).map_err(|e| e.to_string())?.outcome)
}

/// Convergence times reported by the delayed consensus runs, by label.
fn consensus_times(step_factor: f64) -> Result<Vec<(&'static str, f64)>, String> {
    let (real, complex) = (fixtures::consensus_real(), fixtures::consensus_complex());
    let converged = |o: Outcome, what: &str| match o {
        Outcome::Converged(t) => Ok(t),
        other => Err(format!("{what}: {other:?}")),
    };
    let real_03 = converged(
        run_consensus(&real, 0.3, 20.0, step_factor)?,
        "real graph, tau 0.3",
    )?;
    let complex_03 = converged(
        run_consensus(&complex, 0.3, 20.0, step_factor)?,
        "complex graph, tau 0.3",
    )?;
    let real_06 = converged(
        run_consensus(&real, 0.6, 100.0, step_factor)?,
        "real graph, tau 0.6",
    )?;
    Ok(vec![
        ("real, tau 0.3", real_03),
        ("complex, tau 0.3", complex_03),
        ("real, tau 0.6", real_06),
    ])
}

fn delayed_consensus() -> Check {
    let start = Instant::now();
    let (real, complex) = (fixtures::consensus_real(), fixtures::consensus_complex());
    let (er, ec) = (spectrum(&real).unwrap(), spectrum(&complex).unwrap());
    let want_c = [c(0.0, 0.0), c(0.53, 0.0), c(2.23, 0.79), c(2.23, -0.79)];
    let want_r = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
    ensure(
        distance(&rounded(&ec), &want_c) <= 5e-3,
        format!("complex fixture spectrum {:?}", rounded(&ec)),
    )?;
    ensure(
        distance(&rounded(&er), &want_r) <= 5e-3,
        format!("real fixture spectrum {:?}", rounded(&er)),
    )?;

    let times = consensus_times(1.0)?;
    let (t_real, t_complex) = (times[0].1, times[1].1);
    ensure(
        t_real < t_complex,
        format!("t_c real {t_real} not below t_c complex {t_complex}"),
    )?;
    let diverged = run_consensus(&complex, 0.6, 100.0, 1.0)?;
    ensure(
        matches!(diverged, Outcome::Diverged(_)),
        format!("complex graph, tau 0.6: {diverged:?}"),
    )?;

    let (mc, mr) = (delay_margin(&ec), delay_margin(&er));
    ensure((mc - 0.52).abs() <= 0.01, format!("complex margin {mc}"))?;
    ensure((mr - 0.785).abs() <= 0.01, format!("real margin {mr}"))?;
    ensure(
        mc < 0.6 && 0.6 < mr && 0.3 < mc,
        "margins do not bracket the delays",
    )?;
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "tau 0.3: t_c {t_real:.3} (real) < {t_complex:.3} (complex); tau 0.6: complex {} at {:.2}, real converged at {:.3}; margins {mc:.4} / {mr:.4}",
        diverged.name(),
        diverged.time().unwrap_or(f64::NAN),
        times[2].1
    ))
}

fn step_halving() -> Check {
    let base = consensus_times(1.0)?;
    let half = consensus_times(0.5)?;
    let mut worst: f64 = 0.0;
    for ((label, a), (_, b)) in base.iter().zip(&half) {
        let rel = (a - b).abs() / a;
        worst = worst.max(rel);
        ensure(
            rel < 0.01,
            format!("{label}: {a} vs {b} ({:.3}%)", 100.0 * rel),
        )?;
    }
    Ok(format!(
        "{} convergence times, worst relative change {:.4}%",
        base.len(),
        100.0 * worst
    ))
}

fn dgspec(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dgspec"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cli_round_trips() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bases = vec![
        fixtures::two_node_complete(),
        fixtures::weighted_three_cycle(),
    ];
    bases.extend((0..5).map(|_| random_digraph(&mut rng, 4, 0.5, 0.5, true, &WEIGHT_POOL)));
    for (k, base) in bases.iter().enumerate() {
        std::fs::write(path("base.txt"), to_text(base)).map_err(|e| e.to_string())?;
        let text = dgspec(&["generate", "dcid", "-m", "4", "--base", &path("base.txt")])?;
        let parsed = parse_graph(&text).map_err(|e| e.to_string())?;
        let expected = dcid_block_laplacian(base.laplacian().matrix(), 4);
        ensure(
            parsed.laplacian().into_matrix() == expected,
            format!("base {k}: Laplacian differs from the block layout"),
        )?;
    }

    let mut files = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=7);
        let mut edges = Vec::new();
        for tail in 1..=n {
            for head in 1..=n {
                if rng.gen_bool(0.4) {
                    let w: f64 = rng.gen_range(-1e3..1e3) * 10f64.powi(rng.gen_range(-8..8));
                    edges.push(Edge::new(tail, head, if w == 0.0 { PI } else { w }));
                }
            }
        }
        let g = Digraph::new(n, &edges).map_err(|e| e.to_string())?;
        for (name, contents) in [("g.txt", to_text(&g)), ("g.json", to_json(&g))] {
            ensure(
                parse_graph(&contents).map_err(|e| e.to_string())? == g,
                format!("graph {k} via {name}"),
            )?;
            std::fs::write(path(name), &contents).map_err(|e| e.to_string())?;
            let format = if name.ends_with("json") {
                "json"
            } else {
                "text"
            };
            let cross = path("cross.txt");
            std::fs::write(&cross, "[e12]\n[e21]\n").map_err(|e| e.to_string())?;
            let single = Digraph::empty(1).unwrap();
            std::fs::write(path("one.txt"), to_text(&single)).map_err(|e| e.to_string())?;
            let out = path(&format!("out.{format}"));
            dgspec(&[
                "compose",
                &path(name),
                &path("one.txt"),
                &cross,
                "--out",
                &out,
                "--format",
                format,
            ])?;
            let back = parse_graph(&std::fs::read_to_string(&out).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let kept: Vec<Edge> = back
                .edges()
                .filter(|e| e.tail <= n && e.head <= n)
                .collect();
            ensure(
                kept == g.edges().collect::<Vec<_>>(),
                format!("graph {k} through the CLI as {format}"),
            )?;
            files += 1;
        }
    }
    Ok(format!(
        "{} DCID instances entrywise exact, {files} weight-exact file round trips",
        bases.len()
    ))
}

fn main() -> ExitCode {
    let graphs = campaign_graphs();
    let criteria: Vec<Criterion> = vec![
        ("six-node regression", Box::new(six_node_regression)),
        ("three-cycle pair", Box::new(three_cycle_pair)),
        (
            "closed forms vs eigensolver",
            Box::new(closed_forms_match_numerics),
        ),
        (
            "certificate vs brute force",
            Box::new(|| oracle_equivalence(&graphs)),
        ),
        ("soundness campaigns", Box::new(|| soundness(&graphs))),
        (
            "one-way composition identity",
            Box::new(composition_identity),
        ),
        (
            "real layers, complex composition",
            Box::new(real_layers_complex_composition),
        ),
        ("delayed consensus", Box::new(delayed_consensus)),
        ("step-size robustness", Box::new(step_halving)),
        ("CLI round trips", Box::new(cli_round_trips)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} [{secs:.2} s]: {detail}",
                k + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2} s]: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
