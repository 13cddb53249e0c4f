//! `dgspec`: Laplacian spectra, realness classification, layered graph
//! construction, composition and delayed consensus from the command line.
//!
//! Reports are JSON on stdout; diagnostics go to stderr. Exit codes: 0 on
//! success, 2 for unreadable or malformed input, 3 for invalid graphs or
//! parameters, 4 for numerical failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digraph_spectra::consensus::SimConfig;
use digraph_spectra::io::{parse_cross_edges, parse_graph, parse_vector, to_json, to_text};
use digraph_spectra::multilayer::{build_cycle, build_dcid, build_udcec, compose};
use digraph_spectra::spectra::DEFAULT_TOLERANCE;
use digraph_spectra::{classify, delay_margin, fixtures, simulate, Digraph, Error, SpectralReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "dgspec",
    version,
    about = "Real and complex Laplacian spectra of weighted digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the Laplacian, sorted by real then imaginary part.
    Spectrum {
        graph: PathBuf,
        /// Relative tolerance on imaginary parts for the realness flag.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Structural verdict: guaranteed real, guaranteed complex or undetermined.
    Classify {
        graph: PathBuf,
        /// Attach the numerical spectrum.
        #[arg(long)]
        numeric: bool,
    },
    /// Build a directed cycle, cycle-embedded complete graph or layer ring.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        /// Write the graph here and print a report; otherwise print the graph.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Join two graphs with cross edges and compare the spectra.
    Compose {
        g1: PathBuf,
        g2: PathBuf,
        /// Cross edges in `[e12]` / `[e21]` sections, or JSON.
        cross: PathBuf,
        /// Write the composed graph here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Integrate delayed consensus x'(t) = -L x(t - tau).
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Unweighted directed cycle on `n` nodes.
    Cycle {
        #[arg(short)]
        n: usize,
    },
    /// Complete graph on `n` nodes with a one-way cycle over nodes `1..=m`.
    Udcec {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
    },
    /// Ring of `m` copies of a base graph.
    Dcid {
        #[arg(short)]
        m: usize,
        /// Graph file, or one of `two_node_complete`, `single_node`.
        #[arg(long)]
        base: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    graph: PathBuf,
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    tmax: f64,
    /// Integration step; defaults to min(1e-3, tau / 10).
    #[arg(long)]
    step: Option<f64>,
    /// File with one initial state per node.
    #[arg(long, conflicts_with = "seed")]
    x0: Option<PathBuf>,
    /// Seed for a uniform random initial state in [-1, 1].
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    bound: Option<f64>,
    /// Write the sampled trajectory as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record every k-th step in the trajectory.
    #[arg(long)]
    stride: Option<usize>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    line: Option<usize>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind, line) = match &e {
            Error::Parse { line, .. } => (2, "parse", Some(*line)),
            e if e.is_numerical() => (4, "numerical", None),
            _ => (3, "validation", None),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            line,
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        kind: "io",
        message: format!("{}: {e}", path.display()),
        line: None,
    }
}

type CmdResult<T> = Result<T, Failure>;

#[derive(Serialize)]
struct Report {
    command: &'static str,
    input: InputDigest,
    payload: Value,
    version: &'static str,
}

#[derive(Serialize)]
struct InputDigest {
    n: usize,
    edges: usize,
}

impl Report {
    fn new(command: &'static str, g: &Digraph, payload: Value) -> Self {
        Report {
            command,
            input: InputDigest {
                n: g.n(),
                edges: g.edge_count(),
            },
            payload,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, contents: &str) -> CmdResult<()> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

/// Prefixes the file name to parse errors so the line number is locatable.
fn load_graph(path: &Path) -> CmdResult<Digraph> {
    parse_graph(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn render(g: &Digraph, format: Format) -> String {
    match format {
        Format::Text => to_text(g),
        Format::Json => to_json(g) + "\n",
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn check_tol(tol: f64) -> CmdResult<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")).into())
    }
}

fn cmd_spectrum(graph: &Path, tol: f64) -> CmdResult<Report> {
    check_tol(tol)?;
    let g = load_graph(graph)?;
    let report = SpectralReport::of_graph(&g, tol)?;
    Ok(Report::new("spectrum", &g, to_value(&report)))
}

fn cmd_classify(graph: &Path, numeric: bool) -> CmdResult<Report> {
    let g = load_graph(graph)?;
    Ok(Report::new(
        "classify",
        &g,
        to_value(&classify(&g, numeric)?),
    ))
}

fn named_base(name: &str) -> CmdResult<Digraph> {
    match name {
        "two_node_complete" => Ok(fixtures::two_node_complete()),
        "single_node" => Ok(Digraph::empty(1)?),
        path => load_graph(Path::new(path)),
    }
}

/// Returns the text to print: the graph itself, or a report when `out` is set.
fn cmd_generate(kind: &GenerateKind, out: Option<&Path>, format: Format) -> CmdResult<String> {
    let (g, params) = match kind {
        GenerateKind::Cycle { n } => (build_cycle(*n)?, json!({ "kind": "cycle", "n": n })),
        GenerateKind::Udcec { n, m } => (
            build_udcec(*n, *m)?,
            json!({ "kind": "udcec", "n": n, "m": m }),
        ),
        GenerateKind::Dcid { m, base } => {
            let b = named_base(base)?;
            let params = json!({ "kind": "dcid", "m": m, "base_nodes": b.n() });
            (build_dcid(&b, *m)?.graph, params)
        }
    };
    let rendered = render(&g, format);
    match out {
        None => Ok(rendered),
        Some(path) => {
            write(path, &rendered)?;
            let mut payload = params;
            payload["path"] = json!(path.display().to_string());
            Ok(json_line(&Report::new("generate", &g, payload)))
        }
    }
}

fn cmd_compose(
    g1: &Path,
    g2: &Path,
    cross: &Path,
    out: Option<&Path>,
    format: Format,
    tol: f64,
) -> CmdResult<Report> {
    check_tol(tol)?;
    let (a, b) = (load_graph(g1)?, load_graph(g2)?);
    let (e12, e21) = parse_cross_edges(&read(cross)?)?;
    let comp = compose(&a, &b, &e12, &e21)?;
    let spectra = json!({
        "g1": SpectralReport::of_graph(&comp.g1, tol)?,
        "g2": SpectralReport::of_graph(&comp.g2, tol)?,
        "augmented_g1": SpectralReport::of_graph(&comp.augmented_g1(), tol)?,
        "result": SpectralReport::of_graph(&comp.result, tol)?,
    });
    if let Some(path) = out {
        write(path, &render(&comp.result, format))?;
    }
    let payload = json!({
        "one_way": comp.is_one_way(),
        "preserves_real_spectrum": comp.preserves_real_spectrum()?,
        "inherits_complex_spectrum": comp.inherits_complex_spectrum()?,
        "cross_edges": { "e12": e12.len(), "e21": e21.len() },
        "spectra": spectra,
        "path": out.map(|p| p.display().to_string()),
    });
    Ok(Report::new("compose", &comp.result, payload))
}

fn random_state(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

fn cmd_simulate(args: &SimulateArgs) -> CmdResult<Report> {
    let g = load_graph(&args.graph)?;
    let x0 = match &args.x0 {
        Some(path) => parse_vector(&read(path)?)?,
        None => random_state(g.n(), args.seed.unwrap_or(0)),
    };
    let mut cfg = SimConfig::new(args.tau, args.tmax, x0);
    if let Some(step) = args.step {
        cfg = cfg.with_step(step);
    }
    if let Some(t) = args.threshold {
        cfg.threshold = t;
    }
    if let Some(b) = args.bound {
        cfg.divergence_bound = b;
    }
    if let Some(s) = args.stride {
        cfg.sample_stride = s;
    }
    let run = simulate(&g, &cfg)?;
    if let Some(path) = &args.out {
        write(path, &run.to_csv())?;
    }
    let margin = delay_margin(&digraph_spectra::spectrum(&g)?);
    let payload = json!({
        "summary": run.summary(),
        "delay_margin": if margin.is_finite() { json!(margin) } else { json!("infinite") },
        "x0": cfg.x0,
        "threshold": cfg.threshold,
        "divergence_bound": cfg.divergence_bound,
        "t_max": cfg.t_max,
        "csv": args.out.as_ref().map(|p| p.display().to_string()),
    });
    Ok(Report::new("simulate", &g, payload))
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn run(cli: &Cli) -> CmdResult<String> {
    match &cli.command {
        Command::Spectrum { graph, tol } => cmd_spectrum(graph, *tol).map(|r| json_line(&r)),
        Command::Classify { graph, numeric } => {
            cmd_classify(graph, *numeric).map(|r| json_line(&r))
        }
        Command::Generate { kind, out, format } => cmd_generate(kind, out.as_deref(), *format),
        Command::Compose {
            g1,
            g2,
            cross,
            out,
            format,
            tol,
        } => cmd_compose(g1, g2, cross, out.as_deref(), *format, *tol).map(|r| json_line(&r)),
        Command::Simulate(args) => cmd_simulate(args).map(|r| json_line(&r)),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum { .. } => "spectrum",
        Command::Classify { .. } => "classify",
        Command::Generate { .. } => "generate",
        Command::Compose { .. } => "compose",
        Command::Simulate(_) => "simulate",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("dgspec: {}", f.message);
            let err = json!({
                "command": command_name(&cli.command),
                "error": { "kind": f.kind, "message": f.message, "line": f.line },
            });
            print!("{}", json_line(&err));
            ExitCode::from(f.code)
        }
    }
}
