use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use coherence_core::exact::{self, rational_string, ExactMethod};
use coherence_core::format::sig;
use coherence_core::generators::{self, vertex_count, Family};
use coherence_core::ingest::{self, network_stats, StatsConfig, STATS_CSV_HEADER};
use coherence_core::scaling::{self, ScalingPoint, SCALING_CSV_HEADER};
use coherence_core::simulate::{self, SimConfig};
use coherence_core::spectral::{self, coherence_estimate, CoherenceReport, EstimateConfig};
use coherence_core::{Graph, Order};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser, Debug)]
#[command(
    name = "coherence",
    version,
    about = "First- and second-order network coherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a PSFW or Sierpinski gasket edge list
    Generate(GenerateArgs),
    /// Coherence of a graph from its spectrum or a stochastic estimate
    Coherence(CoherenceArgs),
    /// Exact rational coherence of a fractal family
    Exact(ExactArgs),
    /// Estimate coherence by simulating the noisy consensus dynamics
    Simulate(SimulateArgs),
    /// Summary statistics of edge-list files
    Stats(StatsArgs),
    /// Coherence against size with fitted log-log slopes
    Scaling(ScalingArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Psfw,
    Sierpinski,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Psfw => Family::Psfw,
            FamilyArg::Sierpinski => Family::Sierpinski,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dense,
    Estimate,
    Recursion,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    #[value(name = "1")]
    First,
    #[value(name = "2")]
    Second,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::First => Order::First,
            OrderArg::Second => Order::Second,
        }
    }
}

/// A graph read from `--input` or generated from `--family` and `--n`.
#[derive(Args, Debug)]
struct GraphSource {
    #[arg(long, conflicts_with_all = ["family", "n"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "n")]
    family: Option<FamilyArg>,
    #[arg(long, requires = "family")]
    n: Option<u32>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoherenceArgs {
    #[command(flatten)]
    source: GraphSource,
    /// dense or estimate; defaults to dense up to 5000 vertices
    #[arg(long)]
    method: Option<MethodArg>,
    #[arg(long, default_value_t = 200)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    family: FamilyArg,
    #[arg(long, conflicts_with_all = ["n_from", "n_to"])]
    n: Option<u32>,
    #[arg(long, requires = "n_to")]
    n_from: Option<u32>,
    #[arg(long, requires = "n_from")]
    n_to: Option<u32>,
    /// recursion or closed; defaults to recursion for psfw
    #[arg(long)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_enum, default_value_t = OrderArg::First)]
    order: OrderArg,
    /// Defaults to the smaller of 1e-3 and the stability bound
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long, default_value_t = 200.0)]
    t_total: f64,
    #[arg(long, default_value_t = 0.5)]
    burn_in: f64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Edge-list files; may also be given positionally
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    #[arg(value_name = "FILE")]
    files: Vec<PathBuf>,
    #[arg(long, default_value_t = 200)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScalingArgs {
    /// Fractal families evaluated with the exact engine
    #[arg(long)]
    family: Vec<FamilyArg>,
    #[arg(long, default_value_t = 1)]
    n_from: u32,
    #[arg(long, default_value_t = 12)]
    n_to: u32,
    /// recursion or closed for the families
    #[arg(long)]
    method: Option<MethodArg>,
    /// Edge-list files measured as one series
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 200)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    eprintln!(
        "# coherence {} {}",
        env!("CARGO_PKG_VERSION"),
        args.join(" ")
    );
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(value) = std::env::var("COHERENCE_THREADS") {
        let threads: usize = value
            .parse()
            .map_err(|_| format!("COHERENCE_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Coherence(a) => cmd_coherence(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Scaling(a) => cmd_scaling(a),
    }
}

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> CliResult<()> {
    let mut out = open_output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let parsed =
        ingest::read_edge_list_file(path).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in parsed.warnings() {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

fn load(source: &GraphSource) -> CliResult<Graph> {
    match (&source.input, source.family, source.n) {
        (Some(path), _, _) => read_graph(path),
        (None, Some(family), Some(n)) => Ok(generators::generate(family.into(), n)?.graph),
        _ => Err("specify --input PATH or --family with --n".into()),
    }
}

fn cmd_generate(a: GenerateArgs) -> CliResult<()> {
    let family: Family = a.family.into();
    let g = generators::generate(family, a.n)?;
    let header = vec![format!(
        "family={family} n={} N={} M={}",
        a.n,
        g.graph.n_vertices(),
        g.graph.n_edges()
    )];
    ingest::write_edge_list(&g.graph, &header, open_output(a.output.as_deref())?)?;
    Ok(())
}

fn coherence_report(
    g: &Graph,
    method: Option<MethodArg>,
    probes: usize,
    seed: u64,
) -> CliResult<CoherenceReport> {
    let estimate = || {
        coherence_estimate(
            g,
            &EstimateConfig {
                probes,
                seed,
                ..Default::default()
            },
        )
    };
    Ok(match method {
        Some(MethodArg::Dense) => spectral::dense_coherence(g)?,
        Some(MethodArg::Estimate) => estimate()?,
        None if g.n_vertices() <= spectral::DEFAULT_DENSE_THRESHOLD => {
            spectral::dense_coherence(g)?
        }
        None => estimate()?,
        Some(other) => {
            return Err(format!(
                "method {other:?} is not available for coherence; use dense or estimate"
            )
            .into())
        }
    })
}

fn cmd_coherence(a: CoherenceArgs) -> CliResult<()> {
    let g = load(&a.source)?;
    let report = coherence_report(&g, a.method, a.probes, a.seed)?;
    match a.format {
        FormatArg::Json => write_json(&report, a.output.as_deref()),
        FormatArg::Csv => {
            let mut out = open_output(a.output.as_deref())?;
            writeln!(out, "n_vertices,n_edges,h_fo,h_so,kirchhoff,biharmonic,method,h_fo_std_error,h_so_std_error")?;
            let (se_fo, se_so) = report
                .uncertainty
                .map(|u| (sig(u.h_fo_std_error), sig(u.h_so_std_error)))
                .unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{se_fo},{se_so}",
                report.n_vertices,
                report.n_edges,
                sig(report.h_fo),
                sig(report.h_so),
                sig(report.kirchhoff),
                sig(report.biharmonic),
                report.method
            )?;
            out.flush()?;
            Ok(())
        }
    }
}

fn exact_method(method: Option<MethodArg>) -> CliResult<Option<ExactMethod>> {
    match method {
        None => Ok(None),
        Some(MethodArg::Recursion) => Ok(Some(ExactMethod::Recursion)),
        Some(MethodArg::Closed) => Ok(Some(ExactMethod::Closed)),
        Some(other) => {
            Err(format!("method {other:?} is not an exact method; use recursion or closed").into())
        }
    }
}

fn cmd_exact(a: ExactArgs) -> CliResult<()> {
    let family: Family = a.family.into();
    let (from, to) = match (a.n, a.n_from, a.n_to) {
        (Some(n), _, _) => (n, n),
        (None, Some(from), Some(to)) if from <= to => (from, to),
        (None, Some(from), Some(to)) => {
            return Err(format!("empty range --n-from {from} --n-to {to}").into())
        }
        _ => return Err("specify --n or --n-from with --n-to".into()),
    };
    let method = exact_method(a.method)?.unwrap_or_else(|| exact::default_method(family));
    let rows = (from..=to)
        .map(|n| exact::family_exact(family, n, method))
        .collect::<Result<Vec<_>, _>>()?;
    match a.format {
        FormatArg::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|e| {
                    json!({
                        "n": e.generation,
                        "N": vertex_count(e.generation),
                        "h_fo_exact": e.h_fo_f64(),
                        "h_so_exact": e.h_so_f64(),
                        "h_fo_rational": rational_string(&e.h_fo),
                        "h_so_rational": rational_string(&e.h_so),
                    })
                })
                .collect();
            write_json(&value, a.output.as_deref())
        }
        FormatArg::Csv => {
            let mut out = open_output(a.output.as_deref())?;
            writeln!(out, "n,N,h_fo_exact,h_so_exact,h_fo_rational,h_so_rational")?;
            for e in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    e.generation,
                    vertex_count(e.generation),
                    sig(e.h_fo_f64()),
                    sig(e.h_so_f64()),
                    rational_string(&e.h_fo),
                    rational_string(&e.h_so)
                )?;
            }
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_simulate(a: SimulateArgs) -> CliResult<()> {
    let g = load(&a.source)?;
    let order: Order = a.order.into();
    let dt = a.dt.unwrap_or_else(|| 1e-3f64.min(simulate::stable_dt(&g)));
    let cfg = SimConfig {
        dt,
        t_total: a.t_total,
        burn_in: a.burn_in,
        trials: a.trials,
        seed: a.seed,
    };
    let reference = if g.is_connected() && g.n_vertices() <= spectral::DEFAULT_DENSE_THRESHOLD {
        let spectrum = spectral::spectrum(&g, false)?;
        if let Some(&lambda_2) = spectrum.eigenvalues.get(1) {
            if a.t_total * lambda_2 < 10.0 {
                eprintln!(
                    "warning: t_total * lambda_2 = {} < 10; the slowest mode may not have relaxed",
                    sig(a.t_total * lambda_2)
                );
            }
        }
        let report = spectral::coherence_from_spectrum(&spectrum)?;
        Some(match order {
            Order::First => report.h_fo,
            Order::Second => report.h_so,
        })
    } else {
        None
    };
    let estimate = simulate::simulate(&g, order, &cfg)?;
    let value = json!({
        "order": order,
        "config": cfg,
        "estimate": estimate,
        "reference": reference,
    });
    write_json(&value, a.output.as_deref())
}

fn file_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn measure(paths: &[PathBuf], probes: usize, seed: u64) -> CliResult<Vec<ingest::NetworkStats>> {
    let config = StatsConfig {
        estimate: EstimateConfig {
            probes,
            seed,
            ..Default::default()
        },
        path_seed: seed,
        ..StatsConfig::default()
    };
    paths
        .iter()
        .map(|p| {
            let g = read_graph(p)?;
            Ok(network_stats(&g, &file_label(p), &config)
                .map_err(|e| format!("{}: {e}", p.display()))?)
        })
        .collect()
}

fn cmd_stats(a: StatsArgs) -> CliResult<()> {
    let paths: Vec<PathBuf> = a.inputs.into_iter().chain(a.files).collect();
    if paths.is_empty() {
        return Err("no input files".into());
    }
    let stats = measure(&paths, a.probes, a.seed)?;
    match a.format {
        FormatArg::Json => write_json(&stats, a.output.as_deref()),
        FormatArg::Csv => {
            let mut out = open_output(a.output.as_deref())?;
            writeln!(out, "{STATS_CSV_HEADER}")?;
            for s in &stats {
                writeln!(out, "{}", s.csv_row())?;
            }
            out.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SeriesFit {
    label: String,
    points: usize,
    h_fo_slope: f64,
    h_so_slope: f64,
}

fn cmd_scaling(a: ScalingArgs) -> CliResult<()> {
    if a.family.is_empty() && a.inputs.is_empty() {
        return Err("specify at least one --family or --input".into());
    }
    let method = exact_method(a.method)?;
    let mut series: Vec<(String, Vec<ScalingPoint>)> = Vec::new();
    for f in &a.family {
        let family: Family = (*f).into();
        series.push((
            family.to_string(),
            scaling::family_series(family, a.n_from, a.n_to, method)?,
        ));
    }
    if !a.inputs.is_empty() {
        let stats = measure(&a.inputs, a.probes, a.seed)?;
        series.push(("networks".to_string(), scaling::network_series(&stats)));
    }
    let fits = series
        .iter()
        .map(|(label, points)| {
            let fit = scaling::fit_series(points).map_err(|e| format!("{label}: {e}"))?;
            Ok(SeriesFit {
                label: label.clone(),
                points: fit.points,
                h_fo_slope: fit.h_fo_slope,
                h_so_slope: fit.h_so_slope,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    match a.format {
        FormatArg::Json => {
            let points: Vec<&ScalingPoint> = series.iter().flat_map(|(_, p)| p).collect();
            write_json(
                &json!({ "points": points, "fits": fits }),
                a.output.as_deref(),
            )
        }
        FormatArg::Csv => {
            let mut out = open_output(a.output.as_deref())?;
            writeln!(out, "{SCALING_CSV_HEADER}")?;
            for (_, points) in &series {
                for p in points {
                    writeln!(out, "{}", p.csv_row())?;
                }
            }
            for f in &fits {
                writeln!(
                    out,
                    "# slope {} points={} h_fo={} h_so={}",
                    f.label,
                    f.points,
                    sig(f.h_fo_slope),
                    sig(f.h_so_slope)
                )?;
            }
            out.flush()?;
            Ok(())
        }
    }
}
