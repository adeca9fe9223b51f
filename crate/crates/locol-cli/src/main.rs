//! Command-line harness: graph generation and ingestion, coloring runs,
//! verification, growth profiling, and benchmark sweeps.
//!
//! Exit codes: 0 success, 1 usage or i/o error, 2 escalation cap exceeded,
//! 3 verification failure.

mod experiment;

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use locol::{
    assign_ids, gps_vertex_coloring, growth_profile, parallel_vizing_edge_coloring,
    pr_baseline_edge_coloring, read_graph, verify_edge_coloring, verify_vertex_coloring,
    write_graph, AccountingMode, AlgorithmConfig, Graph, IdScheme, PartialEdgeColoring, RunError,
};

use experiment::{run_experiment, ExperimentSpec};

pub(crate) const EXIT_ESCALATION: u8 = 2;
pub(crate) const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "locol", about = "Distributed (Δ+1)-edge-coloring harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file from a named family.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a coloring algorithm and emit a JSON report.
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Algorithm::Main)]
        algorithm: Algorithm,
        #[command(flatten)]
        run: RunArgs,
        /// Report path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring report against a graph.
    Verify {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        /// JSON report produced by `color` (or a bare edge->color map).
        #[arg(long)]
        report: PathBuf,
        /// Palette size; defaults to the report's palette_size field.
        #[arg(long)]
        palette: Option<usize>,
        /// Require every edge to be colored.
        #[arg(long)]
        require_total: bool,
    },
    /// Print the ball-growth profile of a graph as JSON.
    Growth {
        #[command(flatten)]
        input: InputArgs,
        /// Largest radius to profile.
        #[arg(long, default_value_t = 10)]
        radius_max: usize,
    },
    /// Sweep a family over sizes and emit CSV measurements.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated vertex-count targets, increasing.
        #[arg(long, default_value = "100,1000,10000,100000", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Algorithm::Main)]
        algorithm: Algorithm,
        #[command(flatten)]
        run: RunArgs,
        /// CSV path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Family {
    Path,
    Cycle,
    Grid,
    Torus,
    Matching,
}

impl Family {
    pub(crate) fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Grid => "grid",
            Family::Torus => "torus",
            Family::Matching => "matching",
        }
    }

    /// Builds the family member closest to `n` vertices (square grids/tori).
    pub(crate) fn build(self, n: usize) -> Result<Graph, String> {
        let result = match self {
            Family::Path => Graph::path(n),
            Family::Cycle => Graph::cycle(n),
            Family::Grid => {
                let side = (n as f64).sqrt().round().max(2.0) as usize;
                Graph::grid(side, side)
            }
            Family::Torus => {
                let side = ((n as f64).sqrt().round() as usize).max(3);
                Graph::torus(side, side)
            }
            Family::Matching => {
                let pairs = (n / 2).max(1);
                let edges: Vec<(usize, usize)> =
                    (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
                return Graph::from_edges(2 * pairs, &edges).map_err(|e| e.to_string());
            }
        };
        result.map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Algorithm {
    Main,
    Baseline,
    Gps,
}

impl Algorithm {
    pub(crate) fn name(self) -> &'static str {
        match self {
            Algorithm::Main => "main",
            Algorithm::Baseline => "baseline",
            Algorithm::Gps => "gps",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdSchemeArg {
    Sequential,
    Permuted,
    Adversarial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AccountingArg {
    Optimistic,
    Faithful,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count for path/cycle/matching.
    #[arg(long)]
    n: Option<usize>,
    /// Rows for grid/torus.
    #[arg(long)]
    rows: Option<usize>,
    /// Columns for grid/torus.
    #[arg(long)]
    cols: Option<usize>,
}

impl FamilyArgs {
    fn build(&self) -> Result<Graph, String> {
        match self.family {
            Family::Path | Family::Cycle | Family::Matching => {
                let n = self.n.ok_or("this family needs --n")?;
                self.family.build(n)
            }
            Family::Grid | Family::Torus => {
                let rows = self.rows.ok_or("this family needs --rows and --cols")?;
                let cols = self.cols.ok_or("this family needs --rows and --cols")?;
                let result = if self.family == Family::Grid {
                    Graph::grid(rows, cols)
                } else {
                    Graph::torus(rows, cols)
                };
                result.map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Graph file in the `p edge` format (overrides family flags).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<Graph, String> {
        if let Some(path) = &self.input {
            let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
            return read_graph(BufReader::new(file)).map_err(|e| e.to_string());
        }
        let family = self.family.ok_or("provide --input or --family")?;
        FamilyArgs {
            family,
            n: self.n,
            rows: self.rows,
            cols: self.cols,
        }
        .build()
    }
}

#[derive(Args)]
pub(crate) struct RunArgs {
    /// Initial confinement radius for the main algorithm.
    #[arg(long, default_value_t = 3)]
    radius: usize,
    #[arg(long, value_enum, default_value_t = IdSchemeArg::Sequential)]
    id_scheme: IdSchemeArg,
    /// Seed for the permuted ID scheme.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = AccountingArg::Optimistic)]
    accounting: AccountingArg,
    #[arg(long, default_value_t = 16)]
    max_escalations: usize,
}

impl RunArgs {
    pub(crate) fn id_scheme(&self) -> IdScheme {
        match self.id_scheme {
            IdSchemeArg::Sequential => IdScheme::Sequential,
            IdSchemeArg::Permuted => IdScheme::Permuted { seed: self.seed },
            IdSchemeArg::Adversarial => IdScheme::AdversarialPattern,
        }
    }

    pub(crate) fn config(&self) -> AlgorithmConfig {
        AlgorithmConfig {
            radius: self.radius,
            escalation_factor: 2,
            max_escalations: self.max_escalations,
            accounting: match self.accounting {
                AccountingArg::Optimistic => AccountingMode::Optimistic,
                AccountingArg::Faithful => AccountingMode::Faithful,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate { family, output } => {
            let g = family.build()?;
            with_output(output.as_deref(), |w| write_graph(&g, w))
                .map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color {
            input,
            algorithm,
            run,
            output,
        } => {
            let g = input.load()?;
            let ids = assign_ids(&g, run.id_scheme());
            let json = match algorithm {
                Algorithm::Main => {
                    let report = match parallel_vizing_edge_coloring(&g, &ids, &run.config()) {
                        Ok(report) => report,
                        Err(RunError::EscalationCapExceeded { uncolored, radius }) => {
                            eprintln!(
                                "escalation cap exceeded: {uncolored} edges uncolored at radius {radius}"
                            );
                            return Ok(ExitCode::from(EXIT_ESCALATION));
                        }
                        Err(RunError::VerificationFailed(count)) => {
                            eprintln!("output verification failed with {count} violations");
                            return Ok(ExitCode::from(EXIT_VERIFICATION));
                        }
                        Err(other) => return Err(other.to_string()),
                    };
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                }
                Algorithm::Baseline => {
                    let (coloring, transcript) = pr_baseline_edge_coloring(&g, &ids);
                    let violations =
                        verify_edge_coloring(&g, &coloring, coloring.palette_size(), true);
                    if !violations.is_empty() {
                        eprintln!("baseline verification failed: {violations:?}");
                        return Ok(ExitCode::from(EXIT_VERIFICATION));
                    }
                    serde_json::to_string_pretty(&serde_json::json!({
                        "palette_size": coloring.palette_size(),
                        "colors_used": coloring.colors_used(),
                        "total_rounds": transcript.total_rounds(),
                        "transcript": transcript,
                        "coloring": coloring,
                    }))
                    .map_err(|e| e.to_string())?
                }
                Algorithm::Gps => {
                    let (vc, transcript) = gps_vertex_coloring(&g, &ids);
                    let violations = verify_vertex_coloring(&g, &vc);
                    if !violations.is_empty() {
                        eprintln!("vertex coloring verification failed: {violations:?}");
                        return Ok(ExitCode::from(EXIT_VERIFICATION));
                    }
                    serde_json::to_string_pretty(&serde_json::json!({
                        "palette_size": vc.palette_size,
                        "colors": vc.colors,
                        "total_rounds": transcript.total_rounds(),
                        "transcript": transcript,
                    }))
                    .map_err(|e| e.to_string())?
                }
            };
            with_output(output.as_deref(), |w| writeln!(w, "{json}"))
                .map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            report,
            palette,
            require_total,
        } => {
            let file = File::open(&graph).map_err(|e| format!("{}: {e}", graph.display()))?;
            let g = read_graph(BufReader::new(file)).map_err(|e| e.to_string())?;
            let (coloring, palette) = load_coloring(&report, g.edge_count(), palette)?;
            let violations = verify_edge_coloring(&g, &coloring, palette, require_total);
            if violations.is_empty() {
                println!("ok: {} edges, palette {palette}", g.edge_count());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("violation: {v:?}");
                }
                Ok(ExitCode::from(EXIT_VERIFICATION))
            }
        }
        Command::Growth { input, radius_max } => {
            let g = input.load()?;
            let profile = growth_profile(&g, radius_max);
            println!(
                "{}",
                serde_json::to_string_pretty(&profile).map_err(|e| e.to_string())?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            family,
            sizes,
            algorithm,
            run,
            output,
        } => {
            if sizes.windows(2).any(|w| w[0] >= w[1]) {
                return Err("--sizes must be strictly increasing".into());
            }
            let spec = ExperimentSpec {
                family,
                sizes,
                algorithm,
                run,
            };
            let csv = run_experiment(&spec)?;
            with_output(output.as_deref(), |w| w.write_all(csv.as_bytes()))
                .map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Reads either a full `color` report (with `coloring` and `palette_size`
/// fields) or a bare edge->color JSON map (then `--palette` is required).
fn load_coloring(
    path: &PathBuf,
    edge_count: usize,
    palette_flag: Option<usize>,
) -> Result<(PartialEdgeColoring, usize), String> {
    let mut text = String::new();
    File::open(path)
        .map_err(|e| format!("{}: {e}", path.display()))?
        .read_to_string(&mut text)
        .map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let (map, palette) = match (value.get("coloring"), value.get("palette_size")) {
        (Some(map), Some(palette)) => {
            let declared = palette
                .as_u64()
                .ok_or("palette_size must be an integer")? as usize;
            (map, palette_flag.unwrap_or(declared))
        }
        _ => (
            &value,
            palette_flag.ok_or("bare coloring map needs --palette")?,
        ),
    };
    let map = map.as_object().ok_or("coloring must be a JSON object")?;
    let mut entries = Vec::with_capacity(map.len());
    for (key, val) in map {
        let e: usize = key.parse().map_err(|_| format!("bad edge index '{key}'"))?;
        if e >= edge_count {
            return Err(format!("edge index {e} out of range for {edge_count} edges"));
        }
        let c = val.as_u64().ok_or("colors must be integers")? as usize;
        entries.push((e, c));
    }
    // Size the backing palette to fit every entry so out-of-palette colors
    // surface as verifier violations instead of rejections here.
    let backing = entries
        .iter()
        .map(|&(_, c)| c + 1)
        .max()
        .unwrap_or(1)
        .max(palette);
    let mut coloring = PartialEdgeColoring::empty(edge_count, backing);
    for (e, c) in entries {
        coloring.set(e, c);
    }
    Ok((coloring, palette))
}

fn with_output<F>(path: Option<&std::path::Path>, write: F) -> std::io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    }
}
