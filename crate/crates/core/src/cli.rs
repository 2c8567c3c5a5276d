//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory writers.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{render_bench, run_bench, BenchOptions};
use crate::corpus;
use crate::error::Error;
use crate::net::{
    build_transition_map, parse_input_distribution, parse_network_spec, parse_transition_table,
    TransitionMap,
};
use crate::phi::EiMode;
use crate::report::{build_report, fmt3, render, Format, InputDistribution, ReportOptions};
use crate::repro::{check_figure, network_measures, FIGURE_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNREACHABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "irrlab",
    version,
    about = "Integrated information (phi) and irreducibility (psi) of small threshold networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute every measure for one network.
    Compute(ComputeArgs),
    /// Recompute a reference table and compare it with the printed values.
    Repro {
        /// fig1, fig2, fig3, fig4, fig6 or all
        figure: String,
    },
    /// Time the averaged phi and psi searches as the node count grows.
    Bench(BenchArgs),
    /// Sweep every two-node threshold network.
    Doublets,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true))]
struct ComputeArgs {
    /// Network in the threshold DSL.
    #[arg(long, group = "source", value_name = "FILE")]
    network: Option<PathBuf>,
    /// Transition table, one `bits -> bits` row per input.
    #[arg(long, group = "source", value_name = "FILE")]
    table: Option<PathBuf>,
    /// A built-in network such as OR-GET, SHIFT or 4321.
    #[arg(long, group = "source", value_name = "NAME")]
    builtin: Option<String>,
    /// Number of update steps composed into one mechanism.
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// standard or perturbed
    #[arg(long, default_value = "standard")]
    mode: String,
    /// uniform, empirical:FILE or capacity
    #[arg(long = "x-dist", default_value = "uniform")]
    x_dist: String,
    /// md, csv or json
    #[arg(long, default_value = "md")]
    format: String,
    /// Report a single output state, e.g. 10.
    #[arg(long, value_name = "BITS")]
    state: Option<String>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 4)]
    min_nodes: usize,
    #[arg(long, default_value_t = 12)]
    max_nodes: usize,
    /// Largest n for which the phi search is timed.
    #[arg(long, default_value_t = 12)]
    phi_max_nodes: usize,
    /// Largest n for which the psi search is timed.
    #[arg(long, default_value_t = 14)]
    psi_max_nodes: usize,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnreachableState { .. } => EXIT_UNREACHABLE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn with_file(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn load_network(args: &ComputeArgs) -> Result<(String, TransitionMap), Failure> {
    if let Some(path) = &args.network {
        let spec = parse_network_spec(&read(path)?).map_err(|e| with_file(path, e))?;
        let map = build_transition_map(&spec).map_err(|e| with_file(path, e))?;
        return Ok((file_label(path), map));
    }
    if let Some(path) = &args.table {
        let map = parse_transition_table(&read(path)?).map_err(|e| with_file(path, e))?;
        return Ok((file_label(path), map));
    }
    let name = args.builtin.as_deref().unwrap_or_default();
    match corpus::lookup(name) {
        Some(n) => Ok((n.name, n.map)),
        None => Err(Error::InvalidArgument(format!("unknown built-in network {name:?}")).into()),
    }
}

fn file_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mode: EiMode = args.mode.parse()?;
    let format: Format = args.format.parse()?;
    let (name, map) = load_network(args)?;
    let input = match args.x_dist.as_str() {
        "uniform" => InputDistribution::Uniform,
        "capacity" => {
            return Err(Error::NotImplemented("the capacity input distribution".into()).into());
        }
        other => match other.strip_prefix("empirical:") {
            Some(file) => {
                let path = Path::new(file);
                let dist = parse_input_distribution(&read(path)?, map.space())
                    .map_err(|e| with_file(path, e))?;
                InputDistribution::Empirical {
                    label: file.to_string(),
                    dist,
                }
            }
            None => {
                return Err(Error::InvalidArgument(format!(
                    "--x-dist must be uniform, empirical:FILE or capacity, got {other:?}"
                ))
                .into())
            }
        },
    };
    let state = args
        .state
        .as_deref()
        .map(|s| map.space().parse_state(s))
        .transpose()?;
    let opts = ReportOptions {
        mode,
        t: args.t,
        input,
        state,
    };
    let report = build_report(&name, &map, &opts)?;
    emit(out, &render(&report, format))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("write failed: {e}"),
    })
}

fn repro(figure: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let ids: Vec<&str> = if figure == "all" {
        FIGURE_IDS.to_vec()
    } else {
        vec![figure]
    };
    let mut all_pass = true;
    let mut text = String::new();
    for id in ids {
        let check = check_figure(id)?;
        all_pass &= check.passed();
        text.push_str(&check.render());
        for (table, row, column, cell) in check.mismatches() {
            let _ = writeln!(
                text,
                "  mismatch {table} / {row} / {column}: computed {} expected {}",
                cell.shown(),
                cell.expected
            );
        }
        text.push('\n');
    }
    emit(out, &text)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_MISMATCH })
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = BenchOptions {
        min_nodes: args.min_nodes,
        max_nodes: args.max_nodes,
        phi_max_nodes: args.phi_max_nodes,
        psi_max_nodes: args.psi_max_nodes,
        repeats: args.repeats,
        seed: args.seed,
    };
    let rows = run_bench(&opts)?;
    emit(out, &render_bench(&rows))
}

/// The doublet sweep as a markdown table.
pub fn doublet_table() -> crate::error::Result<String> {
    let mut text = String::from(
        "| Network | I(X;Y) | <phi> | <psi>_min | <psi>_max |\n|---|---|---|---|---|\n",
    );
    for net in corpus::threshold_doublets() {
        let m = network_measures(&net.map)?;
        let _ = writeln!(
            text,
            "| {} | {} | {} | {} | {} |",
            net.name,
            fmt3(m.mutual_information),
            fmt3(m.bracket_phi),
            fmt3(m.bracket_psi_min),
            fmt3(m.bracket_psi_max)
        );
    }
    Ok(text)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => compute(args, out).map(|()| EXIT_OK),
        Command::Repro { figure } => repro(figure, out),
        Command::Bench(args) => bench(args, out).map(|()| EXIT_OK),
        Command::Doublets => doublet_table()
            .map_err(Failure::from)
            .and_then(|t| emit(out, &t))
            .map(|()| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
