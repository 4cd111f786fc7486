use std::path::PathBuf;
use std::process::ExitCode;

use burnside_cli::survey::{parse_catalog, parse_ops, SURVEY_OPS};
use burnside_cli::{commands, CliError, CliResult, Format, Output, Selector};
use burnside_core::{BisetOp, DEFAULT_ORDER_CAP};
use clap::{Parser, Subcommand};

/// Exact Burnside ring computations and Frobenius-Wielandt morphism checks.
#[derive(Debug, Parser)]
#[command(name = "burnside", version)]
struct Cli {
    /// Output format (default: json, or csv for surveys)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest group order to construct
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap: usize,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic invariants of a group
    Group { spec: String },
    /// Conjugacy classes of subgroups, normalizers, Frattini subgroup
    Lattice { spec: String },
    /// Table of marks
    Marks { spec: String },
    /// Primitive idempotents in the transitive basis
    Idempotents { spec: String },
    /// m-constants m(T, N) for every T containing N, beside the cyclic values
    Mconst { spec: String, selector: Selector },
    /// Apply res, ind, ten, inf, def or fix to an element (inline JSON or a file)
    Op {
        op: BisetOp,
        spec: String,
        selector: Selector,
        element: String,
    },
    /// The Frobenius-Wielandt morphism
    #[command(subcommand)]
    Fw(FwCommand),
}

#[derive(Debug, Subcommand)]
enum FwCommand {
    /// Image of an element over the cyclic group of order |G|
    Apply { spec: String, element: String },
    /// Whether the morphism commutes with an operation
    Check {
        #[arg(long)]
        op: BisetOp,
        spec: String,
        #[arg(long)]
        sub: Selector,
    },
    /// Survey every normal subgroup of every group in a catalog file
    Survey {
        /// One group spec per line; `#` starts a comment
        #[arg(long)]
        catalog: PathBuf,
        /// Comma-separated subset of inf,ind,ten,def
        #[arg(long, default_value = "all")]
        ops: String,
        /// Evaluate groups one at a time
        #[arg(long)]
        sequential: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let cap = cli.cap;
    let mut format = cli.format.unwrap_or_default();
    let output: Output = match cli.command {
        Command::Group { spec } => commands::group(&spec, cap)?,
        Command::Lattice { spec } => commands::lattice(&spec, cap)?,
        Command::Marks { spec } => commands::marks(&spec, cap)?,
        Command::Idempotents { spec } => commands::idempotents(&spec, cap)?,
        Command::Mconst { spec, selector } => commands::mconst(&spec, selector, cap)?,
        Command::Op {
            op,
            spec,
            selector,
            element,
        } => commands::op(op, &spec, selector, &element, cap)?,
        Command::Fw(FwCommand::Apply { spec, element }) => commands::fw_apply_cmd(&spec, &element, cap)?,
        Command::Fw(FwCommand::Check { op, spec, sub }) => commands::fw_check(op, &spec, sub, cap)?,
        Command::Fw(FwCommand::Survey {
            catalog,
            ops,
            sequential,
        }) => {
            let picked = parse_ops(&ops)?;
            let text = std::fs::read_to_string(&catalog).map_err(|source| CliError::Io {
                path: catalog.display().to_string(),
                source,
            })?;
            format = cli.format.unwrap_or(Format::Csv);
            let ops: Vec<BisetOp> = picked.into_iter().map(|i| SURVEY_OPS[i]).collect();
            commands::survey(&parse_catalog(&text), &ops, cap, !sequential)
        }
    };
    let rendered = output.render(format)?;
    match cli.out {
        Some(path) => std::fs::write(&path, rendered).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
