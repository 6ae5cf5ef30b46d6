use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semistar_cli::{run, Command, Format, PolyKind, RunConfig, Target};
use semistar_core::Bounds;

/// Exact counts of semistar and star operations on semilocal Prüfer
/// domains, read from a labeled spectral tree.
#[derive(Parser)]
#[command(name = "semistar", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,

    /// Largest number of branches in the standard decomposition.
    #[arg(long, global = true, default_value_t = Bounds::default().max_branches)]
    max_branches: usize,

    /// Largest number of maps or operations any enumeration may produce.
    #[arg(long, global = true, env = "SEMISTAR_MAX_MAPS", default_value_t = Bounds::default().max_maps)]
    max_maps: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a tree description and report every violated invariant.
    Validate { input: PathBuf },
    /// Print |Semistar|, |FStar|, |SmStar| and |Star|.
    Count { input: PathBuf },
    /// Recover a counting polynomial in symbolic labels.
    Poly {
        input: PathBuf,
        /// Count semistar operations (the default).
        #[arg(long, conflicts_with = "smstar")]
        semistar: bool,
        /// Count (semi)star operations.
        #[arg(long)]
        smstar: bool,
        /// Make ω of this root child a variable.
        #[arg(long = "var", value_name = "ID")]
        vars: Vec<String>,
        /// Make ε of this maximal ideal a variable (with --smstar).
        #[arg(long = "eps-var", value_name = "ID")]
        eps_vars: Vec<String>,
    },
    /// Export a Hasse diagram.
    Hasse {
        input: PathBuf,
        /// semistar, fstar, or fstar:<root child id>.
        #[arg(long, default_value = "semistar")]
        target: Target,
    },
    /// List the supports over the branch set of a tree.
    Supports { input: PathBuf },
    /// Compare engine counts with brute-force enumeration.
    OracleCheck {
        #[arg(required_unless_present = "lattice")]
        input: Option<PathBuf>,
        /// Check the built-in lattice of small trees instead.
        #[arg(long)]
        lattice: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let bounds = Bounds::default()
        .with_max_branches(cli.max_branches)
        .with_max_maps(cli.max_maps);
    let (command, input) = match &cli.command {
        Cmd::Validate { input } => (Command::Validate, Some(input.clone())),
        Cmd::Count { input } => (Command::Count, Some(input.clone())),
        Cmd::Poly { input, .. } => (Command::Poly, Some(input.clone())),
        Cmd::Hasse { input, .. } => (Command::Hasse, Some(input.clone())),
        Cmd::Supports { input } => (Command::Supports, Some(input.clone())),
        Cmd::OracleCheck { input, .. } => (Command::OracleCheck, input.clone()),
    };
    let mut config = RunConfig {
        command,
        input,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        },
        poly: PolyKind::Semistar,
        vars: Vec::new(),
        eps_vars: Vec::new(),
        target: Target::Semistar,
        lattice: false,
        bounds,
    };
    match cli.command {
        Cmd::Poly {
            smstar,
            vars,
            eps_vars,
            ..
        } => {
            config.poly = if smstar { PolyKind::Smstar } else { PolyKind::Semistar };
            config.vars = vars;
            config.eps_vars = eps_vars;
        }
        Cmd::Hasse { target, .. } => config.target = target,
        Cmd::OracleCheck { lattice, .. } => config.lattice = lattice,
        _ => {}
    }

    let outcome = run(&config);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
