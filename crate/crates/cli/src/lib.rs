//! Command dispatch for the `semistar` binary, kept separate from argument
//! parsing so it can be driven directly from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use semistar_core::oracle::{brute_semistar_count, test_lattice};
use semistar_core::{
    count_semistar, count_smstar, enumerate_supports, fstar_poset, fstar_product_poset,
    semistar_poset, semistar_polynomial, smstar_polynomial, Bounds, CountReport, Error,
    SpectrumTree, Symbol,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Count,
    Poly,
    Hasse,
    Supports,
    OracleCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolyKind {
    #[default]
    Semistar,
    Smstar,
}

/// Which poset `hasse` draws.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Target {
    #[default]
    Semistar,
    /// The product of all branch posets.
    Fstar,
    /// The branch poset at one root child.
    FstarBranch(String),
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "semistar" => Ok(Target::Semistar),
            "fstar" => Ok(Target::Fstar),
            _ => match s.strip_prefix("fstar:") {
                Some(id) if !id.is_empty() => Ok(Target::FstarBranch(id.to_string())),
                _ => Err(format!(
                    "unknown target `{s}` (expected semistar, fstar or fstar:<branch>)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Tree file; optional only for `oracle-check --lattice`.
    pub input: Option<PathBuf>,
    pub format: Format,
    pub poly: PolyKind,
    /// Nodes whose `ω` becomes a variable.
    pub vars: Vec<String>,
    /// Leaves whose `ε` becomes a variable.
    pub eps_vars: Vec<String>,
    pub target: Target,
    /// Run `oracle-check` over the built-in tree lattice.
    pub lattice: bool,
    pub bounds: Bounds,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: Some(input.into()),
            format: Format::Text,
            poly: PolyKind::Semistar,
            vars: Vec::new(),
            eps_vars: Vec::new(),
            target: Target::Semistar,
            lattice: false,
            bounds: Bounds::default(),
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID: i32 = 1;
    pub const BOUND: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const MISMATCH: i32 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Core(Error),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

/// Runs one command. Never panics on bad input; all failures come back as
/// a nonzero code with a message on `stderr`.
pub fn run(config: &RunConfig) -> RunOutcome {
    match dispatch(config) {
        Ok(stdout) => RunOutcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Mismatch(stdout)) => RunOutcome {
            code: exit::MISMATCH,
            stdout,
            stderr: "oracle mismatch\n".into(),
        },
        Err(Failure::Usage(msg)) => RunOutcome {
            code: exit::INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Core(e)) => RunOutcome {
            code: code_of(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::InvalidTree(_) => exit::INVALID,
        Error::EnumerationLimit { .. } | Error::Overflow => exit::BOUND,
        _ => exit::INPUT,
    }
}

fn dispatch(config: &RunConfig) -> Outcome {
    if config.command == Command::OracleCheck && config.lattice {
        return oracle_lattice(config);
    }
    let tree = load(config)?;
    match config.command {
        Command::Validate => validate(config, &tree),
        Command::Count => count(config, &tree),
        Command::Poly => poly(config, &tree),
        Command::Hasse => hasse(config, &tree),
        Command::Supports => supports(config, &tree),
        Command::OracleCheck => oracle_single(config, &tree),
    }
}

fn load(config: &RunConfig) -> Result<SpectrumTree, Failure> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("an input file is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(SpectrumTree::from_json(&text)?)
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn no_dot(config: &RunConfig, what: &str) -> Result<(), Failure> {
    if config.format == Format::Dot {
        return Err(Failure::Usage(format!("`{what}` has no DOT output")));
    }
    Ok(())
}

fn validate(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    #[derive(Serialize)]
    struct Summary {
        valid: bool,
        nodes: usize,
        maximal: usize,
        branches: usize,
    }
    let summary = Summary {
        valid: true,
        nodes: tree.len(),
        maximal: tree.leaves().len(),
        branches: tree.branch_count(),
    };
    Ok(match config.format {
        Format::Text => format!(
            "valid: {} nodes, {} maximal ideals, {} branches\n",
            summary.nodes, summary.maximal, summary.branches
        ),
        Format::Json => json(&summary),
        Format::Dot => tree.to_dot(),
    })
}

fn count(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    no_dot(config, "count")?;
    let r = CountReport::compute(tree, &config.bounds)?;
    Ok(match config.format {
        Format::Json => json(&r),
        _ => format!(
            "semistar {}\nfstar {}\nsmstar {}\nstar {}\n",
            r.semistar, r.fstar, r.smstar, r.star
        ),
    })
}

fn poly(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    no_dot(config, "poly")?;
    let mut symbols: Vec<Symbol> = config.vars.iter().map(|v| Symbol::omega(v)).collect();
    symbols.extend(config.eps_vars.iter().map(|v| Symbol::epsilon(v)));
    let p = match config.poly {
        PolyKind::Semistar => semistar_polynomial(tree, &symbols, &config.bounds)?,
        PolyKind::Smstar => smstar_polynomial(tree, &symbols, &config.bounds)?,
    };
    Ok(match config.format {
        Format::Json => json(&p.to_json()),
        _ => format!("{p}\n"),
    })
}

fn hasse(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    let bounds = &config.bounds;
    let poset = match &config.target {
        Target::Semistar => {
            let s = semistar_poset(tree, bounds)?;
            let fp = s.materialize(bounds)?;
            if config.format == Format::Dot {
                return Ok(fp.to_dot_with(|i| s.label(i)));
            }
            fp
        }
        Target::Fstar => fstar_product_poset(tree, bounds)?,
        Target::FstarBranch(id) => {
            let c = tree.node_index(id)?;
            fstar_poset(&tree.branch_subtree(c)?, bounds)?
        }
    };
    Ok(match config.format {
        Format::Dot => poset.to_dot(),
        Format::Json => {
            let mut s = poset.to_json();
            s.push('\n');
            s
        }
        Format::Text => format!(
            "{} elements, {} flagged, {} covers\n",
            poset.size(),
            poset.flag_count(),
            poset.hasse().covers.len()
        ),
    })
}

fn supports(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    no_dot(config, "supports")?;
    let m = tree.branch_count();
    let all = enumerate_supports(m, &config.bounds)?;
    let described: Vec<String> = all.iter().map(|s| s.describe()).collect();
    Ok(match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                branches: usize,
                count: usize,
                supports: &'a [String],
            }
            json(&Out {
                branches: m,
                count: all.len(),
                supports: &described,
            })
        }
        _ => {
            let mut out = format!("{} supports over {m} branches\n", all.len());
            for d in described {
                let _ = writeln!(out, "{d}");
            }
            out
        }
    })
}

#[derive(Debug, Serialize)]
struct OracleRow {
    tree: String,
    engine_semistar: u128,
    oracle_semistar: u128,
    poset_semistar: Option<u128>,
    engine_smstar: u128,
    oracle_smstar: u128,
    poset_smstar: Option<u128>,
    pass: bool,
}

/// Engine counts, oracle counts and, when small enough, the sizes read off
/// the enumerated semistar poset.
fn compare(name: &str, tree: &SpectrumTree, bounds: &Bounds) -> Result<OracleRow, Error> {
    let engine_semistar = count_semistar(tree, bounds)?;
    let engine_smstar = count_smstar(tree, bounds)?;
    let (oracle_semistar, oracle_smstar) = brute_semistar_count(tree, bounds)?;
    let (poset_semistar, poset_smstar) = if engine_semistar <= bounds.max_poset as u128 {
        let s = semistar_poset(tree, bounds)?;
        (Some(s.len() as u128), Some(s.flag_count() as u128))
    } else {
        (None, None)
    };
    let pass = engine_semistar == oracle_semistar
        && engine_smstar == oracle_smstar
        && poset_semistar.is_none_or(|p| p == engine_semistar)
        && poset_smstar.is_none_or(|p| p == engine_smstar);
    Ok(OracleRow {
        tree: name.to_string(),
        engine_semistar,
        oracle_semistar,
        poset_semistar,
        engine_smstar,
        oracle_smstar,
        poset_smstar,
        pass,
    })
}

fn render_rows(config: &RunConfig, rows: &[OracleRow]) -> Outcome {
    no_dot(config, "oracle-check")?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    let out = match config.format {
        Format::Json => json(&rows),
        _ => {
            let show = |x: Option<u128>| x.map_or("-".to_string(), |v| v.to_string());
            let mut out = String::new();
            for r in rows {
                let _ = writeln!(
                    out,
                    "{}  {}  semistar {}/{}/{}  smstar {}/{}/{}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.tree,
                    r.engine_semistar,
                    r.oracle_semistar,
                    show(r.poset_semistar),
                    r.engine_smstar,
                    r.oracle_smstar,
                    show(r.poset_smstar),
                );
            }
            let _ = writeln!(out, "{} of {} trees agree", rows.len() - failed, rows.len());
            out
        }
    };
    if failed > 0 {
        Err(Failure::Mismatch(out))
    } else {
        Ok(out)
    }
}

fn oracle_single(config: &RunConfig, tree: &SpectrumTree) -> Outcome {
    let name = config
        .input
        .as_ref()
        .map_or("input".to_string(), |p| p.display().to_string());
    let row = compare(&name, tree, &config.bounds)?;
    render_rows(config, &[row])
}

fn oracle_lattice(config: &RunConfig) -> Outcome {
    let rows = test_lattice()
        .iter()
        .map(|(name, tree)| compare(name, tree, &config.bounds))
        .collect::<Result<Vec<_>, _>>()?;
    render_rows(config, &rows)
}
