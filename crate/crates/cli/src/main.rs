//! `castellan`: castling transforms, solution trees, cube searches and the
//! connection tensor checks from the command line.
//!
//! Exit codes: 0 success, 1 budget exceeded, 2 usage or parameter error,
//! 3 internal invariant violation.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use castellan::connection::{geometry_report, ConnectionError};
use castellan::search::{
    classify_partition, search, SearchBox, SearchError, DEFAULT_SEARCH_BUDGET,
};
use castellan::tree::{enumerate, EnumerationConfig, ExportFormat, TreeError, DEFAULT_NODE_BUDGET};
use castellan::{
    castle, reduce_to_root, residual, CastlingError, CastlingParams, CastlingTuple, MoveKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

const BUDGET_ENV: &str = "CASTELLAN_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "castellan",
    version,
    about = "Castling transforms and their solution trees"
)]
struct Cli {
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Node budget for `enumerate`, step budget for `conjecture`.
    /// Overrides the CASTELLAN_BUDGET environment variable.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    l: u64,
    #[arg(long)]
    alpha: u64,
}

#[derive(Args, Debug)]
struct TupleArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated positive integers; `()` or an empty string for the empty tuple.
    #[arg(long, allow_hyphen_values = true)]
    tuple: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the residual of a tuple.
    Verify(TupleArgs),
    /// Apply one castling transform.
    Step {
        #[command(flatten)]
        tuple: TupleArgs,
        /// 1-based position in the canonical tuple, or `append`.
        #[arg(long)]
        pos: Position,
    },
    /// Descend from a solution to the root.
    Reduce(TupleArgs),
    /// Breadth-first enumeration of the solution tree.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_entry: BigInt,
        #[arg(long)]
        max_depth: usize,
        /// Leave out the quotient annotations.
        #[arg(long)]
        no_quotients: bool,
    },
    /// Exhaustive search of a box of tuples.
    Conjecture {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        j_max: usize,
        /// Search the cube: every entry at most alpha - 1.
        #[arg(long, conflicts_with = "entry_max")]
        cube: bool,
        #[arg(long, required_unless_present = "cube")]
        entry_max: Option<BigInt>,
        #[arg(long, default_value_t = 1)]
        entry_min: u64,
    },
    /// Tensor checks for the trace-free product connection on sl(m).
    Geometry {
        #[arg(long)]
        m: usize,
        /// Dimension of the flat abelian factor in the product check.
        #[arg(long, default_value_t = 2)]
        product_abelian: usize,
    },
}

#[derive(Clone, Copy, Debug)]
enum Position {
    At(usize),
    Append,
}

impl FromStr for Position {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("append") {
            return Ok(Position::Append);
        }
        match s.parse::<usize>() {
            Ok(p) if p >= 1 => Ok(Position::At(p)),
            _ => Err(format!("expected a position >= 1 or `append`, got `{s}`")),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Budget(String),
    Usage(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Budget(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Budget(m) | Failure::Usage(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<CastlingError> for Failure {
    fn from(e: CastlingError) -> Self {
        match e {
            CastlingError::ResidualDrift { .. } => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            TreeError::Castling(c) => c.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ConnectionError> for Failure {
    fn from(e: ConnectionError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Primary output plus an optional failure reported after it is written.
struct Outcome {
    body: Vec<u8>,
    failure: Option<Failure>,
}

impl From<String> for Outcome {
    fn from(s: String) -> Self {
        Self {
            body: s.into_bytes(),
            failure: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        emit(cli.output.as_ref(), &outcome.body)?;
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn emit(path: Option<&PathBuf>, body: &[u8]) -> Result<(), Failure> {
    let written = match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body),
    };
    written.map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify(args) => {
            let (params, t) = parse_tuple_args(args)?;
            let r = residual(&params, &t);
            let format = pick_format(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            Ok(render::verify(&params, &t, &r, format == Format::Json).into())
        }
        Command::Step { tuple, pos } => {
            let (params, t) = parse_tuple_args(tuple)?;
            let kind = match *pos {
                Position::Append => MoveKind::Append,
                Position::At(p) if p <= t.len() => MoveKind::At(p - 1),
                Position::At(p) => {
                    return Err(Failure::Usage(format!(
                        "position {p} is out of range for {t} (length {})",
                        t.len()
                    )))
                }
            };
            let mv = castle(&params, &t, kind)?;
            if mv.self_loop {
                eprintln!("note: castling at {kind} leaves {t} unchanged");
            }
            let format = pick_format(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            Ok(render::step(&mv, format == Format::Json).into())
        }
        Command::Reduce(args) => {
            let (params, t) = parse_tuple_args(args)?;
            let trace = reduce_to_root(&params, &t)?;
            let format = pick_format(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            Ok(render::reduce(&trace, format == Format::Json).into())
        }
        Command::Enumerate {
            params,
            max_entry,
            max_depth,
            no_quotients,
        } => {
            let params = parse_params(params)?;
            let budget = resolve_budget(cli.budget, DEFAULT_NODE_BUDGET as u64)?;
            let config = EnumerationConfig::new(params, *max_depth, max_entry.clone())?
                .with_quotients(!no_quotients)
                .with_budget(usize::try_from(budget).unwrap_or(usize::MAX));
            let format = pick_format(
                cli.format,
                Format::Dot,
                &[Format::Dot, Format::Json, Format::Csv],
            )?;
            let export = match format {
                Format::Json => ExportFormat::Json,
                Format::Csv => ExportFormat::Csv,
                _ => ExportFormat::Dot,
            };
            let tree = enumerate(&config)?;
            Ok(Outcome {
                body: tree.export(export),
                failure: None,
            })
        }
        Command::Conjecture {
            params,
            j_max,
            cube,
            entry_max,
            entry_min,
        } => {
            let params = parse_params(params)?;
            let budget = resolve_budget(cli.budget, DEFAULT_SEARCH_BUDGET)?;
            let search_box = if *cube {
                SearchBox::cube(params, *j_max)
            } else {
                let max = entry_max
                    .clone()
                    .expect("clap requires entry_max without --cube");
                SearchBox::new(params, *j_max, *entry_min, max)
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let json = pick_format(cli.format, Format::Text, &[Format::Text, Format::Json])?
                == Format::Json;
            match search(&search_box, budget) {
                Ok(report) => {
                    let verdict = classify_partition(&report)
                        .map_err(|e| Failure::Invariant(e.to_string()))?;
                    Ok(render::search_report(&report, Some(&verdict), json).into())
                }
                Err(SearchError::BudgetExceeded { budget, partial }) => Ok(Outcome {
                    body: render::search_report(&partial, None, json).into_bytes(),
                    failure: Some(Failure::Budget(format!(
                        "search budget of {budget} steps exceeded; the report above is partial"
                    ))),
                }),
                Err(SearchError::Castling(e)) => Err(e.into()),
                Err(e) => Err(Failure::Usage(e.to_string())),
            }
        }
        Command::Geometry { m, product_abelian } => {
            if *m < 2 {
                return Err(Failure::Usage(format!("need m >= 2, got {m}")));
            }
            if *product_abelian < 1 {
                return Err(Failure::Usage(
                    "--product-abelian must be at least 1".into(),
                ));
            }
            let report = geometry_report(*m, *product_abelian)?;
            let format = pick_format(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            Ok(if format == Format::Json {
                report.to_json()
            } else {
                report.to_text()
            }
            .into())
        }
    }
}

fn pick_format(
    requested: Option<Format>,
    default: Format,
    allowed: &[Format],
) -> Result<Format, Failure> {
    let format = requested.unwrap_or(default);
    if allowed.contains(&format) {
        Ok(format)
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| {
                f.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
                    .to_string()
            })
            .collect();
        Err(Failure::Usage(format!(
            "this subcommand supports --format {}",
            names.join("|")
        )))
    }
}

/// `--budget` wins over `CASTELLAN_BUDGET`, which wins over the default.
fn resolve_budget(flag: Option<u64>, default: u64) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{BUDGET_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(default),
    }
}

fn parse_params(args: &ParamArgs) -> Result<CastlingParams, Failure> {
    Ok(CastlingParams::new(args.l, args.alpha)?)
}

fn parse_tuple_args(args: &TupleArgs) -> Result<(CastlingParams, CastlingTuple), Failure> {
    let params = parse_params(&args.params)?;
    let raw = parse_raw_tuple(&args.tuple)?;
    let t = CastlingTuple::new(raw.iter().cloned())?;
    if raw.as_slice() != t.entries() {
        eprintln!("note: tuple canonicalized to {t}");
    }
    Ok((params, t))
}

fn parse_raw_tuple(s: &str) -> Result<Vec<BigInt>, Failure> {
    let inner = s.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(inner)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::Usage(format!("invalid tuple entry `{}`", part.trim())))
        })
        .collect()
}
