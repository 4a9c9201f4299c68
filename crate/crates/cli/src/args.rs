//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use veronese::transversal::SearchMode;
use veronese::verify::Suite;
use veronese::FieldSpec;

use crate::{CommandResult, EdgeSource, EqsFormat, SampleKind};

#[derive(Debug, Parser)]
#[command(name = "veronese-kit", version, about = "Equations for point configurations on rational normal curves")]
pub struct Cli {
    /// Log verbosity on stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: veronese::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: veronese::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Search {
    Exact,
    Greedy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every defining equation for n points of P^d.
    Eqs {
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the equations on a configuration file.
    Eval {
        config: PathBuf,
        /// Reread the data over this field (Q or Fp:p) instead of the file's own.
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        /// Include every equation value (plane configurations only).
        #[arg(long)]
        values: bool,
    },
    /// Gale transform of a configuration file, in the same format.
    Gale {
        config: PathBuf,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
    },
    /// Draw a seeded random configuration.
    Sample {
        /// generic, rnc, degenerate, two-lines, line-plus-point, chain:a,b,… or comb:a,b,…
        #[arg(long, default_value = "rnc")]
        kind: SampleKind,
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field, default_value = "Fp:65521")]
        field: FieldSpec,
    },
    /// Check whether k-subsets of [n] meet every partition into k blocks.
    Transversal {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        /// Edges as a JSON array, e.g. '[[1,2,3],[4,5,6]]'.
        #[arg(long, conflicts_with_all = ["edges_file", "complete"])]
        edges: Option<String>,
        /// File holding the edges as a JSON array.
        #[arg(long, conflicts_with = "complete")]
        edges_file: Option<PathBuf>,
        /// Use every k-subset.
        #[arg(long)]
        complete: bool,
        /// Also look for a smallest transversal edge set.
        #[arg(long, value_enum)]
        search: Option<Search>,
    },
    /// Rank of the parametrization of curve configurations at a random point.
    Dim {
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field, default_value = "Fp:65521")]
        field: FieldSpec,
    },
    /// Run an acceptance suite: conic, gale, higher, transversal, dimension or all.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field, default_value = "Fp:65521")]
        field: FieldSpec,
    },
}

impl Command {
    pub fn run(&self) -> CommandResult {
        match self {
            Command::Eqs { d, n, format } => {
                let format = match format {
                    Format::Text => EqsFormat::BracketText,
                    Format::Json => EqsFormat::Json,
                };
                crate::cmd_eqs(*d, *n, format)
            }
            Command::Eval { config, field, values } => crate::cmd_eval(config, *field, *values),
            Command::Gale { config, field } => crate::cmd_gale(config, *field),
            Command::Sample { kind, d, n, seed, field } => crate::cmd_sample(kind, *d, *n, *seed, *field),
            Command::Transversal {
                n,
                k,
                edges,
                edges_file,
                complete,
                search,
            } => {
                let source = match (edges, edges_file, complete) {
                    (Some(text), _, _) => crate::parse_edges(text).map(EdgeSource::Lists),
                    (None, Some(path), _) => std::fs::read_to_string(path)
                        .map_err(|e| format!("{}: {e}", path.display()))
                        .and_then(|t| crate::parse_edges(&t))
                        .map(EdgeSource::Lists),
                    (None, None, true) => Ok(EdgeSource::Complete),
                    (None, None, false) => Ok(EdgeSource::None),
                };
                let mode = search.map(|s| match s {
                    Search::Exact => SearchMode::Exact,
                    Search::Greedy => SearchMode::Greedy,
                });
                match source {
                    Ok(src) => crate::cmd_transversal(*n, *k, &src, mode),
                    Err(e) => crate::CommandResult::failed(veronese::Error::Precondition(e)),
                }
            }
            Command::Dim { d, n, seed, field } => crate::cmd_dim(*d, *n, *seed, *field),
            Command::Verify { suite, seed, field } => crate::cmd_verify(*suite, *seed, *field),
        }
    }
}
