//! `bisem`: analyze finite inverse semigroups, Boolean inverse semigroups
//! and graphs from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a property check failed.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use bisem_core::pperm::DEFAULT_ELEMENT_CAP;
use bisem_core::rook::DEFAULT_DIM;
use bisem_core::typemonoid::WordBudget;
use clap::{Args, Parser, Subcommand};

use commands::{Budgets, Failure};
use report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "bisem",
    version,
    about = "Finite Boolean inverse semigroups and their type monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Element cap for closures and constructions.
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Vector budget per class for word-problem searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every applicable check on a Cayley, generator or graph file.
    Analyze {
        path: PathBuf,
        /// Also verify the graph-monoid theorem (graph inputs).
        #[arg(long)]
        verify_graph_theorem: bool,
    },
    /// Print Typ(S) or a presented monoid and optionally compare two vectors.
    Typ {
        path: PathBuf,
        /// A vector such as `3,0,0`; give exactly two.
        #[arg(long = "word", num_args = 1)]
        words: Vec<String>,
    },
    /// Decompose a Boolean inverse semigroup into rook matrix blocks.
    Decompose { path: PathBuf },
    /// Summarize a graph: sinks, path counts, graph monoid.
    Graph { path: PathBuf },
    /// DOT rendering of the atom groupoid, boundary groupoid or graph.
    ExportDot {
        path: PathBuf,
        /// `atoms` (semigroups), `boundary` or `graph` (graphs).
        #[arg(long)]
        target: Option<String>,
    },
    /// Check the generalized rook matrix lemmas and the type theorem at dimension `--dim`.
    VerifyRook {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
    },
    /// Verify the graph-monoid theorem for an acyclic graph.
    VerifyGraph { path: PathBuf },
}

/// `BISEM_BUDGET`: a bare number sets the vector budget; otherwise
/// comma-separated `elements=`, `vectors=` and `component=` entries.
fn env_budgets(text: &str, mut b: Budgets) -> Result<Budgets, String> {
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("BISEM_BUDGET: cannot read `{part}`");
        match part.split_once('=') {
            None => b.words.max_vectors = part.parse().map_err(|_| bad())?,
            Some(("elements", v)) => b.elements = v.parse().map_err(|_| bad())?,
            Some(("vectors", v)) => b.words.max_vectors = v.parse().map_err(|_| bad())?,
            Some(("component", v)) => b.words.max_component = v.parse().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
        }
    }
    Ok(b)
}

fn budgets(global: &Global) -> Result<Budgets, String> {
    let mut b = Budgets {
        elements: DEFAULT_ELEMENT_CAP,
        words: WordBudget::default(),
    };
    if let Ok(text) = std::env::var("BISEM_BUDGET") {
        b = env_budgets(&text, b)?;
    }
    if let Some(n) = global.max_elements {
        b.elements = n;
    }
    if let Some(n) = global.budget {
        b.words.max_vectors = n;
    }
    Ok(b)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = match budgets(&cli.global) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match &cli.command {
        Command::Analyze {
            path,
            verify_graph_theorem,
        } => commands::analyze(path, budgets, *verify_graph_theorem),
        Command::Typ { path, words } => commands::typ_cmd(path, budgets, words),
        Command::Decompose { path } => commands::decompose(path, budgets),
        Command::Graph { path } => commands::graph(path, budgets),
        Command::VerifyRook { path, dim } => commands::verify_rook(path, budgets, *dim),
        Command::VerifyGraph { path } => commands::verify_graph(path, budgets),
        Command::ExportDot { path, target } => match commands::export_dot(path, budgets, target.as_deref()) {
            Ok(dot) => {
                print!("{dot}");
                return ExitCode::SUCCESS;
            }
            Err(f) => Err(f),
        },
    };
    match outcome {
        Ok(report) => {
            print!("{}", report.render(cli.global.format));
            if report.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_env_forms() {
        let base = Budgets {
            elements: 10,
            words: WordBudget::default(),
        };
        let b = env_budgets("500", base).unwrap();
        assert_eq!(b.words.max_vectors, 500);
        let b = env_budgets("elements=99, component=8", base).unwrap();
        assert_eq!((b.elements, b.words.max_component), (99, 8));
        assert!(env_budgets("speed=3", base).is_err());
    }
}
