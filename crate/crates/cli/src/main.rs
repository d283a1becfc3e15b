//! `graded`: build, inspect and verify finite groupoid-graded matrix algebras.
//!
//! Every command prints one JSON report. Exit status is 0 when every verdict
//! passes, 1 when some verdict fails and 2 for unusable input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "graded",
    version,
    about = "Verify groupoid-graded matrix algebras with exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Built-in input document: z4, two-object or monoid-counterexample.
    #[arg(long, global = true, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// JSON input document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include component bases in `build` reports.
    #[arg(long, global = true)]
    pub bases: bool,
    /// Print elements as matrix-unit supports such as "e11+e33".
    #[arg(long, global = true)]
    pub support: bool,
    /// Comma-separated morphism names overriding the document's selection.
    #[arg(long, global = true)]
    pub selection: Option<String>,
    /// Add wall-clock timings to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate the category in the input document.
    Validate {
        /// Also require every morphism to be invertible.
        #[arg(long)]
        require_groupoid: bool,
    },
    /// Build the matrix-unit grading from the selection and check it.
    Build,
    /// Compare both sides of the commutant theorem for subgroupoids.
    Commutant {
        /// Comma-separated generators; the subgroupoid they generate is used.
        #[arg(long, required_unless_present = "all_subgroupoids")]
        subgroupoid: Option<String>,
        /// Run every subgroupoid.
        #[arg(long, conflicts_with = "subgroupoid")]
        all_subgroupoids: bool,
    },
    /// Tabulate the action of one morphism on its source commutant.
    Sigma {
        #[arg(long)]
        morphism: String,
    },
    /// Build a grading in which the component of a morphism is not free.
    Nonfree {
        #[arg(long)]
        morphism: String,
    },
    /// List every subgroupoid.
    Subgroupoids,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let outcome = match &cli.command {
        Command::Validate { require_groupoid } => commands::validate(g, *require_groupoid),
        Command::Build => commands::build(g),
        Command::Commutant {
            subgroupoid,
            all_subgroupoids,
        } => commands::commutant(g, subgroupoid.as_deref(), *all_subgroupoids),
        Command::Sigma { morphism } => commands::sigma(g, morphism),
        Command::Nonfree { morphism } => commands::nonfree(g, morphism),
        Command::Subgroupoids => commands::subgroupoids(g),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let passed = report.passed();
    let mut text = serde_json::to_string_pretty(&report.finish(g.timings)).expect("report serializes");
    text.push('\n');
    let written = match &g.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
