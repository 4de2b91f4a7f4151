//! Command-line front end for `eicf-core`.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

pub mod commands;
pub mod input;
pub mod render;

pub use commands::{Options, Report};
pub use render::{render, RenderSpec, Rendered};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precision(String),
    #[error("{0}")]
    Contract(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precision(_) => 3,
            CliError::Contract(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "eicf", version, about = "Even-integer continued fractions and the Farey tree")]
pub struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Decimal places of decimal and sqrt(n) inputs.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Number of EICF terms to compute or list.
    #[arg(long, global = true)]
    pub terms: Option<usize>,
    /// Denominator bound.
    #[arg(long, global = true)]
    pub max_den: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify a rational as an ∞-rational or a 1-rational.
    Classify {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// EICF expansion and convergents of a rational, decimal or sqrt(n).
    Expand {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Value of an EICF such as "[2,2,-2]" or "[0,(2,-2)*]".
    Eval {
        #[arg(allow_hyphen_values = true)]
        eicf: String,
    },
    /// Convergents of a value or an EICF.
    Convergents {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Whether two values have equivalent EICF tails, with a witness matrix.
    Equivalent {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 10)]
        min_overlap: usize,
    },
    /// Strong ∞-approximants of x with denominator at most --max-den.
    Approximants {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Farey-tree neighbours of v inside [lo, hi].
    Neighbors {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        lo: String,
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
    /// Draw the Farey tree, Farey graph, Ford circles or a path as SVG.
    Render {
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        x_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "3")]
        x_max: String,
        #[arg(long, default_value = "1")]
        height_scale: String,
        /// Comma-separated layers: tree, graph, ford, path.
        #[arg(long, default_value = "tree")]
        show: String,
        /// EICF whose path from ∞ is highlighted.
        #[arg(long, allow_hyphen_values = true)]
        path: Option<String>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Cli {
    pub fn options(&self) -> Options {
        Options { digits: self.digits, terms: self.terms, max_den: self.max_den }
    }
}

/// Run a command. The report is returned even on failure so that `--json`
/// can still print one object.
pub fn run(command: &Command, opts: &Options) -> (Report, Option<CliError>) {
    use commands::*;
    let outcome = match command {
        Command::Classify { value } => cmd_classify(value),
        Command::Expand { value } => cmd_expand(value, opts),
        Command::Eval { eicf } => cmd_eval(eicf),
        Command::Convergents { value } => cmd_convergents(value, opts),
        Command::Equivalent { a, b, min_overlap } => cmd_equivalent(a, b, *min_overlap, opts),
        Command::Approximants { x } => cmd_approximants(x, opts),
        Command::Neighbors { v, lo, hi } => cmd_neighbors(v, lo, hi, opts),
        Command::Render { x_min, x_max, height_scale, show, path, out } => {
            let args = RenderArgs {
                x_min: x_min.clone(),
                x_max: x_max.clone(),
                height_scale: height_scale.clone(),
                show: show.clone(),
                path: path.clone(),
                out: out.clone(),
            };
            cmd_render(&args, opts)
        }
    };
    match outcome {
        Ok(report) => (report, None),
        Err(e) => (Report::failed(echo(command), &e), Some(e)),
    }
}

fn echo(command: &Command) -> serde_json::Value {
    match command {
        Command::Classify { value } | Command::Expand { value } | Command::Convergents { value } => {
            json!({ "value": value })
        }
        Command::Eval { eicf } => json!({ "eicf": eicf }),
        Command::Equivalent { a, b, min_overlap } => json!({ "a": a, "b": b, "min_overlap": min_overlap }),
        Command::Approximants { x } => json!({ "x": x }),
        Command::Neighbors { v, lo, hi } => json!({ "v": v, "lo": lo, "hi": hi }),
        Command::Render { x_min, x_max, show, path, .. } => {
            json!({ "x_min": x_min, "x_max": x_max, "show": show, "path": path })
        }
    }
}
