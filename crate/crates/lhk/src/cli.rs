//! Command-line arguments and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::commands::{self, Outcome, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::error::CliResult;
use crate::format::{write_text, Input};

#[derive(Debug, Parser)]
#[command(name = "lhk", version, about = "Exact chain-level checks on ball complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a file describes a ball complex (and its manifold promise).
    Validate { path: PathBuf },
    /// Integral homology, absolute or relative to a subcomplex.
    Homology {
        path: PathBuf,
        /// Comma-separated ids of a subcomplex.
        #[arg(long, value_delimiter = ',')]
        pair: Option<Vec<String>>,
    },
    /// The derived subdivision.
    Subdivide {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual cell of a cell, with its boundary.
    Dual {
        path: PathBuf,
        #[arg(long)]
        cell: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The product complex.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counit, switch, redistribution and interval checks on the dissections and on random graded complexes.
    DualityCheck {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random graded complexes per variance.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// The dissected symmetric signature and its local Poincaré verdicts.
    Signature {
        path: PathBuf,
        /// Treat the manifold relative to its boundary.
        #[arg(long)]
        relative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The product formula for two closed orientable manifolds, ball by ball.
    CheckProducts { a: PathBuf, b: PathBuf },
    /// The product with the relative signature of the k-disk.
    Suspend {
        path: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn out(&self) -> Option<&Path> {
        match self {
            Command::Subdivide { out, .. } | Command::Dual { out, .. } | Command::Product { out, .. } | Command::Signature { out, .. } | Command::Suspend { out, .. } => out.as_deref(),
            _ => None,
        }
    }
}

/// Runs a command and writes its artifact if `--out` was given.
pub fn run(command: &Command) -> CliResult<Outcome> {
    let outcome = match command {
        Command::Validate { path } => commands::validate(&Input::read(path)?),
        Command::Homology { path, pair } => commands::homology(&Input::read(path)?, pair.as_deref())?,
        Command::Subdivide { path, .. } => commands::subdivide(&Input::read(path)?)?,
        Command::Dual { path, cell, .. } => commands::dual(&Input::read(path)?, cell)?,
        Command::Product { a, b, .. } => commands::product(&Input::read(a)?, &Input::read(b)?)?,
        Command::DualityCheck { path, seed, samples } => commands::duality_check(&Input::read(path)?, *seed, *samples)?,
        Command::Signature { path, relative, .. } => commands::signature(&Input::read(path)?, *relative)?,
        Command::CheckProducts { a, b } => commands::check_products(&Input::read(a)?, &Input::read(b)?)?,
        Command::Suspend { path, k, .. } => commands::suspend(&Input::read(path)?, *k)?,
    };
    if let (Some(out), Some(text)) = (command.out(), &outcome.artifact) {
        write_text(out, text)?;
    }
    Ok(outcome)
}
