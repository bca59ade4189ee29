//! Command line front end for `quatlab-core`: JSON file formats, command
//! dispatch, output rendering and run manifests.

pub mod commands;
pub mod error;
pub mod format;
pub mod manifest;
pub mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{run, Outcome};
pub use error::{CliError, ErrorKind};
pub use format::Mode;
pub use manifest::RunManifest;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quatlab", version, about = "Quaternionic matrix invariants and trace identities")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample count for randomized commands.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub max_total: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Scalar type; by default exact whenever every input entry is exact.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Write a run manifest to this file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sp(2) canonical form and the six invariants of a 2x2 matrix.
    Canon { matrix: PathBuf },
    /// Unitary similarity of two 2x2 matrices.
    Equiv { a: PathBuf, b: PathBuf },
    /// Standard eigenvalues.
    Eig { matrix: PathBuf },
    /// Simultaneous triangularizability of a 2x2 pair.
    W2 { a: PathBuf, b: PathBuf },
    /// Quasi-triangularizability of the algebra generated by a JSON array of matrices.
    Qt {
        generators: PathBuf,
        /// Largest algebra dimension to expand.
        #[arg(long, default_value_t = quatlab_core::triangular::QT_MAX_DIM)]
        max_dim: usize,
    },
    /// Randomized checks of the power and one-parameter trace identities.
    Identities {
        /// Largest exponent in the power identities.
        #[arg(long, default_value_t = 5)]
        max_exp: usize,
    },
    /// Bigraded dimensions of the vanishing ideal.
    Dims,
    /// Minimal generators up to total degree `m`.
    Msg {
        #[arg(long = "m")]
        m: usize,
    },
    /// Rank of the Jacobian of named generators at a pair.
    Jacobian {
        #[arg(long)]
        point: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "f1,f2,f3,f6")]
        generators: Vec<String>,
    },
    /// The six minimality pairs of the invariant set.
    Table1,
    /// Every ideal generator at the pair outside the triangularizable set.
    Problem83,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Canon { .. } => "canon",
            Command::Equiv { .. } => "equiv",
            Command::Eig { .. } => "eig",
            Command::W2 { .. } => "w2",
            Command::Qt { .. } => "qt",
            Command::Identities { .. } => "identities",
            Command::Dims => "dims",
            Command::Msg { .. } => "msg",
            Command::Jacobian { .. } => "jacobian",
            Command::Table1 => "table1",
            Command::Problem83 => "problem83",
        }
    }
}
