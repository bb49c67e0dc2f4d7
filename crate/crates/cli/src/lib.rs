//! Command-line front end for `extmcg`: argument definitions, the text
//! syntax for words and lagrangians, and the subcommands.
//!
//! Every subcommand produces a [`Report`] carrying both a JSON value (with a
//! top-level `schema` field) and a plain text rendering.

pub mod commands;
pub mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extmcg::verify::Suite;

pub use commands::{run, CliError, Report};

/// Version of the JSON layout. Matrices are row-major integer arrays.
pub const SCHEMA_VERSION: u64 = 1;

/// Environment variable supplying the default `verify` seed.
pub const SEED_ENV: &str = "EXTMCG_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "extmcg",
    version,
    about = "Extended mapping class groups by Maslov indices and surgery"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Admit non-primitive nonzero classes in words.
    #[arg(long, global = true)]
    pub permissive: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Surface {
    /// Genus of the surface.
    #[arg(long, default_value_t = 1)]
    pub genus: usize,
}

#[derive(Debug, Args)]
pub struct WithLagrangian {
    #[command(flatten)]
    pub surface: Surface,
    /// `std` or a list of classes spanning the lagrangian, e.g. "m1 l2".
    #[arg(long, default_value = "std")]
    pub lambda: String,
}

/// A mapping class given by a word or by its matrix.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct MappingClassArg {
    /// Twist word, e.g. "m1 l1^-1 [1,1;0,1]".
    #[arg(long = "f")]
    pub word: Option<String>,
    /// Symplectic matrix, rows separated by ';', entries by ','.
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maslov index of three lagrangians.
    Maslov {
        #[command(flatten)]
        surface: Surface,
        /// Three lagrangians, each `std` or a list of classes.
        #[arg(num_args = 3, required = true)]
        lagrangians: Vec<String>,
    },
    /// Product of extended elements, each a word or `word @ n`.
    Compose {
        #[command(flatten)]
        lagrangian: WithLagrangian,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// n_λ, k, j_λ of a mapping class and φ, τ against other classes.
    Nlambda {
        #[command(flatten)]
        lagrangian: WithLagrangian,
        #[command(flatten)]
        f: MappingClassArg,
        /// Words g for the φ(f, g) and τ(f, g) table; defaults to f itself.
        #[arg(long = "g")]
        others: Vec<String>,
    },
    /// Linking matrix of the framed link of a word.
    Linking {
        #[command(flatten)]
        lagrangian: WithLagrangian,
        #[arg(long)]
        word: String,
        /// Leave out the g unlink components.
        #[arg(long)]
        omit_unlink: bool,
    },
    /// Which of Γ̃ ⊃ Γ̃⁺ ⊃ Γ̃⁺⁺ contains (f, n).
    Member {
        #[command(flatten)]
        lagrangian: WithLagrangian,
        #[command(flatten)]
        f: MappingClassArg,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Scalar phase relations in ℤ[1/p][q, κ].
    Cyclo {
        #[arg(long)]
        p: u64,
        /// A single color; defaults to the whole palette.
        #[arg(long)]
        c: Option<u64>,
    },
    /// Run a randomized property suite.
    Verify {
        /// One of maslov, cocycle, walker, turaev-mod4, closure-mod4, mod2,
        /// surgery-congruence, orientation, completion, cyclo.
        suite: Suite,
        #[command(flatten)]
        surface: Surface,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        max_word_length: usize,
    },
}
