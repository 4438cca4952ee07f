mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hnngenus::Error;

/// Classification and profinite genus of HNN-extensions of finite groups.
#[derive(Debug, Parser)]
#[command(name = "hnngenus", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest group whose automorphisms are enumerated.
    #[arg(long, global = true, default_value_t = 128)]
    pub cap_aut: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// An HNN-extension given inline or as a file.
#[derive(Debug, Args)]
pub struct HnnArgs {
    /// HNN data file; replaces --base, --H, --K and --f.
    #[arg(long, conflicts_with_all = ["base", "h", "k", "f"])]
    pub a: Option<PathBuf>,
    /// Base group: inline spec (e.g. `named:dihedral:8`), JSON, or a JSON file.
    #[arg(long)]
    pub base: Option<String>,
    /// Generators of H, comma separated.
    #[arg(long = "H", id = "h", allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Generators of K (defaults to H).
    #[arg(long = "K", id = "k", allow_hyphen_values = true)]
    pub k: Option<String>,
    /// The map on generators, e.g. `c->c,r2->r2c` (defaults to the identity when K = H).
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
}

/// A base group with an optional pair of subgroups.
#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub base: String,
    #[arg(long = "H", id = "h", allow_hyphen_values = true)]
    pub h: String,
    #[arg(long = "K", id = "k", allow_hyphen_values = true)]
    pub k: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClosedFormKind {
    /// `(n + d) / 2` for `Ãut_G1(H)` central in `Out(H)`.
    G1,
    /// The piecewise formula for central cyclic `H`.
    CentralCyclic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of isomorphism classes of HNN(G1, H, K, f) over f in Iso(H, K).
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// Also evaluate a closed form, failing if its hypotheses do not hold.
        #[arg(long, value_enum)]
        closed_form: Option<ClosedFormKind>,
    },
    /// Orbit representatives and the permutation group acting on Iso(H, K).
    Orbits {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Genus report of one extension.
    Genus {
        #[command(flatten)]
        hnn: HnnArgs,
    },
    /// Decides isomorphism of two extensions over the same base.
    Isomorphic {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Homomorphism counts into the probe catalog, or a comparison with --b.
    Fingerprint {
        #[command(flatten)]
        hnn: HnnArgs,
        #[arg(long)]
        b: Option<PathBuf>,
        /// Largest probe order.
        #[arg(long, default_value_t = 60)]
        max_order: usize,
    },
    /// Aut(G1)-orbits of pairs of subgroup classes with their class counts.
    Catalog {
        #[arg(long)]
        base: String,
        /// Restrict to subgroups isomorphic to the one generated by these elements.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Total number of isomorphism classes over all H, K and f.
    Total {
        #[arg(long)]
        base: String,
    },
}

/// Hard upper limits for the cap flags.
pub const MAX_CAP_AUT: usize = 1024;
pub const MAX_PROBE_ORDER: usize = 120;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{what}: {source}")]
    Input { what: String, source: Error },
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Output(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Input { source, .. } | CliError::Core(source) => source,
            CliError::Io { .. } | CliError::Usage(_) => return 2,
            CliError::Output(_) => return 1,
        };
        match core {
            Error::CapExceeded { .. } => 3,
            Error::HypothesisNotVerified(_) => 4,
            Error::Parse(_)
            | Error::BadTable(_)
            | Error::BadParams { .. }
            | Error::UnknownName(_)
            | Error::NotASubgroup(_)
            | Error::NotAnIsomorphism(_)
            | Error::NotAssociative { .. }
            | Error::NoIdentity
            | Error::NoInverse(_) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
