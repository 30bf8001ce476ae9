use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "homocert",
    version,
    about = "Exact certificates for homology of finite covers of graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the map Phi and check it on every nonzero vector of F_p^n.
    Phi(Opts),
    /// Enumerate the Zassenhaus quotient and run the center power check.
    Group(Opts),
    /// Certify that the orbit span is a proper subspace of H_1.
    Witness(Opts),
    /// Fox matrix rows, transvection powers on W and an infinite-order search.
    Chainrep(Opts),
    /// Build the integral representation and check the orbit orders.
    Intrep(Opts),
    /// Complete a word to a finite-index covering in which it is primitive.
    Hall {
        /// The word, e.g. abAB (uppercase letters are inverses).
        word: String,
        #[command(flatten)]
        opts: Opts,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Phi(_) => "phi",
            Command::Group(_) => "group",
            Command::Witness(_) => "witness",
            Command::Chainrep(_) => "chainrep",
            Command::Intrep(_) => "intrep",
            Command::Hall { .. } => "hall",
        }
    }

    pub fn opts(&self) -> &Opts {
        match self {
            Command::Phi(o) | Command::Group(o) | Command::Witness(o) | Command::Chainrep(o) | Command::Intrep(o) => o,
            Command::Hall { opts, .. } => opts,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Txt,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct Opts {
    /// Rank of the free group.
    #[arg(long)]
    pub n: Option<usize>,
    /// Prime.
    #[arg(long)]
    pub p: Option<u64>,
    /// Zassenhaus filtration parameter.
    #[arg(long)]
    pub k: Option<u32>,
    /// q8, zassenhaus, or a path to a JSON surjection file.
    #[arg(long, default_value = "q8")]
    pub preset: String,
    /// primitives, p-primitives, or words:w1,w2,... for custom seeds.
    #[arg(long, default_value = "p-primitives")]
    pub orbit: String,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    /// Bound on enumerated groups, orbit balls and verifier sweeps.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Bound on search steps or witness candidates.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[serde(skip)]
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
