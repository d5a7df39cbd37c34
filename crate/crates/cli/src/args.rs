use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Identities, isoterms and finite basis checks for finite monoids.
#[derive(Parser, Debug)]
#[command(name = "isoterm", version, about)]
pub struct Cli {
    /// Worker threads for satisfaction and class searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
    /// Write the structured report to this file, or `-` for standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Give up on a satisfaction search after this many assignments.
    #[arg(long, global = true, value_name = "N")]
    pub node_cap: Option<u64>,
    /// Refuse class windows with more candidates than this.
    #[arg(long, global = true, value_name = "N")]
    pub space_cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a monoid and write its table as JSON.
    Build(BuildArgs),
    /// Monoid construction.
    Monoid {
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Decide whether a monoid satisfies an identity.
    CheckIdentity(CheckArgs),
    /// Decide whether a word is an isoterm for a monoid.
    Isoterm(IsotermArgs),
    /// List the words of bounded length equivalent to a word.
    Class(ClassArgs),
    /// Scattered subwords of bounded length.
    Subwords(SubwordsArgs),
    /// Compare two words under the congruence J_m.
    Jm(JmArgs),
    /// Sufficient conditions for the non-finite basis property.
    Nfb {
        #[command(subcommand)]
        action: NfbAction,
    },
    /// Print a member of a word or identity family.
    Scheme(SchemeArgs),
}

#[derive(Subcommand, Debug)]
pub enum MonoidAction {
    Build(BuildArgs),
}

#[derive(Subcommand, Debug)]
pub enum NfbAction {
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
pub struct BuildSource {
    /// A named monoid such as L1, A01, brandt or ut4.
    #[arg(long, group = "source")]
    pub preset: Option<String>,
    /// Comma-separated words whose subwords form the Dilworth monoid.
    #[arg(long, group = "source", value_name = "WORDS")]
    pub dilworth: Option<String>,
    /// Word list file for the Dilworth monoid.
    #[arg(long, group = "source", value_name = "FILE")]
    pub dilworth_file: Option<PathBuf>,
    /// Reflexive relations on K points.
    #[arg(long, group = "source", value_name = "K")]
    pub reflexive: Option<usize>,
    /// Upper triangular Boolean K×K matrices.
    #[arg(long, group = "source", value_name = "K")]
    pub triangular: Option<usize>,
    /// Direct product of two monoids, each a file or preset.
    #[arg(long, group = "source", num_args = 2, value_names = ["F1", "F2"])]
    pub product: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: BuildSource,
    /// Fix the diagonal of triangular matrices to 1.
    #[arg(long, requires = "triangular")]
    pub unit_diagonal: bool,
    /// Adjoin a fresh identity element.
    #[arg(long)]
    pub adjoin_identity: bool,
    #[arg(long)]
    pub name: Option<String>,
    /// Output file for the monoid table; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// JSON file, preset, `S(w1,w2,...)`, or factors joined by `*`.
    #[arg(long)]
    pub monoid: String,
    /// An identity written `lhs = rhs`.
    #[arg(long)]
    pub identity: String,
}

#[derive(Args, Debug)]
pub struct IsotermArgs {
    #[arg(long)]
    pub monoid: String,
    #[arg(long)]
    pub word: String,
    /// Longest candidate word when the verdict cannot be exact; default |word| + 2.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    #[arg(long)]
    pub monoid: String,
    #[arg(long)]
    pub word: String,
    #[arg(long)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct SubwordsArgs {
    #[arg(long)]
    pub word: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
}

#[derive(Args, Debug)]
pub struct JmArgs {
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionName {
    Sl1,
    Row1,
    Row2,
    Row3,
    Row4,
    Row5,
    Row6,
    Row7,
    Row8,
    Psc,
    El,
    Bsnew,
    Bsnew1,
    Alg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub condition: ConditionName,
    /// Required for every condition except `alg`.
    #[arg(long)]
    pub monoid: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Class-window bound; default |u| + 2 for each word u.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Comma-separated word set for `alg`.
    #[arg(long, value_name = "WORDS")]
    pub words: Option<String>,
    /// Word list file for `alg`.
    #[arg(long, value_name = "FILE", conflicts_with = "words")]
    pub words_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    /// Family name such as row3, sl1, psc, el_e1 or zimin.
    #[arg(long)]
    pub scheme: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
}
