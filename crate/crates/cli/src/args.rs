use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conradlab::dynamics::DEFAULT_N_MAX;
use conradlab::groups::DEFAULT_ELEMENT_CAP;
use serde::Serialize;

/// Exact computations with left-orderings of B(1,l), Tararin groups,
/// C_n and Z^n.
///
/// Exit codes: 0 pass or nothing found, 1 mathematical finding (witness,
/// certificate, failed check), 2 usage or input error, 3 element cap hit.
#[derive(Parser, Debug)]
#[command(name = "conradlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Group family: bs:<l>, tararin:<n>, cn:<n> or abelian:<n>.
    #[arg(long, global = true, default_value = "bs:2")]
    pub family: String,
    /// Ordering descriptor, e.g. smirnov:sqrt2, smirnov:3/4:+, flip:01, slope:sqrt2,1.
    #[arg(long, global = true, conflicts_with = "ord_file")]
    pub ord: Option<String>,
    /// Ordering descriptor as JSON.
    #[arg(long, global = true)]
    pub ord_file: Option<PathBuf>,
    /// Ball radius.
    #[arg(short = 'R', long = "radius", global = true, default_value_t = 4)]
    pub radius: u32,
    /// Exponent bound for condition ii in bounded crossing mode.
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    pub n_max: u32,
    /// Largest number of elements a generated ball may hold.
    #[arg(long, global = true, env = "CONRADLAB_CAP", default_value_t = DEFAULT_ELEMENT_CAP)]
    pub cap: usize,
    /// Output format; `realize` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    /// Omit the timestamp so reruns are byte-identical.
    #[arg(long, global = true)]
    pub reproducible: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Compare two words under --ord.
    Compare { g: String, h: String },
    /// List the C-orderings of --family; exit 0 iff there are 2^(series length).
    Enumerate,
    /// Run one check at radius -R.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Realization table (CSV or JSON) to check instead of building one.
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Search for a crossing on Ball(R), or verify a certificate file.
    Crossing {
        #[command(subcommand)]
        sub: Option<CrossingSub>,
        /// Build the certificate from the first non-Conradian witness instead of searching.
        #[arg(long)]
        from_witness: bool,
        /// Basepoint for the affine action (defaults to the Smirnov parameter).
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Dynamical realization table of Ball(R).
    Realize {
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Probes of the space of orderings.
    Space {
        #[command(subcommand)]
        sub: SpaceSub,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Conradian,
    BiInvariance,
    Convexity,
    Cone,
    Presentation,
    RationalSeries,
    Realization,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationKind {
    Ball,
    Reversed,
    Shuffled,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnumerationArgs {
    /// Order in which ball elements are placed.
    #[arg(long, value_enum, default_value = "ball")]
    pub enumeration: EnumerationKind,
    /// Seed for `--enumeration shuffled`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CrossingSub {
    /// Check conditions i-iii of a certificate (bare or as written by `crossing`).
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum SpaceSub {
    /// Ball-exhaustion distance between two orderings.
    Distance {
        #[arg(long)]
        ord1: String,
        #[arg(long)]
        ord2: String,
    },
    /// Look for a different candidate agreeing with --ord on Ball(R); exit 1 if none.
    Isolate {
        /// smirnov, c-orderings or slopes.
        #[arg(long, default_value = "smirnov")]
        candidates: String,
        #[arg(long)]
        search_radius: Option<u32>,
    },
    /// Whether a sequence of descriptors eventually agrees with --ord on Ball(R).
    Converge {
        /// One term of the sequence; repeat in order.
        #[arg(long = "seq", required = true)]
        seq: Vec<String>,
    },
    /// Find g with conjugate(--ord, g) agreeing with --target on Ball(R).
    Orbit {
        #[arg(long)]
        target: String,
    },
    /// Prefix tree of sign patterns of Smirnov orderings and their opposites,
    /// one of each per threshold gap of Ball(R), thinned to --samples.
    Tree {
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}
