use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitpoly::pipeline::{ArithmeticMode, DedupeKey};
use splitpoly::splitting::{ConventionOptions, SupportQuotient};

#[derive(Debug, Parser)]
#[command(name = "splitpoly", version, about = "Exact search for splitting polygons in line arrangements")]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (and optionally list) plinths of an arrangement.
    Plinths {
        arrangement: PathBuf,
        #[command(flatten)]
        conv: ConventionArgs,
        /// List every plinth, not just the count.
        #[arg(long)]
        list: bool,
        /// Count under every convention and report pairs per dedupe key.
        #[arg(long, conflicts_with = "list")]
        census: bool,
    },
    /// Closing polynomial of one plinth.
    Delta {
        arrangement: PathBuf,
        #[command(flatten)]
        plinth: PlinthArgs,
    },
    /// Splitting polygons of one plinth, plus a nonsplitting witness.
    Polygons {
        arrangement: PathBuf,
        #[command(flatten)]
        plinth: PlinthArgs,
    },
    /// Dimension of the tangent space of the realization space.
    Rigidity { arrangement: PathBuf },
    /// A lattice isomorphism between two arrangements (exit 1 if none).
    Iso { first: PathBuf, second: PathBuf },
    /// Nonarithmetic pairs from a rigid arrangement.
    Algo1 {
        arrangement: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Which root polygon of the first stage to keep.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        branch: u8,
    },
    /// Rational pairs from a rigid arrangement over Q.
    Algo2 {
        arrangement: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Re-check certificates from their raw line data.
    Verify { certificates: PathBuf },
    /// Run the three built-in examples end to end and check the published
    /// pairs come out.
    VerifyPaper {
        /// Search the MacLane example without restricting plinths or lines.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quotient {
    Ordered,
    Cyclic,
    Dihedral,
}

#[derive(Debug, Clone, Args)]
pub struct ConventionArgs {
    /// Polygon length.
    #[arg(long, default_value_t = 3)]
    pub length: usize,
    /// Which support tuples count as the same plinth.
    #[arg(long, value_enum, default_value_t = Quotient::Dihedral)]
    pub convention: Quotient,
    /// Require the pivots of a plinth to be distinct points.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub pivots_distinct: bool,
    /// Drop supports whose lines all pass through one point.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub skip_concurrent_supports: bool,
}

impl ConventionArgs {
    pub fn options(&self) -> ConventionOptions {
        ConventionOptions {
            quotient: match self.convention {
                Quotient::Ordered => SupportQuotient::Ordered,
                Quotient::Cyclic => SupportQuotient::Cyclic,
                Quotient::Dihedral => SupportQuotient::Dihedral,
            },
            pivots_distinct: self.pivots_distinct,
            skip_concurrent_supports: self.skip_concurrent_supports,
        }
    }
}

/// A plinth given as a JSON file or as 1-based line numbers.
#[derive(Debug, Clone, Args)]
pub struct PlinthArgs {
    /// Plinth JSON file (0-based line indices).
    #[arg(long, conflicts_with_all = ["support", "pivots"])]
    pub plinth: Option<PathBuf>,
    /// Support lines, 1-based, e.g. `1,2,4`.
    #[arg(long, value_delimiter = ',', requires = "pivots")]
    pub support: Vec<usize>,
    /// One pivot per support edge, each given by two lines through it,
    /// e.g. `3.4,3.5,2.5`.
    #[arg(long, value_delimiter = ',', requires = "support")]
    pub pivots: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dedupe {
    Raw,
    Lattice,
    Projective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arith {
    Literal,
    Pgl,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub conv: ConventionArgs,
    /// Extra lines tried before the final stage.
    #[arg(long, default_value_t = 2)]
    pub max_extra_lines: usize,
    /// Which pairs count as the same when emitting.
    #[arg(long, value_enum, default_value_t = Dedupe::Lattice)]
    pub dedupe: Dedupe,
    /// Whether the Galois image must equal the partner or only be
    /// projectively equivalent to it.
    #[arg(long, value_enum, default_value_t = Arith::Literal)]
    pub arithmetic_mode: Arith,
}

impl SearchArgs {
    pub fn dedupe_key(&self) -> DedupeKey {
        match self.dedupe {
            Dedupe::Raw => DedupeKey::Raw,
            Dedupe::Lattice => DedupeKey::Lattice,
            Dedupe::Projective => DedupeKey::Projective,
        }
    }

    pub fn arithmetic(&self) -> ArithmeticMode {
        match self.arithmetic_mode {
            Arith::Literal => ArithmeticMode::Literal,
            Arith::Pgl => ArithmeticMode::UpToPgl,
        }
    }
}
