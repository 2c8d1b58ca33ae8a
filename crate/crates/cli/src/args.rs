use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "qwick",
    version,
    about = "Normal ordering of q-deformed boson words (c c+ - q c+ c = 1)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest number of diagrams the diagram engine may enumerate.
    #[arg(
        long,
        global = true,
        env = "QWICK_MAX_DIAGRAMS",
        default_value_t = qwick::diagrams::DEFAULT_MAX_DIAGRAMS
    )]
    pub max_diagrams: u64,

    /// Also evaluate every coefficient at this rational q ("p/q" or an integer).
    #[arg(long, global = true, value_parser = parse_rational)]
    pub eval_q: Option<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Diagrams,
    Rewrite,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Diagrams => "diagrams",
            Method::Rewrite => "rewrite",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order a word; reads one word per line from stdin when WORD is omitted or "-".
    NormalOrder {
        word: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Rewrite)]
        method: Method,
    },
    /// Count, list and inspect the Feynman diagrams of a word.
    Diagrams {
        word: String,
        /// Restrict to diagrams with this many edges.
        #[arg(long)]
        degree: Option<usize>,
        /// Print every diagram as "i-j,..." pairs.
        #[arg(long)]
        list: bool,
        /// Append crossing statistics and the weight to every listed diagram.
        #[arg(long)]
        stats: bool,
    },
    /// q-Stirling numbers of the second kind S_q(n, k), or the whole row k = 1..n.
    Stirling {
        n: usize,
        k: Option<usize>,
        /// Print the classical (q = 1) values.
        #[arg(long)]
        q1: bool,
    },
    /// q-rook coefficients R_k(q): summed weights of the degree-k diagrams.
    Rook {
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Rewrite)]
        method: Method,
    },
    /// Draw the linear representation of a diagram.
    Render {
        word: String,
        /// Edges as "i-j,..."; empty for no edges.
        #[arg(default_value = "")]
        diagram: String,
        /// Emit SVG instead of ASCII art.
        #[arg(long)]
        svg: bool,
        /// Columns (ASCII) or pixels (SVG) per vertex.
        #[arg(long)]
        scale: Option<usize>,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("invalid rational '{s}': {e}"))
}
