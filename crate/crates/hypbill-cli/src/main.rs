//! `hypbill`: command-line front end for the hypbill library.
//!
//! Exit status is 0 on success, 2 for bad parameters and 3 for numeric,
//! resource or other failures. Options with defaults can also be set
//! through `HYPBILL_*` environment variables.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypbill::Error;

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "hypbill", version, about = "Hyperbolic tilings, growth series and billiard words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Tiling {
    /// Number of sides of each tile.
    #[arg(long, env = "HYPBILL_P")]
    pub p: u32,
    /// Number of tiles around each vertex.
    #[arg(long, env = "HYPBILL_Q")]
    pub q: u32,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct Output {
    /// Output format; each command has its own default.
    #[arg(long, value_enum, env = "HYPBILL_FORMAT")]
    pub format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with_all = ["format", "csv"])]
    pub json: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, conflicts_with = "format")]
    pub csv: bool,
}

impl Output {
    pub fn resolve(self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Growth series of tiles by distance and its first coefficients.
    Growth {
        #[command(flatten)]
        tiling: Tiling,
        /// Print the coefficients for n = 0..=terms.
        #[arg(long, default_value_t = 10, env = "HYPBILL_TERMS")]
        terms: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Exponential growth rate of the tiling.
    Alpha {
        #[command(flatten)]
        tiling: Tiling,
        #[arg(long, default_value_t = 1e-16, env = "HYPBILL_TOL")]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Reproduces the published tables of growth rates and bounds.
    Tables {
        /// 1 for even q, 3 for the odd-q bounds.
        #[arg(long)]
        which: u32,
        #[arg(long, default_value_t = 1e-16, env = "HYPBILL_TOL")]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Billiard words: admissibility and equivalence classes.
    Word {
        #[command(subcommand)]
        action: WordAction,
    },
    /// Tiling paths: distances and minimality.
    Path {
        #[command(subcommand)]
        action: PathAction,
    },
    /// Growth rate of a forbidden-word language.
    LangRate {
        #[command(flatten)]
        tiling: Tiling,
        #[arg(long, value_enum)]
        rule: RuleArg,
        #[arg(long, default_value_t = 1e-16, env = "HYPBILL_TOL")]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Draws the tiling in the Poincare disk as SVG.
    Draw {
        #[command(flatten)]
        tiling: Tiling,
        /// Construction depth; chosen from the radius and word when omitted.
        #[arg(long, env = "HYPBILL_DEPTH")]
        depth: Option<u32>,
        /// Where to write the picture.
        #[arg(long)]
        svg: PathBuf,
        /// Trace a segment whose word lies in the class of this word.
        #[arg(long)]
        word: Option<String>,
        /// Draw tiles up to this distance from the base tile.
        #[arg(long, default_value_t = 4, env = "HYPBILL_RADIUS")]
        radius: u32,
        #[arg(long, default_value_t = 800, env = "HYPBILL_SVG_SIZE")]
        size: u32,
        #[arg(long)]
        no_labels: bool,
        /// Random segments tried when looking for a witness of the word class.
        #[arg(long, default_value_t = 64, env = "HYPBILL_BUDGET")]
        budget: u32,
        #[arg(long, default_value_t = 1, env = "HYPBILL_SEED")]
        seed: u64,
        #[command(flatten)]
        graph: SaveGraph,
        #[command(flatten)]
        output: Output,
    },
    /// Counts segments between vertices by combinatorial length.
    Census {
        #[command(flatten)]
        tiling: Tiling,
        #[arg(long)]
        kmax: u32,
        /// Construction depth; chosen from `kmax` when omitted.
        #[arg(long, env = "HYPBILL_DEPTH")]
        depth: Option<u32>,
        /// Segment counts p(1) and p(2); when both are given, p(n) is
        /// reported for n up to kmax.
        #[arg(long, requires = "p2")]
        p1: Option<i64>,
        #[arg(long, requires = "p1")]
        p2: Option<i64>,
        #[command(flatten)]
        graph: SaveGraph,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordAction {
    /// Checks a word against a rule family.
    Check {
        #[command(flatten)]
        tiling: Tiling,
        #[command(flatten)]
        word: WordArg,
        /// Defaults to `e` for even q and `o-upper` for odd q.
        #[arg(long, value_enum)]
        rules: Option<RuleArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Lists the equivalence class of a word.
    Class {
        #[command(flatten)]
        tiling: Tiling,
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = hypbill::words::DEFAULT_CLASS_CAP, env = "HYPBILL_CLASS_CAP")]
        cap: usize,
        /// Print at most this many members.
        #[arg(long, default_value_t = 100)]
        show: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Counts admissible classes of one length (even q).
    Classes {
        #[command(flatten)]
        tiling: Tiling,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 50_000_000, env = "HYPBILL_BUDGET")]
        budget: usize,
        /// Print at most this many representatives.
        #[arg(long, default_value_t = 100)]
        show: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WordArg {
    /// Letters as digits (`1212`) or comma separated (`10,3,10`).
    #[arg(long)]
    pub word: String,
    /// Read letters as 0-based and shift them to 1..=p.
    #[arg(long)]
    pub zero_based: bool,
    /// Cyclic order of the labels around the base tile, e.g. `1243`.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PathAction {
    /// Tiling distance between two tiles, with a shortest path.
    Dist {
        #[command(flatten)]
        tiling: Tiling,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value_t = 8, env = "HYPBILL_DEPTH")]
        depth: u32,
        #[command(flatten)]
        graph: SaveGraph,
        #[command(flatten)]
        output: Output,
    },
    /// Decides whether a path is minimal and explains why not.
    Minimal {
        #[command(flatten)]
        tiling: Tiling,
        /// The path followed by a word from the base tile.
        #[arg(long, conflicts_with = "tiles", required_unless_present = "tiles")]
        word: Option<String>,
        #[arg(long, requires = "word")]
        zero_based: bool,
        /// An explicit path as comma separated tile ids.
        #[arg(long, value_delimiter = ',')]
        tiles: Option<Vec<u32>>,
        /// Construction depth; chosen from the path length when omitted.
        #[arg(long, env = "HYPBILL_DEPTH")]
        depth: Option<u32>,
        #[command(flatten)]
        graph: SaveGraph,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct SaveGraph {
    /// Also write the constructed tiling graph as a JSON document.
    #[arg(long)]
    pub save_graph: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    E,
    OUpper,
    OLower,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_parameter_error() {
        2
    } else {
        3
    }
}
