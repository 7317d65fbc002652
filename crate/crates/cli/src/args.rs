use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "unicon4", version, about = "Analyse, transform, decompose and generate uniformly 4-connected graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Input graph format; by default taken from the file extension, then
    /// from the content.
    #[arg(long, global = true, value_enum)]
    pub format: Option<InputFormat>,
    /// Readable text instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    /// Cap on paths enumerated by one path search.
    #[arg(long, global = true)]
    pub max_paths: Option<usize>,
    /// Cap on path length in edges.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Cap on predecessor candidates examined while decomposing.
    #[arg(long, global = true)]
    pub search_budget: Option<usize>,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "UNICON4_THREADS")]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    Edges,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Graph6,
    Edges,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Delta1,
    Delta2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Lower,
    Higher,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Connectivity, local-connectivity extremes and the uniformity verdict.
    Analyze { path: PathBuf },
    /// Removability of every edge of a 4-connected graph.
    Removable { path: PathBuf },
    /// The reduction of one edge, with the vertex id map.
    Reduce {
        path: PathBuf,
        /// Edge as `u,v`.
        #[arg(long)]
        edge: String,
        /// Which endpoint is examined first.
        #[arg(long, value_enum, default_value = "lower")]
        order: Order,
    },
    /// Validate and apply one expansion operation.
    Apply {
        path: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// The triple X as `a,b,c`.
        #[arg(long)]
        x: String,
        /// The vertex y (delta1) or the triple Y as `a,b,c` (delta2).
        #[arg(long)]
        y: String,
        /// Edges removed inside X, as `u,v` (repeatable) or `u-v,u-v`.
        #[arg(long, required = true)]
        ex: Vec<String>,
        /// Edges removed inside Y (delta2 only).
        #[arg(long)]
        ey: Vec<String>,
        /// Refuse the operation unless its parameter set is quasi 4-compatible.
        #[arg(long)]
        check_compat: bool,
        /// Write the resulting graph here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// A construction trace from C5^2 or C6^2.
    Decompose {
        path: PathBuf,
        /// Write the trace file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Rebuild a graph from a trace file.
    Replay {
        trace: PathBuf,
        /// Also check the result is isomorphic to this graph.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Every uniformly 4-connected graph up to an order, by expansion.
    Gen {
        #[arg(long)]
        max_n: usize,
    },
    /// Generation against exhaustive enumeration, plus decomposition round trips.
    Verify {
        #[arg(long)]
        max_n: usize,
    },
    /// Rewrite a graph in another format.
    Convert {
        path: PathBuf,
        #[arg(long, value_enum)]
        to: OutputFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Removable { .. } => "removable",
            Command::Reduce { .. } => "reduce",
            Command::Apply { .. } => "apply",
            Command::Decompose { .. } => "decompose",
            Command::Replay { .. } => "replay",
            Command::Gen { .. } => "gen",
            Command::Verify { .. } => "verify",
            Command::Convert { .. } => "convert",
        }
    }
}
