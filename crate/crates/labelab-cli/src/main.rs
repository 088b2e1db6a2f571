//! `labelab`: encode, decode, verify and search adjacency labelings.
//!
//! Exit codes: 0 positive, 1 negative (including rejected witnesses),
//! 2 usage or parse error, 3 unknown (a budget ran out).

mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labelab_core::search::SearchBudget;

use crate::commands::Ctx;
use crate::inputs::Loader;
use crate::report::Report;

#[derive(Parser)]
#[command(
    name = "labelab",
    version,
    about = "Adjacency labeling schemes: encoders, decoders, search and reductions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Search node budget.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_nodes: u64,
    /// Largest graph a search accepts.
    #[arg(long, global = true, default_value_t = 64)]
    max_vertices: usize,
    /// Wall-clock limit for searches, in seconds.
    #[arg(long, global = true)]
    timeout: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodeKind {
    Interval,
    Dichotomic,
    Lng,
    OrPointer,
    AndForest,
    Twin,
    Cw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Or,
    And,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    /// Every ordered pair, including self-pairs.
    All,
    /// Only pairs of distinct vertices.
    Distinct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Bounded,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PbsName {
    Dot,
    Disk,
    Segment,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build labels for a graph or model with a constructive encoder.
    Encode(EncodeArgs),
    /// Decode a label file into the graph it represents.
    Decode(DecodeArgs),
    /// Check a witness against a graph.
    Verify(VerifyArgs),
    /// Search the least labeling of a graph under a scheme.
    Search(SearchArgs),
    /// Pointer labelings with a fixed or least number of slots.
    PointerNumber(PointerArgs),
    /// Test membership in a built-in graph class.
    Recognize(RecognizeArgs),
    /// Algebraic and subgraph representations.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// First-order formulas over label numbers.
    #[command(subcommand)]
    Fo(FoCmd),
    /// Polynomial boolean systems.
    #[command(subcommand)]
    Pbs(PbsCmd),
    /// Diagonal graphs avoiding a list of decoders.
    Diag(DiagArgs),
    /// Enumerate labelled or canonical graphs.
    Enumerate(EnumerateArgs),
    /// Run the acceptance criteria.
    Props(PropsArgs),
}

#[derive(Args)]
pub struct EncodeArgs {
    #[arg(long, value_enum)]
    pub scheme: EncodeKind,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Interval model file (interval encoder).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Degeneracy bound for the or-pointer encoder (default: the degeneracy).
    #[arg(long)]
    pub c: Option<usize>,
    /// Slot count (twin) or clique-width parameter (cw).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Or)]
    pub mode: Mode,
    /// Module tree for the cw encoder (default: built from the graph).
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DecodeArgs {
    /// Scheme file or built-in name.
    #[arg(long)]
    pub scheme: String,
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Scheme file or built-in name, used with --labels.
    #[arg(long, requires = "labels")]
    pub scheme: Option<String>,
    #[arg(long, requires = "scheme")]
    pub labels: Option<PathBuf>,
    /// Pointer labeling file.
    #[arg(long, conflicts_with_all = ["scheme", "labels", "rep"])]
    pub pointer: Option<PathBuf>,
    /// Subgraph representation file.
    #[arg(long, conflicts_with_all = ["scheme", "labels"])]
    pub rep: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Scope::Distinct)]
    pub scope: Scope,
}

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub scheme: String,
    #[arg(long)]
    pub graph: PathBuf,
    /// Search out/in label pairs instead of single labels.
    #[arg(long)]
    pub io: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PointerArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Require distinct ids.
    #[arg(long)]
    pub bijective: bool,
    /// Decide a fixed slot count instead of minimizing.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RecognizeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// forest, interval, cograph, dichotomic, lng or all.
    #[arg(long)]
    pub class: String,
}

#[derive(Subcommand)]
pub enum ReduceCmd {
    /// Check an algebraic (--bf, --witness) or subgraph (--rep) representation.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with_all = ["bf", "witness"])]
        rep: Option<PathBuf>,
        /// Boolean function file or inline `<arity>:<hex>`.
        #[arg(long, requires = "witness")]
        bf: Option<String>,
        #[arg(long)]
        witness: Vec<PathBuf>,
    },
    /// Search algebraic witnesses in a class (--class) or a vertex map into a host (--host).
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        bf: String,
        #[arg(long, conflicts_with = "host", required_unless_present = "host")]
        class: Option<String>,
        #[arg(long)]
        host: Option<PathBuf>,
        /// Output file (subgraph) or directory (algebraic witnesses).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a constructive reduction; the host graph is written next to --out.
    Builtin {
        /// dichotomic-paths, lng-tcpaths or tcpaths-interval.
        #[arg(long)]
        name: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum FoCmd {
    /// Evaluate a formula under an assignment `x1..xk,y1..yk`.
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Vertex count; the universe bound is n^c.
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        c: u32,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Bounded)]
        semantics: SemanticsArg,
    },
    /// Overflow guard transform.
    Guard {
        #[arg(long)]
        formula: String,
    },
    /// Quantifier elimination for order formulas.
    Qe {
        #[arg(long)]
        formula: String,
    },
    /// Decompose into atoms and a boolean function.
    Atoms {
        #[arg(long)]
        formula: String,
    },
    /// Normalize a linear atom; with --labels, rewrite numeric labels to two-number form.
    Normalize {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        c: u32,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum PbsCmd {
    /// Evaluate a system on rational values `x1..xk,y1..yk`.
    Eval {
        #[arg(long)]
        pbs: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Rewrite a system over the rationals into one over the naturals.
    Transform {
        #[arg(long)]
        pbs: PathBuf,
        /// Also map these rational values to natural-number values.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the graphs realized with small labels.
    Probe {
        #[arg(long)]
        pbs: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: u64,
    },
    /// Write a built-in system.
    Builtin {
        #[arg(long, value_enum)]
        name: PbsName,
        /// Dimension of the dot-product system.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct DiagArgs {
    /// Decoder list file (default: the built-in three-decoder list).
    #[arg(long)]
    pub decoders: Option<PathBuf>,
    #[arg(long)]
    pub prefix: usize,
    #[arg(long, default_value_t = 4096)]
    pub max_candidates: u64,
    /// Write each diagonal graph to this directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub directed: bool,
    #[arg(long)]
    pub loops: bool,
    /// One representative per isomorphism class.
    #[arg(long)]
    pub canonical: bool,
    /// Keep only members of a built-in class.
    #[arg(long)]
    pub class: Option<String>,
    /// Print only the number of graphs.
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args)]
pub struct PropsArgs {
    /// Run only these criteria.
    #[arg(long)]
    pub criterion: Vec<u32>,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut report = Report::new(&args);
    let budget = SearchBudget {
        max_vertices: cli.global.max_vertices,
        max_nodes: cli.global.max_nodes,
        time_limit: cli.global.timeout.map(Duration::from_secs_f64),
    };
    if let Some(w) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut ctx = Ctx {
        loader: Loader::default(),
        report: &mut report,
        budget,
        seed: cli.global.seed,
    };
    let result = match &cli.cmd {
        Cmd::Encode(a) => commands::encode(a, &mut ctx),
        Cmd::Decode(a) => commands::decode(a, &mut ctx),
        Cmd::Verify(a) => commands::verify(a, &mut ctx),
        Cmd::Search(a) => commands::search(a, &mut ctx),
        Cmd::PointerNumber(a) => commands::pointer(a, &mut ctx),
        Cmd::Recognize(a) => commands::recognize(a, &mut ctx),
        Cmd::Reduce(c) => commands::reduce(c, &mut ctx),
        Cmd::Fo(c) => commands::fo(c, &mut ctx),
        Cmd::Pbs(c) => commands::pbs(c, &mut ctx),
        Cmd::Diag(a) => commands::diag(a, &mut ctx),
        Cmd::Enumerate(a) => commands::enumerate(a, &mut ctx),
        Cmd::Props(a) => commands::props(a, &mut ctx),
    };
    let seen = std::mem::take(&mut ctx.loader.seen);
    report.inputs = seen;
    let code = match result {
        Ok(verdict) => verdict.exit_code(),
        Err(e) => {
            report.outcome = format!("error: {e}");
            2
        }
    };
    eprint!("{}", report.render());
    ExitCode::from(code as u8)
}
