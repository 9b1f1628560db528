use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use treespread::pipeline::{run_pipeline, PipelineConfig};
use treespread::spread::{estimate_spread, parse_queries, uniform_injection, SpreadConfig};
use treespread::{
    gen_bounded_tree, gen_dirac_graph, is_valid_embedding, rng_from_seed, Error, Graph, Tree,
};

/// Spread random spanning-tree embeddings into dense graphs.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a host graph or a tree.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Embed a tree into a graph.
    Embed(EmbedArgs),
    /// Estimate the spread of a sampler by Monte Carlo.
    Spread(SpreadArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with minimum degree at least (delta-frac + alpha) n.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        delta_frac: f64,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long, env = "TREESPREAD_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tree with maximum degree at most max-deg.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
        #[arg(long, env = "TREESPREAD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PipelineArgs {
    /// Piece size parameter.
    #[arg(long = "C", default_value_t = 8)]
    c: usize,
    /// Size slack of the parts.
    #[arg(long = "K", default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, default_value_t = 3)]
    max_deg: usize,
    #[arg(long, default_value_t = 0.15)]
    eps: f64,
    #[arg(long, default_value_t = 0.15)]
    gamma: f64,
    /// Occupancy slack; K/(32 C^3) if omitted.
    #[arg(long)]
    eta: Option<f64>,
    /// Attempts before giving up.
    #[arg(long, default_value_t = 100)]
    max_resample: usize,
    /// Search nodes per piece.
    #[arg(long, default_value_t = treespread::rooted::DEFAULT_BUDGET)]
    search_budget: u64,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            c: self.c,
            k: self.k,
            alpha: self.alpha,
            max_deg: self.max_deg,
            eps: self.eps,
            gamma: self.gamma,
            eta: self.eta,
            max_attempts: self.max_resample,
            search_budget: self.search_budget,
            ..PipelineConfig::default()
        }
    }
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tree: PathBuf,
    /// Tree vertex to pin; the tree's root if omitted.
    #[arg(long)]
    root_tree_vertex: Option<usize>,
    /// Host vertex for the pinned tree vertex; uniform random if omitted.
    #[arg(long)]
    root_graph_vertex: Option<usize>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, env = "TREESPREAD_SEED", default_value_t = 0)]
    seed: u64,
    /// Embedding file (`tree_vertex graph_vertex` lines); stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run metadata file; stderr if omitted.
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampler {
    Pipeline,
    UniformInjection,
}

#[derive(Args)]
struct SpreadArgs {
    #[arg(long, value_enum, default_value_t = Sampler::Pipeline)]
    sampler: Sampler,
    /// Host graph; for the uniform-injection sampler only its size is used.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Size for the uniform-injection sampler when no graph is given.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    root_tree_vertex: Option<usize>,
    #[arg(long)]
    root_graph_vertex: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Query file: per query a line `s`, then `s` lines `x y`.
    #[arg(long)]
    queries: Option<PathBuf>,
    /// Spread parameter q for flagging; 1 disables flagging.
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 0.01)]
    failure_threshold: f64,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, env = "TREESPREAD_SEED", default_value_t = 0)]
    seed: u64,
    /// Report file; stdout if omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Table of raw `x y count` cells.
    #[arg(long)]
    counts: Option<PathBuf>,
    /// Earlier report, usually at half the size, for the doubling diagnostic.
    #[arg(long)]
    baseline: Option<PathBuf>,
}

/// Exit status for an error: 2 for refused input, 3 for exhausted budgets,
/// 1 otherwise.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResampleExhausted { .. }
        | Error::BudgetExceeded(_)
        | Error::SamplerFailure { .. } => 3,
        Error::Degenerate(_)
        | Error::VertexOutOfRange { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidTree(_)
        | Error::Infeasible(_)
        | Error::DegreeCondition(_)
        | Error::SizeMismatch(_)
        | Error::Precondition(_)
        | Error::Parse { .. }
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn emit(path: Option<&Path>, text: &str, fallback_stderr: bool) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None if fallback_stderr => io::stderr().write_all(text.as_bytes()),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn read<T: std::str::FromStr<Err = Error>>(path: &Path) -> Result<T, Error> {
    fs::read_to_string(path)?.parse()
}

fn gen(cmd: GenCommand) -> Result<(), Error> {
    match cmd {
        GenCommand::Graph {
            n,
            delta_frac,
            alpha,
            seed,
            out,
        } => {
            let g = gen_dirac_graph(n, delta_frac, alpha, &mut rng_from_seed(seed))?;
            emit(out.as_deref(), &g.to_string(), false)?;
        }
        GenCommand::Tree {
            n,
            max_deg,
            seed,
            out,
        } => {
            let t = gen_bounded_tree(n, max_deg, &mut rng_from_seed(seed))?;
            emit(out.as_deref(), &t.to_string(), false)?;
        }
    }
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<(), Error> {
    let g: Graph = read(&args.graph)?;
    let t: Tree = read(&args.tree)?;
    let cfg = args.pipeline.config();
    let mut rng = rng_from_seed(args.seed);
    let troot = args.root_tree_vertex.unwrap_or(t.root());
    let v = match args.root_graph_vertex {
        Some(v) => v,
        None if g.n() > 0 => rng.gen_range(0..g.n()),
        None => return Err(Error::Degenerate("empty host".into())),
    };
    let run = run_pipeline(&g, &t, troot, v, &cfg, &mut rng)?;
    if !is_valid_embedding(&t, &g, &run.embedding)? || run.embedding.get(troot) != Some(v) {
        return Err(Error::Precondition(
            "pipeline produced an invalid embedding".into(),
        ));
    }
    emit(args.out.as_deref(), &run.embedding.to_string(), false)?;
    emit(args.meta.as_deref(), &run.metadata(Some(args.seed)), true)?;
    Ok(())
}

fn spread(args: SpreadArgs) -> Result<(), Error> {
    let queries = match &args.queries {
        Some(p) => parse_queries(&fs::read_to_string(p)?)?,
        None => Vec::new(),
    };
    let mut cfg = SpreadConfig {
        q: args.q,
        failure_threshold: args.failure_threshold,
        keep_counts: args.counts.is_some(),
        ..SpreadConfig::new(args.trials, args.seed)
    };
    let report = match args.sampler {
        Sampler::UniformInjection => {
            let n = match (&args.graph, args.n) {
                (Some(p), _) => read::<Graph>(p)?.n(),
                (None, Some(n)) => n,
                (None, None) => return Err(Error::Precondition("give --graph or --n".into())),
            };
            estimate_spread(|rng| Ok(uniform_injection(n, rng)), n, n, &queries, &cfg)?
        }
        Sampler::Pipeline => {
            let (Some(gp), Some(tp)) = (&args.graph, &args.tree) else {
                return Err(Error::Precondition(
                    "the pipeline sampler needs --graph and --tree".into(),
                ));
            };
            let g: Graph = read(gp)?;
            let t: Tree = read(tp)?;
            let pcfg = args.pipeline.config();
            let troot = args.root_tree_vertex.unwrap_or(t.root());
            if args.root_graph_vertex.is_some() {
                cfg.pinned = Some(troot);
            }
            let fixed = args.root_graph_vertex;
            let n = g.n();
            estimate_spread(
                |rng| {
                    let v = fixed.unwrap_or_else(|| rng.gen_range(0..n));
                    run_pipeline(&g, &t, troot, v, &pcfg, rng).map(|r| r.embedding)
                },
                t.n(),
                n,
                &queries,
                &cfg,
            )?
        }
    };
    let mut kv = report.to_kv();
    if let Some(p) = &args.baseline {
        kv.push_str(&doubling_lines(
            &fs::read_to_string(p)?,
            report.c_hat,
            report.max_p,
        )?);
    }
    let text = format!("{kv}\n{}", report.query_table());
    emit(args.report.as_deref(), &text, false)?;
    if let (Some(p), Some(table)) = (&args.counts, report.counts_table()) {
        fs::write(p, table)?;
    }
    Ok(())
}

/// `c_hat` and `max_p` ratios against an earlier report.
fn doubling_lines(baseline: &str, c_hat: f64, max_p: f64) -> Result<String, Error> {
    let field = |key: &str| -> Result<f64, Error> {
        baseline
            .lines()
            .enumerate()
            .find_map(|(i, l)| {
                let (k, v) = l.split_once(' ')?;
                (k == key).then(|| {
                    v.trim().parse::<f64>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: e.to_string(),
                    })
                })
            })
            .unwrap_or_else(|| {
                Err(Error::Precondition(format!(
                    "baseline report has no `{key}`"
                )))
            })
    };
    let (n0, c0, p0) = (field("host_n")?, field("c_hat")?, field("max_p")?);
    Ok(format!(
        "baseline_host_n {n0}\nbaseline_c_hat {c0:.4}\nc_hat_ratio {:.4}\nmax_p_ratio {:.4}\n",
        c_hat / c0,
        max_p / p0
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(cmd) => gen(cmd),
        Command::Embed(args) => embed(args),
        Command::Spread(args) => spread(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
