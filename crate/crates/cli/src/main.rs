use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use univ_core::construction::{build_universal, HostGraph};
use univ_core::embedding::{embed_forest, embed_tree_full, validate_embedding};
use univ_core::harness::{self, Mutation, Profile, TableMode, VerificationReport};
use univ_core::separators::{split_one_sep, split_one_sep_tw, split_three, split_two_sep, split_two_sep_tw, DeltaContext};
use univ_core::treewidth::{
    build_universal_tw_with, count_edges_tw, embed_graph_full_tw, embed_graph_tw, host_view, lower_bound_edges,
    validate_tw_embedding, T3Reading, TwHostGraph,
};
use univ_core::{io, Arity, Error, Graph};

#[derive(Parser)]
#[command(name = "univ", version, about = "Sparse universal graphs for trees and bounded treewidth")]
struct Cli {
    /// Worker threads for parallel suites (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Default seed for randomized commands.
    #[arg(long, global = true, env = "UNIV_SEED", default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Labels {
    Position,
    Address,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    BaseAligned,
    Literal,
    WholeBlock,
}

impl From<Reading> for T3Reading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::BaseAligned => T3Reading::BaseAligned,
            Reading::Literal => T3Reading::Literal,
            Reading::WholeBlock => T3Reading::WholeBlock,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitMode {
    Forest3,
    ForestCor1,
    ForestCor2,
    Tw,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Tree,
    Tw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    Relabel,
    DropHalfBlock,
}

#[derive(Subcommand)]
enum Command {
    /// Write U(n,d), or U(n,3,w) with --treewidth, as a PACE graph.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long)]
        treewidth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Reading::BaseAligned)]
        t3: Reading,
        #[arg(long)]
        out: PathBuf,
        /// Also list each vertex's address as comment lines.
        #[arg(long, value_enum, default_value_t = Labels::Position)]
        labels: Labels,
    },
    /// Embed a forest (or an n-vertex tree) into U(n,d).
    Embed {
        /// Host as `n,d`.
        #[arg(long)]
        host: String,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Labels::Position)]
        labels: Labels,
    },
    /// Embed a graph with a tree decomposition into U(n,3,w).
    TwEmbed {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
        #[arg(long, value_enum, default_value_t = Reading::BaseAligned)]
        t3: Reading,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Labels::Position)]
        labels: Labels,
    },
    /// Print the treewidth lower bound next to the edge count of U(n,3,w).
    TwBounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: usize,
    },
    /// Run a separator procedure on a forest or graph.
    Split {
        #[arg(long, value_enum)]
        mode: SplitMode,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long)]
        w: Option<usize>,
        /// Lower bound m (forest3).
        #[arg(long)]
        m: Option<usize>,
        /// Upper bound M (forest3).
        #[arg(long = "big-m")]
        big_m: Option<usize>,
        /// Block size N (corollaries).
        #[arg(long = "big-n")]
        big_n: Option<usize>,
        /// Offset X (corollaries).
        #[arg(long)]
        x: Option<usize>,
    },
    /// Embed every free tree on up to n-max vertices and cross-check small sizes by brute force.
    Verify {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Embed random partial k-trees into U(n',3,w) for n' <= n.
    VerifyTw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Edge-count table.
    Table {
        #[arg(long, value_enum)]
        mode: TableKind,
        /// Comma-separated list of n.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        w: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the self-test suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Errors that map to exit code 2 (bad input) rather than 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Verification that ran but did not pass (exit 1, nothing else to report).
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn parsed<T>(path: &Path, r: univ_core::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => Usage(format!("{}: {e}", path.display())).into(),
        other => anyhow::Error::from(other),
    })
}

fn arity(d: u32) -> anyhow::Result<Arity> {
    Arity::new(d).map_err(|e| Usage(e.to_string()).into())
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tree_label(host: &HostGraph, pos: u64, labels: Labels) -> String {
    match labels {
        Labels::Position => (pos - host.offset).to_string(),
        Labels::Address => host.layout.address(pos).to_string(),
    }
}

fn tw_label(host: &TwHostGraph, pos: u64, labels: Labels) -> String {
    match labels {
        Labels::Position => (pos - host.offset).to_string(),
        Labels::Address => host.layout.address(pos).to_string(),
    }
}

fn print_reports(reports: &[VerificationReport], format: Format) -> anyhow::Result<()> {
    for r in reports {
        match format {
            Format::Text => println!("{r}"),
            Format::Jsonl => println!(
                "{}",
                json!({
                    "suite": r.suite,
                    "passed": r.passed(),
                    "instances": r.instances,
                    "failures": r.failures,
                    "seconds": r.elapsed.as_secs_f64(),
                })
            ),
        }
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failed.into())
    }
}

fn print_split(json: serde_json::Value) {
    println!("{json}");
}

fn one_based(v: &[u32]) -> Vec<u32> {
    v.iter().map(|x| x + 1).collect()
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Construct { n, d, treewidth, t3, out, labels } => {
            let mut text;
            if let Some(w) = treewidth {
                if d != 3 {
                    return Err(Usage("--treewidth requires --d 3".into()).into());
                }
                let host = build_universal_tw_with(n, w, t3.into()).map_err(|e| Usage(e.to_string()))?;
                text = io::write_graph(&host.graph);
                if labels == Labels::Address {
                    for i in 0..host.n() as u32 {
                        text.push_str(&format!("c v {} {}\n", i + 1, host.address(i)));
                    }
                }
            } else {
                let host = build_universal(n, arity(d)?).map_err(|e| Usage(e.to_string()))?;
                text = io::write_graph(&host.graph);
                if labels == Labels::Address {
                    for i in 0..host.n() as u32 {
                        text.push_str(&format!("c v {} {}\n", i + 1, host.address(i)));
                    }
                }
            }
            emit(Some(&out), &text)
        }
        Command::Embed { host, tree, out, labels } => {
            let (n, d) = host
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<u64>().ok()?, b.trim().parse::<u32>().ok()?)))
                .ok_or_else(|| Usage(format!("--host expects n,d, got {host:?}")))?;
            let h = build_universal(n, arity(d)?).map_err(|e| Usage(e.to_string()))?;
            let g = parsed(&tree, io::parse_graph(&read(&tree)?))?;
            if !g.is_forest() {
                return Err(Usage(format!("{} is not a forest", tree.display())).into());
            }
            let e = if g.n() as u64 == n { embed_tree_full(&h, &g)? } else { embed_forest(&h, &g)? };
            if let Err(v) = validate_embedding(&h, &g, &e) {
                eprintln!("invalid embedding: {v}");
                return Err(Failed.into());
            }
            emit(out.as_deref(), &io::write_mapping(e.map.iter().map(|&p| tree_label(&h, p, labels))))
        }
        Command::TwEmbed { n, w, graph, td, t3, out, labels } => {
            let host = build_universal_tw_with(n, w, t3.into()).map_err(|e| Usage(e.to_string()))?;
            let g = parsed(&graph, io::parse_graph(&read(&graph)?))?;
            let t = parsed(&td, io::parse_decomposition(&read(&td)?))?;
            let e = if g.n() as u64 == n {
                embed_graph_full_tw(&host, &g, &t)?
            } else {
                embed_graph_tw(&host, &host_view(&host), &g, &t)?
            };
            if let Err(v) = validate_tw_embedding(&host, &g, &e) {
                eprintln!("invalid embedding: {v}");
                return Err(Failed.into());
            }
            emit(out.as_deref(), &io::write_mapping(e.map.iter().map(|&p| tw_label(&host, p, labels))))
        }
        Command::TwBounds { n, w } => {
            if w == 0 || n == 0 {
                return Err(Usage("need n >= 1 and w >= 1".into()).into());
            }
            let lower = lower_bound_edges(n, w);
            if n < 2 * w as u64 + 1 {
                eprintln!("warning: n < 2w+1, the lower-bound sum is empty");
            }
            let upper = count_edges_tw(n, w)?;
            println!("n={n} w={w} lower_bound={lower} edges={upper}");
            Ok(())
        }
        Command::Split { mode, graph, td, w, m, big_m, big_n, x } => {
            let g: Graph = parsed(&graph, io::parse_graph(&read(&graph)?))?;
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Usage(format!("--{name} is required for this mode")));
            let ctx = || -> anyhow::Result<DeltaContext> {
                DeltaContext::new(need(big_n, "big-n")?, need(x, "x")?).map_err(|e| Usage(e.to_string()).into())
            };
            let three = |s: univ_core::separators::ThreeSplit| {
                json!({"sep": one_based(&s.sep), "f1": one_based(&s.f1), "f2": one_based(&s.f2), "f3": one_based(&s.f3)})
            };
            match mode {
                SplitMode::Forest3 => print_split(three(split_three(&g, need(m, "m")?, need(big_m, "big-m")?)?)),
                SplitMode::ForestCor1 => print_split(three(split_one_sep(&g, ctx()?)?)),
                SplitMode::ForestCor2 => {
                    let s = split_two_sep(&g, ctx()?)?;
                    let parts: Vec<Vec<u32>> = s.parts.iter().map(|p| one_based(p)).collect();
                    print_split(json!({"s1": one_based(&s.s1), "s2": one_based(&s.s2), "parts": parts, "branch": s.branch}));
                }
                SplitMode::Tw => {
                    let td_path = td.ok_or_else(|| Usage("--td is required for --mode tw".into()))?;
                    let t = parsed(&td_path, io::parse_decomposition(&read(&td_path)?))?;
                    let w = need(w, "w")?;
                    let c = ctx()?;
                    let sigma = w + 1;
                    if g.n() <= 5 * c.n + c.x + 2 * sigma {
                        print_split(three(split_one_sep_tw(&g, &t, c, w)?));
                    } else {
                        let s = split_two_sep_tw(&g, &t, c, w)?;
                        let parts: Vec<Vec<u32>> = s.parts.iter().map(|p| one_based(p)).collect();
                        print_split(json!({"s1": one_based(&s.s1), "s2": one_based(&s.s2), "parts": parts, "branch": s.branch}));
                    }
                }
            }
            Ok(())
        }
        Command::Verify { n_max, d, format } => {
            let d = arity(d)?;
            if d != Arity::BINARY && d != Arity::TERNARY {
                return Err(Usage("verify supports d in {2,3}".into()).into());
            }
            if n_max == 0 || n_max > harness::MAX_ENUM_N {
                return Err(Usage(format!("--n-max must be in 1..={}", harness::MAX_ENUM_N)).into());
            }
            let mut reports = vec![harness::suite_all_trees(n_max, d, Mutation::None, seed)];
            for n in 1..=n_max.min(7) {
                let host = build_universal(n as u64, d)?;
                reports.push(harness::brute_universality_check(&host.graph, n)?);
            }
            print_reports(&reports, format)
        }
        Command::VerifyTw { n, w, instances, format } => {
            if w == 0 || n < w + 1 {
                return Err(Usage("need w >= 1 and n >= w+1".into()).into());
            }
            print_reports(&[harness::suite_treewidth(instances, n, &[w], seed)], format)
        }
        Command::Table { mode, n, d, w, format } => {
            let m = match mode {
                TableKind::Tree => TableMode::Tree(arity(d)?),
                TableKind::Tw => TableMode::Treewidth(w),
            };
            let rows = harness::edge_table(&n, m).map_err(|e| Usage(e.to_string()))?;
            for r in rows {
                match format {
                    Format::Text => println!(
                        "n={:<8} edges={:<10} ratio={:.4} coefficient={:.4} lower={}",
                        r.n, r.edges, r.ratio, r.coefficient, r.lower
                    ),
                    Format::Jsonl => println!(
                        "{}",
                        json!({"n": r.n, "edges": r.edges, "ratio": r.ratio, "coefficient": r.coefficient, "lower": r.lower})
                    ),
                }
            }
            Ok(())
        }
        Command::Selftest { profile, mutation, format } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let mutation = match mutation {
                MutationArg::None => Mutation::None,
                MutationArg::Relabel => Mutation::RelabelGuests,
                MutationArg::DropHalfBlock => Mutation::DropHalfBlock,
            };
            print_reports(&harness::run_selftest(profile, mutation, seed), format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => ExitCode::from(1),
        Err(e) if e.is::<Usage>() || matches!(e.downcast_ref::<Error>(), Some(Error::InvalidArgument(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
