//! `toric`: toric promotion experiments from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
//! 3 step budget exceeded.

mod source;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_core::dynamics::{default_cap, orbit_states};
use toric_core::enumeration::{census, EnumerationPlan, DEFAULT_BUDGET};
use toric_core::graph::classify;
use toric_core::stone::{render, RenderFormat};
use toric_core::theorems::suites::{run_suite, Suite, SuiteConfig};
use toric_core::theorems::{explore_chain, explore_cycle_bridge, WindingInput};
use toric_core::{
    bridge_sum, corona_product, orbit_length, BridgeChainSpec, EnumerationError, StateError,
    StoneDiagram, TheoremError,
};

use source::{graph_from_args, parse_graph, state_from_args};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "toric", version, about = "Toric promotion on labeled simple graphs")]
struct Cli {
    /// Seed for every sampled run.
    #[arg(long, global = true, env = "TORIC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Maximum promotion steps per invocation.
    #[arg(long, global = true, env = "TORIC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "TORIC_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit length of one state, optionally with the full trace.
    Orbit(OrbitArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Evidence tables for the open conjectures.
    Explore(ExploreArgs),
    /// Multiset of orbit lengths over all (or sampled) states.
    Census(CensusArgs),
    /// Stone-and-coin diagrams along an orbit.
    Render(RenderArgs),
    /// Build a graph and export it.
    Graph(GraphArgs),
}

#[derive(Args)]
struct GraphSource {
    /// Graph source: a family (`complete:4`, `K4`, `pruefer:0.0`, ...),
    /// `chain:tree5,complete4`, `corona:K3,P3,0` or `json:FILE`.
    #[arg(long)]
    graph: Option<String>,
    /// Graph JSON file.
    #[arg(long)]
    graph_json: Option<PathBuf>,
}

#[derive(Args)]
struct StateSource {
    /// Labeling in one-line notation, e.g. `4123` or `10,2,3,...`.
    #[arg(long)]
    state: Option<String>,
    /// Active label (1-based).
    #[arg(long)]
    active: Option<usize>,
    /// State JSON file.
    #[arg(long)]
    state_json: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    state: StateSource,
    /// Print every state of the orbit, then the start state again.
    #[arg(long)]
    trace: bool,
    /// Also render the orbit's stone diagrams.
    #[arg(long, value_parser = parse_format)]
    render: Option<RenderFormat>,
    /// File for the rendering (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Largest complete graph for the complete suite.
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// Largest tree for the trees suite.
    #[arg(long = "max-m")]
    max_m: Option<usize>,
    /// Largest total vertex count for bridge sums and coronas.
    #[arg(long = "max-N")]
    max_total: Option<usize>,
    /// Cycle sizes for the restriction and lemma suites.
    #[arg(long, value_delimiter = ',')]
    cycles: Option<Vec<usize>>,
    /// Largest block attached to those cycles.
    #[arg(long)]
    max_attached: Option<usize>,
    #[arg(long)]
    report_json: Option<PathBuf>,
    #[arg(long)]
    report_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conjecture {
    Chain,
    TreeCycle,
    CompleteCycle,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long, value_enum)]
    conjecture: Conjecture,
    /// Chain blocks, e.g. `K2,K2,K2` or `P2,K2,P2;1-0,1-0`.
    #[arg(long)]
    blocks: Option<String>,
    /// Tree size (tree-cycle).
    #[arg(long)]
    m: Option<usize>,
    /// Complete graph size (complete-cycle).
    #[arg(long)]
    n: Option<usize>,
    /// Cycle size.
    #[arg(long)]
    nu: Option<usize>,
    /// Sample this many states instead of enumerating all of them.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    report_json: Option<PathBuf>,
    #[arg(long)]
    report_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Sample this many states instead of enumerating all of them.
    #[arg(long)]
    samples: Option<u64>,
    /// Number of work shards (default: worker count).
    #[arg(long)]
    partition: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: CensusFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    state: StateSource,
    #[arg(long, value_parser = parse_format, default_value = "ascii")]
    format: RenderFormat,
    /// Number of steps to draw (default: one full orbit).
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// `corona`, `bridge`, or any graph source accepted by `--graph`.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    g1: Option<String>,
    #[arg(long)]
    g2: Option<String>,
    /// Vertex of `g2` joined to each vertex of `g1` (corona).
    #[arg(long, default_value_t = 0)]
    attach: usize,
    /// Junction vertex in `g1` (bridge).
    #[arg(long, default_value_t = 0)]
    v1: usize,
    /// Junction vertex in `g2` (bridge).
    #[arg(long, default_value_t = 0)]
    v2: usize,
    #[command(flatten)]
    graph: GraphSource,
    /// Write Graphviz DOT here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write graph JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<RenderFormat, String> {
    s.parse().map_err(|e: toric_core::DiagramError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Status {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_budget(&e) { 3 } else { 2 })
        }
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        if let Some(t) = cause.downcast_ref::<TheoremError>() {
            return t.is_budget();
        }
        matches!(
            cause.downcast_ref::<EnumerationError>(),
            Some(EnumerationError::BudgetExceeded { .. } | EnumerationError::TooLarge { .. })
        ) || matches!(cause.downcast_ref::<StateError>(), Some(StateError::CapExceeded { .. }))
    })
}

fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Orbit(a) => cmd_orbit(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Explore(a) => cmd_explore(cli, a),
        Command::Census(a) => cmd_census(cli, a),
        Command::Render(a) => cmd_render(cli, a),
        Command::Graph(a) => cmd_graph(a),
    }
}

fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_orbit(cli: &Cli, a: &OrbitArgs) -> Result<Status> {
    let g = graph_from_args(a.graph.graph.as_deref(), a.graph.graph_json.as_deref())?;
    let s = state_from_args(a.state.state.as_deref(), a.state.active, a.state.state_json.as_deref())?;
    s.check_graph(&g)?;
    let cap = default_cap(g.vertex_count()).min(cli.budget);
    if !a.trace && a.render.is_none() {
        println!("{}", orbit_length(&g, &s, Some(cap))?.length);
        return Ok(Status::Ok);
    }
    let states = orbit_states(&g, &s, Some(cap))?;
    if a.trace {
        let mut out = String::new();
        for st in states.iter().chain(std::iter::once(&s)) {
            out.push_str(&format!("{st}\n"));
        }
        emit(None, &out)?;
    }
    if let Some(format) = a.render {
        let panels: Vec<StoneDiagram> = states
            .iter()
            .chain(std::iter::once(&s))
            .map(StoneDiagram::from_state)
            .collect();
        emit(a.out.as_deref(), &render(&panels, format)?)?;
    }
    println!("{}", states.len());
    Ok(Status::Ok)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<Status> {
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        max_m: a.max_m.unwrap_or(d.max_m),
        max_n: a.max_n.unwrap_or(d.max_n),
        max_total: a.max_total.unwrap_or(d.max_total),
        cycles: a.cycles.clone().unwrap_or(d.cycles),
        max_attached: a.max_attached.unwrap_or(d.max_attached),
        budget: cli.budget,
        seed: cli.seed,
    };
    if cfg.cycles.iter().any(|&nu| nu < 3) {
        bail!("cycle sizes must be at least 3");
    }
    let report = run_suite(a.suite, &cfg)?;
    if let Some(p) = &a.report_json {
        emit(Some(p), &report.to_json())?;
    }
    if let Some(p) = &a.report_csv {
        emit(Some(p), &report.to_csv())?;
    }
    for case in report.failed_cases() {
        println!("FAIL {} ({} of {} checks failed)", case.id, case.failures, case.checked);
    }
    let failed = report.failed_cases().count();
    let checked: u64 = report.cases.iter().map(|c| c.checked).sum();
    println!(
        "suite {}: {} cases, {checked} checks, {failed} failing (seed {}, budget {})",
        report.suite,
        report.cases.len(),
        report.seed,
        report.budget
    );
    Ok(if report.passed() { Status::Ok } else { Status::Mismatch })
}

fn plan_for(cli: &Cli, samples: Option<u64>) -> EnumerationPlan {
    let plan = match samples {
        Some(count) => EnumerationPlan::sampled(count, cli.seed),
        None => EnumerationPlan::exhaustive(),
    };
    plan.with_budget(cli.budget).with_partition(rayon::current_num_threads())
}

fn cmd_explore(cli: &Cli, a: &ExploreArgs) -> Result<Status> {
    let plan = plan_for(cli, a.samples);
    match a.conjecture {
        Conjecture::Chain => {
            let Some(blocks) = &a.blocks else {
                bail!("--blocks is required for the chain conjecture");
            };
            let spec: BridgeChainSpec = blocks.parse()?;
            if spec.blocks.len() < 2 {
                bail!("a chain needs at least two blocks");
            }
            let ev = explore_chain(&spec, &plan)?;
            if let Some(p) = &a.report_json {
                emit(Some(p), &ev.to_json())?;
            }
            if let Some(p) = &a.report_csv {
                emit(Some(p), &ev.census.to_csv())?;
            }
            print!("{}", ev.census.to_csv());
            eprintln!(
                "chain {}: N={}, N(N-1)={}, {} of {} states disagree (seed {})",
                ev.chain, ev.vertices, ev.predicted, ev.mismatched_states, ev.census.total_states, cli.seed
            );
        }
        Conjecture::TreeCycle | Conjecture::CompleteCycle => {
            let nu = a.nu.context("--nu is required")?;
            if nu < 3 {
                bail!("--nu must be at least 3");
            }
            let input = match a.conjecture {
                Conjecture::TreeCycle => WindingInput::tree_cycle(a.m.context("--m is required")?, nu)?,
                _ => WindingInput::complete_cycle(a.n.context("--n is required")?, nu)?,
            };
            let ev = explore_cycle_bridge(&input, &plan)?;
            if let Some(p) = &a.report_json {
                emit(Some(p), &ev.to_json())?;
            }
            if let Some(p) = &a.report_csv {
                emit(Some(p), &ev.to_csv())?;
            }
            print!("{}", ev.to_csv());
            eprintln!("{}", ev.inferred_interpretation);
            eprintln!("{}", ev.literal_interpretation);
            eprintln!(
                "{} states: inferred w integral for {}, literal w reproduces the length for {} (seed {})",
                ev.states, ev.inferred_integral, ev.literal_matches, cli.seed
            );
        }
    }
    Ok(Status::Ok)
}

fn cmd_census(cli: &Cli, a: &CensusArgs) -> Result<Status> {
    let g = graph_from_args(a.graph.graph.as_deref(), a.graph.graph_json.as_deref())?;
    let mut plan = plan_for(cli, a.samples);
    if let Some(p) = a.partition {
        plan = plan.with_partition(p);
    }
    let c = census(&g, &plan)?;
    let text = match a.format {
        CensusFormat::Csv => c.to_csv(),
        CensusFormat::Json => c.to_json() + "\n",
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Ok)
}

fn cmd_render(cli: &Cli, a: &RenderArgs) -> Result<Status> {
    let g = graph_from_args(a.graph.graph.as_deref(), a.graph.graph_json.as_deref())?;
    let s = state_from_args(a.state.state.as_deref(), a.state.active, a.state.state_json.as_deref())?;
    s.check_graph(&g)?;
    let steps = match a.steps {
        Some(k) => k,
        None => orbit_length(&g, &s, Some(default_cap(g.vertex_count()).min(cli.budget)))?.length,
    };
    if steps > cli.budget {
        return Err(EnumerationError::BudgetExceeded {
            budget: cli.budget,
            steps,
        }
        .into());
    }
    let mut sd = StoneDiagram::from_state(&s);
    let mut panels = vec![sd.clone()];
    for _ in 0..steps {
        sd.step(&g);
        panels.push(sd.clone());
    }
    emit(a.out.as_deref(), &render(&panels, a.format)?)?;
    Ok(Status::Ok)
}

fn cmd_graph(a: &GraphArgs) -> Result<Status> {
    let part = |name: &str, src: &Option<String>| -> Result<_> {
        parse_graph(src.as_deref().with_context(|| format!("--{name} is required"))?)
    };
    let g = match a.family.as_deref() {
        Some("corona") => corona_product(&part("g1", &a.g1)?, &part("g2", &a.g2)?, a.attach)?,
        Some("bridge") => bridge_sum(&part("g1", &a.g1)?, a.v1, &part("g2", &a.g2)?, a.v2)?,
        Some(other) => {
            if a.graph.graph.is_some() || a.graph.graph_json.is_some() {
                bail!("give either --family or --graph");
            }
            parse_graph(other)?
        }
        None => graph_from_args(a.graph.graph.as_deref(), a.graph.graph_json.as_deref())?,
    };
    if let Some(p) = &a.dot {
        let name = a.family.as_deref().unwrap_or("G");
        let name: String = name.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        emit(Some(p), &g.to_dot(if name.is_empty() { "G" } else { &name }))?;
    }
    if let Some(p) = &a.json {
        emit(Some(p), &(g.to_json() + "\n"))?;
    }
    let c = classify(&g);
    let bridges: Vec<String> = c.bridges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    println!("vertices {}", g.vertex_count());
    println!("edges {}", g.edge_count());
    println!("hash {}", g.content_hash());
    println!("connected {}", c.is_connected);
    println!("tree {}", c.is_tree);
    println!("complete {}", c.is_complete);
    println!("bridges {}", bridges.join(" "));
    Ok(Status::Ok)
}
