//! Closed-form orbit lengths and the machinery that checks them against
//! measured orbits.
//!
//! [`predict`] maps a declared graph structure to its orbit-length formula,
//! [`verify_family`] measures orbits and lists disagreements. The submodules
//! hold the restriction-independence checker, crossing-event instrumentation
//! for bridges, the winding-number computation for cycle bridge sums, the
//! conjecture explorers and the named verification suites.

mod crossing;
mod explore;
mod restriction;
pub mod suites;
mod winding;

use std::fmt;

use serde::Serialize;

pub use crossing::{
    crossing_log, orbit_with_events, verify_directional, verify_lemma_sd_rotation, CrossingEvent,
    Direction, DirectionalReport, DirectionalViolation, ExcursionCheck, LemmaReport, Side,
};
pub use explore::{explore_chain, explore_cycle_bridge, ChainEvidence, CycleEvidence, WindingRow};
pub use restriction::{
    attached_block, restriction_sweep, verify_restriction_independence, AttachedBlock, Extensions,
    RestrictionReport, RestrictionSweep, RestrictionViolation,
};
pub use winding::{winding_number, Interpretation, Ratio, WindingInput, WindingValue, LITERAL_READING};

use crate::enumeration::{exhaustive_orbits, sampled_lengths, state_from_index, Mode};
use crate::error::TheoremError;
use crate::graph::{classify, GraphFamily, SimpleGraph};

/// A block of a bridge sum: a tree or a complete graph, with its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    Tree(usize),
    Complete(usize),
}

impl Block {
    pub fn size(&self) -> usize {
        match *self {
            Block::Tree(m) | Block::Complete(m) => m,
        }
    }

    /// A representative graph: the path for trees.
    pub fn family(&self) -> GraphFamily {
        match *self {
            Block::Tree(m) => GraphFamily::Path(m),
            Block::Complete(n) => GraphFamily::Complete(n),
        }
    }

    fn of(g: &SimpleGraph) -> Option<Block> {
        let c = classify(g);
        if c.is_tree && g.vertex_count() > 2 {
            Some(Block::Tree(g.vertex_count()))
        } else if c.is_complete {
            Some(Block::Complete(g.vertex_count()))
        } else {
            None
        }
    }
}

/// Declared composition of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Tree { m: usize },
    Complete { n: usize },
    BridgeSum(Block, Block),
    /// `K_n ⊙ T_m`.
    Corona { n: usize, m: usize },
    /// Three or more blocks joined by bridges in a line.
    Chain(Vec<Block>),
    TreeCycle { m: usize, nu: usize },
    CompleteCycle { n: usize, nu: usize },
}

impl Structure {
    pub fn vertex_count(&self) -> usize {
        match self {
            Structure::Tree { m } => *m,
            Structure::Complete { n } => *n,
            Structure::BridgeSum(a, b) => a.size() + b.size(),
            Structure::Corona { n, m } => n * m + n,
            Structure::Chain(blocks) => blocks.iter().map(Block::size).sum(),
            Structure::TreeCycle { m, nu } => m + nu,
            Structure::CompleteCycle { n, nu } => n + nu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    Tree,
    Complete,
    CompleteBridgeComplete,
    TreeBridgeComplete,
    CoronaCompleteTree,
    ConjectureChain,
    ConjectureTreeCycle,
    ConjectureCompleteCycle,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormulaId::Tree => "tree",
            FormulaId::Complete => "complete",
            FormulaId::CompleteBridgeComplete => "complete_bridge_complete",
            FormulaId::TreeBridgeComplete => "tree_bridge_complete",
            FormulaId::CoronaCompleteTree => "corona_complete_tree",
            FormulaId::ConjectureChain => "conjecture_chain",
            FormulaId::ConjectureTreeCycle => "conjecture_tree_cycle",
            FormulaId::ConjectureCompleteCycle => "conjecture_complete_cycle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedLength {
    Exact(u64),
    /// The winding number times this factor.
    PerWinding(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub formula: FormulaId,
    pub length: PredictedLength,
    pub vertices: usize,
    pub assumptions: String,
}

impl Prediction {
    pub fn exact(&self) -> Option<u64> {
        match self.length {
            PredictedLength::Exact(x) => Some(x),
            PredictedLength::PerWinding(_) => None,
        }
    }
}

fn n_times_n_minus_one(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1)
}

/// Closed-form orbit length for a declared structure. Only the vertex count
/// and, for trees, complete graphs and single bridge sums, the shape of `g`
/// are checked against the declaration.
pub fn predict(g: &SimpleGraph, structure: &Structure) -> Result<Prediction, TheoremError> {
    let big_n = structure.vertex_count();
    if big_n != g.vertex_count() {
        return Err(TheoremError::Precondition(format!(
            "declared structure has {big_n} vertices, graph has {}",
            g.vertex_count()
        )));
    }
    let c = classify(g);
    let (formula, length, assumptions) = match structure {
        Structure::Tree { m } => {
            if !c.is_tree {
                return Err(TheoremError::Precondition("graph is not a tree".into()));
            }
            if *m < 2 {
                return Err(TheoremError::Uncovered("tree on one vertex".into()));
            }
            (
                FormulaId::Tree,
                PredictedLength::Exact(n_times_n_minus_one(*m)),
                format!("tree on m={m} vertices: m(m-1)"),
            )
        }
        Structure::Complete { n } => {
            if !c.is_complete {
                return Err(TheoremError::Precondition("graph is not complete".into()));
            }
            (
                FormulaId::Complete,
                PredictedLength::Exact(*n as u64),
                format!("complete graph on n={n} vertices: n"),
            )
        }
        Structure::BridgeSum(a, b) => {
            if !has_bridge_split(g, *a, *b) {
                return Err(TheoremError::Precondition(
                    "no bridge splits the graph into the declared blocks".into(),
                ));
            }
            let formula = match (a, b) {
                (Block::Tree(_), Block::Tree(_)) => FormulaId::Tree,
                (Block::Complete(_), Block::Complete(_)) => FormulaId::CompleteBridgeComplete,
                _ => FormulaId::TreeBridgeComplete,
            };
            (
                formula,
                PredictedLength::Exact(n_times_n_minus_one(big_n)),
                format!("single bridge sum of {a:?} and {b:?}: N(N-1) with N={big_n}"),
            )
        }
        Structure::Corona { n, m } => (
            FormulaId::CoronaCompleteTree,
            PredictedLength::Exact(n_times_n_minus_one(big_n)),
            format!("corona of K_{n} with a tree on {m} vertices: (nm+n)(nm+n-1)"),
        ),
        Structure::Chain(blocks) => (
            FormulaId::ConjectureChain,
            PredictedLength::Exact(n_times_n_minus_one(big_n)),
            format!(
                "conjectured: chain of {} tree/complete blocks, N(N-1) with N={big_n}",
                blocks.len()
            ),
        ),
        Structure::TreeCycle { m, nu } => (
            FormulaId::ConjectureTreeCycle,
            PredictedLength::PerWinding(n_times_n_minus_one(big_n)),
            format!("conjectured: tree on {m} bridged with cycle on {nu}: w(nu+m-1)(nu+m)"),
        ),
        Structure::CompleteCycle { n, nu } => (
            FormulaId::ConjectureCompleteCycle,
            PredictedLength::PerWinding(n_times_n_minus_one(big_n)),
            format!("conjectured: K_{n} bridged with cycle on {nu}: w(n+nu-1)(n+nu)"),
        ),
    };
    Ok(Prediction {
        formula,
        length,
        vertices: big_n,
        assumptions,
    })
}

fn block_matches(g: &SimpleGraph, vertices: &[usize], block: Block) -> bool {
    if vertices.len() != block.size() {
        return false;
    }
    let sub = g.induced(vertices).expect("component vertices are valid");
    let c = classify(&sub);
    match block {
        Block::Tree(_) => c.is_tree,
        Block::Complete(_) => c.is_complete,
    }
}

fn has_bridge_split(g: &SimpleGraph, a: Block, b: Block) -> bool {
    classify(g).bridges.into_iter().any(|(u, v)| {
        let left = g.component_without_edge(u, (u, v));
        let right = g.component_without_edge(v, (u, v));
        if left.len() + right.len() != g.vertex_count() {
            return false;
        }
        (block_matches(g, &left, a) && block_matches(g, &right, b))
            || (block_matches(g, &left, b) && block_matches(g, &right, a))
    })
}

/// Recognizes trees, complete graphs and single bridge sums of a tree or
/// complete block with another. Chains and coronas are never inferred.
pub fn detect_structure(g: &SimpleGraph) -> Option<Structure> {
    let c = classify(g);
    let n = g.vertex_count();
    if c.is_complete {
        return Some(Structure::Complete { n });
    }
    if c.is_tree {
        return Some(Structure::Tree { m: n });
    }
    if !c.is_connected {
        return None;
    }
    for (u, v) in c.bridges {
        let left = g.component_without_edge(u, (u, v));
        let right = g.component_without_edge(v, (u, v));
        let lb = Block::of(&g.induced(&left).ok()?);
        let rb = Block::of(&g.induced(&right).ok()?);
        if let (Some(a), Some(b)) = (lb, rb) {
            return Some(Structure::BridgeSum(a, b));
        }
    }
    None
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub graph_id: String,
    pub state_one_line: String,
    pub active: usize,
    pub measured_length: u64,
    pub predicted_length: Option<u64>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub seed: Option<u64>,
}

pub const CSV_HEADER: &str = "graph_id,state_one_line,active,measured_length,predicted_length,match,seed";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with the fixed report header; rows are written in the given order.
pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&r.graph_id),
            csv_field(&r.state_one_line),
            r.active,
            r.measured_length,
            r.predicted_length.map(|p| p.to_string()).unwrap_or_default(),
            r.matched,
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub graph_id: String,
    pub graph_hash: String,
    pub vertices: usize,
    pub prediction: Prediction,
    #[serde(flatten)]
    pub mode: Mode,
    pub states_checked: u64,
    pub mismatched_states: u64,
    /// One row per orbit (exhaustive, keyed by its least state) or per
    /// sampled state, sorted by state index / sample order.
    pub rows: Vec<ReportRow>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.mismatched_states == 0
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.matched)
    }
}

/// Measures orbit lengths on `g` and compares them with `prediction`.
/// Exhaustive mode walks every orbit once; the step budget applies.
pub fn verify_family(
    g: &SimpleGraph,
    prediction: &Prediction,
    mode: Mode,
    budget: u64,
) -> Result<FamilyReport, TheoremError> {
    let predicted = prediction.exact().ok_or_else(|| {
        TheoremError::Uncovered("winding-dependent predictions cannot be verified directly".into())
    })?;
    let n = g.vertex_count();
    let graph_id = g.content_hash();
    let seed = mode.seed();
    let mut rows = Vec::new();
    let mut mismatched_states = 0;
    let states_checked = match mode {
        Mode::Exhaustive => {
            let shards = rayon::current_num_threads();
            for orbit in exhaustive_orbits(g, budget, shards)? {
                let s = state_from_index(orbit.representative, n);
                let matched = orbit.length == predicted;
                if !matched {
                    mismatched_states += orbit.length;
                }
                rows.push(row(&graph_id, &s, orbit.length, Some(predicted), matched, seed));
            }
            crate::enumeration::state_count(n)
        }
        Mode::Sampled { count, seed: sd } => {
            for (s, len) in sampled_lengths(g, count, sd, budget)? {
                let matched = len == predicted;
                if !matched {
                    mismatched_states += 1;
                }
                rows.push(row(&graph_id, &s, len, Some(predicted), matched, seed));
            }
            count
        }
    };
    Ok(FamilyReport {
        graph_hash: graph_id.clone(),
        graph_id,
        vertices: n,
        prediction: prediction.clone(),
        mode,
        states_checked,
        mismatched_states,
        rows,
    })
}

pub(crate) fn row(
    graph_id: &str,
    s: &crate::dynamics::State,
    measured: u64,
    predicted: Option<u64>,
    matched: bool,
    seed: Option<u64>,
) -> ReportRow {
    ReportRow {
        graph_id: graph_id.to_string(),
        state_one_line: s.labeling().one_line(),
        active: s.active(),
        measured_length: measured,
        predicted_length: predicted,
        matched,
        seed,
    }
}
