//! Evidence tables for the open conjectures. Nothing here asserts a
//! conjecture; disagreements are data.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::winding::{literal_winding, INFERRED_READING};
use super::{row, Block, FormulaId, Ratio, ReportRow, WindingInput, LITERAL_READING};
use crate::dynamics::State;
use crate::enumeration::{
    exhaustive_orbits, orbit_length_table, sampled_lengths, state_count, state_from_index,
    EnumerationPlan, Mode, OrbitCensus,
};
use crate::error::TheoremError;
use crate::graph::BridgeChainSpec;

/// Counterexample rows kept in a chain report.
pub const MAX_COUNTEREXAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainEvidence {
    pub chain: String,
    pub vertices: usize,
    pub graph_hash: String,
    pub formula: FormulaId,
    pub predicted: u64,
    pub census: OrbitCensus,
    /// States (exhaustive) or samples whose orbit length differs.
    pub mismatched_states: u64,
    /// First few disagreeing orbits or samples.
    pub counterexamples: Vec<ReportRow>,
    pub consistent: bool,
}

impl ChainEvidence {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("evidence serializes")
    }
}

/// Measures every orbit (or a seeded sample) of the chain and compares with
/// `N(N − 1)`.
pub fn explore_chain(spec: &BridgeChainSpec, plan: &EnumerationPlan) -> Result<ChainEvidence, TheoremError> {
    let g = spec.build()?;
    let n = g.vertex_count();
    let predicted = (n as u64) * (n as u64 - 1);
    let hash = g.content_hash();
    let seed = plan.mode.seed();
    let mut entries = BTreeMap::new();
    let mut counterexamples = vec![];
    let mut mismatched_states = 0;
    let mut note = |s: &State, len: u64, weight: u64| {
        *entries.entry(len).or_insert(0) += weight;
        if len != predicted {
            mismatched_states += weight;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(row(&hash, s, len, Some(predicted), false, seed));
            }
        }
    };
    let total_states = match plan.mode {
        Mode::Exhaustive => {
            for orbit in exhaustive_orbits(&g, plan.budget, plan.partition)? {
                note(&state_from_index(orbit.representative, n), orbit.length, orbit.length);
            }
            state_count(n)
        }
        Mode::Sampled { count, seed } => {
            for (s, len) in sampled_lengths(&g, count, seed, plan.budget)? {
                note(&s, len, 1);
            }
            count
        }
    };
    Ok(ChainEvidence {
        chain: spec.to_string(),
        vertices: n,
        graph_hash: hash.clone(),
        formula: FormulaId::ConjectureChain,
        predicted,
        census: OrbitCensus {
            entries,
            total_states,
            vertices: n,
            graph_hash: hash,
            mode: plan.mode,
            budget: plan.budget,
        },
        consistent: mismatched_states == 0,
        mismatched_states,
        counterexamples,
    })
}

/// One state of a cycle bridge sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindingRow {
    pub state_one_line: String,
    pub active: usize,
    pub measured_length: u64,
    pub inferred_w: Ratio,
    pub literal_w: Option<Ratio>,
    pub crossing_time: Option<u64>,
    /// The literal value is an integer and reproduces the measured length
    /// through the conjectured formula.
    #[serde(rename = "match")]
    pub matched: bool,
}

pub const WINDING_CSV_HEADER: &str =
    "state_one_line,active,measured_length,inferred_w,literal_w,crossing_time,match";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleEvidence {
    pub graph_hash: String,
    pub vertices: usize,
    pub nu: usize,
    pub block: Block,
    pub formula: FormulaId,
    /// `N(N − 1)`; the conjecture says every length is `w` times this.
    pub factor: u64,
    pub literal_interpretation: &'static str,
    pub inferred_interpretation: &'static str,
    #[serde(flatten)]
    pub mode: Mode,
    pub states: u64,
    /// States whose inferred `w` is an integer.
    pub inferred_integral: u64,
    /// States whose literal `w` matches the measured length.
    pub literal_matches: u64,
    pub agreement_rate: f64,
    /// Distinct inferred values and how many states carry each.
    pub inferred_histogram: BTreeMap<String, u64>,
    pub rows: Vec<WindingRow>,
}

impl CycleEvidence {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("evidence serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(WINDING_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.state_one_line,
                r.active,
                r.measured_length,
                r.inferred_w,
                r.literal_w.map(|w| w.to_string()).unwrap_or_default(),
                r.crossing_time.map(|t| t.to_string()).unwrap_or_default(),
                r.matched
            ));
        }
        out
    }
}

/// Per-state table of measured length, inferred `w` and literal `w` on a
/// cycle bridged to a tree or complete block.
pub fn explore_cycle_bridge(input: &WindingInput, plan: &EnumerationPlan) -> Result<CycleEvidence, TheoremError> {
    let g = &input.graph;
    let n = g.vertex_count();
    let measured: Vec<(State, u64)> = match plan.mode {
        Mode::Exhaustive => orbit_length_table(g, plan.budget)?
            .into_iter()
            .enumerate()
            .map(|(i, len)| (state_from_index(i as u64, n), len as u64))
            .collect(),
        Mode::Sampled { count, seed } => sampled_lengths(g, count, seed, plan.budget)?,
    };
    let factor = input.conjectured_factor();
    let rows: Vec<WindingRow> = measured
        .par_iter()
        .map(|(s, len)| {
            let literal = literal_winding(input, s, *len).ok();
            let matched = literal.is_some_and(|(w, _)| w.is_integer() && w.num * factor == *len);
            WindingRow {
                state_one_line: s.labeling().one_line(),
                active: s.active(),
                measured_length: *len,
                inferred_w: Ratio::new(*len, factor),
                literal_w: literal.map(|(w, _)| w),
                crossing_time: literal.map(|(_, t)| t),
                matched,
            }
        })
        .collect();
    let states = rows.len() as u64;
    let inferred_integral = rows.iter().filter(|r| r.inferred_w.is_integer()).count() as u64;
    let literal_matches = rows.iter().filter(|r| r.matched).count() as u64;
    let mut inferred_histogram = BTreeMap::new();
    for r in &rows {
        *inferred_histogram.entry(r.inferred_w.to_string()).or_insert(0) += 1;
    }
    Ok(CycleEvidence {
        graph_hash: g.content_hash(),
        vertices: n,
        nu: input.nu(),
        block: input.block,
        formula: match input.block {
            Block::Tree(_) => FormulaId::ConjectureTreeCycle,
            Block::Complete(_) => FormulaId::ConjectureCompleteCycle,
        },
        factor,
        literal_interpretation: LITERAL_READING,
        inferred_interpretation: INFERRED_READING,
        mode: plan.mode,
        states,
        inferred_integral,
        literal_matches,
        agreement_rate: if states == 0 {
            0.0
        } else {
            literal_matches as f64 / states as f64
        },
        inferred_histogram,
        rows,
    })
}
