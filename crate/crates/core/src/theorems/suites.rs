//! Named verification suites: each expands into a list of graphs and runs
//! the matching verifier over every state of each.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    predict, restriction_sweep, row, rows_to_csv, verify_directional, verify_family,
    verify_lemma_sd_rotation, Block, ReportRow, Side, Structure,
};
use crate::dynamics::State;
use crate::enumeration::{exhaustive_orbits, state_count, state_from_index, Mode, DEFAULT_BUDGET};
use crate::error::{EnumerationError, TheoremError};
use crate::graph::{all_trees, bridge_sum, corona_product, rooted_tree_shapes, GraphFamily, SimpleGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Trees,
    Complete,
    CompleteBridgeComplete,
    TreeBridgeComplete,
    Corona,
    RestrictionTree,
    RestrictionComplete,
    LemmaTreeBridge,
    LemmaCompleteBridge,
    LemmaDirectional,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Trees,
        Suite::Complete,
        Suite::CompleteBridgeComplete,
        Suite::TreeBridgeComplete,
        Suite::Corona,
        Suite::RestrictionTree,
        Suite::RestrictionComplete,
        Suite::LemmaTreeBridge,
        Suite::LemmaCompleteBridge,
        Suite::LemmaDirectional,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Trees => "trees",
            Suite::Complete => "complete",
            Suite::CompleteBridgeComplete => "complete-bridge-complete",
            Suite::TreeBridgeComplete => "tree-bridge-complete",
            Suite::Corona => "corona",
            Suite::RestrictionTree => "restriction-tree",
            Suite::RestrictionComplete => "restriction-complete",
            Suite::LemmaTreeBridge => "lemma-tree-bridge",
            Suite::LemmaCompleteBridge => "lemma-complete-bridge",
            Suite::LemmaDirectional => "lemma-directional",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Size limits for the generated graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Largest tree (trees suite).
    pub max_m: usize,
    /// Largest complete graph (complete suite).
    pub max_n: usize,
    /// Largest total vertex count for bridge sums and coronas.
    pub max_total: usize,
    /// Cycle sizes used as the fixed side in restriction and lemma suites.
    pub cycles: Vec<usize>,
    /// Largest block attached to those cycles.
    pub max_attached: usize,
    /// Step budget for the whole suite.
    pub budget: u64,
    /// Echoed in reports; the suites themselves are exhaustive.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_m: 6,
            max_n: 6,
            max_total: 7,
            cycles: vec![4, 5],
            max_attached: 3,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub graph_hash: String,
    pub vertices: usize,
    pub passed: bool,
    /// Units checked: states, restriction groups or excursions.
    pub checked: u64,
    pub failures: u64,
    /// Every failing row, plus one witness row per distinct measured value.
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub budget: u64,
    pub config: SuiteConfig,
    pub cases: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failed_cases(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<ReportRow> = self.cases.iter().flat_map(|c| c.rows.iter().cloned()).collect();
        rows_to_csv(&rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Failing rows plus the first passing row for each measured value.
fn witness_rows(rows: Vec<ReportRow>) -> Vec<ReportRow> {
    let mut seen = BTreeSet::new();
    rows.into_iter()
        .filter(|r| !r.matched || seen.insert(r.measured_length))
        .collect()
}

enum Check {
    Family(Structure),
    ConstantLabels(Structure),
    Restriction { fixed: usize },
    Lemma { bridge: (usize, usize), side: Side },
    Directional { blocks: Vec<Vec<usize>> },
}

struct Case {
    id: String,
    graph: SimpleGraph,
    check: Check,
}

impl Case {
    /// Steps charged against the suite budget: one full sweep of the state
    /// space per pass over it.
    fn cost(&self) -> u64 {
        let passes = match &self.check {
            Check::Family(_) | Check::Restriction { .. } => 1,
            Check::ConstantLabels(_) | Check::Lemma { .. } => 2,
            Check::Directional { blocks } => 1 + blocks.len() as u64,
        };
        state_count(self.graph.vertex_count()).saturating_mul(passes)
    }
}

fn cycle(nu: usize) -> SimpleGraph {
    GraphFamily::Cycle(nu).build().expect("cycle sizes are at least 3")
}

fn complete(n: usize) -> SimpleGraph {
    GraphFamily::Complete(n).build().expect("n >= 1")
}

/// Cycle `0..nu` bridged at `cv` to `block` at `bv`, for every block of the
/// requested kind up to `max_attached` vertices and every junction pair.
/// (id, graph, cycle size, attached block, bridge)
type AttachedCase = (String, SimpleGraph, usize, Block, (usize, usize));

fn attached_cases(cfg: &SuiteConfig, trees: bool) -> Vec<AttachedCase> {
    let mut out = vec![];
    for &nu in &cfg.cycles {
        for size in 1..=cfg.max_attached {
            let blocks: Vec<(String, SimpleGraph, Block)> = if trees {
                all_trees(size)
                    .into_iter()
                    .enumerate()
                    .map(|(k, t)| (format!("tree{size}#{k}"), t, Block::Tree(size)))
                    .collect()
            } else {
                vec![(format!("K{size}"), complete(size), Block::Complete(size))]
            };
            for (name, block, kind) in &blocks {
                for cv in 0..nu {
                    for bv in 0..size {
                        let g = bridge_sum(&cycle(nu), cv, block, bv).expect("valid junctions");
                        out.push((format!("C{nu}[{cv}]-{name}[{bv}]"), g, nu, *kind, (cv, nu + bv)));
                    }
                }
            }
        }
    }
    out
}

fn cases(suite: Suite, cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = vec![];
    match suite {
        Suite::Trees => {
            for m in 2..=cfg.max_m {
                for (k, t) in all_trees(m).into_iter().enumerate() {
                    out.push(Case {
                        id: format!("tree{m}#{k}"),
                        graph: t,
                        check: Check::Family(Structure::Tree { m }),
                    });
                }
            }
        }
        Suite::Complete => {
            for n in 1..=cfg.max_n {
                out.push(Case {
                    id: format!("K{n}"),
                    graph: complete(n),
                    check: Check::ConstantLabels(Structure::Complete { n }),
                });
            }
        }
        Suite::CompleteBridgeComplete => {
            for n1 in 1..cfg.max_total {
                for n2 in n1..=cfg.max_total - n1 {
                    out.push(Case {
                        id: format!("K{n1}-K{n2}"),
                        graph: bridge_sum(&complete(n1), 0, &complete(n2), 0).expect("valid"),
                        check: Check::Family(Structure::BridgeSum(Block::Complete(n1), Block::Complete(n2))),
                    });
                }
            }
        }
        Suite::TreeBridgeComplete => {
            // Rooted shapes stand in for all (tree, junction) pairs:
            // relabeling vertices does not change orbit lengths.
            for m in 1..cfg.max_total {
                for n in 1..=cfg.max_total - m {
                    for (k, (tree, root)) in rooted_tree_shapes(m).into_iter().enumerate() {
                        out.push(Case {
                            id: format!("tree{m}#{k}[{root}]-K{n}"),
                            graph: bridge_sum(&tree, root, &complete(n), 0).expect("valid"),
                            check: Check::Family(Structure::BridgeSum(Block::Tree(m), Block::Complete(n))),
                        });
                    }
                }
            }
        }
        Suite::Corona => {
            for n in 2..=cfg.max_total {
                for m in 1.. {
                    if n * (m + 1) > cfg.max_total {
                        break;
                    }
                    for (k, t) in all_trees(m).into_iter().enumerate() {
                        for attach in 0..m {
                            out.push(Case {
                                id: format!("K{n}*tree{m}#{k}[{attach}]"),
                                graph: corona_product(&complete(n), &t, attach).expect("valid"),
                                check: Check::Family(Structure::Corona { n, m }),
                            });
                        }
                    }
                }
            }
        }
        Suite::RestrictionTree | Suite::RestrictionComplete => {
            let trees = suite == Suite::RestrictionTree;
            for (id, graph, nu, _, _) in attached_cases(cfg, trees) {
                out.push(Case {
                    id,
                    graph,
                    check: Check::Restriction { fixed: nu },
                });
            }
        }
        Suite::LemmaTreeBridge | Suite::LemmaCompleteBridge => {
            let trees = suite == Suite::LemmaTreeBridge;
            for (id, graph, _, kind, bridge) in attached_cases(cfg, trees) {
                let side = match kind {
                    Block::Tree(m) => Side::Tree(m),
                    Block::Complete(n) => Side::Complete(n),
                };
                out.push(Case {
                    id,
                    graph,
                    check: Check::Lemma { bridge, side },
                });
            }
        }
        Suite::LemmaDirectional => {
            for (id, graph, nu, kind, _) in attached_cases(cfg, false) {
                out.push(Case {
                    id,
                    graph,
                    check: Check::Directional {
                        blocks: vec![(nu..nu + kind.size()).collect()],
                    },
                });
            }
            for n1 in 2..cfg.max_total {
                for n2 in n1..=cfg.max_total - n1 {
                    out.push(Case {
                        id: format!("K{n1}-K{n2}"),
                        graph: bridge_sum(&complete(n1), 0, &complete(n2), 0).expect("valid"),
                        check: Check::Directional {
                            blocks: vec![(0..n1).collect(), (n1..n1 + n2).collect()],
                        },
                    });
                }
            }
        }
    }
    out
}

/// Runs every case of `suite`. Cases run concurrently; the report lists
/// them in generation order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, TheoremError> {
    let cases = cases(suite, cfg);
    let mut charged: u64 = 0;
    for c in &cases {
        let next = charged.saturating_add(c.cost());
        if next > cfg.budget {
            return Err(EnumerationError::BudgetExceeded { budget: cfg.budget, steps: charged }.into());
        }
        charged = next;
    }
    let outcomes: Result<Vec<CaseOutcome>, TheoremError> =
        cases.par_iter().map(|c| run_case(c, cfg)).collect();
    Ok(SuiteReport {
        suite,
        seed: cfg.seed,
        budget: cfg.budget,
        config: cfg.clone(),
        cases: outcomes?,
    })
}

fn run_case(case: &Case, cfg: &SuiteConfig) -> Result<CaseOutcome, TheoremError> {
    let g = &case.graph;
    let n = g.vertex_count();
    let hash = g.content_hash();
    let (checked, failures, rows) = match &case.check {
        Check::Family(structure) => {
            let p = predict(g, structure)?;
            let r = verify_family(g, &p, Mode::Exhaustive, cfg.budget)?;
            (r.states_checked, r.mismatched_states, witness_rows(r.rows))
        }
        Check::ConstantLabels(structure) => {
            let p = predict(g, structure)?;
            let r = verify_family(g, &p, Mode::Exhaustive, cfg.budget)?;
            let mut rows = r.rows;
            let mut failures = r.mismatched_states;
            // No step may swap labels.
            for index in 0..state_count(n) {
                let mut s = state_from_index(index, n);
                let before = s.clone();
                s.advance(g);
                if s.labeling() != before.labeling() {
                    failures += 1;
                    rows.push(row(&hash, &before, 0, p.exact(), false, None));
                }
            }
            (r.states_checked, failures, witness_rows(rows))
        }
        Check::Restriction { fixed } => {
            let fixed_part: Vec<usize> = (0..*fixed).collect();
            let sweep = restriction_sweep(g, &fixed_part, cfg.budget)?;
            let block_len = n - fixed;
            let mut rows: Vec<ReportRow> = sweep
                .violations
                .iter()
                .map(|v| {
                    let mut one_line: String = v.restriction.iter().map(|l| l.to_string()).collect();
                    one_line.push_str(&"*".repeat(block_len));
                    ReportRow {
                        graph_id: hash.clone(),
                        state_one_line: one_line,
                        active: v.active,
                        measured_length: *v.lengths.last().expect("two or more lengths"),
                        predicted_length: v.lengths.first().copied(),
                        matched: false,
                        seed: None,
                    }
                })
                .collect();
            if rows.is_empty() {
                let s = state_from_index(0, n);
                let len = crate::dynamics::orbit_length(g, &s, None)?.length;
                rows.push(row(&hash, &s, len, None, true, None));
            }
            (sweep.groups, sweep.violations.len() as u64, rows)
        }
        Check::Lemma { bridge, side } => {
            let orbits = exhaustive_orbits(g, cfg.budget, 1)?;
            let per_orbit: Result<Vec<(u64, Vec<ReportRow>)>, TheoremError> = orbits
                .par_iter()
                .map(|o| {
                    let s = state_from_index(o.representative, n);
                    let report = verify_lemma_sd_rotation(g, &s, *bridge, *side)?;
                    let rows = report
                        .excursions
                        .iter()
                        .filter(|e| !e.passed())
                        .map(|e| row(&hash, &s, e.gap().unwrap_or(0), Some(e.expected_gap), false, None))
                        .collect();
                    Ok((report.excursions.len() as u64, rows))
                })
                .collect();
            let mut checked = 0;
            let mut rows = vec![];
            for (c, r) in per_orbit? {
                checked += c;
                rows.extend(r);
            }
            let failures = rows.len() as u64;
            if rows.is_empty() {
                let gap = (side.size() * (n - 1)) as u64;
                let s = state_from_index(orbits[0].representative, n);
                rows.push(row(&hash, &s, gap, Some(gap), true, None));
            }
            (checked, failures, rows)
        }
        Check::Directional { blocks } => {
            let orbits = exhaustive_orbits(g, cfg.budget, 1)?;
            let per_orbit: Result<Vec<(u64, Vec<ReportRow>)>, TheoremError> = orbits
                .par_iter()
                .map(|o| {
                    let s = state_from_index(o.representative, n);
                    let mut steps = 0;
                    let mut rows = vec![];
                    for block in blocks {
                        let r = verify_directional(g, &s, block, Some(o.length))?;
                        steps += r.steps_in_block;
                        for v in &r.violations {
                            let at = replay(g, &s, v.time);
                            rows.push(row(&hash, &at, o.length, None, false, None));
                        }
                    }
                    Ok((steps, rows))
                })
                .collect();
            let mut checked = 0;
            let mut rows = vec![];
            for (c, r) in per_orbit? {
                checked += c;
                rows.extend(r);
            }
            let failures = rows.len() as u64;
            if rows.is_empty() {
                let s = state_from_index(orbits[0].representative, n);
                rows.push(row(&hash, &s, orbits[0].length, None, true, None));
            }
            (checked, failures, rows)
        }
    };
    Ok(CaseOutcome {
        id: case.id.clone(),
        graph_hash: hash,
        vertices: n,
        passed: failures == 0,
        checked,
        failures,
        rows,
    })
}

fn replay(g: &SimpleGraph, s: &State, steps: u64) -> State {
    let mut cur = s.clone();
    for _ in 0..steps {
        cur.advance(g);
    }
    cur
}
