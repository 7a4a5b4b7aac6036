//! Coin crossings over a monitored edge, and the checks built on them:
//! the excursion length and rotation property for a tree or complete block
//! behind a bridge, per-vertex dwell times inside a tree block, and the
//! direction in which replicas move while the coin is in a complete block.

use std::collections::HashMap;

use serde::Serialize;

use crate::dynamics::{orbit_length, OrbitReport, State};
use crate::error::TheoremError;
use crate::graph::{classify, SimpleGraph};
use crate::stone::{is_cyclic_rotation, StoneDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// From `edge.0` to `edge.1`.
    Forward,
    Backward,
}

/// The coin sits on one end of `edge` at `time` and on the other end at
/// `time + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingEvent {
    pub time: u64,
    pub edge: (usize, usize),
    pub direction: Direction,
}

fn check_edge(g: &SimpleGraph, edge: (usize, usize)) -> Result<(), TheoremError> {
    let n = g.vertex_count();
    if edge.0 >= n || edge.1 >= n || !g.is_adjacent(edge.0, edge.1) {
        return Err(TheoremError::Precondition(format!(
            "{{{}, {}}} is not an edge",
            edge.0, edge.1
        )));
    }
    Ok(())
}

/// Crossings of `edge` during the first `horizon` steps from `s`.
pub fn crossing_log(
    g: &SimpleGraph,
    s: &State,
    edge: (usize, usize),
    horizon: u64,
) -> Result<Vec<CrossingEvent>, TheoremError> {
    s.check_graph(g)?;
    check_edge(g, edge)?;
    let mut events = vec![];
    let mut cur = s.clone();
    for time in 0..horizon {
        let before = cur.coin();
        cur.advance(g);
        let after = cur.coin();
        if (before, after) == edge {
            events.push(CrossingEvent {
                time,
                edge,
                direction: Direction::Forward,
            });
        } else if (after, before) == edge {
            events.push(CrossingEvent {
                time,
                edge,
                direction: Direction::Backward,
            });
        }
    }
    Ok(events)
}

/// Orbit length together with the crossings of `edge` over one period.
pub fn orbit_with_events(
    g: &SimpleGraph,
    s: &State,
    edge: (usize, usize),
) -> Result<OrbitReport, TheoremError> {
    let mut report = orbit_length(g, s, None)?;
    report.events = Some(crossing_log(g, s, edge, report.length)?);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Tree(usize),
    Complete(usize),
}

impl Side {
    pub fn size(&self) -> usize {
        match *self {
            Side::Tree(m) | Side::Complete(m) => m,
        }
    }
}

/// One visit of the coin to the block: entered across the bridge at time
/// `entered_at`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcursionCheck {
    pub entered_at: u64,
    pub returned_at: Option<u64>,
    pub expected_gap: u64,
    /// `k` such that the diagram after returning is `cyc^k` of the diagram
    /// obtained by swapping the bridge labels at entry, if any.
    pub rotation: Option<usize>,
    pub expected_rotation: usize,
    /// Tree block: every block vertex holds the coin exactly `N − 1` times
    /// during the excursion. Complete block: the coin never leaves.
    pub dwell_ok: bool,
    /// Tree block: each (block replica on the stone, replica just clockwise)
    /// pair occurs exactly once during the excursion.
    pub pairs_ok: bool,
}

impl ExcursionCheck {
    pub fn gap(&self) -> Option<u64> {
        self.returned_at.map(|t| t - self.entered_at)
    }

    pub fn passed(&self) -> bool {
        self.gap() == Some(self.expected_gap)
            && self.rotation == Some(self.expected_rotation)
            && self.dwell_ok
            && self.pairs_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    /// `(outside endpoint, block endpoint)`.
    pub bridge: (usize, usize),
    pub side: Side,
    pub block: Vec<usize>,
    pub total_vertices: usize,
    pub orbit_length: u64,
    pub excursions: Vec<ExcursionCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.excursions.iter().all(ExcursionCheck::passed)
    }
}

fn block_behind(
    g: &SimpleGraph,
    edge: (usize, usize),
    side: Side,
) -> Result<Vec<usize>, TheoremError> {
    check_edge(g, edge)?;
    let block = g.component_without_edge(edge.1, edge);
    if block.contains(&edge.0) {
        return Err(TheoremError::Precondition("monitored edge is not a bridge".into()));
    }
    if block.len() != side.size() {
        return Err(TheoremError::Precondition(format!(
            "block behind the bridge has {} vertices, declared {}",
            block.len(),
            side.size()
        )));
    }
    let c = classify(&g.induced(&block)?);
    let ok = match side {
        Side::Tree(_) => c.is_tree,
        Side::Complete(_) => c.is_complete,
    };
    if !ok {
        return Err(TheoremError::Precondition(format!(
            "block behind the bridge is not {side:?}"
        )));
    }
    Ok(block)
}

/// Replays the orbit through `s` and checks every entry of the coin into the
/// block behind `edge = (outside, inside)`: the coin returns after exactly
/// `size·(N − 1)` steps, and the diagram right after the return is the
/// diagram "as if the bridge were absent" rotated by `N − size` positions.
pub fn verify_lemma_sd_rotation(
    g: &SimpleGraph,
    s: &State,
    edge: (usize, usize),
    side: Side,
) -> Result<LemmaReport, TheoremError> {
    s.check_graph(g)?;
    let block = block_behind(g, edge, side)?;
    let big_n = g.vertex_count();
    let mut in_block = vec![false; big_n];
    for &v in &block {
        in_block[v] = true;
    }
    let gap = (side.size() * (big_n - 1)) as u64;
    let orbit = orbit_length(g, s, None)?.length;
    let (outside, inside) = edge;

    // Enough states to follow an excursion that starts late in the period.
    let total = orbit + gap + 2;
    let mut trace = Vec::with_capacity(total as usize);
    let mut cur = s.clone();
    for _ in 0..total {
        trace.push(cur.clone());
        cur.advance(g);
    }
    let coin = |t: u64| trace[t as usize].coin();

    let expected_rotation = (big_n - side.size()) % big_n;
    let mut excursions = vec![];
    for t in 0..orbit {
        if !(coin(t) == outside && coin(t + 1) == inside) {
            continue;
        }
        let returned_at = (t + 1..total - 1).find(|&u| coin(u) == inside && coin(u + 1) == outside);

        let rotation = returned_at.filter(|&u| u + 1 < total).and_then(|u| {
            let at_entry = &trace[t as usize];
            let mut labeling = at_entry.labeling().clone();
            labeling.swap_vertices(outside, inside);
            let n = at_entry.size();
            let skipped = State::new(labeling, crate::dynamics::next_label(at_entry.active(), n))
                .expect("valid state");
            let after = StoneDiagram::from_state(&trace[(u + 1) as usize]);
            is_cyclic_rotation(&StoneDiagram::from_state(&skipped), &after).ok().flatten()
        });

        let window_end = (t + gap).min(total - 1);
        let (dwell_ok, pairs_ok) = match side {
            Side::Tree(_) => {
                let mut dwell: HashMap<usize, u64> = HashMap::new();
                let mut pairs: HashMap<(usize, usize), u32> = HashMap::new();
                for u in t + 1..=window_end {
                    let st = &trace[u as usize];
                    *dwell.entry(st.coin()).or_default() += 1;
                    let next = crate::dynamics::next_label(st.active(), big_n);
                    *pairs.entry((st.coin(), st.labeling().vertex(next))).or_default() += 1;
                }
                let dwell_ok = dwell.len() == block.len()
                    && block.iter().all(|v| dwell.get(v) == Some(&(big_n as u64 - 1)));
                let pairs_ok = pairs.len() == block.len() * (big_n - 1)
                    && pairs.iter().all(|(&(j, k), &c)| in_block[j] && j != k && c == 1);
                (dwell_ok, pairs_ok)
            }
            Side::Complete(_) => {
                let dwell_ok = (t + 1..=window_end).all(|u| in_block[coin(u)]);
                (dwell_ok, true)
            }
        };

        excursions.push(ExcursionCheck {
            entered_at: t,
            returned_at,
            expected_gap: gap,
            rotation,
            expected_rotation,
            dwell_ok,
            pairs_ok,
        });
    }
    Ok(LemmaReport {
        bridge: edge,
        side,
        block,
        total_vertices: big_n,
        orbit_length: orbit,
        excursions,
    })
}

/// A replica moved the wrong way during a step taken with the coin in the
/// block. `moved` is `+1` for one position clockwise, `-1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectionalViolation {
    pub time: u64,
    pub vertex: usize,
    pub moved: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionalReport {
    pub steps: u64,
    pub steps_in_block: u64,
    pub clockwise_moves: u64,
    pub counterclockwise_moves: u64,
    pub violations: Vec<DirectionalViolation>,
}

impl DirectionalReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Over `horizon` steps from `s` (one orbit if `None`), checks that while
/// the coin is inside the complete `block`, block replicas only move
/// clockwise and all other replicas only move counterclockwise.
pub fn verify_directional(
    g: &SimpleGraph,
    s: &State,
    block: &[usize],
    horizon: Option<u64>,
) -> Result<DirectionalReport, TheoremError> {
    s.check_graph(g)?;
    let n = g.vertex_count();
    let mut in_block = vec![false; n];
    for &v in block {
        if v >= n {
            return Err(TheoremError::Precondition(format!("vertex {v} out of range")));
        }
        in_block[v] = true;
    }
    if block.is_empty() || !classify(&g.induced(block)?).is_complete {
        return Err(TheoremError::Precondition("block is not a complete subgraph".into()));
    }
    let leaving: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| in_block[u] != in_block[v]).collect();
    let bridges = classify(g).bridges;
    if leaving.iter().any(|e| !bridges.contains(e)) {
        return Err(TheoremError::Precondition(
            "block must be attached by bridges only".into(),
        ));
    }
    let horizon = match horizon {
        Some(h) => h,
        None => orbit_length(g, s, None)?.length,
    };
    let mut report = DirectionalReport {
        steps: horizon,
        steps_in_block: 0,
        clockwise_moves: 0,
        counterclockwise_moves: 0,
        violations: vec![],
    };
    let mut cur = s.clone();
    for time in 0..horizon {
        let coin_in_block = in_block[cur.coin()];
        let before = StoneDiagram::from_state(&cur);
        cur.advance(g);
        if !coin_in_block {
            continue;
        }
        report.steps_in_block += 1;
        let after = StoneDiagram::from_state(&cur);
        for (v, &inside) in in_block.iter().enumerate() {
            let (p, q) = (before.position_of(v), after.position_of(v));
            if p == q {
                continue;
            }
            let moved: i8 = if q == p % n + 1 { 1 } else { -1 };
            if moved == 1 {
                report.clockwise_moves += 1;
            } else {
                report.counterclockwise_moves += 1;
            }
            if (moved == 1) != inside {
                report.violations.push(DirectionalViolation { time, vertex: v, moved });
            }
        }
    }
    Ok(report)
}
