use std::fmt;

use serde::Serialize;

use super::Block;
use crate::dynamics::{default_cap, orbit_length_raw, State};
use crate::error::TheoremError;
use crate::graph::{bridge_sum, classify, GraphFamily, SimpleGraph};
use crate::stone::StoneDiagram;

/// Description of the literal reading, embedded in every report.
pub const LITERAL_READING: &str = "literal: at the first time t the coin moves from the cycle-side \
bridge vertex to the block-side bridge vertex, drop the replica of the cycle-side bridge vertex \
from SD_t; walk clockwise from the replica of w(1) to w(2), ..., w(nu-1) and back to w(1), where \
w(0..nu-1) lists the cycle vertices in cycle order starting at the bridge vertex; each R is 1 plus \
the number of replicas crossed; w = sum(R) / (N-1)";

pub const INFERRED_READING: &str = "inferred: orbit length / ((N-1)N)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    Literal,
    Inferred,
}

impl Interpretation {
    pub fn describe(&self) -> &'static str {
        match self {
            Interpretation::Literal => LITERAL_READING,
            Interpretation::Inferred => INFERRED_READING,
        }
    }
}

/// A cycle joined to a tree or complete block by one bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingInput {
    pub graph: SimpleGraph,
    /// Cycle vertices in cyclic order, starting with the cycle-side bridge
    /// endpoint.
    pub cycle_order: Vec<usize>,
    pub block: Block,
    /// Block-side bridge endpoint.
    pub block_vertex: usize,
}

impl WindingInput {
    /// Validates the tagging: `cycle_order` is a cycle of `g`, the rest of
    /// `g` is a tree or complete graph, and `{cycle_order[0], block_vertex}`
    /// is the only edge between them.
    pub fn new(
        graph: SimpleGraph,
        cycle_order: Vec<usize>,
        block_vertex: usize,
    ) -> Result<WindingInput, TheoremError> {
        let n = graph.vertex_count();
        let nu = cycle_order.len();
        if nu < 3 {
            return Err(TheoremError::Precondition("cycle needs at least 3 vertices".into()));
        }
        let mut on_cycle = vec![false; n];
        for &v in &cycle_order {
            if v >= n || std::mem::replace(&mut on_cycle[v], true) {
                return Err(TheoremError::Precondition("cycle order must list distinct vertices".into()));
            }
        }
        for k in 0..nu {
            if !graph.is_adjacent(cycle_order[k], cycle_order[(k + 1) % nu]) {
                return Err(TheoremError::Precondition("cycle order does not follow edges".into()));
            }
        }
        let cycle_edges = graph.edges().filter(|&(u, v)| on_cycle[u] && on_cycle[v]).count();
        if cycle_edges != nu {
            return Err(TheoremError::Precondition("cycle vertices carry chords".into()));
        }
        let crossing: Vec<(usize, usize)> =
            graph.edges().filter(|&(u, v)| on_cycle[u] != on_cycle[v]).collect();
        let bridge = (cycle_order[0].min(block_vertex), cycle_order[0].max(block_vertex));
        if crossing != [bridge] {
            return Err(TheoremError::Precondition(
                "the bridge must be the only edge leaving the cycle".into(),
            ));
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !on_cycle[v]).collect();
        let c = classify(&graph.induced(&rest)?);
        // K1 and K2 are both; callers that mean "complete" override this.
        let block = if c.is_tree {
            Block::Tree(rest.len())
        } else if c.is_complete {
            Block::Complete(rest.len())
        } else {
            return Err(TheoremError::Precondition("block is neither a tree nor complete".into()));
        };
        Ok(WindingInput {
            graph,
            cycle_order,
            block,
            block_vertex,
        })
    }

    /// `block` at vertices `0..`, then the cycle, joined at `bv` and cycle
    /// vertex `cv`.
    pub fn from_parts(block: &SimpleGraph, bv: usize, nu: usize, cv: usize) -> Result<WindingInput, TheoremError> {
        let cycle = GraphFamily::Cycle(nu).build()?;
        let g = bridge_sum(block, bv, &cycle, cv)?;
        let off = block.vertex_count();
        let order = (0..nu).map(|k| off + (cv + k) % nu).collect();
        WindingInput::new(g, order, bv)
    }

    /// Path on `m` vertices bridged at its first vertex to cycle vertex 0.
    pub fn tree_cycle(m: usize, nu: usize) -> Result<WindingInput, TheoremError> {
        WindingInput::from_parts(&GraphFamily::Path(m).build()?, 0, nu, 0)
    }

    pub fn complete_cycle(n: usize, nu: usize) -> Result<WindingInput, TheoremError> {
        let mut input = WindingInput::from_parts(&GraphFamily::Complete(n).build()?, 0, nu, 0)?;
        input.block = Block::Complete(n);
        Ok(input)
    }

    pub fn nu(&self) -> usize {
        self.cycle_order.len()
    }

    pub fn conjectured_factor(&self) -> u64 {
        let big_n = self.graph.vertex_count() as u64;
        big_n * (big_n - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindingValue {
    pub interpretation: Interpretation,
    pub value: Ratio,
    /// Literal reading: steps from the given state to the crossing used.
    pub crossing_time: Option<u64>,
}

/// Computes `w` for the orbit through `state` under either reading.
/// A non-integral value is returned, not rejected.
pub fn winding_number(
    input: &WindingInput,
    state: &State,
    interpretation: Interpretation,
) -> Result<WindingValue, TheoremError> {
    let g = &input.graph;
    state.check_graph(g)?;
    let big_n = g.vertex_count();
    let length = orbit_length_raw(g, state, default_cap(big_n))?;
    match interpretation {
        Interpretation::Inferred => Ok(WindingValue {
            interpretation,
            value: Ratio::new(length, input.conjectured_factor()),
            crossing_time: None,
        }),
        Interpretation::Literal => {
            let (value, t) = literal_winding(input, state, length)?;
            Ok(WindingValue {
                interpretation,
                value,
                crossing_time: Some(t),
            })
        }
    }
}

/// Literal value for a state whose orbit length is already known, with the
/// number of steps to the crossing used.
pub(super) fn literal_winding(
    input: &WindingInput,
    state: &State,
    length: u64,
) -> Result<(Ratio, u64), TheoremError> {
    let g = &input.graph;
    let cv = input.cycle_order[0];
    let mut cur = state.clone();
    for t in 0..length {
        let before_coin = cur.coin();
        let before = (before_coin == cv).then(|| StoneDiagram::from_state(&cur));
        cur.advance(g);
        if let Some(before) = before.filter(|_| cur.coin() == input.block_vertex) {
            let big_n = g.vertex_count() as u64;
            return Ok((Ratio::new(literal_sum(&before, &input.cycle_order), big_n - 1), t));
        }
    }
    Err(TheoremError::Precondition("coin never crosses into the block".into()))
}

/// Sum of clockwise distances around the diagram with the replica of
/// `order[0]` removed, visiting `order[1..]` cyclically.
fn literal_sum(sd: &StoneDiagram, order: &[usize]) -> u64 {
    let n = sd.size();
    let dropped = sd.position_of(order[0]);
    // Slot index on the reduced circle of n - 1 positions.
    let slot = |v: usize| {
        let p = sd.position_of(v);
        if p > dropped {
            p - 2
        } else {
            p - 1
        }
    };
    let m = (n - 1) as u64;
    let rest = &order[1..];
    (0..rest.len())
        .map(|k| {
            let a = slot(rest[k]) as u64;
            let b = slot(rest[(k + 1) % rest.len()]) as u64;
            let d = (b + m - a) % m;
            if d == 0 {
                m
            } else {
                d
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::state_from_index;

    #[test]
    fn ratio_reduces() {
        assert_eq!(Ratio::new(40, 20), Ratio { num: 2, den: 1 });
        assert_eq!(Ratio::new(30, 20).to_string(), "3/2");
        assert!(!Ratio::new(30, 20).is_integer());
    }

    #[test]
    fn tagging_is_validated() {
        let input = WindingInput::tree_cycle(2, 3).unwrap();
        assert_eq!(input.cycle_order, vec![2, 3, 4]);
        assert_eq!(input.block, Block::Tree(2));
        assert_eq!(input.conjectured_factor(), 20);
        let g = input.graph.clone();
        assert!(WindingInput::new(g.clone(), vec![3, 2, 4], 0).is_err());
        assert!(WindingInput::new(g.clone(), vec![2, 3], 0).is_err());
        assert!(WindingInput::new(g, vec![2, 4, 3], 0).is_ok());
        assert_eq!(WindingInput::complete_cycle(3, 4).unwrap().block, Block::Complete(3));
        assert_eq!(WindingInput::complete_cycle(2, 3).unwrap().block, Block::Complete(2));
    }

    #[test]
    fn inferred_matches_brute_force() {
        let input = WindingInput::tree_cycle(2, 3).unwrap();
        for index in [0, 17, 333, 599] {
            let s = state_from_index(index, 5);
            let w = winding_number(&input, &s, Interpretation::Inferred).unwrap();
            let len = crate::dynamics::orbit_length(&input.graph, &s, None).unwrap().length;
            assert_eq!(w.value, Ratio::new(len, 20));
        }
    }

    #[test]
    fn literal_sum_counts_full_turns() {
        // Cycle replicas 1, 2, 3 in clockwise order after dropping 0: one turn.
        let sd = StoneDiagram::new(vec![0, 1, 4, 2, 3], 1, 0).unwrap();
        assert_eq!(literal_sum(&sd, &[0, 1, 2, 3]), 4);
        // Reversed order winds the other way round: two turns of 4 slots.
        assert_eq!(literal_sum(&sd, &[0, 3, 2, 1]), 8);
    }

    #[test]
    fn literal_value_is_integral() {
        let input = WindingInput::complete_cycle(2, 4).unwrap();
        let s = state_from_index(1234, 6);
        let w = winding_number(&input, &s, Interpretation::Literal).unwrap();
        assert!(w.value.is_integer());
        assert!(w.crossing_time.is_some());
    }
}
