use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Block;
use crate::dynamics::{default_cap, orbit_length_raw, Labeling, State};
use crate::enumeration::{orbit_length_table, state_from_index};
use crate::error::TheoremError;
use crate::graph::{classify, SimpleGraph};

/// A tree or complete block hanging off a fixed vertex set by one bridge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttachedBlock {
    pub fixed: Vec<usize>,
    pub block: Vec<usize>,
    pub kind: Block,
    /// `(fixed-side endpoint, block-side endpoint)`.
    pub bridge: (usize, usize),
}

/// Checks that the complement of `fixed_part` is a tree or complete graph
/// joined to it by exactly one edge.
pub fn attached_block(g: &SimpleGraph, fixed_part: &[usize]) -> Result<AttachedBlock, TheoremError> {
    let n = g.vertex_count();
    let mut in_fixed = vec![false; n];
    for &v in fixed_part {
        if v >= n || std::mem::replace(&mut in_fixed[v], true) {
            return Err(TheoremError::Precondition(format!(
                "fixed part must be distinct vertices below {n}"
            )));
        }
    }
    let block: Vec<usize> = (0..n).filter(|&v| !in_fixed[v]).collect();
    if block.is_empty() || fixed_part.is_empty() {
        return Err(TheoremError::Precondition(
            "both the fixed part and the block must be nonempty".into(),
        ));
    }
    let crossing: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| in_fixed[u] != in_fixed[v])
        .map(|(u, v)| if in_fixed[u] { (u, v) } else { (v, u) })
        .collect();
    if crossing.len() != 1 {
        return Err(TheoremError::Precondition(format!(
            "block must be attached by exactly one edge, found {}",
            crossing.len()
        )));
    }
    let c = classify(&g.induced(&block)?);
    let kind = if c.is_tree {
        Block::Tree(block.len())
    } else if c.is_complete {
        Block::Complete(block.len())
    } else {
        return Err(TheoremError::Precondition(
            "attached block is neither a tree nor complete".into(),
        ));
    };
    Ok(AttachedBlock {
        fixed: fixed_part.to_vec(),
        block,
        kind,
        bridge: crossing[0],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extensions {
    /// Every assignment of the remaining labels to the block.
    All,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub setup: AttachedBlock,
    /// Labels of the fixed vertices, in `setup.fixed` order.
    pub restriction: Vec<usize>,
    pub active: usize,
    pub extensions_checked: u64,
    pub lengths: BTreeSet<u64>,
    pub seed: Option<u64>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.lengths.len() <= 1
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = vec![];
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Fixes the labels on `fixed_part` and the active label, varies the labels
/// on the attached block, and collects the distinct orbit lengths.
pub fn verify_restriction_independence(
    g: &SimpleGraph,
    fixed_part: &[usize],
    restriction: &[usize],
    active: usize,
    extensions: Extensions,
) -> Result<RestrictionReport, TheoremError> {
    let setup = attached_block(g, fixed_part)?;
    let n = g.vertex_count();
    if restriction.len() != fixed_part.len() {
        return Err(TheoremError::Precondition(
            "restriction must label every fixed vertex".into(),
        ));
    }
    let mut used = vec![false; n + 1];
    for &l in restriction {
        if l == 0 || l > n || std::mem::replace(&mut used[l], true) {
            return Err(TheoremError::Precondition(format!(
                "restriction labels must be distinct values in 1..={n}"
            )));
        }
    }
    let free: Vec<usize> = (1..=n).filter(|&l| !used[l]).collect();
    let assignments = match extensions {
        Extensions::All => permutations(&free),
        Extensions::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let mut p = free.clone();
                    p.shuffle(&mut rng);
                    p
                })
                .collect()
        }
    };
    let cap = default_cap(n);
    let mut lengths = BTreeSet::new();
    for assignment in &assignments {
        let mut label_of = vec![0; n];
        for (&v, &l) in fixed_part.iter().zip(restriction) {
            label_of[v] = l;
        }
        for (&v, &l) in setup.block.iter().zip(assignment) {
            label_of[v] = l;
        }
        let s = State::new(Labeling::new(label_of)?, active)?;
        lengths.insert(orbit_length_raw(g, &s, cap)?);
    }
    Ok(RestrictionReport {
        setup,
        restriction: restriction.to_vec(),
        active,
        extensions_checked: assignments.len() as u64,
        lengths,
        seed: match extensions {
            Extensions::All => None,
            Extensions::Sampled { seed, .. } => Some(seed),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionViolation {
    pub restriction: Vec<usize>,
    pub active: usize,
    pub lengths: Vec<u64>,
}

/// Result of checking every `(restriction, active)` group at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionSweep {
    pub setup: AttachedBlock,
    pub groups: u64,
    pub states: u64,
    pub violations: Vec<RestrictionViolation>,
}

impl RestrictionSweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive version of [`verify_restriction_independence`]: computes the
/// orbit length of every state and groups states by their labels on the
/// fixed part and their active label.
pub fn restriction_sweep(
    g: &SimpleGraph,
    fixed_part: &[usize],
    budget: u64,
) -> Result<RestrictionSweep, TheoremError> {
    let setup = attached_block(g, fixed_part)?;
    let n = g.vertex_count();
    let table = orbit_length_table(g, budget)?;
    let base = n as u64 + 1;
    let mut groups: HashMap<u64, BTreeSet<u32>> = HashMap::new();
    for (index, &len) in table.iter().enumerate() {
        let s = state_from_index(index as u64, n);
        let key = fixed_part
            .iter()
            .fold(s.active() as u64, |acc, &v| acc * base + s.labeling().label(v) as u64);
        groups.entry(key).or_default().insert(len);
    }
    let mut violations: Vec<RestrictionViolation> = groups
        .iter()
        .filter(|(_, lens)| lens.len() > 1)
        .map(|(&key, lens)| {
            let mut k = key;
            let mut restriction = vec![0; fixed_part.len()];
            for slot in restriction.iter_mut().rev() {
                *slot = (k % base) as usize;
                k /= base;
            }
            RestrictionViolation {
                restriction,
                active: k as usize,
                lengths: lens.iter().map(|&l| l as u64).collect(),
            }
        })
        .collect();
    violations.sort_by(|a, b| (a.active, &a.restriction).cmp(&(b.active, &b.restriction)));
    Ok(RestrictionSweep {
        setup,
        groups: groups.len() as u64,
        states: table.len() as u64,
        violations,
    })
}
