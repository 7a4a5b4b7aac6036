//! Exhaustive and sampled walks over the state space.
//!
//! States are indexed by `rank(σ)·ν + (i − 1)` where `rank` is the
//! lexicographic (Lehmer code) rank of σ in one-line notation, so index
//! order is "permutations in lexicographic order, then active label".

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{Labeling, State};
use crate::error::EnumerationError;
use crate::graph::SimpleGraph;

/// Largest vertex count for which exhaustive runs (and the visited bitmap)
/// are offered.
pub const MAX_EXHAUSTIVE: usize = 9;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `ν!·ν`.
pub fn state_count(n: usize) -> u64 {
    factorial(n) * n as u64
}

/// Lexicographic rank of a permutation of `1..=n` given in one-line form.
pub fn rank(perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut used = 0u64;
    let mut r = 0u64;
    for (pos, &x) in perm.iter().enumerate() {
        // Labels smaller than x not yet used.
        let below = (x - 1) as u32 - (used & ((1u64 << (x - 1)) - 1)).count_ones();
        r += below as u64 * factorial(n - 1 - pos);
        used |= 1 << (x - 1);
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(mut r: u64, n: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let f = factorial(n - 1 - pos);
        let digit = (r / f) as usize;
        r %= f;
        out.push(pool.remove(digit));
    }
    out
}

pub fn state_index(s: &State) -> u64 {
    rank(s.labeling().labels()) * s.size() as u64 + (s.active() as u64 - 1)
}

pub fn state_from_index(index: u64, n: usize) -> State {
    let labeling = Labeling::new(unrank(index / n as u64, n)).expect("unrank yields a permutation");
    State::new(labeling, (index % n as u64) as usize + 1).expect("active in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl Mode {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Sampled { seed, .. } => Some(*seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationPlan {
    pub mode: Mode,
    /// Maximum total promotion steps.
    pub budget: u64,
    pub partition: usize,
}

impl EnumerationPlan {
    pub fn exhaustive() -> Self {
        EnumerationPlan {
            mode: Mode::Exhaustive,
            budget: DEFAULT_BUDGET,
            partition: 1,
        }
    }

    pub fn sampled(count: u64, seed: u64) -> Self {
        EnumerationPlan {
            mode: Mode::Sampled { count, seed },
            budget: DEFAULT_BUDGET,
            partition: 1,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_partition(mut self, partition: usize) -> Self {
        self.partition = partition;
        self
    }

    fn check(&self, n: usize) -> Result<(), EnumerationError> {
        if self.partition == 0 {
            return Err(EnumerationError::ZeroPartition);
        }
        if self.mode == Mode::Exhaustive {
            if n > MAX_EXHAUSTIVE {
                return Err(EnumerationError::TooLarge {
                    got: n,
                    max: MAX_EXHAUSTIVE,
                });
            }
            if state_count(n) > self.budget {
                return Err(EnumerationError::BudgetExceeded {
                    budget: self.budget,
                    steps: 0,
                });
            }
        }
        Ok(())
    }
}

/// `count` states drawn from a seeded generator; duplicates allowed.
pub fn sample_states(n: usize, count: u64, seed: u64) -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut labels: Vec<usize> = (1..=n).collect();
            labels.shuffle(&mut rng);
            let active = rng.gen_range(1..=n);
            State::new(Labeling::new(labels).expect("shuffle is a permutation"), active)
                .expect("active in range")
        })
        .collect()
}

/// Every state in index order (exhaustive) or the seeded sample.
pub fn enumerate_states(
    n: usize,
    plan: &EnumerationPlan,
) -> Result<Box<dyn Iterator<Item = State>>, EnumerationError> {
    plan.check(n)?;
    Ok(match plan.mode {
        Mode::Exhaustive => Box::new((0..state_count(n)).map(move |i| state_from_index(i, n))),
        Mode::Sampled { count, seed } => Box::new(sample_states(n, count, seed).into_iter()),
    })
}

/// One orbit found by an exhaustive walk: its least state index and length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitSummary {
    pub representative: u64,
    pub length: u64,
}

struct StepMeter<'a> {
    used: &'a AtomicU64,
    budget: u64,
}

impl StepMeter<'_> {
    fn charge(&self, steps: u64) -> Result<(), EnumerationError> {
        let total = self.used.fetch_add(steps, Ordering::Relaxed) + steps;
        if total > self.budget {
            Err(EnumerationError::BudgetExceeded {
                budget: self.budget,
                steps: total,
            })
        } else {
            Ok(())
        }
    }
}

/// Walks every orbit of promotion on `g` once. Orbits are listed by their
/// least state index, ascending.
///
/// Shards own contiguous permutation-rank ranges and a private visited
/// bitmap. A shard walks each orbit that enters its range and keeps it
/// only if the orbit's least index falls inside the range, so every orbit
/// is reported by exactly one shard.
pub fn exhaustive_orbits(
    g: &SimpleGraph,
    budget: u64,
    partition: usize,
) -> Result<Vec<OrbitSummary>, EnumerationError> {
    let n = g.vertex_count();
    EnumerationPlan {
        mode: Mode::Exhaustive,
        budget,
        partition,
    }
    .check(n)?;
    let perms = factorial(n);
    let shards = partition.min(perms as usize).max(1) as u64;
    let used = AtomicU64::new(0);
    let meter = StepMeter {
        used: &used,
        budget,
    };
    let per_shard: Vec<Result<Vec<OrbitSummary>, EnumerationError>> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let lo = perms * k / shards * n as u64;
            let hi = perms * (k + 1) / shards * n as u64;
            walk_shard(g, lo, hi, &meter)
        })
        .collect();
    let mut all = Vec::new();
    for shard in per_shard {
        all.extend(shard?);
    }
    all.sort_unstable();
    Ok(all)
}

fn walk_shard(
    g: &SimpleGraph,
    lo: u64,
    hi: u64,
    meter: &StepMeter<'_>,
) -> Result<Vec<OrbitSummary>, EnumerationError> {
    let n = g.vertex_count();
    let span = (hi - lo) as usize;
    let mut visited = vec![0u64; span.div_ceil(64)];
    let mut found = Vec::new();
    for start_index in lo..hi {
        let off = (start_index - lo) as usize;
        if visited[off / 64] >> (off % 64) & 1 == 1 {
            continue;
        }
        let start = state_from_index(start_index, n);
        let mut cur = start.clone();
        let mut least = start_index;
        let mut length = 0u64;
        loop {
            let idx = state_index(&cur);
            least = least.min(idx);
            if (lo..hi).contains(&idx) {
                let o = (idx - lo) as usize;
                visited[o / 64] |= 1 << (o % 64);
            }
            cur.advance(g);
            length += 1;
            if cur == start {
                break;
            }
        }
        meter.charge(length)?;
        if least == start_index {
            found.push(OrbitSummary {
                representative: start_index,
                length,
            });
        }
    }
    Ok(found)
}

/// Orbit length of every state, indexed by state index.
pub fn orbit_length_table(g: &SimpleGraph, budget: u64) -> Result<Vec<u32>, EnumerationError> {
    let n = g.vertex_count();
    EnumerationPlan::exhaustive().with_budget(budget).check(n)?;
    let total = state_count(n) as usize;
    let mut table = vec![0u32; total];
    let mut steps = 0u64;
    let mut members = Vec::new();
    for start_index in 0..total {
        if table[start_index] != 0 {
            continue;
        }
        let start = state_from_index(start_index as u64, n);
        let mut cur = start.clone();
        members.clear();
        loop {
            members.push(state_index(&cur) as usize);
            cur.advance(g);
            if cur == start {
                break;
            }
        }
        steps += members.len() as u64;
        if steps > budget {
            return Err(EnumerationError::BudgetExceeded { budget, steps });
        }
        for &m in &members {
            table[m] = members.len() as u32;
        }
    }
    Ok(table)
}

/// Orbit lengths of sampled states, in sample order.
pub fn sampled_lengths(
    g: &SimpleGraph,
    count: u64,
    seed: u64,
    budget: u64,
) -> Result<Vec<(State, u64)>, EnumerationError> {
    let n = g.vertex_count();
    let cap = crate::dynamics::default_cap(n);
    let used = AtomicU64::new(0);
    let meter = StepMeter {
        used: &used,
        budget,
    };
    sample_states(n, count, seed)
        .into_par_iter()
        .map(|s| {
            let len = crate::dynamics::orbit_length_raw(g, &s, cap.min(budget + 1))?;
            meter.charge(len)?;
            Ok((s, len))
        })
        .collect()
}

/// Multiset of orbit lengths over the states visited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    /// Orbit length -> number of states with that length.
    pub entries: BTreeMap<u64, u64>,
    pub total_states: u64,
    pub vertices: usize,
    pub graph_hash: String,
    #[serde(flatten)]
    pub mode: Mode,
    pub budget: u64,
}

impl OrbitCensus {
    /// `length,count` rows in ascending length order, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,count\n");
        for (len, count) in &self.entries {
            out.push_str(&format!("{len},{count}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            length: u64,
            count: u64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            graph_hash: &'a str,
            vertices: usize,
            mode: &'static str,
            seed: Option<u64>,
            budget: u64,
            total_states: u64,
            entries: Vec<Entry>,
        }
        let doc = Doc {
            graph_hash: &self.graph_hash,
            vertices: self.vertices,
            mode: match self.mode {
                Mode::Exhaustive => "exhaustive",
                Mode::Sampled { .. } => "sampled",
            },
            seed: self.mode.seed(),
            budget: self.budget,
            total_states: self.total_states,
            entries: self
                .entries
                .iter()
                .map(|(&length, &count)| Entry { length, count })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("census serializes")
    }
}

pub fn census(g: &SimpleGraph, plan: &EnumerationPlan) -> Result<OrbitCensus, EnumerationError> {
    let n = g.vertex_count();
    plan.check(n)?;
    let mut entries = BTreeMap::new();
    let total_states = match plan.mode {
        Mode::Exhaustive => {
            for orbit in exhaustive_orbits(g, plan.budget, plan.partition)? {
                *entries.entry(orbit.length).or_insert(0) += orbit.length;
            }
            state_count(n)
        }
        Mode::Sampled { count, seed } => {
            for (_, len) in sampled_lengths(g, count, seed, plan.budget)? {
                *entries.entry(len).or_insert(0) += 1;
            }
            count
        }
    };
    Ok(OrbitCensus {
        entries,
        total_states,
        vertices: n,
        graph_hash: g.content_hash(),
        mode: plan.mode,
        budget: plan.budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank(&[1, 2, 3]), 0);
        assert_eq!(rank(&[1, 3, 2]), 1);
        assert_eq!(rank(&[3, 2, 1]), 5);
        assert_eq!(unrank(3, 3), vec![2, 3, 1]);
        for r in 0..120 {
            assert_eq!(rank(&unrank(r, 5)), r);
        }
    }

    #[test]
    fn exhaustive_counts_and_order() {
        let plan = EnumerationPlan::exhaustive();
        let states: Vec<State> = enumerate_states(3, &plan).unwrap().collect();
        assert_eq!(states.len(), 18);
        assert_eq!(states[0], State::parse("123", 1).unwrap());
        assert_eq!(states[1], State::parse("123", 2).unwrap());
        assert_eq!(states[3], State::parse("132", 1).unwrap());
        assert!(states.windows(2).all(|w| w[0] < w[1] || w[0].labeling() < w[1].labeling()));
        assert_eq!(enumerate_states(4, &plan).unwrap().count(), 96);
    }

    #[test]
    fn sampling_is_deterministic() {
        let plan = EnumerationPlan::sampled(5, 1);
        let a: Vec<State> = enumerate_states(6, &plan).unwrap().collect();
        let b: Vec<State> = enumerate_states(6, &plan).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        let c: Vec<State> = enumerate_states(6, &EnumerationPlan::sampled(5, 2)).unwrap().collect();
        assert_ne!(a, c);
    }

    #[test]
    fn plan_errors() {
        let plan = EnumerationPlan::exhaustive();
        assert!(matches!(
            enumerate_states(10, &plan),
            Err(EnumerationError::TooLarge { got: 10, max: 9 })
        ));
        assert!(matches!(
            enumerate_states(5, &plan.with_budget(100)),
            Err(EnumerationError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_states(3, &plan.with_partition(0)),
            Err(EnumerationError::ZeroPartition)
        ));
    }

    #[test]
    fn census_of_complete_and_path() {
        let k4 = GraphFamily::Complete(4).build().unwrap();
        let c = census(&k4, &EnumerationPlan::exhaustive()).unwrap();
        assert_eq!(c.entries, BTreeMap::from([(4, 96)]));
        assert_eq!(c.to_csv(), "length,count\n4,96\n");
        let p3 = GraphFamily::Path(3).build().unwrap();
        let c = census(&p3, &EnumerationPlan::exhaustive()).unwrap();
        assert_eq!(c.entries, BTreeMap::from([(6, 18)]));
    }

    #[test]
    fn budget_abort() {
        // Exhaustive walk of a 5-path needs 600 steps.
        let p5 = GraphFamily::Path(5).build().unwrap();
        assert!(exhaustive_orbits(&p5, 600, 1).is_ok());
        assert!(matches!(
            exhaustive_orbits(&p5, 599, 1),
            Err(EnumerationError::BudgetExceeded { .. })
        ));
        let table = orbit_length_table(&p5, 600).unwrap();
        assert!(table.iter().all(|&l| l == 20));
        assert!(orbit_length_table(&p5, 599).is_err());
    }

    #[test]
    fn census_json_shape() {
        let k3 = GraphFamily::Complete(3).build().unwrap();
        let c = census(&k3, &EnumerationPlan::sampled(10, 7)).unwrap();
        assert_eq!(c.total_states, 10);
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["mode"], "sampled");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["entries"][0]["length"], 3);
        assert_eq!(v["entries"][0]["count"], 10);
    }
}
