//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! straight to stdout (not captured by the harness) before asserting.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;

use toric_core::dynamics::orbit_states;
use toric_core::enumeration::{census, exhaustive_orbits, state_count, state_from_index, state_index, EnumerationPlan};
use toric_core::graph::{all_trees, pruefer_decode, rooted_tree_shapes};
use toric_core::stone::sd_step;
use toric_core::theorems::suites::{run_suite, Suite, SuiteConfig};
use toric_core::theorems::{
    crossing_log, explore_chain, explore_cycle_bridge, verify_lemma_sd_rotation, verify_restriction_independence,
    Direction, Extensions, Side, WindingInput,
};
use toric_core::{bridge_sum, corona_product, orbit_length, tpro_step, GraphFamily, Labeling, SimpleGraph, State, StoneDiagram};

const BUDGET: u64 = 2_000_000_000;

fn first<T: std::fmt::Debug>(problems: &[T]) -> String {
    problems.first().map(|p| format!(", first: {p:?}")).unwrap_or_default()
}

fn verdict(n: u32, title: &str, ok: bool, detail: String) {
    let line = format!(
        "acceptance criterion {n:>2} {}: {title} ({detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(ok, "criterion {n} failed: {detail}");
}

fn fam(s: &str) -> SimpleGraph {
    s.parse::<GraphFamily>().unwrap().build().unwrap()
}

fn complete(n: usize) -> SimpleGraph {
    GraphFamily::Complete(n).build().unwrap()
}

/// Orbit length by direct replay on a label array, without the library's
/// state type.
fn naive_orbit_length(g: &SimpleGraph, s: &State) -> u64 {
    let n = g.vertex_count();
    let start: Vec<usize> = s.labeling().labels().to_vec();
    let mut labels = start.clone();
    let mut i = s.active();
    let mut steps = 0;
    loop {
        let j = i % n + 1;
        let a = labels.iter().position(|&l| l == i).unwrap();
        let b = labels.iter().position(|&l| l == j).unwrap();
        if a != b && !g.is_adjacent(a, b) {
            labels.swap(a, b);
        }
        i = j;
        steps += 1;
        if i == s.active() && labels == start {
            return steps;
        }
    }
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> State {
    let mut labels: Vec<usize> = (1..=n).collect();
    for k in (1..n).rev() {
        labels.swap(k, rng.gen_range(0..=k));
    }
    State::new(Labeling::new(labels).unwrap(), rng.gen_range(1..=n)).unwrap()
}

/// Distinct orbit lengths over the whole state space.
fn length_set(g: &SimpleGraph) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for o in exhaustive_orbits(g, BUDGET, 4).unwrap() {
        *out.entry(o.length).or_insert(0) += 1;
    }
    out
}

/// Spot checks against the naive replay.
fn oracle_agrees(g: &SimpleGraph, samples: u64, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let s = random_state(g.vertex_count(), &mut rng);
        naive_orbit_length(g, &s) == orbit_length(g, &s, None).unwrap().length
    })
}

#[test]
fn criterion_01_complete_graphs() {
    let mut bad = vec![];
    let mut states = 0;
    for n in 2..=6usize {
        let g = complete(n);
        for o in exhaustive_orbits(&g, BUDGET, 4).unwrap() {
            states += o.length;
            if o.length != n as u64 {
                bad.push(format!("K{n} length {}", o.length));
            }
            let start = state_from_index(o.representative, n);
            let trace = orbit_states(&g, &start, None).unwrap();
            if trace.iter().any(|s| s.labeling() != start.labeling()) {
                bad.push(format!("K{n} labeling moved on orbit of {start}"));
            }
        }
        if !oracle_agrees(&g, 20, n as u64) {
            bad.push(format!("K{n} oracle disagreement"));
        }
    }
    verdict(
        1,
        "complete graphs K2..K6: every orbit has length n and a constant labeling",
        bad.is_empty() && states == (2..=6).map(state_count).sum::<u64>(),
        format!("{states} states, {} problems{}", bad.len(), first(&bad)),
    );
}

#[test]
fn criterion_02_trees() {
    let cfg = SuiteConfig {
        max_m: 6,
        ..SuiteConfig::default()
    };
    let report = run_suite(Suite::Trees, &cfg).unwrap();
    let mut bad: Vec<String> = vec![];
    let mut trees_by_m = BTreeMap::new();
    for case in &report.cases {
        let m = case.vertices;
        *trees_by_m.entry(m).or_insert(0u64) += 1;
        let expected = (m * (m - 1)) as u64;
        if !case.passed || case.rows.iter().any(|r| r.measured_length != expected) {
            bad.push(case.id.clone());
        }
    }
    let counts_ok = (3..=6).all(|m| trees_by_m.get(&m) == Some(&(m as u64).pow(m as u32 - 2)));
    // Independent replay on a spread of trees.
    for seq in [vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![5, 2, 2, 0], vec![1, 1]] {
        let t = pruefer_decode(&seq).unwrap();
        if !oracle_agrees(&t, 25, 7) {
            bad.push(format!("oracle {seq:?}"));
        }
    }
    let checked: u64 = report.cases.iter().map(|c| c.checked).sum();
    verdict(
        2,
        "every Pruefer tree on m=3..6 vertices: all orbits have length m(m-1)",
        bad.is_empty() && counts_ok,
        format!("{} trees, {checked} states, {} failing", report.cases.len(), bad.len()),
    );
}

#[test]
fn criterion_03_complete_bridge_complete() {
    let mut detail = vec![];
    let mut ok = true;
    for (n1, n2) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let g = bridge_sum(&complete(n1), 0, &complete(n2), 0).unwrap();
        let big_n = (n1 + n2) as u64;
        let lengths = length_set(&g);
        let pass = lengths.keys().eq([big_n * (big_n - 1)].iter()) && oracle_agrees(&g, 10, 3);
        ok &= pass;
        detail.push(format!("K{n1}+K{n2}: {:?}", lengths.keys().collect::<Vec<_>>()));
    }
    verdict(3, "K_n1 bridged with K_n2: all orbits have length N(N-1)", ok, detail.join("; "));
}

#[test]
fn criterion_04_tree_bridge_complete() {
    // Every labeled tree, every tree vertex and every K_n vertex.
    let mut jobs = vec![];
    for m in 1..=6usize {
        for n in 1..=7 - m {
            for (k, tree) in all_trees(m).into_iter().enumerate() {
                for root in 0..m {
                    for kv in 0..n {
                        jobs.push((m, n, k, tree.clone(), root, kv));
                    }
                }
            }
        }
    }
    let graphs = jobs.len();
    let mut bad: Vec<String> = jobs
        .into_par_iter()
        .filter_map(|(m, n, k, tree, root, kv)| {
            let big_n = (m + n) as u64;
            let g = bridge_sum(&tree, root, &complete(n), kv).unwrap();
            let lengths = length_set(&g);
            (!lengths.keys().eq([big_n * (big_n - 1)].iter()))
                .then(|| format!("tree{m}#{k}[{root}] + K{n}[{kv}]: {lengths:?}"))
        })
        .collect();
    // Tree on 5 vertices with K4: one random state per junction pair.
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut samples = vec![];
    for tree in ["path:5", "star:5"] {
        for tv in 0..5 {
            for kv in 0..4 {
                let g = bridge_sum(&fam(tree), tv, &complete(4), kv).unwrap();
                let s = random_state(9, &mut rng);
                let len = orbit_length(&g, &s, None).unwrap().length;
                if len != 72 || naive_orbit_length(&g, &s) != 72 {
                    bad.push(format!("{tree}[{tv}] + K4[{kv}] from {s}: {len}"));
                }
                samples.push(len);
            }
        }
    }
    verdict(
        4,
        "tree on m bridged with K_n, m+n<=7: all orbits N(N-1); tree(5)+K4 orbits of length 72",
        bad.is_empty(),
        format!("{graphs} graphs exhaustive, {} sampled junction states, {} problems{}", samples.len(), bad.len(), first(&bad)),
    );
}

#[test]
fn criterion_05_corona() {
    let mut bad = vec![];
    let mut exhaustive = 0;
    let cases: Vec<(usize, SimpleGraph, usize)> = vec![
        (2, fam("path:1"), 0),
        (3, fam("path:1"), 0),
        (2, fam("path:2"), 0),
        (2, fam("path:2"), 1),
    ];
    for (n, t, attach) in cases {
        let g = corona_product(&complete(n), &t, attach).unwrap();
        let big_n = g.vertex_count() as u64;
        let lengths = length_set(&g);
        exhaustive += 1;
        if !lengths.keys().eq([big_n * (big_n - 1)].iter()) {
            bad.push(format!("K{n} corona T{} at {attach}: {lengths:?}", t.vertex_count()));
        }
    }
    let mut sampled = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    for t in all_trees(3) {
        for attach in 0..3 {
            let g = corona_product(&complete(2), &t, attach).unwrap();
            for _ in 0..200 {
                let s = random_state(8, &mut rng);
                sampled += 1;
                let len = orbit_length(&g, &s, None).unwrap().length;
                if len != 56 {
                    bad.push(format!("K2 corona T3 at {attach} from {s}: {len}"));
                }
            }
            if !oracle_agrees(&g, 5, attach as u64) {
                bad.push("oracle".into());
            }
        }
    }
    verdict(
        5,
        "coronas K2*T1, K3*T1, K2*T2 exhaustive and K2*T3 sampled: all orbits N(N-1)",
        bad.is_empty(),
        format!("{exhaustive} exhaustive graphs, {sampled} sampled states, {} problems{}", bad.len(), first(&bad)),
    );
}

#[test]
fn criterion_06_restriction_independence() {
    let cfg = SuiteConfig::default();
    let mut problems = vec![];
    let mut groups = 0;
    let mut graphs = 0;
    for suite in [Suite::RestrictionTree, Suite::RestrictionComplete] {
        let report = run_suite(suite, &cfg).unwrap();
        graphs += report.cases.len();
        groups += report.cases.iter().map(|c| c.checked).sum::<u64>();
        problems.extend(report.failed_cases().map(|c| c.id.clone()));
    }
    // Direct enumeration of extensions for a few fixed restrictions.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for nu in [4, 5] {
        for block in ["path:3", "K3", "path:2"] {
            let b = fam(block);
            for cv in 0..nu {
                for bv in 0..b.vertex_count() {
                    let g = bridge_sum(&GraphFamily::Cycle(nu).build().unwrap(), cv, &b, bv).unwrap();
                    let n = g.vertex_count();
                    let s = random_state(n, &mut rng);
                    let fixed: Vec<usize> = (0..nu).collect();
                    let restriction: Vec<usize> = fixed.iter().map(|&v| s.labeling().label(v)).collect();
                    let r = verify_restriction_independence(&g, &fixed, &restriction, s.active(), Extensions::All)
                        .unwrap();
                    if !r.passed() {
                        problems.push(format!("C{nu}+{block} {s}: {:?}", r.lengths));
                    }
                }
            }
        }
    }
    verdict(
        6,
        "cycles C4, C5 with trees m<=3 and K_n n<=3 at every junction: fixed restriction gives one orbit length",
        problems.is_empty() && graphs > 0,
        format!("{graphs} graphs, {groups} (restriction, active) groups, {} violations{}", problems.len(), first(&problems)),
    );
}

fn random_connected_graph(n: usize, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let tree = if n == 1 { SimpleGraph::singleton() } else { pruefer_decode(&seq).unwrap() };
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).unwrap()
}

#[test]
fn criterion_07_stone_diagram_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0u64;
    let mut exhaustive_states = 0u64;
    for k in 0..20 {
        let n = 2 + k % 4;
        let g = random_connected_graph(n, &mut rng);
        for index in 0..state_count(n) {
            let s = state_from_index(index, n);
            exhaustive_states += 1;
            if sd_step(&g, &StoneDiagram::from_state(&s)) != StoneDiagram::from_state(&tpro_step(&g, &s)) {
                disagreements += 1;
            }
        }
    }
    let mut random_states = 0u64;
    for k in 0..10_000u64 {
        let n = 6 + (k % 3) as usize;
        let g = random_connected_graph(n, &mut rng);
        let s = random_state(n, &mut rng);
        random_states += 1;
        if sd_step(&g, &StoneDiagram::from_state(&s)) != StoneDiagram::from_state(&tpro_step(&g, &s)) {
            disagreements += 1;
        }
    }
    verdict(
        7,
        "stone-diagram step agrees with promotion",
        disagreements == 0,
        format!("{exhaustive_states} states on 20 graphs with 2..5 vertices, {random_states} random states on 6..8 vertices, {disagreements} disagreements"),
    );
}

/// Gaps between each inbound crossing and the next outbound one, replayed
/// independently of the lemma verifier.
fn crossing_gaps(g: &SimpleGraph, s: &State, bridge: (usize, usize), horizon: u64) -> Vec<u64> {
    let events = crossing_log(g, s, bridge, horizon).unwrap();
    events
        .windows(2)
        .filter(|w| w[0].direction == Direction::Forward && w[1].direction == Direction::Backward)
        .map(|w| w[1].time - w[0].time)
        .collect()
}

#[test]
fn criterion_08_lemma_instrumentation() {
    let cfg = SuiteConfig::default();
    let mut problems = vec![];
    let mut summary = vec![];
    for suite in [Suite::LemmaTreeBridge, Suite::LemmaCompleteBridge, Suite::LemmaDirectional] {
        let report = run_suite(suite, &cfg).unwrap();
        let checked: u64 = report.cases.iter().map(|c| c.checked).sum();
        summary.push(format!("{suite}: {} graphs, {checked} checks", report.cases.len()));
        problems.extend(report.failed_cases().map(|c| format!("{suite} {}", c.id)));
    }

    // C3 with a 3-vertex tree hanging off cycle vertex 2: 15 steps inside.
    let g = bridge_sum(&fam("cycle:3"), 2, &fam("path:3"), 0).unwrap();
    let mut fig7 = std::collections::BTreeSet::new();
    for o in exhaustive_orbits(&g, BUDGET, 1).unwrap() {
        let s = state_from_index(o.representative, 6);
        fig7.extend(crossing_gaps(&g, &s, (2, 3), 2 * o.length));
        let r = verify_lemma_sd_rotation(&g, &s, (2, 3), Side::Tree(3)).unwrap();
        if !r.passed() {
            problems.push(format!("C3+tree3 from {s}"));
        }
    }
    if fig7.iter().ne([15u64].iter()) {
        problems.push(format!("C3+tree3 dwell {fig7:?}"));
    }
    summary.push(format!("C3+tree3 dwell {fig7:?}"));

    // A 6-vertex cycle with K5: 5 * 10 = 50 steps inside.
    let g = bridge_sum(&fam("cycle:6"), 0, &complete(5), 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut fig10 = std::collections::BTreeSet::new();
    for _ in 0..20 {
        let s = random_state(11, &mut rng);
        fig10.extend(crossing_gaps(&g, &s, (0, 6), 5000));
    }
    if fig10.iter().ne([50u64].iter()) {
        problems.push(format!("C6+K5 gaps {fig10:?}"));
    }
    summary.push(format!("C6+K5 gaps {fig10:?}"));

    verdict(
        8,
        "crossing gaps m(N-1)/n(N-1), diagram rotation, tree dwell, directional moves",
        problems.is_empty(),
        format!("{}; {} problems{}", summary.join("; "), problems.len(), first(&problems)),
    );
}

#[test]
fn criterion_09_conjecture_exploration() {
    let mut problems = vec![];
    let mut notes = vec![];
    for chain in ["K2,K2,K2", "P2,K2,P2"] {
        let spec = chain.parse().unwrap();
        let plan = EnumerationPlan::exhaustive();
        let a = explore_chain(&spec, &plan).unwrap();
        let b = explore_chain(&spec, &plan).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        let total: u64 = a.census.entries.values().sum();
        if a.to_json() != b.to_json() || total != 4320 || doc["census"]["entries"].as_object().is_none() {
            problems.push(format!("chain {chain}"));
        }
        notes.push(format!("{chain}: lengths {:?}", a.census.entries.keys().collect::<Vec<_>>()));
    }
    for (name, input) in [
        ("tree2+C3", WindingInput::tree_cycle(2, 3).unwrap()),
        ("K2+C3", WindingInput::complete_cycle(2, 3).unwrap()),
    ] {
        let plan = EnumerationPlan::exhaustive();
        let a = explore_cycle_bridge(&input, &plan).unwrap();
        let b = explore_cycle_bridge(&input, &plan).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        let rows = doc["rows"].as_array().map(Vec::len).unwrap_or(0);
        let schema = ["measured_length", "inferred_w", "literal_w", "match"]
            .iter()
            .all(|k| doc["rows"][0].get(k).is_some())
            && doc["literal_interpretation"].is_string();
        let inferred_ok = a.rows.iter().all(|r| {
            r.inferred_w.num * 20 == r.measured_length * r.inferred_w.den
                && r.measured_length == naive_orbit_length(&input.graph, &State::parse(&r.state_one_line, r.active).unwrap())
        });
        let sampled = EnumerationPlan::sampled(100, 9);
        let c = explore_cycle_bridge(&input, &sampled).unwrap().to_csv();
        let d = explore_cycle_bridge(&input, &sampled).unwrap().to_csv();
        if a.to_json() != b.to_json() || rows != 600 || !schema || !inferred_ok || c != d {
            problems.push(name.to_string());
        }
        notes.push(format!(
            "{name}: inferred w integral for {}/600, literal reproduces length for {}/600",
            a.inferred_integral, a.literal_matches
        ));
    }
    verdict(
        9,
        "conjecture explorers complete with well-formed, deterministic evidence",
        problems.is_empty(),
        format!("{}; {} problems{}", notes.join("; "), problems.len(), first(&problems)),
    );
}

#[test]
fn criterion_10_structural_properties() {
    let mut graphs: Vec<SimpleGraph> = (2..=6).map(complete).collect();
    for m in 3..=6 {
        graphs.extend(all_trees(m));
    }
    for (n1, n2) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        graphs.push(bridge_sum(&complete(n1), 0, &complete(n2), 0).unwrap());
    }
    for m in 1..=6usize {
        for n in 1..=7 - m {
            for (tree, root) in rooted_tree_shapes(m) {
                graphs.push(bridge_sum(&tree, root, &complete(n), 0).unwrap());
            }
        }
    }
    graphs.push(corona_product(&complete(2), &fam("path:1"), 0).unwrap());
    graphs.push(corona_product(&complete(3), &fam("path:1"), 0).unwrap());
    graphs.push(corona_product(&complete(2), &fam("path:2"), 0).unwrap());

    let mut problems = vec![];
    let mut states = 0u64;
    for (k, g) in graphs.iter().enumerate() {
        let n = g.vertex_count();
        let total = state_count(n);
        let mut hit = vec![false; total as usize];
        for index in 0..total {
            let image = state_index(&tpro_step(g, &state_from_index(index, n))) as usize;
            if std::mem::replace(&mut hit[image], true) {
                problems.push(format!("graph {k}: not injective"));
                break;
            }
        }
        states += total;
        let plan = EnumerationPlan::exhaustive();
        let c1 = census(g, &plan).unwrap();
        let conserved = c1.entries.values().sum::<u64>() == total
            && c1.entries.iter().all(|(len, count)| count % len == 0);
        if !conserved {
            problems.push(format!("graph {k}: census {:?}", c1.entries));
        }
        for p in [2, 8] {
            if census(g, &plan.with_partition(p)).unwrap() != c1 {
                problems.push(format!("graph {k}: partition {p} differs"));
            }
        }
    }
    verdict(
        10,
        "promotion is a bijection; census sums to n!*n; census independent of shard count 1/2/8",
        problems.is_empty(),
        format!("{} graphs, {states} states, {} problems{}", graphs.len(), problems.len(), first(&problems)),
    );
}
