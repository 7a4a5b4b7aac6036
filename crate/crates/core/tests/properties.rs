use proptest::prelude::*;

use toric_core::enumeration::{census, exhaustive_orbits, state_count, state_from_index, state_index, EnumerationPlan};
use toric_core::graph::{all_pruefer_sequences, bridges, pruefer_decode, pruefer_encode};
use toric_core::stone::sd_step;
use toric_core::{bridge_sum, corona_product, cyc, tpro_inverse_step, tpro_step, GraphFamily, Labeling, SimpleGraph, State, StoneDiagram};

/// Random connected graph: a Prüfer tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let seq = prop::collection::vec(0..n, n.saturating_sub(2));
        let extra = prop::collection::vec((0..n, 0..n), 0..n * 2);
        (seq, extra).prop_map(move |(seq, extra)| {
            let tree = pruefer_decode(&seq).unwrap();
            let mut edges: Vec<(usize, usize)> = tree.edges().collect();
            for (u, v) in extra {
                let e = (u.min(v), u.max(v));
                if u != v && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            SimpleGraph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_state(max_n: usize) -> impl Strategy<Value = (SimpleGraph, State)> {
    connected_graph(max_n)
        .prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(), 1..=n)
        })
        .prop_map(|(g, labels, active)| (g, State::new(Labeling::new(labels).unwrap(), active).unwrap()))
}

proptest! {
    #[test]
    fn inverse_undoes_step((g, s) in graph_and_state(8)) {
        prop_assert_eq!(tpro_inverse_step(&g, &tpro_step(&g, &s)), s.clone());
        prop_assert_eq!(tpro_step(&g, &tpro_inverse_step(&g, &s)), s);
    }

    #[test]
    fn stone_diagram_tracks_promotion((g, s) in graph_and_state(8)) {
        let sd = StoneDiagram::from_state(&s);
        prop_assert_eq!(sd.to_state().unwrap(), s.clone());
        prop_assert_eq!(sd_step(&g, &sd), StoneDiagram::from_state(&tpro_step(&g, &s)));
    }

    #[test]
    fn cyc_has_order_n((_g, s) in graph_and_state(8)) {
        let n = s.size();
        let mut cur = s.clone();
        for k in 1..=n {
            cur = cyc(&cur);
            prop_assert_eq!(cur == s, k == n);
            prop_assert_eq!(StoneDiagram::from_state(&cur), StoneDiagram::from_state(&s).rotated(k));
        }
    }

    #[test]
    fn cyc_commutes_with_promotion((g, s) in graph_and_state(8)) {
        prop_assert_eq!(tpro_step(&g, &cyc(&s)), cyc(&tpro_step(&g, &s)));
    }

    #[test]
    fn rotation_detection_is_consistent((_g, s) in graph_and_state(7), k in 0usize..7, j in 0usize..7) {
        let a = StoneDiagram::from_state(&s);
        let n = a.size();
        let b = a.rotated(k);
        prop_assert_eq!(toric_core::is_cyclic_rotation(&a, &b).unwrap(), Some(k % n));
        prop_assert_eq!(toric_core::is_cyclic_rotation(&b, &a).unwrap(), Some((n - k % n) % n));
        let c = b.rotated(j);
        prop_assert_eq!(toric_core::is_cyclic_rotation(&a, &c).unwrap(), Some((k + j) % n));
    }

    #[test]
    fn relabeling_preserves_orbit_length((g, s) in graph_and_state(7), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm).unwrap();
        // The label of v moves to perm[v].
        let mut label_of = vec![0; n];
        for v in 0..n {
            label_of[perm[v]] = s.labeling().label(v);
        }
        let t = State::new(Labeling::new(label_of).unwrap(), s.active()).unwrap();
        let a = toric_core::orbit_length(&g, &s, None).unwrap().length;
        let b = toric_core::orbit_length(&h, &t, None).unwrap().length;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn state_index_round_trip(n in 1usize..=8, raw in any::<u64>()) {
        let index = raw % state_count(n);
        prop_assert_eq!(state_index(&state_from_index(index, n)), index);
    }

    #[test]
    fn tree_bridges_are_all_edges(seq in prop::collection::vec(0usize..9, 7)) {
        let tree = pruefer_decode(&seq).unwrap();
        let all: Vec<(usize, usize)> = tree.edges().collect();
        prop_assert_eq!(bridges(&tree), all);
    }

    #[test]
    fn corona_is_a_fold_of_bridge_sums(n in 1usize..=4, seq in prop::collection::vec(0usize..4, 2), attach in 0usize..4) {
        let base = GraphFamily::Complete(n).build().unwrap();
        let copy = pruefer_decode(&seq).unwrap();
        let corona = corona_product(&base, &copy, attach).unwrap();
        let mut folded = base.clone();
        for i in 0..n {
            folded = bridge_sum(&folded, i, &copy, attach).unwrap();
        }
        prop_assert_eq!(corona, folded);
    }
}

#[test]
fn pruefer_round_trip_small_trees() {
    for m in 2..=7 {
        let seqs = all_pruefer_sequences(m);
        assert_eq!(seqs.len() as u64, (m as u64).pow(m as u32 - 2));
        for seq in seqs {
            let tree = pruefer_decode(&seq).unwrap();
            assert_eq!(tree.edge_count(), m - 1);
            assert_eq!(pruefer_encode(&tree).unwrap(), seq);
        }
    }
}

#[test]
fn promotion_is_a_bijection_on_small_graphs() {
    let graphs = ["cycle:5", "star:5", "K4", "path:5"];
    for name in graphs {
        let g = name.parse::<GraphFamily>().unwrap().build().unwrap();
        let n = g.vertex_count();
        let total = state_count(n) as usize;
        let mut hit = vec![false; total];
        for index in 0..total as u64 {
            let image = state_index(&tpro_step(&g, &state_from_index(index, n))) as usize;
            assert!(!std::mem::replace(&mut hit[image], true), "{name}: collision at {image}");
        }
    }
}

#[test]
fn orbits_partition_the_state_space() {
    let g = bridge_sum(
        &GraphFamily::Cycle(4).build().unwrap(),
        0,
        &GraphFamily::Path(2).build().unwrap(),
        1,
    )
    .unwrap();
    let orbits = exhaustive_orbits(&g, 1 << 30, 3).unwrap();
    let n = g.vertex_count();
    let mut owner = vec![None; state_count(n) as usize];
    for (k, o) in orbits.iter().enumerate() {
        let mut s = state_from_index(o.representative, n);
        for _ in 0..o.length {
            let i = state_index(&s) as usize;
            assert_eq!(owner[i], None, "state {i} on two orbits");
            owner[i] = Some(k);
            assert!(i as u64 >= o.representative);
            s = tpro_step(&g, &s);
        }
        assert_eq!(state_index(&s), o.representative);
    }
    assert!(owner.iter().all(Option::is_some));
}

#[test]
fn shard_count_does_not_change_results() {
    for name in ["cycle:5", "K2", "explicit:6:0-1.1-2.2-0.2-3.3-4.4-5"] {
        let g = name.parse::<GraphFamily>().unwrap().build().unwrap();
        let base = exhaustive_orbits(&g, 1 << 30, 1).unwrap();
        let plan = EnumerationPlan::exhaustive();
        let reference = census(&g, &plan).unwrap();
        for p in [2, 3, 8, 1000] {
            assert_eq!(exhaustive_orbits(&g, 1 << 30, p).unwrap(), base, "{name} with {p} shards");
            assert_eq!(census(&g, &plan.with_partition(p)).unwrap().to_json(), reference.to_json());
        }
    }
}
