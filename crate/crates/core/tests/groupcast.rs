use indexcoding::graph::prune_to_uscs;
use indexcoding::groupcast::{
    parse_instance, parse_instance_any, prune_groupcast, prune_groupcast_for, write_instance,
    GroupcastInstance, Setting,
};
use indexcoding::DiGraph;
use proptest::prelude::*;

/// Vertices reachable from `src` along edges of `g`, `src` included.
fn reachable(g: &DiGraph, src: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n() + 1];
    let mut stack = vec![src];
    seen[src] = true;
    while let Some(u) = stack.pop() {
        for &v in g.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn arb_instance() -> impl Strategy<Value = GroupcastInstance> {
    (1usize..=5).prop_flat_map(|m| {
        prop::collection::vec((1..=m, prop::collection::vec(1..=m, 0..=m)), 1..=7).prop_map(
            move |rs| {
                let rs: Vec<(usize, Vec<usize>)> = rs
                    .into_iter()
                    .map(|(d, side)| (d, side.into_iter().filter(|&v| v != d).collect()))
                    .collect();
                GroupcastInstance::new(m, rs).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pruning_keeps_side_entries_that_close_a_cycle(h in arb_instance()) {
        let g = h.underlying_digraph();
        let (p, removed) = prune_groupcast(&h);
        prop_assert_eq!(p.m(), h.m());
        prop_assert_eq!(p.receivers().len(), h.receivers().len());
        let mut expected_removed = Vec::new();
        for (idx, (r, q)) in h.receivers().iter().zip(p.receivers()).enumerate() {
            prop_assert_eq!(r.demand, q.demand);
            prop_assert_eq!(r.multiplicity, q.multiplicity);
            for &v in &r.side {
                let back = reachable(&g, v)[r.demand];
                prop_assert_eq!(q.side.contains(&v), back);
                if !back {
                    expected_removed.push((idx + 1, v));
                }
            }
        }
        prop_assert_eq!(&removed, &expected_removed);
        prop_assert_eq!(p.underlying_digraph(), prune_to_uscs(&g).0);
        let (again, none) = prune_groupcast(&p);
        prop_assert_eq!(again, p);
        prop_assert!(none.is_empty());
    }

    #[test]
    fn instance_text_and_json_round_trip(h in arb_instance()) {
        prop_assert_eq!(&parse_instance(&write_instance(&h)).unwrap(), &h);
        let json = serde_json::to_string(&h).unwrap();
        prop_assert_eq!(&parse_instance_any(&json).unwrap(), &h);
    }
}

#[test]
fn unicast_instances_agree_with_graph_pruning() {
    let g = DiGraph::from_edges(4, [(1, 2), (2, 1), (2, 3), (3, 4), (4, 2), (1, 4)]).unwrap();
    let h = GroupcastInstance::unicast(&g);
    assert_eq!(h.as_unicast(), Some(g.clone()));
    let (p, removed) = prune_groupcast(&h);
    let (kept, edges) = prune_to_uscs(&g);
    assert_eq!(p.as_unicast(), Some(kept));
    assert_eq!(removed, edges);
    for s in [Setting::Linear, Setting::Asymptotic, Setting::OneShotLinear] {
        assert_eq!(prune_groupcast_for(&h, s), Some((p.clone(), removed.clone())));
    }
    assert_eq!(prune_groupcast_for(&h, Setting::OneShotNonLinear), None);
}

#[test]
fn duplicate_receivers_merge() {
    let h = GroupcastInstance::new(3, [(1, vec![2]), (1, vec![2, 2]), (2, vec![1])]).unwrap();
    assert_eq!(h.receivers().len(), 2);
    assert_eq!(h.receivers()[0].multiplicity, 2);
    assert_eq!(h.as_unicast(), None);
    assert_eq!(write_instance(&h).lines().count(), 4);
}

#[test]
fn invalid_instances_are_rejected() {
    assert!(GroupcastInstance::new(3, [(1, vec![1])]).is_err());
    assert!(GroupcastInstance::new(3, [(4, vec![1])]).is_err());
    assert!(GroupcastInstance::new(3, [(1, vec![0])]).is_err());
    for (text, line) in [
        ("", 1),
        ("n 3\n", 1),
        ("m 3\ndemand 1 side 1\n", 2),
        ("m 3\ndemand 1 side 2\ndemand 1 2\n", 3),
        ("m 3\ndemand x side 2\n", 2),
    ] {
        match parse_instance(text) {
            Err(indexcoding::Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(parse_instance_any(r#"{"m":2,"receivers":[{"demand":1,"side":[2],"multiplicity":0}]}"#).is_err());
}
