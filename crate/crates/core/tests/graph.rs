mod common;

use indexcoding::bounds::{
    beta_interval, check_rate_vector, clique_cover_number, cycle_cover_bound,
    fractional_clique_cover, fractional_clique_cover_with, is_bidirectional_clique, RateVector,
};
use indexcoding::graph::{
    find_isomorphism, is_acyclic_set, is_isomorphic, is_uscs, mais, minimal_equal_rate_graph,
    parse_graph, parse_graph_any, prune_to_uscs, strongly_connected_components, turan_edge_count,
    turan_graph, write_graph,
};
use indexcoding::linear::minrank_gf2;
use indexcoding::scalar::{int, ratio};
use indexcoding::{DiGraph, Rational};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `reach[u][v]`: a directed path of length at least one from `u` to `v`.
fn reachability(g: &DiGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut r = vec![vec![false; n + 1]; n + 1];
    for (u, v) in g.edges() {
        r[u][v] = true;
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                r[i][j] |= r[i][k] && r[k][j];
            }
        }
    }
    r
}

/// Peels vertices with no out-neighbor left in the set.
fn acyclic(g: &DiGraph, set: &[usize]) -> bool {
    let mut left: Vec<usize> = set.to_vec();
    loop {
        let before = left.len();
        let snapshot = left.clone();
        left.retain(|&u| snapshot.iter().any(|&v| g.has_edge(u, v)));
        if left.is_empty() {
            return true;
        }
        if left.len() == before {
            return false;
        }
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect())
}

fn mais_oracle(g: &DiGraph) -> usize {
    subsets(g.n()).filter(|s| acyclic(g, s)).map(|s| s.len()).max().unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Vertex-disjoint cycle cover cost over successor permutations.
fn cycle_cover_oracle(g: &DiGraph) -> usize {
    let n = g.n();
    permutations(n)
        .into_iter()
        .filter(|s| (1..=n).all(|v| s[v - 1] == v || g.has_edge(v, s[v - 1])))
        .map(|s| {
            let mut seen = vec![false; n + 1];
            let mut cycles = 0;
            for v in 1..=n {
                if seen[v] || s[v - 1] == v {
                    continue;
                }
                let mut x = v;
                while !seen[x] {
                    seen[x] = true;
                    x = s[x - 1];
                }
                cycles += 1;
            }
            n - cycles
        })
        .min()
        .unwrap()
}

/// Fewest bidirectional cliques partitioning the vertices.
fn clique_cover_oracle(g: &DiGraph) -> usize {
    fn go(g: &DiGraph, v: usize, parts: &mut Vec<Vec<usize>>, best: &mut usize) {
        if parts.len() >= *best {
            return;
        }
        if v > g.n() {
            *best = parts.len();
            return;
        }
        for i in 0..parts.len() {
            if parts[i].iter().all(|&u| g.has_edge(u, v) && g.has_edge(v, u)) {
                parts[i].push(v);
                go(g, v + 1, parts, best);
                parts[i].pop();
            }
        }
        parts.push(vec![v]);
        go(g, v + 1, parts, best);
        parts.pop();
    }
    let mut best = usize::MAX;
    go(g, 1, &mut Vec::new(), &mut best);
    best
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = DiGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut g = DiGraph::new(n);
            for u in 1..=n {
                for v in 1..=n {
                    if u != v && bits[(u - 1) * n + v - 1] {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pruning_keeps_exactly_the_cycle_edges(g in arb_graph(6)) {
        let reach = reachability(&g);
        let (kept, removed) = prune_to_uscs(&g);
        for (u, v) in g.edges() {
            prop_assert_eq!(kept.has_edge(u, v), reach[v][u]);
            prop_assert_eq!(removed.contains(&(u, v)), !reach[v][u]);
        }
        prop_assert_eq!(kept.edge_count() + removed.len(), g.edge_count());
        prop_assert!(is_uscs(&kept));
        let (again, none) = prune_to_uscs(&kept);
        prop_assert_eq!(again, kept);
        prop_assert!(none.is_empty());
    }

    #[test]
    fn scc_matches_mutual_reachability(g in arb_graph(7)) {
        let reach = reachability(&g);
        let scc = strongly_connected_components(&g);
        let mut count = 0;
        for c in &scc.components {
            count += c.len();
            for &u in c {
                for &v in c {
                    prop_assert!(u == v || (reach[u][v] && reach[v][u]));
                }
            }
        }
        prop_assert_eq!(count, g.n());
        for u in g.vertices() {
            for v in g.vertices() {
                let same = scc.component_of(u) == scc.component_of(v);
                prop_assert_eq!(same, u == v || (reach[u][v] && reach[v][u]));
            }
        }
    }

    #[test]
    fn mais_matches_subset_enumeration(g in arb_graph(6)) {
        let m = mais(&g).unwrap();
        prop_assert_eq!(m.size, mais_oracle(&g));
        prop_assert!(acyclic(&g, &m.witness));
        prop_assert_eq!(m.witness.len(), m.size);
    }

    #[test]
    fn acyclic_set_test_agrees(g in arb_graph(6), mask in 0u32..64) {
        let set: Vec<usize> = (1..=g.n()).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        prop_assert_eq!(is_acyclic_set(&g, &set), acyclic(&g, &set));
    }

    #[test]
    fn covers_match_oracles_and_sandwich_beta(g in arb_graph(5)) {
        prop_assert_eq!(cycle_cover_bound(&g).unwrap().value, cycle_cover_oracle(&g));
        let (k, cover) = clique_cover_number(&g).unwrap();
        prop_assert_eq!(k, clique_cover_oracle(&g));
        prop_assert!(cover.parts.iter().all(|p| is_bidirectional_clique(&g, p)));
        let (frac, fc) = fractional_clique_cover(&g).unwrap();
        for v in g.vertices() {
            prop_assert!(fc.coverage(v) >= int(1));
        }
        prop_assert_eq!(fc.weights.iter().sum::<Rational>(), frac.clone());
        let approx = fractional_clique_cover_with::<f64>(&g).unwrap();
        let exact = frac.numer().to_string().parse::<f64>().unwrap()
            / frac.denom().to_string().parse::<f64>().unwrap();
        prop_assert!((approx.value - exact).abs() < 1e-9);
        let lower = int(mais(&g).unwrap().size);
        prop_assert!(lower <= frac && frac <= int(k));
        let b = beta_interval(&g).unwrap();
        prop_assert_eq!(&b.lower, &lower);
        prop_assert!(b.upper <= frac);
        prop_assert!(b.upper <= int(minrank_gf2(&g).unwrap().rank));
        prop_assert!(b.upper <= int(cycle_cover_oracle(&g)));
    }

    #[test]
    fn rate_check_matches_heaviest_acyclic_set(g in arb_graph(5), num in prop::collection::vec(0i64..4, 5)) {
        let rates: Vec<Rational> = (0..g.n()).map(|i| ratio(num[i], 4)).collect();
        let c = check_rate_vector(&g, &RateVector::new(rates.clone()).unwrap()).unwrap();
        let best = subsets(g.n())
            .filter(|s| acyclic(&g, s))
            .map(|s| s.iter().map(|&v| rates[v - 1].clone()).sum::<Rational>())
            .max()
            .unwrap();
        prop_assert_eq!(&c.max_acyclic_sum, &best);
        prop_assert_eq!(c.passes, best <= int(1));
        prop_assert_eq!(c.violating_set.is_some(), !c.passes);
    }

    #[test]
    fn text_and_json_round_trip(g in arb_graph(7)) {
        prop_assert_eq!(&parse_graph(&write_graph(&g)).unwrap(), &g);
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(&parse_graph_any(&json).unwrap(), &g);
    }
}

#[test]
fn isomorphism_against_permutation_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let g = common::random_digraph(&mut rng, n, 0.4);
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm).unwrap();
        let map = find_isomorphism(&g, &h).unwrap().expect("relabeling is an isomorphism");
        assert_eq!(g.relabel(&map).unwrap(), h);
        let other = common::random_digraph(&mut rng, n, 0.4);
        let brute = permutations(n)
            .iter()
            .any(|p| g.relabel(p).unwrap() == other);
        assert_eq!(is_isomorphic(&g, &other).unwrap(), brute);
    }
}

#[test]
fn turan_counts_and_minimal_graphs() {
    for m in 1..=8 {
        for k in 1..=m {
            let t = turan_graph(m, k).unwrap();
            assert_eq!(t.edge_count(), 2 * turan_edge_count(m, k).unwrap());
            let sizes: Vec<usize> = (0..k).map(|i| m / k + usize::from(i < m % k)).collect();
            let inside: usize = sizes.iter().map(|s| s * (s - 1) / 2).sum();
            assert_eq!(turan_edge_count(m, k).unwrap(), m * (m - 1) / 2 - inside);
        }
    }
    for (m, den) in [(4, 2), (5, 2), (5, 3), (6, 4), (7, 3)] {
        let r = ratio(1, den);
        let g = minimal_equal_rate_graph(&r, m).unwrap();
        assert!(int(mais(&g.graph).unwrap().size) * &r <= int(1));
        for (u, v) in g.graph.edges() {
            let h = g.graph.without_edge(u, v).unwrap();
            assert!(int(mais(&h).unwrap().size) * &r > int(1), "({u},{v}) is removable");
        }
    }
}

#[test]
fn parse_errors_report_lines() {
    for (text, line) in [
        ("n 3\n1 2\n2 2\n", 3),
        ("n 3\n1 2\n1 2\n", 3),
        ("n 3\n1 4\n", 2),
        ("n 3\n1\n", 2),
        ("3\n", 1),
    ] {
        match parse_graph(text) {
            Err(indexcoding::Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}
