mod common;

use indexcoding::confusion::verify_code;
use indexcoding::graph::{disjoint_union, mais};
use indexcoding::linear::{
    block_diagonal, blowup_code, clique_xor_code, conjecture1_code, cycle_apex_code,
    is_valid_linear_code, minrank_gf2, minrank_gf2_exhaustive, parse_code, parse_code_any,
    split_code, verify_certificate, write_code, ApexParams, LinearIndexCode, PrimeField, GF2,
};
use indexcoding::scalar::ratio;
use indexcoding::DiGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random graph whose vertices in `sink` have no edges leaving the set.
fn graph_with_sink(rng: &mut ChaCha8Rng, n: usize) -> (DiGraph, Vec<usize>) {
    let sink: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut g = common::random_digraph(rng, n, 0.5);
    for (u, v) in g.edges() {
        if sink.contains(&u) && !sink.contains(&v) {
            g.remove_edge(u, v);
        }
    }
    (g, sink)
}

#[test]
fn validity_matches_brute_force_decodability() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut valid, mut invalid) = (0, 0);
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let q = if rng.gen_bool(0.5) { 2 } else { 3 };
        let field = PrimeField::new(q).unwrap();
        let g = common::random_digraph(&mut rng, n, 0.5);
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let width: usize = dims.iter().sum();
        if q == 3 && width > 4 {
            continue;
        }
        let len = rng.gen_range(0..=width + 1);
        let rows = (0..len)
            .map(|_| (0..width).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let code = LinearIndexCode::new(field, dims, rows).unwrap();
        let v = is_valid_linear_code(&g, &code).unwrap();
        assert_eq!(v.valid, common::linear_code_valid(&g, &code), "{g:?} {code:?}");
        if let Some(cert) = &v.certificate {
            assert!(verify_certificate(&g, &code, cert));
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid > 20 && invalid > 20, "{valid} {invalid}");
}

#[test]
fn split_yields_valid_parts_and_block_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..200 {
        let n = rng.gen_range(1..=5);
        let field = if case % 2 == 0 { GF2 } else { PrimeField::new(3).unwrap() };
        let (g, sink) = graph_with_sink(&mut rng, n);
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let code = common::random_valid_code(&mut rng, &g, field, dims);
        let s = split_code(&g, &code, &sink).unwrap();
        let gs = g.induced(&s.sink_vertices).unwrap();
        let gr = g.induced(&s.source_vertices).unwrap();
        assert!(is_valid_linear_code(&gs, &s.sink_code).unwrap().valid, "case {case}");
        assert!(is_valid_linear_code(&gr, &s.source_code).unwrap().valid, "case {case}");
        assert_eq!(s.sink_code.length() + s.source_code.length(), code.length());
        let joint = block_diagonal(&s.source_code, &s.sink_code).unwrap();
        let cut = disjoint_union(&gr, &gs);
        assert!(is_valid_linear_code(&cut, &joint).unwrap().valid, "case {case}");
    }
}

#[test]
fn split_rejects_bad_partitions_and_codes() {
    let g = DiGraph::directed_cycle(3);
    let code = LinearIndexCode::new(GF2, vec![1, 1, 1], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert!(split_code(&g, &code, &[1]).is_err());
    let weak = LinearIndexCode::new(GF2, vec![1, 1, 1], vec![]).unwrap();
    let e = DiGraph::new(3);
    assert!(split_code(&e, &weak, &[1]).is_err());
}

#[test]
fn code_tables_of_linear_codes_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..60 {
        let n = rng.gen_range(1..=4);
        let field = if case % 3 == 0 { PrimeField::new(3).unwrap() } else { GF2 };
        let g = common::random_digraph(&mut rng, n, 0.5);
        let max_dim = if field.q() == 3 { 1 } else { 2 };
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_dim)).collect();
        let code = common::random_valid_code(&mut rng, &g, field, dims);
        let table = code.to_code_table(&g).unwrap();
        let check = verify_code(&table);
        assert!(check.valid, "case {case}: {check:?}");
        assert_eq!(table.n_symbols(), (field.q() as usize).pow(code.length() as u32));
    }
}

#[test]
fn minrank_matches_exhaustive_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let p = rng.gen_range(0.2..0.9);
        let g = common::random_digraph(&mut rng, n, p);
        let m = minrank_gf2(&g).unwrap();
        assert_eq!(m.rank, minrank_gf2_exhaustive(&g).unwrap());
        assert!(m.rank >= mais(&g).unwrap().size);
        assert!(is_valid_linear_code(&g, &m.code()).unwrap().valid);
    }
    assert_eq!(minrank_gf2(&DiGraph::bidirectional_cycle(5)).unwrap().rank, 3);
    assert_eq!(minrank_gf2(&DiGraph::complete(4)).unwrap().rank, 1);
    assert_eq!(minrank_gf2(&DiGraph::directed_cycle(5)).unwrap().rank, 4);
}

#[test]
fn fixed_constructions_are_valid() {
    let (g, code) = conjecture1_code();
    assert!(is_valid_linear_code(&g, &code).unwrap().valid);
    assert!(common::linear_code_valid(&g, &code));
    let g = disjoint_union(&DiGraph::complete(3), &DiGraph::complete(2));
    let c = clique_xor_code(&g, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
    assert!(common::linear_code_valid(&g, &c));
    for m in 3..=5 {
        for p in ApexParams::all(m) {
            let (g, code) = cycle_apex_code(p.m, p.i, p.j, p.k).unwrap();
            assert!(common::linear_code_valid(&g, &code), "{p:?}");
            assert_eq!(code.symmetric_rate(), Some(ratio(1, (m - 1) as i64)));
        }
    }
    let b = blowup_code(ApexParams::new(3, 2, 1, 3).unwrap(), &[2, 1, 2, 1]).unwrap();
    assert!(is_valid_linear_code(&b.graph, &b.code).unwrap().valid);
    assert_eq!(b.code.symmetric_rate(), Some(ratio(1, 2)));
}

#[test]
fn code_file_errors_carry_line_numbers() {
    let err = parse_code("2 1 2\ndims 1 1\n1 2\n").unwrap_err();
    assert!(matches!(err, indexcoding::Error::Parse { line: 3, .. }));
    assert!(parse_code("4 1 1\ndims 1\n1\n").is_err());
    assert!(parse_code("2 2 1\ndims 1\n1\n").is_err());
}

proptest! {
    #[test]
    fn code_text_and_json_round_trip(
        q in prop::sample::select(vec![2u32, 3, 5]),
        dims in prop::collection::vec(0usize..3, 1..4),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(q).unwrap();
        let width: usize = dims.iter().sum();
        let len = rng.gen_range(0..4);
        let rows = (0..len).map(|_| (0..width).map(|_| rng.gen_range(0..q)).collect()).collect();
        let code = LinearIndexCode::new(f, dims, rows).unwrap();
        prop_assert_eq!(&parse_code(&write_code(&code)).unwrap(), &code);
        let json = serde_json::to_string(&code).unwrap();
        prop_assert_eq!(&parse_code_any(&json).unwrap(), &code);
    }
}
