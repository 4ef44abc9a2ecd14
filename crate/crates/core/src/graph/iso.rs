use super::DiGraph;
use crate::error::{check_limit, Result};
use crate::limits::Limits;

fn degrees(g: &DiGraph) -> Vec<(usize, usize)> {
    let mut indeg = vec![0; g.n() + 1];
    for (_, v) in g.edges() {
        indeg[v] += 1;
    }
    g.vertices().map(|v| (g.out_neighbors(v).len(), indeg[v])).collect()
}

/// Searches for a bijection `map` with `(u, v)` in `g` iff
/// `(map[u-1], map[v-1])` in `h`.
pub fn find_isomorphism(g: &DiGraph, h: &DiGraph) -> Result<Option<Vec<usize>>> {
    find_isomorphism_with_limit(g, h, Limits::default().iso_max_n)
}

pub fn find_isomorphism_with_limit(
    g: &DiGraph,
    h: &DiGraph,
    max_n: usize,
) -> Result<Option<Vec<usize>>> {
    check_limit("isomorphism", g.n().max(h.n()), max_n)?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (dg, dh) = (degrees(g), degrees(h));
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }
    let n = g.n();
    let mut map = vec![0usize; n];
    let mut used = vec![false; n + 1];
    Ok(extend(g, h, &dg, &dh, 1, &mut map, &mut used).then_some(map))
}

fn extend(
    g: &DiGraph,
    h: &DiGraph,
    dg: &[(usize, usize)],
    dh: &[(usize, usize)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v > g.n() {
        return true;
    }
    for img in 1..=h.n() {
        if used[img] || dg[v - 1] != dh[img - 1] {
            continue;
        }
        let consistent = (1..v).all(|u| {
            let w = map[u - 1];
            g.has_edge(u, v) == h.has_edge(w, img) && g.has_edge(v, u) == h.has_edge(img, w)
        });
        if !consistent {
            continue;
        }
        map[v - 1] = img;
        used[img] = true;
        if extend(g, h, dg, dh, v + 1, map, used) {
            return true;
        }
        used[img] = false;
    }
    false
}

pub fn is_isomorphic(g: &DiGraph, h: &DiGraph) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// As [`is_isomorphic`] but with a caller-chosen vertex limit.
pub fn is_isomorphic_with_limit(g: &DiGraph, h: &DiGraph, max_n: usize) -> Result<bool> {
    Ok(find_isomorphism_with_limit(g, h, max_n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{disjoint_union, minimal_equal_rate_graph};
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn relabeled_unions() {
        let k3 = DiGraph::complete(3);
        let k2 = DiGraph::complete(2);
        let a = disjoint_union(&k3, &k2);
        let b = disjoint_union(&k2, &k3);
        assert!(is_isomorphic(&a, &b).unwrap());
        let min = minimal_equal_rate_graph(&ratio(1, 2), 5).unwrap().graph;
        assert!(is_isomorphic(&b, &min).unwrap());
    }

    #[test]
    fn cycles_differ() {
        assert!(!is_isomorphic(&DiGraph::directed_cycle(5), &DiGraph::bidirectional_cycle(5)).unwrap());
    }

    #[test]
    fn chord_cycle_vs_acyclic() {
        assert!(!is_isomorphic(&five_cycle_with_chord(), &acyclic_five()).unwrap());
    }

    #[test]
    fn map_is_an_isomorphism() {
        let g = five_cycle_with_chord();
        let h = g.relabel(&[3, 5, 1, 2, 4]).unwrap();
        let map = find_isomorphism(&g, &h).unwrap().unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(map[u - 1], map[v - 1]));
        }
    }

    #[test]
    fn direction_matters() {
        let a = DiGraph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let b = DiGraph::from_edges(3, [(1, 2), (3, 2)]).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn limit_enforced() {
        assert!(is_isomorphic(&DiGraph::new(9), &DiGraph::new(9)).is_err());
        assert!(is_isomorphic_with_limit(&DiGraph::new(9), &DiGraph::new(9), 9).unwrap());
    }
}
