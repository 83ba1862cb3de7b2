//! The isomorph-free generator against a naive one: grow every class by one
//! edge in every possible way and keep one graph per isomorphism class,
//! tested by backtracking over degree-compatible vertex maps.

use extremal_core::search::{compute_f, enumerate_all_sizes, SearchSpec};
use extremal_core::Graph;

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.order() {
            return true;
        }
        for j in 0..b.order() {
            if !used[j] && a.degree(i) == b.degree(j) && (0..i).all(|k| a.has_edge(k, i) == b.has_edge(map[k], j)) {
                used[j] = true;
                map.push(j);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && a.count_cliques(3) == b.count_cliques(3) && extend(a, b, &mut Vec::new(), &mut vec![false; b.order()])
}

/// Classes of graphs without isolated vertices, by number of edges.
fn naive_levels(max_m: usize) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::empty(0).unwrap()]];
    for _ in 1..=max_m {
        let mut next: Vec<Graph> = Vec::new();
        for g in levels.last().unwrap() {
            let n = g.order();
            let mut grown = Vec::new();
            for v in 0..n + 2 {
                for u in 0..v {
                    // a new vertex may only be n, or the pair (n, n + 1)
                    if (v == n + 1 && u != n) || (u < n && v < n && g.has_edge(u, v)) {
                        continue;
                    }
                    let size = n.max(v + 1);
                    let mut edges = g.edges();
                    edges.push((u, v));
                    grown.push(Graph::from_edges(size, &edges).unwrap());
                }
            }
            for h in grown {
                if !next.iter().any(|k| isomorphic(k, &h)) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}

#[test]
fn class_counts_match_the_naive_generator() {
    let max_m = 8;
    let naive = naive_levels(max_m);
    let counts: Vec<usize> = naive.iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 11, 26, 68, 177, 497]);

    for (r, connected) in [(8, false), (3, false), (2, false), (3, true)] {
        let mut seen = vec![0usize; max_m + 1];
        let spec = SearchSpec::new(max_m, r, 3).connected_only(connected);
        enumerate_all_sizes(&spec, |m, _| seen[m] += 1).unwrap();
        let expected: Vec<usize> = naive
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter(|g| g.max_degree() <= r && (!connected || g.order() == 0 || g.is_connected()))
                    .count()
            })
            .collect();
        // the empty graph counts as connected for the generator as well
        assert_eq!(seen, expected, "r = {r}, connected = {connected}");
    }
}

#[test]
fn f3_matches_the_naive_maximum() {
    let naive = naive_levels(8);
    for r in 2..=5 {
        for m in 1..=8 {
            let best = naive[m].iter().filter(|g| g.max_degree() <= r).map(|g| g.count_cliques(3)).max().unwrap();
            let result = compute_f(&SearchSpec::new(m, r, 3)).unwrap();
            assert_eq!(result.f_value, best, "m = {m}, r = {r}");
            let extremal = naive[m].iter().filter(|g| g.max_degree() <= r && g.count_cliques(3) == best).count();
            assert_eq!(result.extremal_graphs.len(), extremal, "m = {m}, r = {r}");
        }
    }
}
