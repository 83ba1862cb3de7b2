//! Colex order, colex and rainbow-colex graphs, and the `[c, d]` arithmetic
//! behind the conjectured extremal graph `aK_{r+1} ∪ C(b)`.
//!
//! Sets are over `{0, 1, 2, ...}`. `A` precedes `B` in colex order iff the
//! largest element of `A △ B` lies in `B`; equivalently, compare the sorted
//! sets from their largest elements downwards. The rank of a sorted `t`-set
//! `a_1 < ... < a_t` is `Σ C(a_i, i)`.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColexError {
    #[error("set has a repeated element {0}")]
    RepeatedElement(u64),
    #[error("degree cap r must be at least 1")]
    ZeroDegreeCap,
    #[error("clique size t = {t} outside 3..={max}")]
    CliqueSizeOutOfRange { t: usize, max: usize },
    #[error("need 1 <= l <= t, got l = {l}, t = {t}")]
    BadShadowLevel { l: usize, t: usize },
    #[error("rainbow parts must satisfy omega >= {min}, got {omega}")]
    TooFewParts { omega: u64, min: u64 },
    #[error("only {available} rainbow pairs below the ground-set cap {cap}, asked for {requested}")]
    RainbowExhausted { requested: usize, available: usize, cap: u64 },
    #[error("rank {rank} does not fit a {t}-set of machine integers")]
    RankTooLarge { rank: u64, t: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// `C(n, k)` over signed arguments: zero when `n < k` or `k < 0`.
pub fn binomial_signed(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        0
    } else {
        binomial(n as u64, k as u64) as i64
    }
}

/// Position of a set in colex order among sets of the same size.
pub fn colex_rank(set: &[u64]) -> Result<u64, ColexError> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(ColexError::RepeatedElement(w[0]));
    }
    Ok(sorted.iter().enumerate().map(|(i, &a)| binomial(a, i as u64 + 1)).sum())
}

/// Inverse of [`colex_rank`]: the `t`-set with the given rank, ascending.
pub fn colex_unrank(rank: u64, t: usize) -> Result<Vec<u64>, ColexError> {
    let mut out = vec![0; t];
    let mut rest = rank;
    for i in (1..=t).rev() {
        // largest a with C(a, i) <= rest; a >= i - 1 since C(i-1, i) = 0
        let mut lo = i as u64 - 1;
        let mut hi = lo + 1;
        while binomial_checked(hi, i as u64).is_some_and(|b| b <= rest) {
            lo = hi;
            hi = hi.checked_mul(2).ok_or(ColexError::RankTooLarge { rank, t })?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial_checked(mid, i as u64).is_some_and(|b| b <= rest) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= binomial(lo, i as u64);
        out[i - 1] = lo;
    }
    Ok(out)
}

fn binomial_checked(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The pair of colex rank `i`: `{x, y}` with `x < y` and `C(y, 2) + x = i`.
fn pair_of_rank(rank: usize) -> (usize, usize) {
    let mut y = 1;
    while y * (y + 1) / 2 <= rank {
        y += 1;
    }
    (rank - y * (y - 1) / 2, y)
}

/// `C(b)`: the graph whose edges are the first `b` pairs in colex order.
///
/// With `b = [c, d]` this is `K_c` plus, when `d > 0`, one extra vertex
/// joined to `d` vertices of the clique. `C(0)` has no vertices.
pub fn colex_graph(b: usize) -> Result<Graph, ColexError> {
    let (c, d) = split_remainder(b as u64);
    let n = (c + u64::from(d > 0)) as usize;
    let edges: Vec<_> = (0..b).map(pair_of_rank).collect();
    Ok(Graph::from_edges(n, &edges)?)
}

/// Writes `b = C(c, 2) + d` with `0 <= d < c`; `b = 0` maps to `(0, 0)`.
pub fn split_remainder(b: u64) -> (u64, u64) {
    if b == 0 {
        return (0, 0);
    }
    let mut c = 2;
    while binomial(c + 1, 2) <= b {
        c += 1;
    }
    (c, b - binomial(c, 2))
}

/// Rewrites `[c, d]` with `d = c` as `[c + 1, 0]`; other pairs are unchanged.
pub fn normalize_bracket(c: u64, d: u64) -> (u64, u64) {
    if d == c && c > 0 {
        (c + 1, 0)
    } else {
        (c, d)
    }
}

/// Value of the bracket `[c, d] = C(c, 2) + d`.
pub fn bracket_value(c: u64, d: u64) -> u64 {
    binomial(c, 2) + d
}

/// `k_t(C(c, d)) = C(c, t) + C(d, t - 1)`, also valid for `d = c`.
pub fn colex_clique_count(c: u64, d: u64, t: u64) -> u64 {
    if t == 0 {
        return 1;
    }
    binomial(c, t) + binomial(d, t - 1)
}

/// `m = a·C(r+1, 2) + b` with `0 <= b < C(r+1, 2)`, and `b = [c, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColexDecomposition {
    pub m: u64,
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ColexDecomposition {
    /// Edges in one `K_{r+1}` block.
    pub fn block_edges(&self) -> u64 {
        binomial(self.r + 1, 2)
    }

    /// The graph `aK_{r+1} ∪ C(b)`.
    pub fn extremal_graph(&self) -> Result<Graph, ColexError> {
        let block = Graph::complete(self.r as usize + 1)?;
        let blocks = block.repeat(self.a as usize)?;
        Ok(blocks.disjoint_union(&colex_graph(self.b as usize)?)?)
    }

    /// `g_t`: clique count of [`Self::extremal_graph`] by the closed form.
    pub fn clique_count(&self, t: u64) -> u64 {
        self.a * binomial(self.r + 1, t) + colex_clique_count(self.c, self.d, t)
    }
}

pub fn decompose(m: u64, r: u64) -> Result<ColexDecomposition, ColexError> {
    if r == 0 {
        return Err(ColexError::ZeroDegreeCap);
    }
    let block = binomial(r + 1, 2);
    let (a, b) = (m / block, m % block);
    let (c, d) = split_remainder(b);
    Ok(ColexDecomposition { m, r, a, b, c, d })
}

/// `g_t(m, r) = a·C(r+1, t) + C(c, t) + C(d, t-1)`.
pub fn g_t(m: u64, r: u64, t: u64) -> Result<u64, ColexError> {
    Ok(decompose(m, r)?.clique_count(t))
}

/// `aK_{r+1} ∪ C(b)` for `m = a·C(r+1, 2) + b`.
pub fn conjectured_extremal_graph(m: u64, r: u64) -> Result<Graph, ColexError> {
    decompose(m, r)?.extremal_graph()
}

/// `m · C(r+1, t) / C(r+1, 2)` as an exact rational, for `3 <= t <= r + 1`.
pub fn asymptotic_upper_bound(m: u64, r: u64, t: u64) -> Result<Ratio<u64>, ColexError> {
    if t < 3 || t > r + 1 {
        return Err(ColexError::CliqueSizeOutOfRange { t: t as usize, max: r as usize + 1 });
    }
    Ok(Ratio::new(m * binomial(r + 1, t), binomial(r + 1, 2)))
}

/// Ground-set bound for rainbow enumerations.
pub const RAINBOW_GROUND_CAP: u64 = MAX_VERTICES as u64;

/// The first `m` ω-rainbow pairs (endpoints in distinct residue classes mod ω)
/// in colex order, with elements below `ground_cap`.
pub fn rainbow_pairs(omega: u64, m: usize, ground_cap: u64) -> Result<Vec<(usize, usize)>, ColexError> {
    if omega < 2 {
        return Err(ColexError::TooFewParts { omega, min: 2 });
    }
    let mut out = Vec::with_capacity(m);
    'outer: for y in 1..ground_cap as usize {
        for x in 0..y {
            if out.len() == m {
                break 'outer;
            }
            if !((y - x) as u64).is_multiple_of(omega) {
                out.push((x, y));
            }
        }
    }
    if out.len() < m {
        return Err(ColexError::RainbowExhausted { requested: m, available: out.len(), cap: ground_cap });
    }
    Ok(out)
}

/// `R_ω(m)`: the graph on the first `m` ω-rainbow pairs in colex order.
pub fn rainbow_colex_graph(omega: u64, m: usize) -> Result<Graph, ColexError> {
    let pairs = rainbow_pairs(omega, m, RAINBOW_GROUND_CAP)?;
    let n = pairs.iter().map(|&(_, y)| y + 1).max().unwrap_or(0);
    Ok(Graph::from_edges(n, &pairs)?)
}

/// `k_t(R_ω(m))`.
pub fn rainbow_segment_clique_count(omega: u64, m: usize, t: usize) -> Result<u64, ColexError> {
    Ok(rainbow_colex_graph(omega, m)?.count_cliques(t))
}

/// An initial colex segment of ω-rainbow `t`-sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RainbowSpec {
    pub omega: u64,
    pub t: usize,
    pub len: usize,
}

impl RainbowSpec {
    pub fn new(omega: u64, t: usize, len: usize) -> Result<Self, ColexError> {
        if t == 0 || omega < t as u64 {
            return Err(ColexError::TooFewParts { omega, min: t.max(1) as u64 });
        }
        Ok(RainbowSpec { omega, t, len })
    }

    /// The first `len` ω-rainbow `t`-sets in colex order.
    pub fn segment(&self) -> Result<Vec<Vec<u64>>, ColexError> {
        let mut out = Vec::with_capacity(self.len);
        let mut rank = 0;
        while out.len() < self.len {
            let set = colex_unrank(rank, self.t)?;
            if *set.last().unwrap_or(&0) >= RAINBOW_GROUND_CAP {
                return Err(ColexError::RainbowExhausted {
                    requested: self.len,
                    available: out.len(),
                    cap: RAINBOW_GROUND_CAP,
                });
            }
            let mut residues: Vec<u64> = set.iter().map(|a| a % self.omega).collect();
            residues.sort_unstable();
            residues.dedup();
            if residues.len() == set.len() {
                out.push(set);
            }
            rank += 1;
        }
        Ok(out)
    }

    /// `|∂^(l)|` of the segment.
    pub fn shadow_size(&self, l: usize) -> Result<u64, ColexError> {
        if l == 0 || l > self.t {
            return Err(ColexError::BadShadowLevel { l, t: self.t });
        }
        Ok(shadow_of(&self.segment()?, l))
    }
}

fn shadow_of(sets: &[Vec<u64>], l: usize) -> u64 {
    let mut shadow: HashSet<Vec<u64>> = HashSet::new();
    let mut buf = Vec::with_capacity(l);
    for set in sets {
        subsets_into(set, l, 0, &mut buf, &mut shadow);
    }
    shadow.len() as u64
}

fn subsets_into(set: &[u64], l: usize, from: usize, buf: &mut Vec<u64>, out: &mut HashSet<Vec<u64>>) {
    if buf.len() == l {
        out.insert(buf.clone());
        return;
    }
    for i in from..set.len() {
        if set.len() - i < l - buf.len() {
            break;
        }
        buf.push(set[i]);
        subsets_into(set, l, i + 1, buf, out);
        buf.pop();
    }
}

/// `|∂^(l) C|` for `C` the first `n` `t`-sets in colex order, computed by
/// materializing the segment.
pub fn shadow_size(n: u64, t: usize, l: usize) -> Result<u64, ColexError> {
    if l == 0 || l > t {
        return Err(ColexError::BadShadowLevel { l, t });
    }
    let sets = (0..n).map(|rank| colex_unrank(rank, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(shadow_of(&sets, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// All `t`-subsets of `0..n`, sorted by the colex comparison: largest
    /// elements first, descending.
    fn colex_sorted_subsets(n: u64, t: usize) -> Vec<Vec<u64>> {
        let mut all = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize == t {
                all.push((0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            }
        }
        all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        all
    }

    fn brute_triangles(g: &Graph) -> u64 {
        let n = g.order();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn pair_ranks() {
        assert_eq!(colex_rank(&[0, 1]).unwrap(), 0);
        assert_eq!(colex_rank(&[0, 2]).unwrap(), 1);
        assert_eq!(colex_rank(&[1, 2]).unwrap(), 2);
        assert_eq!(colex_rank(&[0, 3]).unwrap(), 3);
        assert_eq!(colex_rank(&[2, 1]).unwrap(), 2);
        assert_eq!(colex_rank(&[3, 3]), Err(ColexError::RepeatedElement(3)));
        assert_eq!(colex_unrank(0, 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(colex_rank(&colex_unrank(1_000_000, 3).unwrap()).unwrap(), 1_000_000);
    }

    #[test]
    fn rank_matches_colex_comparison() {
        for t in 1..=4 {
            for (i, set) in colex_sorted_subsets(8, t).iter().enumerate() {
                assert_eq!(colex_rank(set).unwrap(), i as u64, "{set:?}");
                assert_eq!(&colex_unrank(i as u64, t).unwrap(), set);
            }
        }
    }

    #[test]
    fn colex_graph_small_cases() {
        let g5 = colex_graph(5).unwrap();
        assert_eq!(split_remainder(5), (3, 2));
        assert_eq!(g5.order(), 4);
        assert_eq!(brute_triangles(&g5), 2);
        assert_eq!(g5.count_cliques(3), 2);

        let g7 = colex_graph(7).unwrap();
        assert_eq!(brute_triangles(&g7), 4);
        assert_eq!(g7.count_cliques(3), 4);

        for c in 2..8 {
            assert_eq!(colex_graph(binomial(c, 2) as usize).unwrap(), Graph::complete(c as usize).unwrap());
        }
        let g1 = colex_graph(1).unwrap();
        assert_eq!(g1, Graph::complete(2).unwrap());
        assert_eq!(split_remainder(1), (2, 0));
        assert_eq!(colex_graph(0).unwrap().order(), 0);
    }

    #[test]
    fn colex_graph_structure() {
        for b in 1..80u64 {
            let g = colex_graph(b as usize).unwrap();
            let (c, d) = split_remainder(b);
            assert!(d < c);
            assert_eq!(g.size() as u64, b);
            let kc: Vec<usize> = (0..c as usize).collect();
            assert_eq!(g.induced(&kc).unwrap(), Graph::complete(c as usize).unwrap());
            if d > 0 {
                assert_eq!(g.degree(c as usize) as u64, d);
            }
        }
    }

    #[test]
    fn decompositions() {
        let d = decompose(47, 8).unwrap();
        assert_eq!((d.a, d.b, d.c, d.d), (1, 11, 5, 1));
        let d = decompose(36, 8).unwrap();
        assert_eq!((d.a, d.b, d.c, d.d), (1, 0, 0, 0));
        let d = decompose(53, 8).unwrap();
        assert_eq!((d.a, d.b, d.c, d.d), (1, 17, 6, 2));
        assert_eq!(decompose(5, 0), Err(ColexError::ZeroDegreeCap));
        assert_eq!(normalize_bracket(4, 4), (5, 0));
        assert_eq!(bracket_value(4, 4), bracket_value(5, 0));
    }

    #[test]
    fn target_function_values() {
        assert_eq!(g_t(47, 8, 3).unwrap(), 94);
        assert_eq!(g_t(54, 8, 3).unwrap(), 107);
        for r in 1..9u64 {
            for t in 2..=r + 1 {
                assert_eq!(g_t(binomial(r + 1, 2), r, t).unwrap(), binomial(r + 1, t));
            }
        }
        let g = conjectured_extremal_graph(47, 8).unwrap();
        assert_eq!(g.count_cliques(3), 94);
    }

    #[test]
    fn asymptotic_bound_values() {
        assert_eq!(asymptotic_upper_bound(36, 8, 3).unwrap(), Ratio::from_integer(84));
        assert_eq!(asymptotic_upper_bound(47, 8, 3).unwrap(), Ratio::new(329, 3));
        assert!(asymptotic_upper_bound(47, 8, 2).is_err());
        assert!(asymptotic_upper_bound(47, 8, 10).is_err());
    }

    #[test]
    fn rainbow_graphs() {
        let g = rainbow_colex_graph(2, 1).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = rainbow_colex_graph(3, 3).unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(rainbow_segment_clique_count(3, 3, 3).unwrap(), 1);
        // 2-rainbow pairs join opposite parities, so R_2(m) is bipartite
        assert_eq!(rainbow_segment_clique_count(2, 20, 3).unwrap(), 0);
        assert!(matches!(rainbow_pairs(3, 10, 4), Err(ColexError::RainbowExhausted { .. })));
        assert!(rainbow_pairs(1, 1, 10).is_err());
    }

    #[test]
    fn rainbow_segment_of_pairs_matches_graph() {
        let spec = RainbowSpec::new(3, 2, 9).unwrap();
        let seg = spec.segment().unwrap();
        let pairs = rainbow_pairs(3, 9, 100).unwrap();
        let as_sets: Vec<Vec<u64>> = pairs.iter().map(|&(x, y)| vec![x as u64, y as u64]).collect();
        assert_eq!(seg, as_sets);
        assert_eq!(spec.shadow_size(1).unwrap(), 6);
    }

    #[test]
    fn shadow_sizes() {
        // first 5 colex triples cover the 6 pairs of {0,1,2,3} plus {0,4},{1,4}
        let mut pairs = HashSet::new();
        for set in colex_sorted_subsets(6, 3).iter().take(5) {
            for i in 0..3 {
                for j in i + 1..3 {
                    pairs.insert((set[i], set[j]));
                }
            }
        }
        assert_eq!(pairs.len(), 8);
        assert_eq!(shadow_size(5, 3, 2).unwrap(), 8);
        assert_eq!(shadow_size(binomial(7, 3), 3, 2).unwrap(), binomial(7, 2));
        assert_eq!(shadow_size(1, 4, 2).unwrap(), binomial(4, 2));
        assert!(shadow_size(3, 2, 3).is_err());
    }

    proptest! {
        #[test]
        fn rank_round_trip(rank in 0u64..10_000_000, t in 1usize..6) {
            prop_assert_eq!(colex_rank(&colex_unrank(rank, t).unwrap()).unwrap(), rank);
        }

        #[test]
        fn colex_clique_formula(c in 0u64..13, d in 0u64..13, t in 2u64..6) {
            prop_assume!(d <= c);
            let (nc, nd) = normalize_bracket(c, d);
            let b = bracket_value(c, d);
            let g = colex_graph(b as usize).unwrap();
            prop_assert_eq!(g.count_cliques(t as usize), colex_clique_count(c, d, t));
            prop_assert_eq!(colex_clique_count(nc, nd, t), colex_clique_count(c, d, t));
        }

        #[test]
        fn g_monotone_in_m(m in 0u64..300, r in 1u64..10, t in 2u64..5) {
            prop_assert!(g_t(m + 1, r, t).unwrap() >= g_t(m, r, t).unwrap());
        }

        #[test]
        fn decomposition_invariants(m in 0u64..2000, r in 1u64..12) {
            let d = decompose(m, r).unwrap();
            prop_assert_eq!(d.a * d.block_edges() + d.b, m);
            prop_assert!(d.b < d.block_edges());
            if d.b > 0 {
                prop_assert_eq!(binomial(d.c, 2) + d.d, d.b);
                prop_assert!(d.d < d.c && d.c <= r);
            } else {
                prop_assert_eq!((d.c, d.d), (0, 0));
            }
        }
    }
}
