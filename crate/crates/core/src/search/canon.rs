//! Canonical labeling for graphs on at most 64 vertices.
//!
//! Equitable refinement of an ordered partition, then a backtracking search
//! that individualizes vertices of the first smallest non-singleton cell.
//! The certificate is the relabeled adjacency matrix; the lexicographically
//! largest one over the search tree is canonical. Automorphisms discovered
//! at leaves prune the tree in two ways: a leaf equivalent to the first leaf
//! abandons the rest of its subtree, and children in one orbit of the
//! automorphisms fixing the current path are explored once.

use std::collections::VecDeque;

/// Adjacency rows of a relabeled graph; equal keys mean isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(pub Vec<u64>);

#[derive(Debug, Clone)]
pub struct Canon {
    /// `labeling[i]` is the vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    pub key: CanonKey,
    /// Automorphisms found along the way, as vertex permutations.
    pub generators: Vec<Vec<u8>>,
}

pub fn canonical_form(rows: &[u64]) -> Canon {
    let n = rows.len();
    assert!(n <= 64, "canonical labeling supports at most 64 vertices");
    if n == 0 {
        return Canon { labeling: Vec::new(), key: CanonKey(Vec::new()), generators: Vec::new() };
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cells = vec![all];
    refine(rows, &mut cells, VecDeque::from([all]));
    let mut search = Search { rows, first: None, best: None, generators: Vec::new() };
    search.descend(cells, &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    Canon { labeling: best.labeling, key: CanonKey(best.cert), generators: search.generators }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Splits cells by neighbor counts into each splitter until the partition
/// is equitable. Fragments are ordered by count, so the result depends only
/// on the graph and the incoming ordered partition.
fn refine(rows: &[u64], cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let mut groups: Vec<(u32, u64)> = Vec::new();
    while let Some(splitter) = queue.pop_front() {
        let mut ci = 0;
        while ci < cells.len() {
            let cell = cells[ci];
            if cell & (cell - 1) == 0 {
                ci += 1;
                continue;
            }
            groups.clear();
            for v in bits(cell) {
                let count = (rows[v] & splitter).count_ones();
                match groups.iter_mut().find(|(c, _)| *c == count) {
                    Some((_, mask)) => *mask |= 1 << v,
                    None => groups.push((count, 1 << v)),
                }
            }
            if groups.len() == 1 {
                ci += 1;
                continue;
            }
            groups.sort_unstable_by_key(|&(c, _)| c);
            cells.splice(ci..ci + 1, groups.iter().map(|&(_, m)| m));
            queue.extend(groups.iter().map(|&(_, m)| m));
            ci += groups.len();
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the caller chain should unwind to the node
    /// whose path has that length.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(ti) = target else {
            return self.leaf(&cells, path);
        };
        let level = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for v in bits(cells[ti]) {
            if !tried.is_empty() && self.equivalent_to_tried(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            next[ti] &= !(1 << v);
            next.insert(ti, 1 << v);
            refine(self.rows, &mut next, VecDeque::from([1u64 << v]));
            path.push(v);
            let jump = self.descend(next, path);
            path.pop();
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let labeling: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut position = vec![0usize; labeling.len()];
        for (i, &v) in labeling.iter().enumerate() {
            position[v] = i;
        }
        let cert: Vec<u64> =
            labeling.iter().map(|&v| bits(self.rows[v]).fold(0u64, |acc, u| acc | 1 << position[u])).collect();
        let leaf = Leaf { cert, labeling, path: path.to_vec() };

        let Some(first) = &self.first else {
            self.best =
                Some(Leaf { cert: leaf.cert.clone(), labeling: leaf.labeling.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let to = common_prefix(&leaf.path, &first.path);
            let gen = automorphism(&first.labeling, &leaf.labeling);
            self.generators.push(gen);
            return Some(to);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let to = common_prefix(&leaf.path, &best.path);
                let gen = automorphism(&best.labeling, &leaf.labeling);
                self.generators.push(gen);
                Some(to)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix every vertex of `path`.
    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().any(|&p| gen[p] as usize != p) {
                continue;
            }
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == root)
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The permutation sending `from[i]` to `to[i]` for every position `i`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<u8> {
    let mut gen = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b as u8;
    }
    gen
}

/// Orbits of the group generated by `generators`, as a representative
/// (smallest member) per vertex.
pub fn orbit_representatives(n: usize, generators: &[Vec<u8>]) -> Vec<usize> {
    let mut rep: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for gen in generators {
            for x in 0..n {
                let y = gen[x] as usize;
                let m = rep[x].min(rep[y]);
                if rep[x] != m || rep[y] != m {
                    rep[x] = m;
                    rep[y] = m;
                    changed = true;
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use proptest::prelude::*;

    fn rows(g: &Graph) -> Vec<u64> {
        (0..g.order()).map(|v| g.row_u64(v)).collect()
    }

    fn permute(g: &Graph, seed: u64) -> Graph {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        g.relabeled(&perm).unwrap()
    }

    fn is_automorphism(g: &Graph, gen: &[u8]) -> bool {
        g.edges().iter().all(|&(u, v)| g.has_edge(gen[u] as usize, gen[v] as usize))
    }

    #[test]
    fn certificate_is_the_relabeled_graph() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let c = canonical_form(&rows(&g));
        let relabeled = Graph::from_rows_u64(&c.key.0);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(relabeled.has_edge(i, j), g.has_edge(c.labeling[i], c.labeling[j]));
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_finish_quickly() {
        // 10K_2, K_{1,12}, K_{6,6} and the Petersen graph: huge automorphism groups
        let matching: Vec<(usize, usize)> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        let star: Vec<(usize, usize)> = (1..13).map(|i| (0, i)).collect();
        let biclique: Vec<(usize, usize)> = (0..6).flat_map(|i| (6..12).map(move |j| (i, j))).collect();
        let petersen = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ];
        for (n, edges) in [(20, &matching[..]), (13, &star[..]), (12, &biclique[..]), (10, &petersen[..])] {
            let g = Graph::from_edges(n, edges).unwrap();
            let c = canonical_form(&rows(&g));
            assert!(c.generators.iter().all(|gen| is_automorphism(&g, gen)));
            for seed in 1..6 {
                assert_eq!(canonical_form(&rows(&permute(&g, seed))).key, c.key);
            }
        }
    }

    #[test]
    fn distinguishes_cospectral_regular_graphs() {
        // the 6-cycle and two triangles are both 2-regular on 6 vertices
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let two_k3 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_form(&rows(&c6)).key, canonical_form(&rows(&two_k3)).key);
    }

    #[test]
    fn orbits_of_a_path() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = canonical_form(&rows(&p4));
        assert_eq!(orbit_representatives(4, &c.generators), vec![0, 1, 1, 0]);
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(n in 1usize..13, density in 0u64..4, seed in any::<u64>(), perm_seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut s = seed | 1;
            for v in 1..n {
                for u in 0..v {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    if s % 4 < density {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let h = permute(&g, perm_seed);
            let cg = canonical_form(&rows(&g));
            prop_assert_eq!(&cg.key, &canonical_form(&rows(&h)).key);
            prop_assert!(cg.generators.iter().all(|gen| is_automorphism(&g, gen)));
        }
    }
}
