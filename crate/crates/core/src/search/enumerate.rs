//! Edge augmentation with canonical deletion.
//!
//! Nodes are graphs without isolated vertices, stored as canonical adjacency
//! rows. A child adds one edge between existing vertices, from an existing
//! vertex to a new one, or between two new vertices. The child is kept iff
//! deleting its canonical edge (the last edge in canonical order) and
//! dropping isolated vertices gives back the parent, so each class has
//! exactly one parent class; isomorphic children of one parent are merged.

use std::collections::HashSet;

use super::canon::{canonical_form, orbit_representatives, CanonKey};

/// Hereditary constraints applied while generating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Limits {
    pub r: usize,
    pub vertex_cap: usize,
    pub omega_cap: Option<usize>,
}

pub(crate) fn degree(rows: &[u64], v: usize) -> usize {
    rows[v].count_ones() as usize
}

/// The last edge `(i, j)`, `i < j`, in the order `(0,1), (0,2), (1,2), ...`
/// of a canonical certificate, as positions.
fn last_edge(cert: &[u64]) -> Option<(usize, usize)> {
    (1..cert.len()).rev().find_map(|j| {
        let below = cert[j] & ((1u64 << j) - 1);
        (below != 0).then(|| (63 - below.leading_zeros() as usize, j))
    })
}

/// Drops isolated vertices, keeping the order of the others.
pub(crate) fn without_isolated(rows: &[u64]) -> Vec<u64> {
    let keep: Vec<usize> = (0..rows.len()).filter(|&v| rows[v] != 0).collect();
    if keep.len() == rows.len() {
        return rows.to_vec();
    }
    keep.iter()
        .map(|&v| {
            keep.iter().enumerate().filter(|&(_, &u)| rows[v] >> u & 1 == 1).fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

fn max_clique(rows: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    let v = mask.trailing_zeros() as usize;
    let with = 1 + max_clique(rows, mask & rows[v]);
    if with as u32 > (mask & !(1 << v)).count_ones() {
        return with;
    }
    with.max(max_clique(rows, mask & !(1 << v)))
}

/// Candidate edges, one per orbit of the parent's automorphisms.
fn candidates(rows: &[u64], limits: &Limits) -> Vec<(usize, usize)> {
    let n = rows.len();
    let canon = canonical_form(rows);
    let rep = orbit_representatives(n, &canon.generators);
    let open = |v: usize| degree(rows, v) < limits.r;

    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in &canon.generators {
        for v in 1..n {
            for u in 0..v {
                let (a, b) = (gen[u] as usize, gen[v] as usize);
                let (a, b) = (a.min(b), a.max(b));
                let (x, y) = (find(&mut parent, u * n + v), find(&mut parent, a * n + b));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }

    let mut out = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rows[u] >> v & 1 == 0 && open(u) && open(v) && find(&mut parent, u * n + v) == u * n + v {
                out.push((u, v));
            }
        }
    }
    if n < limits.vertex_cap {
        out.extend((0..n).filter(|&u| rep[u] == u && open(u)).map(|u| (u, n)));
    }
    if n + 2 <= limits.vertex_cap {
        out.push((n, n + 1));
    }
    out
}

/// Accepted children of a canonical node, as canonical rows.
pub(crate) fn children(rows: &[u64], limits: &Limits) -> Vec<Vec<u64>> {
    let n = rows.len();
    let mut seen: HashSet<CanonKey> = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in candidates(rows, limits) {
        if let Some(w) = limits.omega_cap {
            let common = if v < n { rows[u] & rows[v] } else { 0 };
            if max_clique(rows, common) + 2 > w {
                continue;
            }
        }
        let size = n.max(v + 1);
        let mut child = rows.to_vec();
        child.resize(size, 0);
        child[u] |= 1 << v;
        child[v] |= 1 << u;

        let canon = canonical_form(&child);
        let (i, j) = last_edge(&canon.key.0).expect("child has an edge");
        let (x, y) = (canon.labeling[i], canon.labeling[j]);
        let accepted = if (x, y) == (u, v) || (x, y) == (v, u) {
            true
        } else {
            let mut ends = [degree(&child, x), degree(&child, y)];
            let mut added = [degree(&child, u), degree(&child, v)];
            ends.sort_unstable();
            added.sort_unstable();
            ends == added && {
                let mut reduced = child.clone();
                reduced[x] &= !(1 << y);
                reduced[y] &= !(1 << x);
                canonical_form(&without_isolated(&reduced)).key.0 == rows
            }
        };
        if accepted && seen.insert(canon.key.clone()) {
            out.push(canon.key.0);
        }
    }
    out
}

/// Depth-first traversal from the empty graph; `visit(m, rows)` sees every
/// class with at most `max_m` edges exactly once. Returning `false` stops.
pub(crate) fn traverse(limits: &Limits, max_m: usize, visit: &mut impl FnMut(usize, &[u64]) -> bool) -> bool {
    subtree(&[], 0, limits, max_m, visit)
}

pub(crate) fn subtree(
    rows: &[u64],
    m: usize,
    limits: &Limits,
    max_m: usize,
    visit: &mut impl FnMut(usize, &[u64]) -> bool,
) -> bool {
    if !visit(m, rows) {
        return false;
    }
    if m == max_m {
        return true;
    }
    children(rows, limits).iter().all(|child| subtree(child, m + 1, limits, max_m, visit))
}
