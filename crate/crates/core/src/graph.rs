//! Immutable simple graphs backed by per-vertex neighbor bitsets.
//!
//! Vertices are `0..n`. Each row of the adjacency matrix is stored as
//! `ceil(n / 64)` machine words so that neighborhood intersections, which
//! dominate clique counting and pair weights, are word-parallel.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{requested} vertices exceeds the cap of {cap}")]
    TooManyVertices { requested: usize, cap: usize },
    #[error("pair weight needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { requested: n, cap: MAX_VERTICES });
        }
        let words = words_for(n);
        Ok(Graph { n, words, adj: vec![0; n * words], edges: 0 })
    }

    /// Builds a graph from an edge list. Repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            for u in 0..v {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Assembles a graph from raw rows, as produced by the search engine.
    /// Rows must be symmetric and loop-free; this is checked in debug builds.
    pub(crate) fn from_rows_u64(rows: &[u64]) -> Graph {
        let n = rows.len();
        debug_assert!(n <= 64);
        let mut g = Graph::empty(n).expect("at most 64 rows");
        for (v, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row >> v & 1, 0);
            let mut bits = row;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                debug_assert_eq!(rows[u] >> v & 1, 1);
                if u > v {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        } else {
            Ok(())
        }
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        if !self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] |= 1 << (v % 64);
            self.adj[v * self.words + u / 64] |= 1 << (u % 64);
            self.edges += 1;
        }
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
            self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
            self.edges -= 1;
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `e(G)`.
    #[inline]
    pub fn size(&self) -> usize {
        self.edges
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// First word of a row; only meaningful for graphs on at most 64 vertices.
    #[inline]
    pub(crate) fn row_u64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `Δ(G)`; zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `δ(G)`; zero for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for v in 0..self.n {
            for u in self.neighbors(v).take_while(|&u| u < v) {
                out.push((u, v));
            }
        }
        out
    }

    /// Number of `t`-vertex subsets inducing complete subgraphs, `k_t(G)`.
    pub fn count_cliques(&self, t: usize) -> u64 {
        match t {
            0 => 1,
            1 => self.n as u64,
            2 => self.edges as u64,
            _ => {
                let mut scratch = vec![0u64; self.words * t];
                let mut total = 0;
                for v in 0..self.n {
                    let (cand, rest) = scratch.split_at_mut(self.words);
                    let row = self.row(v);
                    for (w, c) in cand.iter_mut().enumerate() {
                        *c = row[w] & above_mask(v, w);
                    }
                    total += self.extend_cliques(cand, rest, t - 1);
                }
                total
            }
        }
    }

    /// Counts `(k)`-cliques inside the candidate set, each vertex of which is
    /// adjacent to the clique built so far. `scratch` provides buffers for the
    /// deeper levels.
    fn extend_cliques(&self, cand: &[u64], scratch: &mut [u64], k: usize) -> u64 {
        if k == 1 {
            return cand.iter().map(|w| w.count_ones() as u64).sum();
        }
        let (next, rest) = scratch.split_at_mut(self.words);
        let mut total = 0;
        for u in BitIter::new(cand) {
            let row = self.row(u);
            let mut any = false;
            for w in 0..self.words {
                next[w] = cand[w] & row[w] & above_mask(u, w);
                any |= next[w] != 0;
            }
            if any {
                total += self.extend_cliques(next, rest, k - 1);
            }
        }
        total
    }

    /// Size of the largest clique, `ω(G)`.
    pub fn clique_number(&self) -> usize {
        if self.edges == 0 {
            return usize::from(self.n > 0);
        }
        let mut t = 2;
        while self.count_cliques(t + 1) > 0 {
            t += 1;
        }
        t
    }

    /// `w(xy) = |N(x) ∩ N(y)|`.
    pub fn pair_weight(&self, x: usize, y: usize) -> Result<usize, GraphError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(GraphError::SameVertex(x));
        }
        Ok(self.common_neighbors(x, y))
    }

    pub(crate) fn common_neighbors(&self, x: usize, y: usize) -> usize {
        self.row(x).iter().zip(self.row(y)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn weight_table(&self) -> EdgeWeightTable {
        let mut weights = vec![0u32; self.n * self.n];
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                let w = self.common_neighbors(x, y) as u32;
                weights[x * self.n + y] = w;
                weights[y * self.n + x] = w;
            }
        }
        EdgeWeightTable { n: self.n, weights }
    }

    /// `G ∪ H`: the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// `count` disjoint copies of `self`.
    pub fn repeat(&self, count: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(0)?;
        for _ in 0..count {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// Subgraph induced on `subset`; vertex `i` of the result is `subset[i]`.
    pub fn induced(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        for &v in subset {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(subset.len())?;
        for (i, &u) in subset.iter().enumerate() {
            for (j, &v) in subset.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Complement of the subgraph induced on `subset`, on `|subset|` vertices.
    pub fn complement_on_subset(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        let induced = self.induced(subset)?;
        Ok(induced.complement())
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same order");
        for v in 1..self.n {
            for u in 0..v {
                if !self.has_edge(u, v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Returns a copy with `add` inserted and `remove` deleted (removals first).
    pub fn edited(&self, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &(u, v) in remove.iter().chain(add) {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        for &(u, v) in remove {
            g.delete_edge(u, v);
        }
        for &(u, v) in add {
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            g.insert_edge(a, b);
        }
        Ok(g)
    }

    /// Drops degree-zero vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep).expect("subset of own vertices")
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `Σ_v d(v)^2`.
    pub fn degree_square_sum(&self) -> u64 {
        (0..self.n).map(|v| (self.degree(v) as u64).pow(2)).sum()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Mask of bit positions in word `w` that index vertices strictly above `v`.
#[inline]
fn above_mask(v: usize, w: usize) -> u64 {
    let lo = w * 64;
    if v < lo {
        u64::MAX
    } else if v >= lo + 63 {
        0
    } else {
        u64::MAX << (v - lo + 1)
    }
}

/// Iterates the set bits of a multi-word bitset in increasing order.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// All pair weights `w(xy)` of a graph, edges and non-edges alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeightTable {
    n: usize,
    weights: Vec<u32>,
}

impl EdgeWeightTable {
    pub fn weight(&self, x: usize, y: usize) -> usize {
        self.weights[x * self.n + y] as usize
    }

    pub fn order(&self) -> usize {
        self.n
    }
}
