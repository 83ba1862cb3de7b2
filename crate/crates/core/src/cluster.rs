//! Tight edges, clusters, folding, and the red/blue functionals used to show
//! a graph with a cluster is not extremal.
//!
//! For `Δ(G) <= r`, an edge `xy` is tight when `w(xy) = r - 1`, which forces
//! `d(x) = d(y) = r` and `N[x] = N[y]`. A cluster is therefore a class of
//! degree-`r` vertices sharing one closed neighborhood `T ∪ S`, where `S` is
//! the common neighborhood of `T`. The red graph `R` is the complement of
//! `G[S]`, and the blue edges run from `S` to vertices outside `T ∪ S`.
//!
//! Degree-`r` vertices lying on no tight edge form singleton clusters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colex::binomial;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("maximum degree {max_degree} exceeds the cap r = {r}")]
    DegreeExceedsCap { max_degree: usize, r: usize },
    #[error("folding needs e(B) >= e(R), but e(B) = {blue} and e(R) = {red}")]
    FoldRefused { blue: usize, red: usize },
    #[error("vertex {index} is not in Y (|Y| = {len})")]
    NotInY { index: usize, len: usize },
    #[error("compression needs two distinct vertices of Y, got {0} twice")]
    SameVertex(usize),
    #[error("bipartite side V(H) has {0} vertices; at most 64 are supported")]
    SideTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_cap(g: &Graph, r: usize) -> Result<(), ClusterError> {
    let max_degree = g.max_degree();
    if max_degree > r {
        Err(ClusterError::DegreeExceedsCap { max_degree, r })
    } else {
        Ok(())
    }
}

/// Edges of weight `r - 1`.
pub fn tight_edges(g: &Graph, r: usize) -> Result<Vec<(usize, usize)>, ClusterError> {
    check_cap(g, r)?;
    Ok(g.edges().into_iter().filter(|&(u, v)| r >= 1 && g.common_neighbors(u, v) == r - 1).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// `T`, sorted.
    pub tight: Vec<usize>,
    /// `S`, sorted. Vertex `i` of [`Cluster::red`] is `common[i]`.
    pub common: Vec<usize>,
    /// `R`, the complement of `G[S]`.
    pub red: Graph,
    /// Blue edges as `(vertex of S, vertex outside T ∪ S)`.
    pub blue: Vec<(usize, usize)>,
}

impl Cluster {
    pub fn t(&self) -> usize {
        self.tight.len()
    }

    pub fn s(&self) -> usize {
        self.common.len()
    }

    pub fn red_edges(&self) -> usize {
        self.red.size()
    }

    pub fn blue_edges(&self) -> usize {
        self.blue.len()
    }

    /// Red edges in the labels of the host graph.
    pub fn red_pairs(&self) -> Vec<(usize, usize)> {
        self.red.edges().into_iter().map(|(i, j)| (self.common[i], self.common[j])).collect()
    }
}

/// All clusters of `g`, ordered by smallest member of `T`.
pub fn clusters(g: &Graph, r: usize) -> Result<Vec<Cluster>, ClusterError> {
    check_cap(g, r)?;
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..g.order() {
        if g.degree(v) == r && r > 0 {
            let mut closed: Vec<usize> = g.neighbors(v).collect();
            closed.push(v);
            closed.sort_unstable();
            classes.entry(closed).or_default().push(v);
        }
    }
    let mut out: Vec<Cluster> =
        classes.into_iter().map(|(closed, tight)| build_cluster(g, &closed, tight)).collect::<Result<_, _>>()?;
    out.sort_by_key(|c| c.tight[0]);
    Ok(out)
}

fn build_cluster(g: &Graph, closed: &[usize], tight: Vec<usize>) -> Result<Cluster, ClusterError> {
    let common: Vec<usize> = closed.iter().copied().filter(|v| !tight.contains(v)).collect();
    let red = g.complement_on_subset(&common)?;
    let mut blue = Vec::new();
    for &u in &common {
        for w in g.neighbors(u) {
            if closed.binary_search(&w).is_err() {
                blue.push((u, w));
            }
        }
    }
    Ok(Cluster { tight, common, red, blue })
}

/// `G_T = G + C(S, 2) - E(B)`. Refused unless `e(B) >= e(R)`.
pub fn fold(g: &Graph, cluster: &Cluster) -> Result<Graph, ClusterError> {
    if cluster.blue_edges() < cluster.red_edges() {
        return Err(ClusterError::FoldRefused { blue: cluster.blue_edges(), red: cluster.red_edges() });
    }
    Ok(g.edited(&cluster.red_pairs(), &cluster.blue)?)
}

/// `Q(R) = (r + 1 - s)e(R) + k_3(R) - Σ_v C(d_R(v), 2)` with `s = |V(R)|`.
pub fn q_value(red: &Graph, r: usize) -> i64 {
    let s = red.order() as i64;
    let deg_pairs: i64 = red.degrees().iter().map(|&d| binomial(d as u64, 2) as i64).sum();
    (r as i64 + 1 - s) * red.size() as i64 + red.count_cliques(3) as i64 - deg_pairs
}

/// `Σ_v C(d_R(v), 2) + ½ Σ_v d_R(v)(s - 1 - d_R(v))`, with `s = |V(R)|`.
pub fn blue_triangle_bound(red: &Graph) -> i64 {
    let s = red.order() as i64;
    let mut doubled = 0i64;
    for d in red.degrees() {
        let d = d as i64;
        doubled += d * (d - 1) + d * (s - 1 - d);
    }
    // Σ d(s-1-d) counts ordered (edge, non-edge) incidences in pairs
    debug_assert_eq!(doubled % 2, 0);
    doubled / 2
}

/// Triangles of `g` with two blue edges at `cluster`, by direct enumeration.
pub fn blue_triangle_count(g: &Graph, cluster: &Cluster) -> u64 {
    let is_blue = |u: usize, v: usize| cluster.blue.iter().any(|&(a, b)| (a == u && b == v) || (a == v && b == u));
    let mut count = 0;
    let n = g.order();
    for a in 0..n {
        for b in g.neighbors(a).filter(|&b| b > a) {
            for c in g.neighbors(b).filter(|&c| c > b) {
                if g.has_edge(a, c) {
                    let blues = [is_blue(a, b), is_blue(a, c), is_blue(b, c)].iter().filter(|&&x| x).count();
                    if blues >= 2 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// A graph `H` together with a bipartite graph `B` between `V(H)` and a
/// second side `Y`. Each vertex of `Y` is stored as its neighbor mask in `V(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSystem {
    h: Graph,
    y_neighbors: Vec<u64>,
}

impl BipartiteSystem {
    /// `edges` are `(vertex of H, index in Y)`.
    pub fn new(h: Graph, y_count: usize, edges: &[(usize, usize)]) -> Result<Self, ClusterError> {
        if h.order() > 64 {
            return Err(ClusterError::SideTooLarge(h.order()));
        }
        let mut y_neighbors = vec![0u64; y_count];
        for &(x, y) in edges {
            if x >= h.order() {
                return Err(GraphError::VertexOutOfRange { vertex: x, order: h.order() }.into());
            }
            let slot = y_neighbors.get_mut(y).ok_or(ClusterError::NotInY { index: y, len: y_count })?;
            *slot |= 1 << x;
        }
        Ok(BipartiteSystem { h, y_neighbors })
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn y_count(&self) -> usize {
        self.y_neighbors.len()
    }

    /// `N_B(y)` as a mask over `V(H)`.
    pub fn y_mask(&self, y: usize) -> u64 {
        self.y_neighbors[y]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (y, &mask) in self.y_neighbors.iter().enumerate() {
            for x in 0..self.h.order() {
                if mask >> x & 1 == 1 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.y_neighbors.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.y_neighbors.iter().filter(|&&m| m >> x & 1 == 1).count()
    }

    pub fn y_degree(&self, y: usize) -> usize {
        self.y_neighbors[y].count_ones() as usize
    }

    fn check_y(&self, y: usize) -> Result<(), ClusterError> {
        if y >= self.y_count() {
            Err(ClusterError::NotInY { index: y, len: self.y_count() })
        } else {
            Ok(())
        }
    }

    /// Neither of `N(x)`, `N(y)` contains the other.
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        let (a, b) = (self.y_neighbors[x], self.y_neighbors[y]);
        a & !b != 0 && b & !a != 0
    }

    /// `B_{x→y}`: the edges from `x` to `N(x) \ N(y)` move to `y`.
    pub fn compress(&self, x: usize, y: usize) -> Result<BipartiteSystem, ClusterError> {
        self.check_y(x)?;
        self.check_y(y)?;
        if x == y {
            return Err(ClusterError::SameVertex(x));
        }
        let mut out = self.clone();
        let moved = self.y_neighbors[x] & !self.y_neighbors[y];
        out.y_neighbors[x] &= !moved;
        out.y_neighbors[y] |= moved;
        Ok(out)
    }

    /// `ψ_H(B) = Σ_{v ∈ V(H)} C(d_B(v), 2) + Σ_{v ∈ Y} #{ {i, j} ⊆ N_B(v) : ij ∉ E(H) }`.
    pub fn psi(&self) -> u64 {
        let side: u64 = (0..self.h.order()).map(|x| binomial(self.x_degree(x) as u64, 2)).sum();
        let mut across = 0u64;
        for &mask in &self.y_neighbors {
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let non_adjacent = rest & !self.h.row_u64(i);
                across += non_adjacent.count_ones() as u64;
            }
        }
        side + across
    }

    /// `d_2(B)`: sum of squared degrees over both sides.
    pub fn d2(&self) -> u64 {
        let xs: u64 = (0..self.h.order()).map(|x| (self.x_degree(x) as u64).pow(2)).sum();
        let ys: u64 = (0..self.y_count()).map(|y| (self.y_degree(y) as u64).pow(2)).sum();
        xs + ys
    }
}

/// `d_2(G) = Σ_v d(v)^2`.
pub fn d2(g: &Graph) -> u64 {
    g.degree_square_sum()
}

/// Excluded-configuration results that certify a cluster cannot occur in a
/// connected extremal graph with `m >= C(r+1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Exclusion {
    /// `s <= (r + 2) / 2`.
    SmallCommonNeighborhood,
    /// `e(R) ∈ {1, 2}` and `r >= 3`.
    FewRedEdges,
    /// `e(R) = 3` and `r >= 7`.
    ThreeRedEdges,
    /// `e(R) = 4` and `r >= 8`.
    FourRedEdges,
    /// `Δ(R) <= 1`.
    RedMatching,
    /// `Δ(R) <= 2` and `t >= 2`.
    RedPathsAndCycles,
}

impl Exclusion {
    /// Stable citation identifier.
    pub fn citation(&self) -> &'static str {
        match self {
            Exclusion::SmallCommonNeighborhood => "half",
            Exclusion::FewRedEdges => "thm:s=2",
            Exclusion::ThreeRedEdges => "thm:e=3",
            Exclusion::FourRedEdges => "thm:e=4",
            Exclusion::RedMatching => "lem:matching",
            Exclusion::RedPathsAndCycles => "lem:D2b",
        }
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.citation())
    }
}

/// Every exclusion whose hypothesis the cluster meets. Empty means no
/// verdict; a cluster spanning a whole `K_{r+1}` is never excluded.
pub fn excluded_red_predicate(cluster: &Cluster, r: usize) -> Vec<Exclusion> {
    let (s, t) = (cluster.s(), cluster.t());
    if s == 0 || t > r {
        return Vec::new();
    }
    let red_edges = cluster.red_edges();
    let red_max = cluster.red.max_degree();
    let mut out = Vec::new();
    if 2 * s <= r + 2 {
        out.push(Exclusion::SmallCommonNeighborhood);
    }
    if r >= 3 && (red_edges == 1 || red_edges == 2) {
        out.push(Exclusion::FewRedEdges);
    }
    if r >= 7 && red_edges == 3 {
        out.push(Exclusion::ThreeRedEdges);
    }
    if r >= 8 && red_edges == 4 {
        out.push(Exclusion::FourRedEdges);
    }
    if red_max <= 1 {
        out.push(Exclusion::RedMatching);
    }
    if red_max <= 2 && t >= 2 {
        out.push(Exclusion::RedPathsAndCycles);
    }
    out
}
