//! Seeded random instance generators for the cluster and compression suites.
//!
//! Uniform random graphs in `G(m, r)` almost never contain a cluster, so
//! clusters are planted: `K_{r+1}` on `T ∪ S` minus a red graph on `S` with
//! no isolated vertices, blue edges from `S` to an outside pool with
//! `d_B(v) <= d_R(v)`, and random edges inside the pool, all under `Δ <= r`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::{clusters, BipartiteSystem, Cluster};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub r: usize,
    pub cluster: Cluster,
}

#[derive(Debug, Clone)]
pub struct PlantedClusters {
    rng: ChaCha8Rng,
    min_r: usize,
    max_r: usize,
    foldable: bool,
}

impl PlantedClusters {
    /// Instances with `3 <= r <= 8` and `e(B) >= e(R)`.
    pub fn new(seed: u64) -> Self {
        PlantedClusters { rng: ChaCha8Rng::seed_from_u64(seed), min_r: 3, max_r: 8, foldable: true }
    }

    pub fn with_degree_range(mut self, min_r: usize, max_r: usize) -> Self {
        assert!(2 <= min_r && min_r <= max_r && max_r < 32);
        self.min_r = min_r;
        self.max_r = max_r;
        self
    }

    /// When false, blue degrees range over all of `0..=d_R(v)`, so
    /// `e(B) < e(R)` occurs too.
    pub fn foldable(mut self, foldable: bool) -> Self {
        self.foldable = foldable;
        self
    }

    fn plant(&mut self) -> PlantedInstance {
        let rng = &mut self.rng;
        let r = rng.gen_range(self.min_r..=self.max_r);
        let t = rng.gen_range(1..r);
        let s = r + 1 - t;
        let core = r + 1;

        let red = random_red_graph(rng, s);
        let mut edges = Vec::new();
        for v in 1..core {
            for u in 0..v {
                let red_pair = u >= t && red.has_edge(u - t, v - t);
                if !red_pair {
                    edges.push((u, v));
                }
            }
        }

        let blue_wanted: Vec<usize> = (0..s)
            .map(|i| {
                let d = red.degree(i);
                let lo = if self.foldable { d.div_ceil(2) } else { 0 };
                rng.gen_range(lo..=d)
            })
            .collect();
        let pool = rng.gen_range(blue_wanted.iter().copied().max().unwrap_or(0).max(1)..=r + 2);
        let mut degree = vec![0usize; core + pool];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut outside: Vec<usize> = (core..core + pool).collect();
        for (i, &want) in blue_wanted.iter().enumerate() {
            let u = t + i;
            outside.shuffle(rng);
            let targets: Vec<usize> = outside.iter().copied().filter(|&w| degree[w] < r).take(want).collect();
            for w in targets {
                edges.push((u, w));
                degree[u] += 1;
                degree[w] += 1;
            }
        }
        let density = rng.gen_range(0.0..0.9);
        for a in core..core + pool {
            for b in a + 1..core + pool {
                if degree[a] < r && degree[b] < r && rng.gen_bool(density) {
                    edges.push((a, b));
                    degree[a] += 1;
                    degree[b] += 1;
                }
            }
        }

        let graph = Graph::from_edges(core + pool, &edges).expect("planted edges are in range");
        let tight: Vec<usize> = (0..t).collect();
        let cluster = clusters(&graph, r)
            .expect("planted graph respects the degree cap")
            .into_iter()
            .find(|c| c.tight == tight)
            .expect("planted T is a closed-neighborhood class");
        PlantedInstance { graph, r, cluster }
    }
}

impl Iterator for PlantedClusters {
    type Item = PlantedInstance;

    fn next(&mut self) -> Option<PlantedInstance> {
        loop {
            let inst = self.plant();
            // the pool can run out of degree budget before every blue edge lands
            if !self.foldable || inst.cluster.blue_edges() >= inst.cluster.red_edges() {
                return Some(inst);
            }
        }
    }
}

/// Random graph on `s >= 2` vertices with minimum degree at least one.
fn random_red_graph(rng: &mut ChaCha8Rng, s: usize) -> Graph {
    let p = rng.gen_range(0.05..0.7);
    let mut edges = Vec::new();
    let mut degree = vec![0usize; s];
    for v in 1..s {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    for v in 0..s {
        if degree[v] == 0 {
            let mut u = rng.gen_range(0..s - 1);
            if u >= v {
                u += 1;
            }
            edges.push((u.min(v), u.max(v)));
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    Graph::from_edges(s, &edges).expect("in range")
}

/// A bipartite system with two chosen `Y` vertices whose neighborhoods are
/// incomparable.
#[derive(Debug, Clone)]
pub struct CompressionInstance {
    pub system: BipartiteSystem,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone)]
pub struct RandomBipartiteSystems {
    rng: ChaCha8Rng,
}

impl RandomBipartiteSystems {
    pub fn new(seed: u64) -> Self {
        RandomBipartiteSystems { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Iterator for RandomBipartiteSystems {
    type Item = CompressionInstance;

    fn next(&mut self) -> Option<CompressionInstance> {
        let rng = &mut self.rng;
        loop {
            let hn = rng.gen_range(2..=9);
            let h_density = rng.gen_range(0.0..1.0);
            let mut h_edges = Vec::new();
            for v in 1..hn {
                for u in 0..v {
                    if rng.gen_bool(h_density) {
                        h_edges.push((u, v));
                    }
                }
            }
            let h = Graph::from_edges(hn, &h_edges).expect("in range");
            let ys = rng.gen_range(2..=7);
            let b_density = rng.gen_range(0.1..0.9);
            let mut b_edges = Vec::new();
            for y in 0..ys {
                for x in 0..hn {
                    if rng.gen_bool(b_density) {
                        b_edges.push((x, y));
                    }
                }
            }
            let system = BipartiteSystem::new(h, ys, &b_edges).expect("in range");
            let pairs: Vec<(usize, usize)> = (0..ys)
                .flat_map(|x| (0..ys).map(move |y| (x, y)))
                .filter(|&(x, y)| x != y && system.incomparable(x, y))
                .collect();
            if let Some(&(x, y)) = pairs.choose(rng) {
                return Some(CompressionInstance { system, x, y });
            }
        }
    }
}
