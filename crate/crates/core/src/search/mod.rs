//! Exhaustive isomorph-free search for `f_t(m, r)`.

pub mod canon;
mod checkpoint;
mod enumerate;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colex::{asymptotic_upper_bound, conjectured_extremal_graph, g_t, rainbow_segment_clique_count};
use crate::graph::Graph;
use crate::graph6;
use crate::report::{Case, Counterexample, VerificationReport};

pub use checkpoint::CHECKPOINT_SCHEMA;
use checkpoint::{Checkpoint, SubtreeRecord};
use enumerate::Limits;

/// Vertex limit of the canonical labeling.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub m: usize,
    pub r: usize,
    pub t: usize,
    pub connected_only: bool,
    pub clique_number_cap: Option<usize>,
    /// A graph with `m` edges and no isolated vertices has at most `2m`.
    pub vertex_cap: usize,
}

impl SearchSpec {
    pub fn new(m: usize, r: usize, t: usize) -> Self {
        SearchSpec { m, r, t, connected_only: false, clique_number_cap: None, vertex_cap: 2 * m }
    }

    pub fn connected_only(mut self, yes: bool) -> Self {
        self.connected_only = yes;
        self
    }

    pub fn clique_number_cap(mut self, omega: Option<usize>) -> Self {
        self.clique_number_cap = omega;
        self
    }

    pub fn vertex_cap(mut self, cap: usize) -> Self {
        self.vertex_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |reason: &str| Err(SearchError::InvalidSpec(reason.to_string()));
        if self.r == 0 {
            return bad("degree cap r must be at least 1");
        }
        if self.t < 2 {
            return bad("clique size t must be at least 2");
        }
        if self.vertex_cap > MAX_SEARCH_VERTICES {
            return Err(SearchError::TooManyVertices { cap: self.vertex_cap, limit: MAX_SEARCH_VERTICES });
        }
        if self.clique_number_cap == Some(0) {
            return bad("clique number cap must be at least 1");
        }
        Ok(())
    }

    fn limits(&self) -> Limits {
        Limits { r: self.r, vertex_cap: self.vertex_cap, omega_cap: self.clique_number_cap }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub m: usize,
    pub t: usize,
    pub f_value: u64,
    /// Canonical graph6 strings, sorted.
    pub extremal_graphs: Vec<String>,
    /// Classes with `m` edges that passed every filter.
    pub graphs_visited: u64,
    pub g_value: u64,
    pub matches_conjecture: bool,
}

impl SearchResult {
    /// Whether `g` (isolated vertices ignored) is among the extremal classes.
    pub fn contains(&self, g: &Graph) -> bool {
        self.extremal_graphs.binary_search(&canonical_graph6(g)).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProgress {
    pub completed_subtrees: usize,
    pub total_subtrees: usize,
    pub generated: u64,
    /// Best `k_t` at the target size among completed subtrees.
    pub partial_max: Option<u64>,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
    #[error("vertex cap {cap} exceeds the supported {limit}")]
    TooManyVertices { cap: usize, limit: usize },
    #[error(
        "budget exhausted after {} classes ({} of {} subtrees done); rerun with the same checkpoint to resume",
        .0.generated, .0.completed_subtrees, .0.total_subtrees
    )]
    BudgetExceeded(SearchProgress),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Maximum number of classes generated, over all sizes up to `m`.
    pub budget: Option<u64>,
    /// Line-delimited progress file; completed subtrees found there are
    /// not searched again.
    pub checkpoint: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Canonical graph6 of `g` without its isolated vertices.
pub fn canonical_graph6(g: &Graph) -> String {
    let g = g.without_isolated();
    assert!(g.order() <= MAX_SEARCH_VERTICES, "canonical labeling supports at most 64 vertices");
    let rows: Vec<u64> = (0..g.order()).map(|v| g.row_u64(v)).collect();
    graph6::encode(&Graph::from_rows_u64(&canon::canonical_form(&rows).key.0))
}

fn accepts(spec: &SearchSpec, rows: &[u64]) -> Option<Graph> {
    let g = Graph::from_rows_u64(rows);
    (!spec.connected_only || g.is_connected()).then_some(g)
}

/// Calls `visitor` once per isomorphism class with `spec.m` edges, maximum
/// degree at most `r`, no isolated vertices and the optional filters.
/// Returns the number of classes visited.
pub fn enumerate_graphs(spec: &SearchSpec, mut visitor: impl FnMut(&Graph)) -> Result<u64, SearchError> {
    spec.validate()?;
    let mut count = 0;
    enumerate::traverse(&spec.limits(), spec.m, &mut |m, rows| {
        if m == spec.m {
            if let Some(g) = accepts(spec, rows) {
                visitor(&g);
                count += 1;
            }
        }
        true
    });
    Ok(count)
}

/// As [`enumerate_graphs`], visiting every size from 0 to `spec.m`.
pub fn enumerate_all_sizes(spec: &SearchSpec, mut visitor: impl FnMut(usize, &Graph)) -> Result<u64, SearchError> {
    spec.validate()?;
    let mut count = 0;
    enumerate::traverse(&spec.limits(), spec.m, &mut |m, rows| {
        if let Some(g) = accepts(spec, rows) {
            visitor(m, &g);
            count += 1;
        }
        true
    });
    Ok(count)
}

/// Running maximum of `k_t` at one size, with every class attaining it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct LevelBest {
    pub visited: u64,
    pub max: u64,
    pub extremal: BTreeSet<String>,
}

impl LevelBest {
    fn offer(&mut self, value: u64, g: &Graph) {
        if self.visited == 0 || value > self.max {
            self.max = value;
            self.extremal.clear();
        }
        self.visited += 1;
        if value == self.max {
            self.extremal.insert(graph6::encode(g));
        }
    }

    fn merge(&mut self, other: &LevelBest) {
        if other.visited == 0 {
            return;
        }
        if self.visited == 0 || other.max > self.max {
            self.max = other.max;
            self.extremal.clear();
        }
        if other.max == self.max {
            self.extremal.extend(other.extremal.iter().cloned());
        }
        self.visited += other.visited;
    }
}

/// Per-size, per-`t` tallies for one subtree or the whole search.
type Table = Vec<Vec<LevelBest>>;

fn record(table: &mut Table, spec: &SearchSpec, ts: &[usize], m: usize, rows: &[u64]) {
    if let Some(g) = accepts(spec, rows) {
        for (slot, &t) in table[m].iter_mut().zip(ts) {
            slot.offer(g.count_cliques(t), &g);
        }
    }
}

fn split_level(max_m: usize) -> usize {
    max_m.saturating_sub(3).min(6)
}

/// Searches every size up to `spec.m` at once, for each clique size in `ts`.
fn explore(spec: &SearchSpec, ts: &[usize], opts: &SearchOptions) -> Result<Table, SearchError> {
    spec.validate()?;
    if ts.iter().any(|&t| t < 2) {
        return Err(SearchError::InvalidSpec("clique size t must be at least 2".into()));
    }
    let limits = spec.limits();
    let max_m = spec.m;
    let split = split_level(max_m);
    let generated = AtomicU64::new(0);
    let over_budget = AtomicBool::new(false);
    let budget = opts.budget.unwrap_or(u64::MAX);
    let count_one = || {
        let total = generated.fetch_add(1, Ordering::Relaxed) + 1;
        if total > budget {
            over_budget.store(true, Ordering::Relaxed);
        }
        !over_budget.load(Ordering::Relaxed)
    };

    let mut table: Table = vec![vec![LevelBest::default(); ts.len()]; max_m + 1];
    let mut frontier: Vec<Vec<u64>> = vec![Vec::new()];
    count_one();
    record(&mut table, spec, ts, 0, &[]);
    for level in 0..split {
        let mut next = Vec::new();
        for rows in &frontier {
            for child in enumerate::children(rows, &limits) {
                count_one();
                record(&mut table, spec, ts, level + 1, &child);
                next.push(child);
            }
        }
        frontier = next;
    }
    frontier.sort_unstable();
    if over_budget.load(Ordering::Relaxed) {
        return Err(SearchError::BudgetExceeded(SearchProgress {
            completed_subtrees: 0,
            total_subtrees: frontier.len(),
            generated: generated.load(Ordering::Relaxed),
            partial_max: None,
        }));
    }

    let mut checkpoint = match &opts.checkpoint {
        Some(path) => Some(Checkpoint::open(path, spec, ts, split)?),
        None => None,
    };
    let done: Vec<Option<SubtreeRecord>> =
        (0..frontier.len()).map(|i| checkpoint.as_mut().and_then(|c| c.take_completed(i))).collect();
    for rec in done.iter().flatten() {
        generated.fetch_add(rec.generated, Ordering::Relaxed);
    }

    let run_subtree = |i: usize| -> Result<Option<SubtreeRecord>, SearchError> {
        let mut local: Table = vec![vec![LevelBest::default(); ts.len()]; max_m + 1];
        let mut made = 0u64;
        let finished = enumerate::subtree(&frontier[i], split, &limits, max_m, &mut |m, rows| {
            if m == split {
                return true;
            }
            made += 1;
            if !count_one() {
                return false;
            }
            record(&mut local, spec, ts, m, rows);
            true
        });
        if !finished {
            return Ok(None);
        }
        let rec = SubtreeRecord::new(i, made, local[split + 1..].to_vec());
        if let Some(c) = &checkpoint {
            c.append(&rec)?;
        }
        Ok(Some(rec))
    };
    let pending: Vec<usize> = (0..frontier.len()).filter(|&i| done[i].is_none()).collect();
    let work = || pending.par_iter().map(|&i| run_subtree(i).map(|rec| (i, rec))).collect::<Result<Vec<_>, _>>();
    let fresh = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?
            .install(work)?,
        None => work()?,
    };

    let mut records: Vec<(usize, SubtreeRecord)> =
        done.into_iter().enumerate().filter_map(|(i, r)| r.map(|r| (i, r))).collect();
    let mut incomplete = 0;
    for (i, rec) in fresh {
        match rec {
            Some(rec) => records.push((i, rec)),
            None => incomplete += 1,
        }
    }
    records.sort_by_key(|(i, _)| *i);
    for (_, rec) in &records {
        for (offset, per_t) in rec.levels.iter().enumerate() {
            for (slot, best) in table[split + 1 + offset].iter_mut().zip(per_t) {
                slot.merge(best);
            }
        }
    }
    if incomplete > 0 {
        let target = &table[max_m][0];
        return Err(SearchError::BudgetExceeded(SearchProgress {
            completed_subtrees: records.len(),
            total_subtrees: frontier.len(),
            generated: generated.load(Ordering::Relaxed),
            partial_max: (target.visited > 0).then_some(target.max),
        }));
    }
    Ok(table)
}

fn to_result(spec: &SearchSpec, m: usize, t: usize, best: &LevelBest) -> Result<SearchResult, SearchError> {
    let g_value = g_t(m as u64, spec.r as u64, t as u64).map_err(|e| SearchError::InvalidSpec(e.to_string()))?;
    Ok(SearchResult {
        m,
        t,
        f_value: best.max,
        extremal_graphs: best.extremal.iter().cloned().collect(),
        graphs_visited: best.visited,
        g_value,
        matches_conjecture: best.max == g_value,
    })
}

/// `f_t(m, r)` with all extremal classes, using every available core.
pub fn compute_f(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    compute_f_with(spec, &SearchOptions::default())
}

pub fn compute_f_with(spec: &SearchSpec, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    let table = explore(spec, &[spec.t], opts)?;
    to_result(spec, spec.m, spec.t, &table[spec.m][0])
}

/// Results for every size `0..=spec.m` and every clique size in `ts`,
/// indexed `[m][i]`, from a single traversal.
pub fn compute_f_grid(
    spec: &SearchSpec,
    ts: &[usize],
    opts: &SearchOptions,
) -> Result<Vec<Vec<SearchResult>>, SearchError> {
    let table = explore(spec, ts, opts)?;
    table
        .iter()
        .enumerate()
        .map(|(m, per_t)| per_t.iter().zip(ts).map(|(best, &t)| to_result(spec, m, t, best)).collect())
        .collect()
}

/// Checks `f_t(m', r) <= m'·C(r+1, t)/C(r+1, 2)` for every `m' <= spec.m`.
pub fn verify_asymptotic_bound(spec: &SearchSpec) -> Result<VerificationReport, SearchError> {
    let (r, t) = (spec.r as u64, spec.t as u64);
    if t < 3 || t > r + 1 {
        return Err(SearchError::InvalidSpec("the asymptotic bound needs 3 <= t <= r + 1".into()));
    }
    let grid = compute_f_grid(spec, &[spec.t], &SearchOptions::default())?;
    let mut report =
        VerificationReport::new("asymptotic", &["asymp"]).param("m_max", spec.m).param("r", spec.r).param("t", spec.t);
    for (m, row) in grid.iter().enumerate().skip(1) {
        let res = &row[0];
        let bound = asymptotic_upper_bound(m as u64, r, t).map_err(|e| SearchError::InvalidSpec(e.to_string()))?;
        let holds = Ratio::from_integer(res.f_value) <= bound;
        let id = format!("m={m}");
        let case = if holds {
            Case::pass(id, 1)
        } else {
            let witness = res.extremal_graphs.first().cloned().unwrap_or_default();
            Case::fail(
                id,
                1,
                Counterexample::new("f exceeds the asymptotic bound")
                    .graph(witness)
                    .with("f", res.f_value)
                    .with("bound", bound.to_string()),
            )
        };
        report.push(case.with("m", m).with("f", res.f_value).with("bound", bound.to_string()));
    }
    Ok(report)
}

/// Checks `k_t(G) <= k_t(R_ω(m'))` over every graph with `ω(G) <= ω` and
/// `m' <= spec.m` edges; `spec.r` still caps degrees.
pub fn verify_rainbow_corollary(spec: &SearchSpec) -> Result<VerificationReport, SearchError> {
    let omega = spec
        .clique_number_cap
        .ok_or_else(|| SearchError::InvalidSpec("the rainbow check needs a clique number cap".into()))?;
    if omega < 2 {
        return Err(SearchError::InvalidSpec("the rainbow check needs ω >= 2".into()));
    }
    let grid = compute_f_grid(spec, &[spec.t], &SearchOptions::default())?;
    let mut report = VerificationReport::new("rainbow", &["cor:rainbow"])
        .param("m_max", spec.m)
        .param("omega", omega)
        .param("r", spec.r)
        .param("t", spec.t);
    for (m, row) in grid.iter().enumerate().skip(1) {
        let res = &row[0];
        let rainbow = rainbow_segment_clique_count(omega as u64, m, spec.t)
            .map_err(|e| SearchError::InvalidSpec(e.to_string()))?;
        let id = format!("m={m}");
        let case = if res.f_value <= rainbow {
            Case::pass(id, res.graphs_visited)
        } else {
            Case::fail(
                id,
                res.graphs_visited,
                Counterexample::new("a graph beats the rainbow colex graph")
                    .graph(res.extremal_graphs[0].clone())
                    .with("k_t", res.f_value)
                    .with("rainbow", rainbow),
            )
        };
        report.push(case.with("m", m).with("max_k_t", res.f_value).with("rainbow_k_t", rainbow));
    }
    Ok(report)
}

/// Whether the conjectured graph `aK_{r+1} ∪ C(b)` is among the extremal classes.
pub fn conjectured_graph_is_extremal(result: &SearchResult, r: usize) -> bool {
    conjectured_extremal_graph(result.m as u64, r as u64).is_ok_and(|g| result.contains(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colex::colex_graph;

    #[test]
    fn spec_examples() {
        let k4 = canonical_graph6(&Graph::complete(4).unwrap());
        let res = compute_f(&SearchSpec::new(6, 3, 3)).unwrap();
        assert_eq!((res.f_value, res.g_value), (4, 4));
        assert_eq!(res.extremal_graphs, vec![k4]);
        assert!(res.matches_conjecture);

        let res = compute_f(&SearchSpec::new(7, 3, 3)).unwrap();
        assert_eq!((res.f_value, res.g_value), (4, 4));
        assert!(conjectured_graph_is_extremal(&res, 3));

        let res = compute_f(&SearchSpec::new(9, 4, 3)).unwrap();
        assert_eq!((res.f_value, res.g_value), (7, 7));
        assert!(conjectured_graph_is_extremal(&res, 4));

        let res = compute_f(&SearchSpec::new(10, 4, 4)).unwrap();
        assert_eq!(res.f_value, 5);
        assert_eq!(res.extremal_graphs, vec![canonical_graph6(&Graph::complete(5).unwrap())]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(&SearchSpec::new(1, 1, 2), |_| ()).unwrap(), 1);
        assert_eq!(enumerate_graphs(&SearchSpec::new(3, 2, 2), |_| ()).unwrap(), 4);
        assert_eq!(enumerate_graphs(&SearchSpec::new(3, 3, 2), |_| ()).unwrap(), 5);
        // r * vertex_cap / 2 < m: nothing to enumerate
        assert_eq!(enumerate_graphs(&SearchSpec::new(4, 1, 2).vertex_cap(6), |_| ()).unwrap(), 0);
        // connected graphs with 4 edges: C_4, P_5, K_{1,4}, paw, fork
        assert_eq!(enumerate_graphs(&SearchSpec::new(4, 4, 2).connected_only(true), |_| ()).unwrap(), 5);
    }

    #[test]
    fn visited_graphs_respect_the_spec() {
        let spec = SearchSpec::new(7, 3, 3).clique_number_cap(Some(3));
        enumerate_graphs(&spec, |g| {
            assert_eq!(g.size(), 7);
            assert!(g.max_degree() <= 3 && g.min_degree() >= 1 && g.clique_number() <= 3);
        })
        .unwrap();
    }

    #[test]
    fn grid_agrees_with_single_searches_and_is_monotone() {
        let spec = SearchSpec::new(8, 3, 3);
        let grid = compute_f_grid(&spec, &[3, 4], &SearchOptions::default()).unwrap();
        for m in 0..=8 {
            let single = compute_f(&SearchSpec::new(m, 3, 3)).unwrap();
            assert_eq!(grid[m][0].f_value, single.f_value, "m = {m}");
            assert_eq!(grid[m][0].extremal_graphs, single.extremal_graphs);
            if m > 0 {
                assert!(grid[m][0].f_value >= grid[m - 1][0].f_value);
                assert!(grid[m][1].f_value >= grid[m - 1][1].f_value);
            }
            for a in 1..m {
                assert!(grid[m][0].f_value >= grid[a][0].f_value + grid[m - a][0].f_value);
            }
            assert!(grid[m][0].f_value >= grid[m][0].g_value);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let spec = SearchSpec::new(9, 4, 3);
        let one = compute_f_with(&spec, &SearchOptions { threads: Some(1), ..Default::default() }).unwrap();
        let many = compute_f_with(&spec, &SearchOptions { threads: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn kruskal_katona_small() {
        for m in 1..=7usize {
            let res = compute_f(&SearchSpec::new(m, m, 3)).unwrap();
            assert_eq!(res.f_value, colex_graph(m).unwrap().count_cliques(3), "m = {m}");
        }
    }

    #[test]
    fn asymptotic_and_rainbow_reports() {
        let rep = verify_asymptotic_bound(&SearchSpec::new(7, 3, 3)).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.cases[5].values["bound"], "4");
        let rep = verify_rainbow_corollary(&SearchSpec::new(6, 6, 3).clique_number_cap(Some(3))).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.cases[2].values["max_k_t"], 1);
        let rep = verify_rainbow_corollary(&SearchSpec::new(5, 5, 3).clique_number_cap(Some(2))).unwrap();
        assert!(rep.passed && rep.cases.iter().all(|c| c.values["max_k_t"] == 0));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(compute_f(&SearchSpec::new(3, 0, 3)), Err(SearchError::InvalidSpec(_))));
        assert!(matches!(compute_f(&SearchSpec::new(3, 2, 1)), Err(SearchError::InvalidSpec(_))));
        assert!(matches!(compute_f(&SearchSpec::new(40, 3, 3)), Err(SearchError::TooManyVertices { .. })));
    }
}
