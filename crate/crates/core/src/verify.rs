//! Named verification suites. Each returns a [`VerificationReport`]; random
//! suites are reproducible from their seed.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cluster::{blue_triangle_bound, blue_triangle_count, fold, q_value, ClusterError};
use crate::colex::{binomial, colex_clique_count, colex_graph, decompose, g_t, split_remainder, ColexError};
use crate::graph::Graph;
use crate::graph6;
use crate::instances::{PlantedClusters, RandomBipartiteSystems};
use crate::multiset::{
    doubled_gap, gap_terms_for, mk_closed_form_r8, mk_oracle, mk_oracle_restricted, seqopt_bound, MultisetError,
};
use crate::report::{Case, Counterexample, Tally, VerificationReport};
use crate::search::{
    compute_f_grid, conjectured_graph_is_extremal, enumerate_all_sizes, verify_rainbow_corollary, SearchError,
    SearchOptions, SearchSpec,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Colex(#[from] ColexError),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    BlueEdgeCap,
    Compression,
    FoldingGain,
    Half,
    MaxDegreeTwo,
    B1B2,
    Seqopt,
    R8Table,
    R8Identity,
    MainDesk,
    Formula,
    KruskalKatona,
    Rainbow,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::BlueEdgeCap,
        Suite::Compression,
        Suite::FoldingGain,
        Suite::Half,
        Suite::MaxDegreeTwo,
        Suite::B1B2,
        Suite::Seqopt,
        Suite::R8Table,
        Suite::R8Identity,
        Suite::MainDesk,
        Suite::Formula,
        Suite::KruskalKatona,
        Suite::Rainbow,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::BlueEdgeCap => "s-2",
            Suite::Compression => "compincr",
            Suite::FoldingGain => "QR",
            Suite::Half => "half",
            Suite::MaxDegreeTwo => "D2",
            Suite::B1B2 => "b1b2",
            Suite::Seqopt => "seqopt",
            Suite::R8Table => "r8-table",
            Suite::R8Identity => "r8-identity",
            Suite::MainDesk => "main-desk",
            Suite::Formula => "formula",
            Suite::KruskalKatona => "kk",
            Suite::Rainbow => "rainbow",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instance count for the random suites.
    pub instances: u64,
    pub budget: Option<u64>,
    /// Directory for per-grid-point search checkpoints.
    pub checkpoint_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, instances: 10_000, budget: None, checkpoint_dir: None, threads: None }
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    Ok(match suite {
        Suite::BlueEdgeCap => blue_edge_cap(config.seed, config.instances),
        Suite::Compression => compression(config.seed, config.instances),
        Suite::FoldingGain => folding_gain(config.seed, config.instances)?,
        Suite::Half => half(8)?,
        Suite::MaxDegreeTwo => max_degree_two(8)?,
        Suite::B1B2 => b1b2(8, &[3, 4])?,
        Suite::Seqopt => seqopt(7, 300)?,
        Suite::R8Table => r8_table()?,
        Suite::R8Identity => r8_identity(46, 200)?,
        Suite::MainDesk => main_desk(&MAIN_DESK_GRID, config)?,
        Suite::Formula => formula(300, 9)?,
        Suite::KruskalKatona => kruskal_katona(9, &[3, 4, 5], config)?,
        Suite::Rainbow => rainbow(&[2, 3, 4], 8, &[3, 4])?,
    })
}

fn planted_counterexample(note: &str, g: &Graph) -> Counterexample {
    Counterexample::new(note).graph(graph6::encode(g))
}

/// Every blue edge has weight at most `s - 2`, and blue triangles obey
/// the counting bound, on planted clusters.
pub fn blue_edge_cap(seed: u64, instances: u64) -> VerificationReport {
    let mut weights = Tally::new("blue-weight<=s-2");
    let mut triangles = Tally::new("blue-triangles<=bound");
    for inst in PlantedClusters::new(seed).take(instances as usize) {
        let cl = &inst.cluster;
        let s = cl.s();
        let worst = cl.blue.iter().map(|&(u, w)| inst.graph.pair_weight(u, w).expect("blue edges are in range")).max();
        weights.check(worst.is_none_or(|w| w + 2 <= s), || {
            planted_counterexample("blue edge heavier than s - 2", &inst.graph)
                .with("r", inst.r)
                .with("s", s)
                .with("weight", worst.unwrap_or(0))
        });
        let count = blue_triangle_count(&inst.graph, cl);
        let bound = blue_triangle_bound(&cl.red);
        triangles.check(count as i64 <= bound, || {
            planted_counterexample("more blue triangles than the bound", &inst.graph)
                .with("r", inst.r)
                .with("count", count)
                .with("bound", bound)
        });
    }
    let mut rep =
        VerificationReport::new("s-2", &["s-2", "cor:bluetriangles"]).param("seed", seed).param("instances", instances);
    rep.push(weights.finish());
    rep.push(triangles.finish());
    rep
}

/// Folding a cluster with `e(B) >= e(R)` gains at least `Q(R)` triangles.
pub fn folding_gain(seed: u64, instances: u64) -> Result<VerificationReport, VerifyError> {
    let mut tally = Tally::new("k3(G_T)-k3(G)>=Q(R)");
    let mut tight = 0u64;
    for inst in PlantedClusters::new(seed).take(instances as usize) {
        let folded = fold(&inst.graph, &inst.cluster)?;
        let gain = folded.count_cliques(3) as i64 - inst.graph.count_cliques(3) as i64;
        let q = q_value(&inst.cluster.red, inst.r);
        tight += u64::from(gain == q);
        tally.check(gain >= q, || {
            planted_counterexample("folding gained less than Q(R)", &inst.graph)
                .with("r", inst.r)
                .with("gain", gain)
                .with("Q", q)
        });
    }
    let mut rep = VerificationReport::new("QR", &["lem:QR"]).param("seed", seed).param("instances", instances);
    rep.push(tally.finish().with("tight", tight));
    Ok(rep)
}

/// Compressing `x` into `y` does not lower `ψ` and raises `d_2`.
pub fn compression(seed: u64, instances: u64) -> VerificationReport {
    let mut psi = Tally::new("psi-nondecreasing");
    let mut d2 = Tally::new("d2-increasing");
    for inst in RandomBipartiteSystems::new(seed).take(instances as usize) {
        let compressed = inst.system.compress(inst.x, inst.y).expect("generator picks valid pairs");
        let cx = || {
            Counterexample::new("compression broke monotonicity")
                .graph(graph6::encode(inst.system.h()))
                .with(
                    "y_neighborhoods",
                    format!("{:?}", (0..inst.system.y_count()).map(|y| inst.system.y_mask(y)).collect::<Vec<_>>()),
                )
                .with("x", inst.x)
                .with("y", inst.y)
        };
        psi.check(compressed.psi() >= inst.system.psi(), || {
            cx().with("psi_before", inst.system.psi()).with("psi_after", compressed.psi())
        });
        d2.check(compressed.d2() > inst.system.d2(), || {
            cx().with("d2_before", inst.system.d2()).with("d2_after", compressed.d2())
        });
    }
    let mut rep =
        VerificationReport::new("compincr", &["lem:compincr"]).param("seed", seed).param("instances", instances);
    rep.push(psi.finish());
    rep.push(d2.finish());
    rep
}

/// Every graph with minimum degree at least one on `2..=max_s` vertices.
fn red_graphs(max_s: usize) -> Result<Vec<Graph>, VerifyError> {
    let spec = SearchSpec::new(max_s * (max_s - 1) / 2, max_s.saturating_sub(1).max(1), 2).vertex_cap(max_s);
    let mut out = Vec::new();
    enumerate_all_sizes(&spec, |_, g| {
        if g.order() >= 2 {
            out.push(g.clone());
        }
    })?;
    Ok(out)
}

/// `Q(R) > 0` whenever `δ(R) >= 1` and `s <= (r + 2)/2`; `Q(E_s) = 0`.
pub fn half(max_s: usize) -> Result<VerificationReport, VerifyError> {
    let graphs = red_graphs(max_s)?;
    let mut rep = VerificationReport::new("half", &["lem:half", "half"]).param("max_s", max_s);
    for s in 2..=max_s {
        let mut tally = Tally::new(format!("s={s}"));
        // Q grows with r once e(R) > 0, so a few r past the threshold suffice
        for r in 2 * s - 2..=2 * s + 2 {
            for g in graphs.iter().filter(|g| g.order() == s) {
                let q = q_value(g, r);
                tally.check(q > 0, || planted_counterexample("Q(R) <= 0", g).with("r", r).with("Q", q));
            }
            let empty = Graph::empty(s)?;
            let q = q_value(&empty, r);
            tally.check(q == 0, || Counterexample::new("Q(E_s) != 0").with("s", s).with("r", r).with("Q", q));
        }
        rep.push(tally.finish());
    }
    Ok(rep)
}

/// For `Δ(R) <= 2`: `Q(R) >= 0`, with equality exactly when `t = 1` and `R`
/// is a disjoint union of cycles of length at least 4.
pub fn max_degree_two(max_s: usize) -> Result<VerificationReport, VerifyError> {
    let graphs: Vec<Graph> = red_graphs(max_s)?.into_iter().filter(|g| g.max_degree() <= 2).collect();
    let mut rep = VerificationReport::new("D2", &["lem:D2"]).param("max_s", max_s).param("t", "1..=4");
    let mut nonneg = Tally::new("Q>=0");
    let mut equality = Tally::new("Q=0<=>t=1,long-cycles");
    let mut equal_cases = 0u64;
    for g in &graphs {
        let s = g.order();
        let long_cycles = g.min_degree() == 2 && g.count_cliques(3) == 0;
        for t in 1..=4 {
            let r = s + t - 1;
            let q = q_value(g, r);
            nonneg.check(q >= 0, || planted_counterexample("Q(R) < 0", g).with("t", t).with("Q", q));
            let predicted = t == 1 && long_cycles;
            equal_cases += u64::from(q == 0);
            equality.check((q == 0) == predicted, || {
                planted_counterexample("equality case mismatch", g).with("t", t).with("Q", q)
            });
        }
    }
    rep.push(nonneg.finish().with("graphs", graphs.len()));
    rep.push(equality.finish().with("equalities", equal_cases));
    Ok(rep)
}

fn is_triangular(b: u64) -> bool {
    split_remainder(b).1 == 0
}

/// `k_t(C(b_1) ∪ C(b_2)) < g_t(b_1 + b_2, r)` for `1 <= b_2 <= b_1 < C(r+1, 2)`,
/// with equality in exactly the case `b_1` triangular, `b_2 = 1`.
pub fn b1b2(max_r: u64, ts: &[u64]) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("b1b2", &["lem:b1b2"]).param("max_r", max_r).param("t", format!("{ts:?}"));
    for &t in ts {
        for r in (t - 1).max(2)..=max_r {
            let top = binomial(r + 1, 2) - 1;
            let mut tally = Tally::new(format!("t={t},r={r}"));
            let mut non_special_equal = 0u64;
            for b1 in 1..=top {
                for b2 in 1..=b1 {
                    let (c1, d1) = split_remainder(b1);
                    let (c2, d2) = split_remainder(b2);
                    let lhs = colex_clique_count(c1, d1, t) + colex_clique_count(c2, d2, t);
                    let rhs = g_t(b1 + b2, r, t)?;
                    let special = b2 == 1 && is_triangular(b1);
                    let holds = if special { lhs == rhs } else { lhs < rhs };
                    non_special_equal += u64::from(!special && lhs == rhs);
                    tally.check(holds, || {
                        Counterexample::new(if special {
                            "special case is not an equality"
                        } else {
                            "inequality not strict"
                        })
                        .graph(graph6::encode(
                            &colex_graph(b1 as usize)
                                .and_then(|g| Ok(g.disjoint_union(&colex_graph(b2 as usize)?)?))
                                .expect("small"),
                        ))
                        .with("b1", b1)
                        .with("b2", b2)
                        .with("k_t", lhs)
                        .with("g_t", rhs)
                    });
                }
            }
            rep.push(tally.finish().with("non_special_equalities", non_special_equal));
        }
    }
    Ok(rep)
}

/// The `k = ⌈r/2⌉` chain: `3M_k <= (r-2)m`, an optimal multiset avoids
/// `[r-2]`, `(r-2)m < 3g_3` when `a >= 1`, and the gap decomposition.
pub fn seqopt(max_r: u64, max_m: u64) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("seqopt", &["thm:seqoptsoln", "lem:nod", "lem:1to7"])
        .param("max_r", max_r)
        .param("max_m", max_m);
    for r in 1..=max_r {
        let k = r.div_ceil(2);
        let start = binomial(r + 1, 2) + 1;
        let mut bound = Tally::new(format!("seqopt r={r}"));
        let mut nod = Tally::new(format!("nod r={r}"));
        let allowed: Vec<usize> = [r as usize - 1, r as usize].into_iter().filter(|&d| d >= 1).collect();
        for m in start..=max_m {
            let (value, witness) = mk_oracle(m, r as usize, k, false)?;
            let cap = seqopt_bound(m, r)?;
            bound.check(value <= cap, || {
                Counterexample::new("3M exceeds (r-2)m")
                    .with("m", m)
                    .with("3M", value)
                    .with("bound", cap)
                    .with("witness", witness.to_string())
            });
            let (restricted, _) = mk_oracle_restricted(m, r as usize, k, false, &allowed)?;
            nod.check(restricted == value, || {
                Counterexample::new("optimum needs a degree in [r-2]")
                    .with("m", m)
                    .with("3M", value)
                    .with("restricted", restricted)
            });
        }
        rep.push(bound.finish());
        rep.push(nod.finish());
        let mut strict = Tally::new(format!("1to7 r={r}"));
        for m in binomial(r + 1, 2)..=max_m {
            let g3 = g_t(m, r, 3)? as i64;
            let lhs = (r as i64 - 2) * m as i64;
            strict.check(lhs < 3 * g3, || {
                Counterexample::new("(r-2)m >= 3g_3").with("m", m).with("(r-2)m", lhs).with("3g3", 3 * g3)
            });
        }
        rep.push(strict.finish());
    }
    let mut identity = Tally::new("gap-identity");
    for r in 1..=max_r {
        for m in 0..=max_m {
            let direct = doubled_gap(m, r)?;
            let terms = gap_terms_for(m, r)?;
            identity.check(terms.doubled_total == direct, || {
                Counterexample::new("decomposition disagrees")
                    .with("m", m)
                    .with("r", r)
                    .with("direct", direct)
                    .with("terms", terms.doubled_total)
            });
        }
    }
    rep.push(identity.finish());
    Ok(rep)
}

/// Rows `(m, x, 3M*_5(m, 8), 3g_3(m, 8))` as tabulated in the source.
pub const R8_TABLE: [(u64, u64, i64, u64); 8] = [
    (47, 3, 279, 282),
    (48, 5, 283, 285),
    (49, 7, 287, 291),
    (50, 2, 298, 300),
    (52, 6, 306, 312),
    (53, 1, 317, 315),
    (54, 3, 321, 321),
    (55, 5, 325, 330),
];

/// Recomputes the table: `x` from the residue, `3M*` from the oracle,
/// `3g_3` from the formula; plus the conclusion `⌊3M*/3⌋ <= g_3` per row.
pub fn r8_table() -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("r8-table", &["lem:r=8"]);
    let mut conclusion = Tally::new("floor(M*)<=g3");
    for &(m, x_ref, mstar_ref, g3_ref) in &R8_TABLE {
        let (x, _) = mk_closed_form_r8(m)?;
        let (mstar, witness) = mk_oracle(m, 8, 5, true)?;
        let g3x3 = 3 * g_t(m, 8, 3)?;
        let id = format!("m={m}");
        let matches = (x, mstar, g3x3) == (x_ref, mstar_ref, g3_ref);
        let case = if matches {
            Case::pass(id, 1)
        } else {
            Case::fail(
                id,
                1,
                Counterexample::new("recomputed row differs from the table")
                    .with("x", x)
                    .with("3M*", mstar)
                    .with("3g3", g3x3)
                    .with("table_3M*", mstar_ref)
                    .with("table_3g3", g3_ref)
                    .with("witness", witness.to_string()),
            )
        };
        rep.push(case.with("m", m).with("x", x).with("3M*", mstar).with("3g3", g3x3));
        conclusion.check(mstar.div_euclid(3) <= g3x3 as i64 / 3, || {
            Counterexample::new("triangle bound exceeds g_3").with("m", m).with("3M*", mstar).with("3g3", g3x3)
        });
    }
    rep.push(conclusion.finish());
    Ok(rep)
}

/// The closed form `6m - x` against the oracle for `3M*_5(m, 8)`.
pub fn r8_identity(from: u64, to: u64) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("r8-identity", &["lem:r=8"]).param("from", from).param("to", to);
    let mut tally = Tally::new("closed-form=oracle");
    for m in from..=to {
        let (x, closed) = mk_closed_form_r8(m)?;
        let (oracle, witness) = mk_oracle(m, 8, 5, true)?;
        tally.check(closed == oracle, || {
            Counterexample::new("closed form differs from the oracle")
                .with("m", m)
                .with("x", x)
                .with("closed_form", closed)
                .with("oracle", oracle)
                .with("witness", witness.to_string())
        });
    }
    rep.push(tally.finish());
    Ok(rep)
}

/// `g_t(m, r)` against clique counting on `aK_{r+1} ∪ C(b)`.
pub fn formula(max_m: u64, max_r: u64) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("formula", &["conj:allt"]).param("max_m", max_m).param("max_r", max_r);
    for r in 1..=max_r {
        let mut tally = Tally::new(format!("r={r}"));
        for m in 0..=max_m {
            let dec = decompose(m, r)?;
            let g = dec.extremal_graph()?;
            for t in 2..=r + 1 {
                let direct = g.count_cliques(t as usize);
                let formula = g_t(m, r, t)?;
                tally.check(direct == formula, || {
                    Counterexample::new("formula differs from clique count")
                        .with("m", m)
                        .with("t", t)
                        .with("formula", formula)
                        .with("count", direct)
                });
            }
        }
        rep.push(tally.finish());
    }
    Ok(rep)
}

/// Grid points `(r, m_max)` searched by `main-desk`.
pub const MAIN_DESK_GRID: [(usize, usize); 8] = [(1, 10), (2, 10), (3, 10), (4, 10), (5, 9), (6, 9), (7, 9), (8, 9)];

fn options_for(config: &SuiteConfig, name: &str) -> SearchOptions {
    SearchOptions {
        budget: config.budget,
        checkpoint: config.checkpoint_dir.as_ref().map(|d| d.join(format!("{name}.jsonl"))),
        threads: config.threads,
    }
}

/// `f_3(m, r) = g_3(m, r)` over the grid, with the conjectured graph among
/// the extremal classes, plus monotonicity and superadditivity of `f_3`.
pub fn main_desk(grid: &[(usize, usize)], config: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("main-desk", &["sec:mainthm", "conj:allt", "Delta=r"])
        .param("grid", format!("{grid:?}"));
    let mut previous: Option<Vec<u64>> = None;
    let mut degree_monotone = Tally::new("f(m,r+1)>=f(m,r)");
    for &(r, max_m) in grid {
        let spec = SearchSpec::new(max_m, r, 3);
        let results = compute_f_grid(&spec, &[3], &options_for(config, &format!("main-desk-r{r}-m{max_m}")))?;
        let f: Vec<u64> = results.iter().map(|row| row[0].f_value).collect();
        let mut equal = Tally::new(format!("r={r} f3=g3"));
        let mut member = Tally::new(format!("r={r} conjectured-extremal"));
        let mut shape = Tally::new(format!("r={r} monotone+superadditive"));
        for row in &results {
            let res = &row[0];
            let witness = || res.extremal_graphs.first().cloned().unwrap_or_default();
            equal.check(res.matches_conjecture, || {
                Counterexample::new("f_3 differs from g_3")
                    .graph(witness())
                    .with("m", res.m)
                    .with("f", res.f_value)
                    .with("g", res.g_value)
            });
            member.check(conjectured_graph_is_extremal(res, r), || {
                Counterexample::new("conjectured graph not extremal").with("m", res.m).with("f", res.f_value)
            });
            let m = res.m;
            let ok = (m == 0 || f[m] >= f[m - 1]) && (1..m).all(|a| f[m] >= f[a] + f[m - a]);
            shape.check(ok, || {
                Counterexample::new("f_3 not monotone/superadditive").with("m", m).with("f", format!("{f:?}"))
            });
        }
        if let Some(prev) = &previous {
            for m in 0..prev.len().min(f.len()) {
                degree_monotone.check(f[m] >= prev[m], || {
                    Counterexample::new("f_3 decreased in r")
                        .with("m", m)
                        .with("r", r)
                        .with("f_r", f[m])
                        .with("f_r-1", prev[m])
                });
            }
        }
        previous = Some(f.clone());
        rep.push(equal.finish().with("f", format!("{f:?}")));
        rep.push(member.finish());
        rep.push(shape.finish());
    }
    rep.push(degree_monotone.finish());
    Ok(rep)
}

/// With no degree cap, the maximum of `k_t` over `m` edges is `k_t(C(m))`.
pub fn kruskal_katona(max_m: usize, ts: &[usize], config: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let spec = SearchSpec::new(max_m, max_m.max(1), 2);
    let results = compute_f_grid(&spec, ts, &options_for(config, &format!("kk-m{max_m}")))?;
    let mut rep = VerificationReport::new("kk", &["KK"]).param("max_m", max_m).param("t", format!("{ts:?}"));
    for (i, &t) in ts.iter().enumerate() {
        let mut tally = Tally::new(format!("t={t}"));
        for row in &results {
            let res = &row[i];
            let colex = colex_graph(res.m)?.count_cliques(t);
            tally.check(res.f_value == colex, || {
                Counterexample::new("search maximum differs from the colex graph")
                    .graph(res.extremal_graphs.first().cloned().unwrap_or_default())
                    .with("m", res.m)
                    .with("search", res.f_value)
                    .with("colex", colex)
            });
        }
        rep.push(tally.finish());
    }
    Ok(rep)
}

/// The rainbow bound for each `ω` and `t`, over every `m <= max_m`.
pub fn rainbow(omegas: &[usize], max_m: usize, ts: &[usize]) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new("rainbow", &["cor:rainbow", "thm:Froh"])
        .param("omega", format!("{omegas:?}"))
        .param("max_m", max_m)
        .param("t", format!("{ts:?}"));
    for &omega in omegas {
        for &t in ts {
            let spec = SearchSpec::new(max_m, max_m.max(1), t).clique_number_cap(Some(omega));
            let inner = verify_rainbow_corollary(&spec)?;
            let checked = inner.cases.iter().map(|c| c.checked).sum();
            let id = format!("omega={omega},t={t}");
            let maxima: Vec<String> =
                inner.cases.iter().map(|c| format!("{}/{}", c.values["max_k_t"], c.values["rainbow_k_t"])).collect();
            let case = match inner.failures().next() {
                None => Case::pass(id, checked),
                Some(bad) => {
                    Case::fail(id, checked, bad.counterexample.clone().expect("failures carry counterexamples"))
                }
            };
            rep.push(case.with("max/rainbow by m", maxima.join(" ")));
        }
    }
    Ok(rep)
}
