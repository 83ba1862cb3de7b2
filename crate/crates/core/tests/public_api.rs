use extremal_core::cluster::{clusters, fold, q_value};
use extremal_core::colex::{asymptotic_upper_bound, colex_graph, rainbow_segment_clique_count, shadow_size};
use extremal_core::multiset::{mk_closed_form_r8, mk_oracle};
use extremal_core::report::VerificationReport;
use extremal_core::search::{canonical_graph6, compute_f, SearchSpec};
use extremal_core::verify::{run_suite, Suite, SuiteConfig};
use extremal_core::{decompose, g_t, graph6, Graph};

#[test]
fn decomposition_and_g3_for_the_m47_row() {
    let d = decompose(47, 8).unwrap();
    assert_eq!((d.a, d.b, d.c, d.d), (1, 11, 5, 1));
    assert_eq!(g_t(47, 8, 3).unwrap(), 94);
    assert_eq!(asymptotic_upper_bound(47, 8, 3).unwrap().to_string(), "329/3");
    assert_eq!(asymptotic_upper_bound(36, 8, 3).unwrap().to_string(), "84");
    assert!(asymptotic_upper_bound(36, 8, 2).is_err());
}

#[test]
fn extremal_graph_counts_agree_with_g_t() {
    for r in 1..=6u64 {
        for m in 0..60u64 {
            let g = decompose(m, r).unwrap().extremal_graph().unwrap();
            assert_eq!(g.size() as u64, m);
            for t in 2..=r + 1 {
                assert_eq!(g.count_cliques(t as usize), g_t(m, r, t).unwrap());
            }
        }
    }
}

#[test]
fn graph6_round_trip_and_canonical_invariance() {
    let c5 = colex_graph(5).unwrap();
    let text = graph6::encode(&c5);
    assert_eq!(graph6::decode(&text).unwrap(), c5);
    let relabeled = c5.relabeled(&[3, 1, 0, 2]).unwrap();
    assert_eq!(canonical_graph6(&c5), canonical_graph6(&relabeled));
    assert_eq!(graph6::encode(&Graph::complete(4).unwrap()), "C~");
}

#[test]
fn multiset_bounds_on_the_table_rows() {
    assert_eq!(mk_oracle(47, 8, 5, true).unwrap().0, 279);
    assert_eq!(mk_oracle(53, 8, 5, true).unwrap().0, 317);
    assert_eq!(mk_closed_form_r8(50).unwrap(), (2, 298));
    // the tabulated m = 49 row says 287; the oracle finds 290
    let (value, witness) = mk_oracle(49, 8, 5, true).unwrap();
    assert_eq!(value, 290);
    assert_eq!(witness.to_string(), "{8^1 7^12 6^1}");
}

#[test]
fn rainbow_and_shadow_examples() {
    assert_eq!(rainbow_segment_clique_count(3, 3, 3).unwrap(), 1);
    assert_eq!(rainbow_segment_clique_count(2, 1, 2).unwrap(), 1);
    assert_eq!(shadow_size(1, 3, 2).unwrap(), 3);
    assert_eq!(shadow_size(10, 3, 2).unwrap(), 10);
}

#[test]
fn folding_the_k4_minus_edge_gadget() {
    let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 5)]).unwrap();
    let cl = clusters(&g, 3).unwrap().into_iter().find(|c| c.tight == [0, 1]).unwrap();
    assert_eq!(cl.common, [2, 3]);
    let folded = fold(&g, &cl).unwrap();
    assert_eq!(folded.count_cliques(3) - g.count_cliques(3), 2);
    assert_eq!(q_value(&cl.red, 3), 2);
}

#[test]
fn small_search_examples() {
    assert_eq!(compute_f(&SearchSpec::new(6, 3, 3)).unwrap().f_value, 4);
    let result = compute_f(&SearchSpec::new(10, 4, 3)).unwrap();
    assert!(result.matches_conjecture);
    assert!(result.contains(&decompose(10, 4).unwrap().extremal_graph().unwrap()));
}

#[test]
fn suite_reports_round_trip_through_jsonl() {
    let config = SuiteConfig { instances: 300, ..SuiteConfig::default() };
    for suite in [Suite::Compression, Suite::R8Table, Suite::Formula] {
        let report = run_suite(suite, &config).unwrap();
        let line = report.to_jsonl();
        assert_eq!(VerificationReport::from_jsonl(&line).unwrap(), report);
        assert_eq!(run_suite(suite, &config).unwrap().to_jsonl(), line, "{} is not deterministic", suite.name());
    }
}
