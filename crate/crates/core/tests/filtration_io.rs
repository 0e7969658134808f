use std::str::FromStr;

use bigdecimal::BigDecimal;
use dighom::edgelist::{parse_edge_list, write_digraph, write_weighted};
use dighom::engine::{EngineRegistry, HomologyParams};
use dighom::filtration::{betti_curve, magnitude_thresholds, subgraph_at_threshold};
use dighom::graph::random_digraph;
use dighom::{Error, FieldSpec, HomologySummary, MlpSpec, WeightedDigraph};
use proptest::prelude::*;

fn params(max_degree: usize) -> HomologyParams {
    HomologyParams { max_degree, reduced: true, field: FieldSpec::Rationals }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn arc_sets_shrink_with_threshold(n in 2usize..7, seed in any::<u64>()) {
        let wg = WeightedDigraph::with_random_weights(random_digraph(n, 0.4, seed), seed);
        let schedule = magnitude_thresholds(&wg);
        prop_assert!(schedule.values().windows(2).all(|w| w[0] < w[1]));
        let mut prev = wg.digraph().clone();
        for t in schedule.values() {
            let sub = subgraph_at_threshold(&wg, t);
            prop_assert!(sub.arcs().iter().all(|a| prev.has_arc(a.0, a.1)));
            prop_assert_eq!(sub.vertex_count(), n);
            prev = sub;
        }
    }

    #[test]
    fn arc_order_does_not_matter(n in 2usize..6, seed in any::<u64>()) {
        let wg = WeightedDigraph::with_random_weights(random_digraph(n, 0.5, seed), seed);
        let mut arcs: Vec<_> = wg
            .digraph()
            .arcs()
            .iter()
            .map(|&(u, v)| (u, v, wg.weight(u, v).unwrap().clone()))
            .collect();
        arcs.reverse();
        let shuffled = WeightedDigraph::new(n, &arcs).unwrap();
        let registry = EngineRegistry::default();
        for name in ["path", "dfc"] {
            let e = registry.get(name).unwrap();
            prop_assert_eq!(
                betti_curve(&wg, e, &params(2)).unwrap().to_csv(),
                betti_curve(&shuffled, e, &params(2)).unwrap().to_csv()
            );
        }
    }

    #[test]
    fn decimal_text_round_trip(mantissa in -10_000_000i64..10_000_000, scale in 0i64..8) {
        let w = BigDecimal::new(mantissa.into(), scale);
        let wg = WeightedDigraph::new(2, &[(0, 1, w.clone())]).unwrap();
        let parsed = parse_edge_list(&write_weighted(&wg)).unwrap();
        prop_assert_eq!(parsed.weighted().unwrap().weight(0, 1).unwrap(), &w);
    }
}

#[test]
fn first_row_is_the_whole_graph() {
    let spec = MlpSpec::new(vec![3, 3, 2]).unwrap();
    let wg = WeightedDigraph::with_random_weights(spec.digraph(), 7);
    let registry = EngineRegistry::default();
    let path = registry.get("path").unwrap();
    let curve = betti_curve(&wg, path, &params(2)).unwrap();
    assert_eq!(curve.rows[0].betti, vec![0, 0, 4]);
    assert_eq!(curve.len(), 3 * 3 + 3 * 2);
    let last = curve.rows.last().unwrap();
    assert_eq!(curve.normalized(last), 1.0);
    let arcless = spec.digraph().filter_arcs(|_, _, _| false);
    assert_eq!(path.compute(&arcless, &params(2)).unwrap().betti(), vec![7, 0, 0]);
}

#[test]
fn edge_list_round_trip() {
    let g = MlpSpec::new(vec![2, 3, 1]).unwrap().digraph();
    let text = write_digraph(&g);
    let parsed = parse_edge_list(&text).unwrap();
    assert_eq!(parsed.digraph(), &g);
    assert!(parsed.weighted().is_none());

    let wg = WeightedDigraph::with_random_weights(g, 3);
    let parsed = parse_edge_list(&write_weighted(&wg)).unwrap();
    assert_eq!(parsed.weighted().unwrap(), &wg);
}

#[test]
fn parse_errors_carry_lines() {
    let bad = "# header comes next\n3 2\n0 1\n1 x\n";
    assert!(matches!(parse_edge_list(bad), Err(Error::Parse { line: 4, .. })));
    let mixed = "3 2\n0 1 0.5\n1 2\n";
    assert!(matches!(parse_edge_list(mixed), Err(Error::Parse { line: 3, .. })));
    assert!(BigDecimal::from_str("1e-3").is_ok());
}

#[test]
fn summary_json_round_trip() {
    let g = MlpSpec::new(vec![2, 2, 2]).unwrap().digraph();
    for field in [FieldSpec::Rationals, FieldSpec::gf3()] {
        let s = dighom::path::path_betti(&g, 2, true, field);
        let json = serde_json::to_string(&s).unwrap();
        let back: HomologySummary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
    let spec: MlpSpec = serde_json::from_str("[4,10,3]").unwrap();
    assert_eq!(spec.arc_count(), 70);
    assert!(serde_json::from_str::<MlpSpec>("[4,0]").is_err());
}
