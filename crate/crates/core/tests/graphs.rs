use proptest::prelude::*;

use semifactor::graph::{
    connected_graphs, format_graph_sum, graph_factorizations, parse_graph_file, poly_to_graph, FactorLimits, Graph,
    GraphError, GraphSum, Product, VariableDictionary,
};
use semifactor::poly::SparsePoly;

fn graph_sum(max_vertices: usize, loops: bool) -> impl Strategy<Value = GraphSum> {
    let pool: Vec<Graph> = (1..=4).flat_map(|k| connected_graphs(k, loops).to_vec()).collect();
    prop::collection::vec((prop::sample::select(pool), 1usize..3), 1..4).prop_filter_map(
        "too many vertices",
        move |items| {
            let gs = GraphSum::from_components(items).unwrap();
            (gs.vertex_count() <= max_vertices).then_some(gs)
        },
    )
}

fn fold_product(parts: &[GraphSum], product: Product) -> GraphSum {
    let unit = GraphSum::from_components([(product.neutral(), 1)]).unwrap();
    parts.iter().fold(unit, |acc, s| acc.product(s, product).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn files_round_trip(gs in graph_sum(12, true)) {
        let text = format_graph_sum(&gs);
        let back = GraphSum::from_graph(&parse_graph_file(&text).unwrap()).unwrap();
        prop_assert_eq!(back, gs);
    }

    /// Evaluating small polynomials at `K_2` and factoring the result gives
    /// factorizations whose products rebuild the graph.
    #[test]
    fn graph_factorizations_rebuild_the_input(
        exps in prop::collection::vec(0u64..=4, 1..6),
        product in prop::sample::select(Product::ALL.to_vec()),
    ) {
        let mut v = exps.clone();
        v.push(0);
        let p = SparsePoly::univariate(v).normalize();
        let limits = FactorLimits::default();
        let x = match product {
            Product::Direct => Graph::complete(2).with_all_loops(),
            _ => Graph::complete(2),
        };
        let dict = VariableDictionary::from_graphs(product, &[x], &limits).unwrap();
        let gs = poly_to_graph(&p, &dict).unwrap();
        let (_, fs) = graph_factorizations(&gs, product, &limits).unwrap();
        prop_assert!(!fs.is_empty());
        for f in &fs {
            let mut parts = f.factors.clone();
            parts.push(f.content.clone());
            prop_assert_eq!(fold_product(&parts, product), gs.clone());
        }
    }
}

#[test]
fn bipartite_components_are_rejected_under_the_direct_product() {
    let gs = GraphSum::from_components([(Graph::cycle(4), 1), (Graph::complete(3), 1)]).unwrap();
    let err = graph_factorizations(&gs, Product::Direct, &FactorLimits::default()).unwrap_err();
    assert!(matches!(err, GraphError::Bipartite { .. }), "{err:?}");
}

#[test]
fn reflexive_components_are_ambiguous_under_the_cartesian_product() {
    let gs = GraphSum::from_components([(Graph::complete(2).with_all_loops(), 1)]).unwrap();
    for product in [Product::Cartesian, Product::Strong] {
        let err = graph_factorizations(&gs, product, &FactorLimits::default()).unwrap_err();
        assert!(matches!(err, GraphError::LoopAmbiguity { .. }), "{err:?}");
    }
}
