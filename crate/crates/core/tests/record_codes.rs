use qutrit_mdc::code::{f3_rank, is_self_dual, AdditiveCode};
use qutrit_mdc::distance::{
    min_weight_with_abort, upper_bound_search, Budget, Certified, ExactOptions, UpperBoundOptions,
};
use qutrit_mdc::fixtures;
use qutrit_mdc::graph::{
    build_graph, graph_stats, negation_automorphism_check, translation_automorphisms_check, GroupShape, MdcSpec,
};
use qutrit_mdc::search::{random_search, Clock, RandomOptions, ResultStore};

fn code_of(name: &str) -> AdditiveCode {
    AdditiveCode::from_graph(&build_graph(&fixtures::by_name(name).unwrap().spec).unwrap())
}

#[test]
fn g51_spec_is_valid() {
    let f = fixtures::by_name("q51").unwrap();
    assert!(f.spec.validate().is_ok());
    assert_eq!(f.spec.valency(), 36);
    assert_eq!(f.spec.shape().moduli(), &[3, 17]);
}

#[test]
fn fixture_valencies_are_connection_set_sizes() {
    let sizes: Vec<usize> = fixtures::all().iter().map(|f| f.spec.valency()).collect();
    assert_eq!(sizes, vec![36, 20, 27, 34, 36, 28, 38]);
}

#[test]
fn table_stats_of_g51_and_g57() {
    for (name, valency, clique) in [("q51", 36, 10), ("q57", 38, 9)] {
        let f = fixtures::by_name(name).unwrap();
        let s = graph_stats(&build_graph(&f.spec).unwrap(), &f.spec).unwrap();
        assert_eq!((s.valency, s.diameter, s.girth, s.clique), (valency, Some(2), 3, clique), "{name}");
    }
}

#[test]
fn bordered_q53_adds_a_universal_vertex() {
    let f = fixtures::by_name("q53").unwrap();
    let g = build_graph(&f.spec).unwrap();
    assert_eq!(g.order(), 53);
    assert_eq!(g.border_vertex(), Some(52));
    assert_eq!(g.degree(52), 52);
    let s = graph_stats(&g, &f.spec).unwrap();
    assert_eq!(s.border_degree, Some(52));
    assert_eq!(s.bordered_base_degree, Some(28));
    assert_eq!(s.base_clique, Some(7));
}

#[test]
fn g55_automorphisms() {
    let f = fixtures::by_name("q55").unwrap();
    let g = build_graph(&f.spec).unwrap();
    assert!(translation_automorphisms_check(&g, &f.spec).unwrap());
    assert!(negation_automorphism_check(&g, &f.spec).unwrap());
    assert_eq!(graph_stats(&g, &f.spec).unwrap().known_aut_order, 110);
}

#[test]
fn record_generators_have_full_rank() {
    assert_eq!(f3_rank(code_of("q51").generator()), 51);
    let r = is_self_dual(&code_of("q53"));
    assert!(r.self_dual);
    assert_eq!((r.n, r.rank), (53, 53));
}

#[test]
fn low_weight_witnesses() {
    for (name, d, seed) in [("q51", 16, 1), ("q56", 17, 2)] {
        let code = code_of(name);
        let opts = UpperBoundOptions { stop_at: Some(d), ..UpperBoundOptions::default() };
        let r = upper_bound_search(&code, seed, &Budget::seconds(600.0), &opts).unwrap();
        assert_eq!(r.value, d, "{name}");
        assert_eq!(r.certified, Certified::UpperBoundAtMost);
        let w = r.witness.unwrap();
        assert_eq!(w.weight(), d);
        assert!(code.is_orthogonal_to(&w));
    }
}

#[test]
fn best_three_by_four_completes_at_threshold_six() {
    let shape = GroupShape::new(vec![3, 4]).unwrap();
    let spec = best_set(&shape, 6);
    let code = AdditiveCode::from_graph(&build_graph(&spec).unwrap());
    let r = min_weight_with_abort(&code, 6, &ExactOptions::default()).unwrap();
    assert_eq!((r.value, r.certified), (6, Certified::ExactValue));
}

fn best_set(shape: &GroupShape, d: usize) -> MdcSpec {
    let mut store = ResultStore::in_memory();
    let opts = qutrit_mdc::search::ExhaustiveOptions { clock: Clock::Fixed("-".into()), ..Default::default() };
    let out = qutrit_mdc::search::exhaustive_search(shape, false, &mut store, &opts).unwrap();
    assert_eq!(out.best_d, d);
    out.best[0].spec.clone()
}

#[test]
fn published_q51_set_survives_random_screening() {
    let f = fixtures::by_name("q51").unwrap();
    let mut store = ResultStore::in_memory();
    let opts = RandomOptions {
        workers: 2,
        initial: vec![f.spec.clone()],
        clock: Clock::Fixed("-".into()),
        ..RandomOptions::default()
    };
    let records = random_search(f.spec.shape(), false, 16, 7, &Budget::iterations(4), &mut store, &opts).unwrap();
    let hit = records.iter().find(|r| r.spec == f.spec).expect("published set recorded");
    assert!(hit.d >= 16);
}
