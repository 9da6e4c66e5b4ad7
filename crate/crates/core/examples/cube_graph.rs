//! The 3-cube as a circulant graph on `Z2 x Z4`: adjacency, statistics and its code.

use qutrit_mdc::code::{is_self_dual, weight_enumerator, AdditiveCode, CodeParams, DEFAULT_ENUMERATOR_CAP};
use qutrit_mdc::distance::{exact_min_weight, ExactOptions};
use qutrit_mdc::fixtures;
use qutrit_mdc::graph::{build_graph, graph_stats, nested_block_predicate};

fn main() {
    let spec = fixtures::cube();
    println!("spec: {}", spec.to_json());
    let g = build_graph(&spec).expect("cube spec is valid");
    for row in g.adjacency_matrix() {
        println!("  {}", row.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "));
    }
    println!("nested block circulant: {}", nested_block_predicate(&g, spec.shape()).expect("orders agree"));
    let stats = graph_stats(&g, &spec).expect("orders agree");
    println!("{stats:?}");

    let code = AdditiveCode::from_graph(&g);
    let report = is_self_dual(&code);
    let d = exact_min_weight(&code, &ExactOptions::default()).expect("n = 8 is within the cap");
    let params = CodeParams::new(&report, Some(d.value));
    println!("{} / {}", params.additive_label(), params.qutrit.unwrap_or_default());
    let a = weight_enumerator(&code, DEFAULT_ENUMERATOR_CAP).expect("n = 8 is within the cap");
    println!("weight enumerator: {a:?}");
}
