//! Validates the seven record fixtures and prints their graph statistics.

use qutrit_mdc::code::{is_self_dual, AdditiveCode};
use qutrit_mdc::fixtures;
use qutrit_mdc::graph::{build_graph, graph_stats};

fn main() {
    for f in fixtures::all() {
        let g = build_graph(&f.spec).expect("fixture builds");
        let report = is_self_dual(&AdditiveCode::from_graph(&g));
        let stats = graph_stats(&g, &f.spec).expect("stats");
        println!(
            "{}: n={} self_dual={} rank={} valency={} diameter={:?} girth={} clique={} base_clique={:?} aut={}",
            f.name,
            report.n,
            report.self_dual,
            report.rank,
            stats.valency,
            stats.diameter,
            stats.girth,
            stats.clique,
            stats.base_clique,
            stats.known_aut_order,
        );
    }
}
