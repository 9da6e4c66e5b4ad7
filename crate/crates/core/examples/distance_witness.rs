//! Searches for minimum-weight codewords of a fixture code by random
//! information sets. Usage: `distance_witness [fixture] [seed] [seconds]`.

use std::env;

use qutrit_mdc::code::AdditiveCode;
use qutrit_mdc::distance::{upper_bound_search, Budget, UpperBoundOptions};
use qutrit_mdc::fixtures;
use qutrit_mdc::graph::build_graph;

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let name = args.first().map_or("q51", String::as_str);
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let seconds = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(120.0);
    let f = fixtures::by_name(name).expect("unknown fixture");
    let code = AdditiveCode::from_graph(&build_graph(&f.spec).expect("fixture builds"));
    let opts = UpperBoundOptions {
        workers: rayon::current_num_threads(),
        stop_at: Some(f.claimed.d),
        ..UpperBoundOptions::default()
    };
    let r = upper_bound_search(&code, seed, &Budget::seconds(seconds), &opts).expect("search");
    println!(
        "{}: weight {} (claimed d = {}) after {} codewords in {:.1}s",
        f.name,
        r.value,
        f.claimed.d,
        r.work,
        r.elapsed.as_secs_f64()
    );
    if let Some(w) = r.witness {
        let toks: Vec<String> = w.entries().iter().map(|x| x.to_string()).collect();
        println!("witness: {}", toks.join(""));
    }
}
