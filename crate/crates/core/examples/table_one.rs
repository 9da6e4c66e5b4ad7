//! Exhaustive search over connection sets for small group shapes, printing the
//! best distance found next to the tabulated one.

use std::time::Instant;

use qutrit_mdc::fixtures;
use qutrit_mdc::graph::GroupShape;
use qutrit_mdc::search::{exhaustive_search, ExhaustiveOptions, ResultStore};

fn main() {
    let all = std::env::args().any(|a| a == "--all");
    let rows = if all { fixtures::table_rows() } else { fixtures::default_table_rows() };
    for row in rows {
        let t = Instant::now();
        let shape = GroupShape::new(row.shape.clone()).expect("shape");
        let mut store = ResultStore::in_memory();
        let out = exhaustive_search(&shape, false, &mut store, &ExhaustiveOptions::default()).expect("search");
        let mark = if out.best_d == row.d_max { "ok" } else { "MISMATCH" };
        println!(
            "n={:<2} shape={:<10} d={} table={} evaluated={} {:.2}s {mark}",
            row.n,
            shape.to_string(),
            out.best_d,
            row.d_max,
            out.evaluated,
            t.elapsed().as_secs_f64()
        );
    }
}
