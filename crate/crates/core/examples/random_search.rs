//! Seeded random search over connection sets, appending hits to a JSONL store.
//! Usage: `random_search [moduli] [target] [seed] [candidates]`.

use qutrit_mdc::distance::Budget;
use qutrit_mdc::graph::GroupShape;
use qutrit_mdc::search::{random_search, RandomOptions, ResultStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let moduli: Vec<usize> =
        args.first().map_or("3,5", String::as_str).split(',').map(str::parse).collect::<Result<_, _>>()?;
    let target: usize = args.get(1).map_or(Ok(6), |s| s.parse())?;
    let seed: u64 = args.get(2).map_or(Ok(1), |s| s.parse())?;
    let candidates: u64 = args.get(3).map_or(Ok(200), |s| s.parse())?;

    let shape = GroupShape::new(moduli)?;
    let path = std::env::temp_dir().join("qutrit-mdc-random.jsonl");
    let mut store = ResultStore::open(&path)?;
    let records = random_search(
        &shape,
        false,
        target,
        seed,
        &Budget::iterations(candidates),
        &mut store,
        &RandomOptions::default(),
    )?;
    for r in &records {
        println!("d={} |S|={} {}", r.d, r.spec.valency(), r.spec.to_json());
    }
    println!("{} of {candidates} candidates reached d >= {target}; appended to {}", records.len(), path.display());
    Ok(())
}
