//! Writes a fixture's generator matrix in the text format and parses it back.

use qutrit_mdc::code::{graph_code, GeneratorMatrix};
use qutrit_mdc::field::F3;
use qutrit_mdc::fixtures;
use qutrit_mdc::graph::build_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "q53".into());
    let f = fixtures::by_name(&name).ok_or("unknown fixture")?;
    let gen = graph_code(&build_graph(&f.spec)?, F3::ONE)?;
    let text = gen.to_matrix_file();
    let path = std::env::temp_dir().join(format!("{name}.gf9"));
    std::fs::write(&path, &text)?;
    let parsed = GeneratorMatrix::parse_matrix_file(&std::fs::read_to_string(&path)?)?;
    println!("{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));
    println!("...");
    println!("wrote {} ({} bytes); round trip equal: {}", path.display(), text.len(), parsed == gen);
    Ok(())
}
