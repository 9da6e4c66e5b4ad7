//! Published connection sets of the seven record qutrit codes, with the
//! distances and graph statistics claimed for them.

use crate::graph::{GroupShape, MdcSpec};

/// Values claimed for a fixture's graph and code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claimed {
    pub length: usize,
    pub d: usize,
    /// `|S|` of the base graph.
    pub valency: usize,
    pub diameter: usize,
    pub girth: usize,
    pub clique: usize,
    pub aut_order: usize,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: MdcSpec,
    pub claimed: Claimed,
}

const SOURCES: [(&str, &str, Claimed); 7] = [
    ("q51", include_str!("../fixtures/q51.json"), claimed(51, 16, 36, 10, 102)),
    ("q52", include_str!("../fixtures/q52.json"), claimed(52, 16, 20, 5, 104)),
    ("q53", include_str!("../fixtures/q53.json"), claimed(53, 16, 27, 7, 104)),
    ("q54", include_str!("../fixtures/q54.json"), claimed(54, 17, 34, 8, 108)),
    ("q55", include_str!("../fixtures/q55.json"), claimed(55, 17, 36, 10, 110)),
    ("q56", include_str!("../fixtures/q56.json"), claimed(56, 17, 28, 5, 110)),
    ("q57", include_str!("../fixtures/q57.json"), claimed(57, 17, 38, 9, 114)),
];

const fn claimed(length: usize, d: usize, valency: usize, clique: usize, aut_order: usize) -> Claimed {
    Claimed { length, d, valency, diameter: 2, girth: 3, clique, aut_order }
}

fn load(name: &'static str, json: &str, claimed: Claimed) -> Fixture {
    let spec = MdcSpec::from_json(json).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    if let Err(e) = spec.validate() {
        panic!("fixture {name}: {e}");
    }
    assert_eq!(spec.valency(), claimed.valency, "fixture {name}: |S| disagrees with claimed valency");
    assert_eq!(spec.length(), claimed.length, "fixture {name}: length");
    Fixture { name, spec, claimed }
}

/// All seven fixtures, validated at load.
pub fn all() -> Vec<Fixture> {
    SOURCES.iter().map(|&(name, json, c)| load(name, json, c)).collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    let lower = name.to_ascii_lowercase();
    SOURCES.iter().find(|(n, _, _)| *n == lower).map(|&(n, json, c)| load(n, json, c))
}

/// The 3-cube as an MDC graph on `Z2 x Z4`.
pub fn cube() -> MdcSpec {
    MdcSpec::new(GroupShape::new(vec![2, 4]).expect("shape"), vec![vec![0, 1], vec![0, 3], vec![1, 0]], false)
}

/// One row of the small-length distance table: best distance over all
/// connection sets of a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub shape: Vec<usize>,
    pub d_max: usize,
}

const TABLE: &[(&[usize], usize)] = &[
    (&[1], 1),
    (&[2], 2),
    (&[3], 2),
    (&[4], 2),
    (&[2, 2], 2),
    (&[5], 3),
    (&[2, 3], 4),
    (&[7], 4),
    (&[8], 4),
    (&[4, 2], 4),
    (&[2, 2, 2], 4),
    (&[9], 4),
    (&[3, 3], 4),
    (&[2, 5], 5),
    (&[11], 5),
    (&[3, 4], 6),
    (&[6, 2], 4),
    (&[13], 6),
    (&[2, 7], 6),
    (&[3, 5], 6),
    (&[8, 2], 7),
    (&[16], 6),
    (&[4, 4], 6),
    (&[4, 2, 2], 4),
    (&[2, 2, 2, 2], 4),
    (&[17], 7),
    (&[2, 9], 8),
    (&[6, 3], 6),
    (&[19], 8),
    (&[4, 5], 8),
    (&[10, 2], 8),
];

/// Table rows up to length 20, in table order.
pub fn table_rows() -> Vec<TableRow> {
    TABLE.iter().map(|&(shape, d_max)| TableRow { n: shape.iter().product(), shape: shape.to_vec(), d_max }).collect()
}

/// The rows reproduced by default: lengths 1 through 10 and 12.
pub fn default_table_rows() -> Vec<TableRow> {
    table_rows().into_iter().filter(|r| r.n <= 10 || r.n == 12).filter(|r| r.n != 11).collect()
}
