//! Additive self-dual codes over GF(9) from multidimensional circulant graphs.
//!
//! The pipeline is spec -> graph -> code -> distance:
//!
//! ```
//! use qutrit_mdc::{code::{is_self_dual, AdditiveCode}, distance, graph};
//!
//! let spec = graph::MdcSpec::from_json(r#"{"N":[5],"S":[[1],[4],[2],[3]]}"#).unwrap();
//! let g = graph::build_graph(&spec).unwrap();
//! let code = AdditiveCode::from_graph(&g);
//! assert!(is_self_dual(&code).self_dual);
//! let d = distance::exact_min_weight(&code, &Default::default()).unwrap();
//! assert_eq!(d.value, 2);
//! ```

pub mod bitset;
pub mod cli;
pub mod code;
pub mod distance;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod packed;
pub mod search;
