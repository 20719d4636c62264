//! Local computation algorithms (LCAs) for low out-degree orientation of
//! sparse graphs and for coloring forests, run against a probe-counting graph
//! oracle with seeded shared randomness.
//!
//! ```
//! use lca_orient::{generators, harness, Algorithm, OrientParams};
//!
//! let g = generators::random_bounded_tree(1000, 3, 7).unwrap();
//! let mut params = OrientParams::new(g.n(), 2);
//! params.max_degree = Some(3);
//! let (_, report) = harness::run_orientation(&g, Algorithm::BoundedForest, &params, 7).unwrap();
//! assert!(report.orientation.unwrap().max_out_degree <= 2);
//! ```

pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lca;
pub mod oracle;
pub mod randomness;
pub mod report;
pub mod source;
mod unionfind;

pub use error::{Error, Result};
pub use graph::{
    is_forest, max_out_degree, DirectedEdge, EdgeKey, Graph, Orientation, OutDegreeSummary,
    VertexId,
};
pub use lca::{Algorithm, Colorer, OrientParams, Orienter, Scratch, VertexColor};
pub use oracle::{ProbeKind, ProbeRecord, ProbeSession, ProbeStats};
pub use randomness::{Context, RandomTape};
pub use source::{BuiltGraph, GraphSpec};
