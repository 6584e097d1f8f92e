//! The on-disk graph format.
//!
//! ```json
//! {"version":1,
//!  "vertices":[{"id":"v1","genus":0,"self_intersection":-2}, ...],
//!  "edges":[["v1","v2"], ...]}
//! ```
//!
//! Edge ids are `e0, e1, …` in file order.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use lne_core::graph::{validate_graph, ValidationFailure, Vertex};
use lne_core::WeightedGraph;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub version: u32,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub genus: i64,
    pub self_intersection: i64,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed graph file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported graph file version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("invalid graph:{}", list(.0))]
    Invalid(Vec<ValidationFailure>),
}

fn list(failures: &[ValidationFailure]) -> String {
    failures.iter().map(|f| format!("\n  - {f}")).collect()
}

impl GraphFile {
    /// Serializes a graph; edge ids are not stored.
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphFile {
            version: FORMAT_VERSION,
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    genus: v.genus,
                    self_intersection: v.self_int,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| e.ends.map(|v| g.vertex_id(v).to_string()))
                .collect(),
        }
    }

    /// Assembles the graph, reporting duplicate ids, dangling endpoints,
    /// loops and sign violations together. Connectivity and definiteness are
    /// left to [`validate_graph`].
    pub fn to_graph(&self) -> Result<WeightedGraph, LoadError> {
        if self.version != FORMAT_VERSION {
            return Err(LoadError::Version(self.version));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex::new(v.id.clone(), v.genus, v.self_intersection))
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, [a, b])| (format!("e{i}"), a.clone(), b.clone()))
            .collect();
        let g = WeightedGraph::from_parts(vertices, edges).map_err(LoadError::Invalid)?;
        let local: Vec<_> = validate_graph(&g)
            .failures
            .into_iter()
            .filter(|f| {
                matches!(
                    f,
                    ValidationFailure::Empty
                        | ValidationFailure::LoopEdge { .. }
                        | ValidationFailure::NonNegativeSelfIntersection { .. }
                        | ValidationFailure::NegativeGenus { .. }
                )
            })
            .collect();
        if local.is_empty() {
            Ok(g)
        } else {
            Err(LoadError::Invalid(local))
        }
    }

    /// Compact JSON used for hashing.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("graph files always serialize")
    }
}

/// Parses a graph file without the global connectivity and definiteness
/// checks.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, LoadError> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_graph(&text)
}

/// Reads and fully validates a graph.
pub fn load_graph(path: &Path) -> Result<WeightedGraph, LoadError> {
    let g = read_graph(path)?;
    let report = validate_graph(&g);
    if report.is_ok() {
        Ok(g)
    } else {
        Err(LoadError::Invalid(report.failures))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_every_structural_problem() {
        let text = r#"{"version":1,
            "vertices":[{"id":"a","genus":0,"self_intersection":-2},
                        {"id":"a","genus":0,"self_intersection":1}],
            "edges":[["a","zz"]]}"#;
        match parse_graph(text) {
            Err(LoadError::Invalid(f)) => {
                let kinds: Vec<_> = f.iter().map(|x| x.kind()).collect();
                assert_eq!(kinds, ["duplicate-vertex", "unknown-endpoint"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn loop_edge_names_the_edge() {
        let text = r#"{"version":1,
            "vertices":[{"id":"a","genus":0,"self_intersection":-2},
                        {"id":"b","genus":0,"self_intersection":-2}],
            "edges":[["a","b"],["b","b"]]}"#;
        let err = parse_graph(text).unwrap_err();
        assert!(err.to_string().contains("edge `e1` is a loop at `b`"), "{err}");
    }

    #[test]
    fn unknown_fields_and_versions_are_rejected() {
        assert!(matches!(
            parse_graph(r#"{"version":1,"vertices":[],"edges":[],"extra":0}"#),
            Err(LoadError::Parse(_))
        ));
        assert!(matches!(
            parse_graph(r#"{"version":2,"vertices":[],"edges":[]}"#),
            Err(LoadError::Version(2))
        ));
    }

    #[test]
    fn positive_self_intersection_is_rejected() {
        let text = r#"{"version":1,"vertices":[{"id":"a","genus":0,"self_intersection":0}],"edges":[]}"#;
        let err = parse_graph(text).unwrap_err();
        assert!(err.to_string().contains("self-intersection 0"), "{err}");
    }
}
