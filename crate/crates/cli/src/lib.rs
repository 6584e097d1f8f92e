//! File formats, reports and the `lne` command line on top of `lne-core`.

pub mod cli;
pub mod dot;
pub mod graph_file;
pub mod report;

pub use dot::{export_dot, DotError, DotStage};
pub use graph_file::{load_graph, parse_graph, read_graph, GraphFile, LoadError};
pub use report::{build_report, input_hash, render_json, render_text};
