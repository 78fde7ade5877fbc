//! File formats, reports and the command-line surface for `periodic-rigidity`.

pub mod cg;
pub mod command;
pub mod report;
pub mod svg;

pub use cg::{parse_colored_graph, serialize_colored_graph, ParseError, Parsed};
pub use command::{run_command, run_on_bytes, Command, Format, Output, Verb};
