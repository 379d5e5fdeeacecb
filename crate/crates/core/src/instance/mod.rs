//! Instance ingestion: graphs for coverage, cut and influence problems and
//! packing-while-traveling instances.
//!
//! All file formats are 1-based unless stated otherwise; in memory every
//! node and city is 0-based. Parsed instances are immutable and can be
//! shared across concurrent runs.

mod directed;
mod error;
pub mod generate;
mod text;
mod ttp;
mod undirected;

pub use directed::{parse_snap_weighted, Arc, DirectedGraph, Indexing};
pub use error::{ParseError, ParseWarning};
pub use ttp::{parse_ttp, Item, TtpInstance};
pub use undirected::{parse_edge_list, parse_gset, Edge, UndirectedGraph};
