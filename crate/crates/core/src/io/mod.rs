//! Map files, the expression parser, corpus generation and benchmarks.

pub mod bench;
pub mod corpus;
pub mod format;
pub mod parse;

pub use bench::{render_csv, run_bench, BenchRow};
pub use corpus::{gen_triangular_corpus, CorpusMap, CorpusSpec};
pub use format::{emit_map, format_poly, parse_map_file, parse_map_str, DocumentError, Format, MapDocument};
pub use parse::{parse_poly, ParseError, ParseErrorKind};
