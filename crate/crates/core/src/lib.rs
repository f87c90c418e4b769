//! Extracting cycles of consecutive odd lengths from dense non-bipartite
//! 2-connected graphs.
//!
//! Given a graph with average degree at least `c·k` (here `c = 456`) and
//! girth `g`, [`extract_consecutive_odd`] returns `k^⌊(g-1)/2⌋` cycles whose
//! lengths are `l, l+2, l+4, …` for some odd `l`. Every cycle is re-verified
//! against the input before it is returned. The [`oracle`] module counts all
//! cycles exhaustively on small graphs and is what the tests trust.
//!
//! ```
//! use oddcycles::{extract_consecutive_odd, generators, ExtractionConfig};
//!
//! let g = generators::complete(7).unwrap();
//! let r = extract_consecutive_odd(&g, &ExtractionConfig::relaxed(2)).unwrap();
//! let lengths = r.lengths();
//! assert!(lengths.len() >= 2);
//! assert!(lengths.windows(2).all(|w| w[1] == w[0] + 2));
//! ```

pub mod decompose;
pub mod extractor;
mod flow;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod oracle;
pub mod path_lemma;

pub use extractor::{
    extract_consecutive_odd, verify_record, verify_result, CaseKind, ExtractError, ExtractionConfig,
    ExtractionResult, Mode, ResultRecord,
};
pub use graph::{emit_graph, parse_graph, Graph, GraphBuilder, ParseOptions, Vertex, VertexSet};
pub use oracle::Spectrum;
