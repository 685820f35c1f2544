//! Graphs, arrival-model streams and the pass/memory meters.

mod graph;
mod meter;
mod stream;

pub use graph::{all_vertex_covers, Graph, VertexCover};
pub use meter::{bit_words, Charge, MemoryMeter, PassMeter, BUDGET_ENV};
pub use stream::{make_stream, StreamEvent, StreamHandle, StreamModel};

use crate::error::Result;

/// Reads an instance file and returns its graph, cover and deletion budget.
pub fn load_graph(path: &std::path::Path) -> Result<(Graph, VertexCover, usize)> {
    let inst = crate::instances::read_instance(path)?;
    Ok((inst.graph, inst.cover, inst.ell))
}
