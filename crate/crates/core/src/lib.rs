//! Streaming kernels and FPT solvers for vertex deletion problems on graphs
//! with a known vertex cover, with pass and word meters on every run.

pub mod catalog;
pub mod enumeration;
pub mod error;
pub mod graphstream;
pub mod instances;
pub mod kernel_adjacency;
pub mod kernel_lowrank;
pub mod oracle_reference;
pub mod outcome;
pub mod properties;
pub mod solve_cvd;
pub mod solve_hfree;
pub mod solve_oct;
pub mod solve_oracle;

pub use error::{Error, Result};
pub use graphstream::{Graph, MemoryMeter, StreamEvent, StreamHandle, StreamModel, VertexCover};
pub use outcome::{SolveOutcome, Verdict};
