//! Cographs, cotrees and symbolic ultrametrics, together with cograph edge
//! decompositions and the Monotone NAE 3-SAT gadget reduction.

pub mod cotree;
pub mod decomp;
pub mod gadgets;
pub mod graph;
pub mod symbolic;
pub mod text;
pub mod tree;

pub use cotree::{recognize, Cotree, CotreeOp, Recognition};
pub use graph::{Edge, Graph, GraphError, P4Witness, Vertex};
pub use text::ParseError;
pub use tree::{LabeledTree, TreeBuilder, TreeError};
pub use symbolic::{AxiomViolation, Symbol, SymbolicMap};
pub use decomp::{Decomposition, Mode};
pub use gadgets::{Assignment, GadgetError, GadgetGraph, NaeFormula};
