//! Cograph recognition and cotrees.
//!
//! [`recognize`] splits the vertex set recursively: a disconnected graph
//! becomes a union node over its components, a graph with disconnected
//! complement becomes a join node over its co-components. A subgraph that
//! is both connected and co-connected (with at least two vertices) contains
//! an induced P4, which is then extracted from that subgraph alone.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, P4Witness, Vertex};
use crate::tree::{self, LabeledTree, NewickError, NodeId, TreeBuilder, TreeError};

/// Inner-node label of a cotree: `0` for disjoint union, `1` for join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CotreeOp {
    Union,
    Join,
}

impl CotreeOp {
    pub fn flipped(self) -> Self {
        match self {
            CotreeOp::Union => CotreeOp::Join,
            CotreeOp::Join => CotreeOp::Union,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            CotreeOp::Union => 0,
            CotreeOp::Join => 1,
        }
    }
}

impl fmt::Display for CotreeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

pub type Cotree = LabeledTree<CotreeOp>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CotreeError {
    #[error("cograph recognition needs at least one vertex")]
    EmptyGraph,
}

/// Outcome of [`recognize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Cograph(Cotree),
    NotCograph(P4Witness),
}

impl Recognition {
    pub fn cotree(self) -> Option<Cotree> {
        match self {
            Recognition::Cograph(t) => Some(t),
            Recognition::NotCograph(_) => None,
        }
    }

    pub fn is_cograph(&self) -> bool {
        matches!(self, Recognition::Cograph(_))
    }
}

enum Task {
    Split(Vec<Vertex>),
    Assemble(CotreeOp, usize),
}

/// Returns the canonical cotree of `g`, or an induced P4 if `g` is not a
/// cograph.
pub fn recognize(g: &Graph) -> Result<Recognition, CotreeError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(CotreeError::EmptyGraph);
    }
    let mut builder = TreeBuilder::new();
    let mut built: Vec<NodeId> = Vec::new();
    let mut tasks = vec![Task::Split((0..n).collect())];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Split(subset) if subset.len() == 1 => built.push(builder.leaf(subset[0])),
            Task::Split(subset) => {
                let (op, parts) = {
                    let components = g.components_within(&subset, false);
                    if components.len() > 1 {
                        (CotreeOp::Union, components)
                    } else {
                        let co_components = g.components_within(&subset, true);
                        if co_components.len() == 1 {
                            let witness = g
                                .induced_subgraph(&subset)
                                .find_induced_p4()
                                .expect("connected and co-connected graphs contain an induced P4");
                            return Ok(Recognition::NotCograph(witness.relabel(&subset)));
                        }
                        (CotreeOp::Join, co_components)
                    }
                };
                tasks.push(Task::Assemble(op, parts.len()));
                tasks.extend(parts.into_iter().rev().map(Task::Split));
            }
            Task::Assemble(op, count) => {
                let children = built.split_off(built.len() - count);
                built.push(builder.inner(op, children));
            }
        }
    }
    let root = built.pop().expect("one root remains");
    let tree = builder
        .build(root)
        .expect("components and co-components yield a canonical cotree");
    Ok(Recognition::Cograph(tree))
}

/// Cograph test that also accepts the graph on zero vertices.
pub fn is_cograph(g: &Graph) -> bool {
    g.vertex_count() == 0 || recognize(g).map(|r| r.is_cograph()).unwrap_or(true)
}

/// The graph whose edges are the leaf pairs with a join node as lowest
/// common ancestor.
pub fn cotree_to_graph(t: &Cotree) -> Graph {
    let mut edges = Vec::new();
    t.for_each_pair(|x, y, op| {
        if *op == CotreeOp::Join {
            edges.push((x, y));
        }
    });
    Graph::from_normalized(t.leaf_count(), edges)
}

/// `None` for `x == y`, otherwise the label of the lowest common ancestor.
pub fn lca_label(t: &Cotree, x: Vertex, y: Vertex) -> Result<Option<CotreeOp>, TreeError> {
    t.lca_label(x, y).map(Option::<&CotreeOp>::copied)
}

/// The cotree of the complement graph: every inner label flipped.
pub fn complement_cotree(t: &Cotree) -> Cotree {
    t.map_labels(|op| op.flipped())
        .expect("flipping both labels keeps the tree canonical")
}

/// Parses a cotree such as `((0,1)0,2)1;`.
pub fn parse_cotree(input: &str) -> Result<Cotree, NewickError> {
    tree::parse_newick(input, |label| match label {
        "0" => Some(CotreeOp::Union),
        "1" => Some(CotreeOp::Join),
        _ => None,
    })
}
