//! Cograph decompositions of a graph's edge set.
//!
//! A decomposition is a family of edge classes whose union is the host edge
//! set and where every class, taken as a spanning subgraph, is a cograph. In
//! [`Mode::Partition`] the classes must also be pairwise disjoint.

mod coarsen;
mod coloring;
mod constraints;
mod exact;
mod layers;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cotree::{self, Recognition};
use crate::graph::{edge, Edge, Graph, P4Witness};

pub use coarsen::{coarseness_scan, coarsen, greedy_partition, is_coarsest, CoarsenessScan, MAX_SCAN_CLASSES};
pub use coloring::{misra_gries_coloring, vizing_partition};
pub use constraints::{p4_constraints, P4Constraint};
pub use exact::{
    enumerate_decompositions, exact_min_cover, exact_min_partition, solve, Enumeration, SolveOutcome, SolveReport,
    SolverOptions, MAX_CLASSES,
};
pub use layers::layers_partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Partition,
    Cover,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Partition => "partition",
            Mode::Cover => "cover",
        })
    }
}

/// Why a decomposition is not a valid cograph decomposition of its host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "fault", rename_all = "snake_case")]
pub enum DecompFault {
    #[error("class {class} contains {edge:?}, which is not a host edge")]
    ForeignEdge { class: usize, edge: Edge },
    #[error("host edge {edge:?} is in no class")]
    Uncovered { edge: Edge },
    #[error("edge {edge:?} is in classes {classes:?} of a partition")]
    Overlap { edge: Edge, classes: [usize; 2] },
    #[error("class {class} contains the induced P4 {witness}")]
    NotCograph { class: usize, witness: P4Witness },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] DecompFault),
    #[error("{k} classes exceed the limit of {max} for this operation")]
    TooManyClasses { k: usize, max: usize },
    #[error("malformed decomposition JSON: {0}")]
    Json(String),
    #[error("declared k = {declared} but {actual} classes are listed")]
    ClassCount { declared: usize, actual: usize },
    #[error("fixed assignment for {edge:?}: {reason}")]
    BadFixedAssignment { edge: Edge, reason: String },
}

/// A family of edge classes over a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    host: Graph,
    classes: Vec<Vec<Edge>>,
    mode: Mode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionDoc {
    mode: Mode,
    k: usize,
    classes: Vec<Vec<[usize; 2]>>,
}

impl Decomposition {
    /// Stores the classes with every edge normalized and each class sorted
    /// and deduplicated. Nothing else is checked; see [`Decomposition::validate`].
    pub fn new(host: Graph, classes: Vec<Vec<Edge>>, mode: Mode) -> Self {
        let classes = classes
            .into_iter()
            .map(|class| {
                let mut class: Vec<Edge> = class.into_iter().map(|(u, v)| edge(u, v)).collect();
                class.sort_unstable();
                class.dedup();
                class
            })
            .collect();
        Decomposition { host, classes, mode }
    }

    /// Builds a decomposition from a per-edge class index (indexed like
    /// `host.edges()`), keeping exactly `k` classes.
    pub fn from_labels(host: Graph, labels: &[usize], k: usize) -> Self {
        let mut classes = vec![Vec::new(); k];
        for (&e, &c) in host.edges().iter().zip(labels) {
            classes[c].push(e);
        }
        Decomposition {
            host,
            classes,
            mode: Mode::Partition,
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn classes(&self) -> &[Vec<Edge>] {
        &self.classes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Same classes, reordered or relabeled by the caller.
    pub fn with_classes(&self, classes: Vec<Vec<Edge>>) -> Decomposition {
        Decomposition::new(self.host.clone(), classes, self.mode)
    }

    /// For every host edge, the indices of the classes containing it.
    pub fn membership(&self) -> Vec<Vec<usize>> {
        let mut member = vec![Vec::new(); self.host.edge_count()];
        for (c, class) in self.classes.iter().enumerate() {
            for &(u, v) in class {
                if let Some(i) = self.host.edge_index(u, v) {
                    member[i].push(c);
                }
            }
        }
        member
    }

    /// The spanning subgraph `(V, E_i)`.
    pub fn class_graph(&self, class: usize) -> Graph {
        union_graph(&self.host, self.classes[class].iter().copied())
    }

    /// Checks coverage, disjointness (partitions only) and that every class
    /// graph is a cograph.
    pub fn validate(&self) -> Result<(), DecompFault> {
        for (c, class) in self.classes.iter().enumerate() {
            if let Some(&e) = class.iter().find(|&&(u, v)| !self.host.has_edge(u, v)) {
                return Err(DecompFault::ForeignEdge { class: c, edge: e });
            }
        }
        let membership = self.membership();
        for (&e, member) in self.host.edges().iter().zip(&membership) {
            match member.as_slice() {
                [] => return Err(DecompFault::Uncovered { edge: e }),
                [a, b, ..] if self.mode == Mode::Partition => {
                    return Err(DecompFault::Overlap {
                        edge: e,
                        classes: [*a, *b],
                    })
                }
                _ => {}
            }
        }
        if self.host.vertex_count() == 0 {
            return Ok(());
        }
        for c in 0..self.classes.len() {
            if let Recognition::NotCograph(witness) = cotree::recognize(&self.class_graph(c)).expect("n > 0") {
                return Err(DecompFault::NotCograph { class: c, witness });
            }
        }
        Ok(())
    }

    /// `{"mode":"partition|cover","k":K,"classes":[[[u,v],...],...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = DecompositionDoc {
            mode: self.mode,
            k: self.classes.len(),
            classes: self
                .classes
                .iter()
                .map(|class| class.iter().map(|&(u, v)| [u, v]).collect())
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    /// Parses the JSON form against `host`. Class contents are not checked
    /// against the host here; call [`Decomposition::validate`].
    pub fn from_json(host: Graph, input: &str) -> Result<Decomposition, DecompError> {
        let value: serde_json::Value = serde_json::from_str(input).map_err(|e| DecompError::Json(e.to_string()))?;
        Self::from_json_value(host, value)
    }

    pub fn from_json_value(host: Graph, value: serde_json::Value) -> Result<Decomposition, DecompError> {
        let doc: DecompositionDoc = serde_json::from_value(value).map_err(|e| DecompError::Json(e.to_string()))?;
        if doc.k != doc.classes.len() {
            return Err(DecompError::ClassCount {
                declared: doc.k,
                actual: doc.classes.len(),
            });
        }
        let classes = doc
            .classes
            .into_iter()
            .map(|class| class.into_iter().map(|[u, v]| (u, v)).collect())
            .collect();
        Ok(Decomposition::new(host, classes, doc.mode))
    }
}

/// Spanning subgraph of `host` on the given edges. Foreign pairs are
/// ignored.
pub(crate) fn union_graph(host: &Graph, edges: impl IntoIterator<Item = Edge>) -> Graph {
    let edges = edges.into_iter().filter(|&(u, v)| host.has_edge(u, v)).collect();
    Graph::from_normalized(host.vertex_count(), edges)
}

/// Cograph test used for class unions; the graph on zero vertices counts.
pub(crate) fn is_cograph(g: &Graph) -> bool {
    cotree::is_cograph(g)
}
