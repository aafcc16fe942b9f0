//! Undirected simple graphs on dense vertex ids `0..n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{self, ParseError};

pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("{n} vertices exceed the limit of {max}")]
    TooManyVertices { n: usize, max: usize },
}

/// Largest supported vertex count. Adjacency is stored as a dense bit
/// matrix, so this caps its size at 32 MiB.
pub const MAX_VERTICES: usize = 1 << 14;

/// Normalizes an unordered pair so the smaller endpoint comes first.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph. Keeps a sorted edge list, sorted neighbor lists
/// and a bit matrix for constant-time adjacency queries.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<Vertex>>,
    words: usize,
    matrix: Vec<u64>,
}

impl Graph {
    /// Builds a graph, deduplicating edges and rejecting loops or endpoints
    /// outside `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push(edge(u, v));
        }
        Ok(Self::from_normalized(n, list))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_normalized(n, edges)
    }

    pub fn path(n: usize) -> Self {
        Self::from_normalized(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Self::from_normalized(n, edges)
    }

    /// `edges` must already satisfy `u < v < n`.
    pub(crate) fn from_normalized(n: usize, mut edges: Vec<Edge>) -> Self {
        assert!(n <= MAX_VERTICES, "{n} vertices exceed the limit of {MAX_VERTICES}");
        edges.sort_unstable();
        edges.dedup();
        let words = n.div_ceil(64);
        let mut matrix = vec![0u64; n * words];
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            matrix[u * words + v / 64] |= 1 << (v % 64);
            matrix[v * words + u / 64] |= 1 << (u % 64);
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            neighbors,
            words,
            matrix,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    /// Maximum degree; 0 for graphs without edges.
    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Graph on the same vertex set with exactly the missing pairs as edges.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.edges.len());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_normalized(self.n, edges)
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push(edge(i, j));
                }
            }
        }
        Graph::from_normalized(vertices.len(), edges)
    }

    /// Spanning subgraph keeping only `edges`, which must be edges of `self`
    /// or at least valid pairs on the same vertex set.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        Graph::new(self.n, edges)
    }

    /// Connected components of the subgraph induced by `subset` (or of the
    /// complement of that subgraph when `complemented`). Each component is
    /// sorted, and components are ordered by their smallest vertex provided
    /// `subset` is sorted.
    pub(crate) fn components_within(&self, subset: &[Vertex], complemented: bool) -> Vec<Vec<Vertex>> {
        components_by(subset, |u, v| self.has_edge(u, v) != complemented)
    }

    /// Cartesian product `self □ other`. Vertex `(g, h)` is flattened to
    /// `g * other.vertex_count() + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut edges = Vec::with_capacity(self.n * other.edges.len() + m * self.edges.len());
        for &(g1, g2) in &self.edges {
            for h in 0..m {
                edges.push((g1 * m + h, g2 * m + h));
            }
        }
        for g in 0..self.n {
            for &(h1, h2) in &other.edges {
                edges.push((g * m + h1, g * m + h2));
            }
        }
        Graph::from_normalized(self.n * m, edges)
    }

    /// The `d`-dimensional hypercube: vertices are `d`-bit words, adjacent
    /// when they differ in exactly one bit. Coordinate `c` is bit `c`.
    pub fn hypercube(d: u32) -> Graph {
        assert!(d <= MAX_VERTICES.trailing_zeros(), "hypercube dimension {d} too large");
        let n = 1usize << d;
        let mut edges = Vec::with_capacity(n * d as usize / 2);
        for v in 0..n {
            for c in 0..d {
                let w = v ^ (1 << c);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::from_normalized(n, edges)
    }

    /// All induced paths `a-b-c-d` (one orientation per path, `a < d`), in
    /// lexicographic order. Empty exactly when the graph is a cograph.
    pub fn induced_p4s(&self) -> Vec<P4Witness> {
        let mut out = Vec::new();
        for b in 0..self.n {
            for &c in &self.neighbors[b] {
                for &a in &self.neighbors[b] {
                    if a == c || self.has_edge(a, c) {
                        continue;
                    }
                    for &d in &self.neighbors[c] {
                        if d == b || d <= a || self.has_edge(b, d) || self.has_edge(a, d) {
                            continue;
                        }
                        out.push(P4Witness { a, b, c, d });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First induced P4 in lexicographic order, if any.
    pub fn find_induced_p4(&self) -> Option<P4Witness> {
        self.induced_p4s().into_iter().next()
    }

    /// Serializes in the edge-list text format: `n m` followed by one
    /// `u v` line per edge, edges sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn from_edge_list(input: &str) -> Result<Graph, ParseError> {
        let mut lines = text::content_lines(input);
        let (line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
        let [n, m] = text::exact_tokens::<2>(header, line, "header")?;
        let n = text::parse_count(n, line, "vertex count")?;
        let m = text::parse_count(m, line, "edge count")?;
        if n > MAX_VERTICES {
            return Err(ParseError::new(line, format!("{n} vertices exceed the limit of {MAX_VERTICES}")));
        }
        let mut edges = Vec::with_capacity(m.min(1 << 20));
        let mut last_line = line;
        for (line, body) in lines {
            last_line = line;
            if edges.len() == m {
                return Err(ParseError::new(line, format!("more than the declared {m} edges")));
            }
            let [u, v] = text::exact_tokens::<2>(body, line, "edge")?;
            let u = text::parse_count(u, line, "vertex")?;
            let v = text::parse_count(v, line, "vertex")?;
            if u == v {
                return Err(ParseError::new(line, format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(ParseError::new(line, format!("edge ({u}, {v}) outside 0..{n}")));
            }
            edges.push(edge(u, v));
        }
        if edges.len() != m {
            return Err(ParseError::new(
                last_line,
                format!("declared {m} edges, found {}", edges.len()),
            ));
        }
        Ok(Graph::from_normalized(n, edges))
    }
}

/// Connected components of the graph on `subset` whose adjacency is given by
/// `adjacent`. Components are sorted and, for a sorted `subset`, ordered by
/// their smallest vertex.
pub(crate) fn components_by(subset: &[Vertex], adjacent: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; subset.len()];
    let mut components = Vec::new();
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut component = vec![subset[start]];
        while let Some(i) = stack.pop() {
            let u = subset[i];
            for (j, &v) in subset.iter().enumerate() {
                if !seen[j] && adjacent(u, v) {
                    seen[j] = true;
                    stack.push(j);
                    component.push(v);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Four vertices inducing the path `a-b-c-d`: `ab`, `bc`, `cd` are edges
/// and `ac`, `bd`, `ad` are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct P4Witness {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
}

impl P4Witness {
    pub fn vertices(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Re-checks the edge/non-edge pattern against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.vertices();
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(b, d)
            && !g.has_edge(a, d)
    }

    pub(crate) fn relabel(&self, map: &[Vertex]) -> P4Witness {
        P4Witness {
            a: map[self.a],
            b: map[self.b],
            c: map[self.c],
            d: map[self.d],
        }
    }
}

impl fmt::Display for P4Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}-{}", self.a, self.b, self.c, self.d)
    }
}
