//! Symbolic ultrametrics: symmetric maps from vertex pairs to a finite
//! alphabet that are realized as lowest-common-ancestor labels of a tree.
//!
//! Two independent checkers are provided. [`check_axioms`] enumerates
//! triples and quadruples directly; [`check_via_graphs`] looks at the
//! per-symbol graphs `G_m` and asks whether each is a cograph. They must
//! always agree.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cotree::{self, Recognition};
use crate::graph::{self, Graph, P4Witness, Vertex};
use crate::text::{self, ParseError};
use crate::tree::{self, LabeledTree, NewickError, NodeId, TreeBuilder};

/// Opaque symbol id; printed as `s<id>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol(pub u32);

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl Symbol {
    fn parse(token: &str) -> Option<Symbol> {
        let digits = token.strip_prefix('s')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().map(Symbol)
    }
}

/// Event-labeled tree representing a symbolic map.
pub type SymbolTree = LabeledTree<Symbol>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("table must be {n} x {n}")]
    Shape { n: usize },
    #[error("diagonal entry ({0}, {0}) must be empty")]
    DiagonalNotEmpty(Vertex),
    #[error("entry ({0}, {1}) is empty off the diagonal")]
    MissingSymbol(Vertex, Vertex),
    #[error("entries ({0}, {1}) and ({1}, {0}) differ")]
    Asymmetric(Vertex, Vertex),
    #[error("symbol {symbol} outside an alphabet of size {alphabet}")]
    UnknownSymbol { symbol: Symbol, alphabet: usize },
    #[error("map is not a symbolic ultrametric: {0}")]
    NotUltrametric(AxiomViolation),
    #[error("a representation needs at least one vertex")]
    NoVertices,
    #[error("exhaustive search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// A symmetric map on vertex pairs with an empty diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMap {
    n: usize,
    alphabet: usize,
    table: Vec<Option<Symbol>>,
}

impl SymbolicMap {
    /// Builds the map from `f(x, y)` evaluated on pairs `x < y`.
    pub fn from_fn(
        n: usize,
        alphabet: usize,
        mut f: impl FnMut(Vertex, Vertex) -> Symbol,
    ) -> Result<Self, SymbolicError> {
        let mut table = vec![None; n * n];
        for x in 0..n {
            for y in x + 1..n {
                let s = f(x, y);
                if s.0 as usize >= alphabet {
                    return Err(SymbolicError::UnknownSymbol { symbol: s, alphabet });
                }
                table[x * n + y] = Some(s);
                table[y * n + x] = Some(s);
            }
        }
        Ok(SymbolicMap { n, alphabet, table })
    }

    /// Builds the map from a full table, validating the empty diagonal,
    /// non-empty off-diagonal entries and symmetry.
    pub fn from_rows(alphabet: usize, rows: &[Vec<Option<Symbol>>]) -> Result<Self, SymbolicError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymbolicError::Shape { n });
        }
        for x in 0..n {
            if rows[x][x].is_some() {
                return Err(SymbolicError::DiagonalNotEmpty(x));
            }
            for y in 0..n {
                if x == y {
                    continue;
                }
                match rows[x][y] {
                    None => return Err(SymbolicError::MissingSymbol(x, y)),
                    Some(s) if s.0 as usize >= alphabet => {
                        return Err(SymbolicError::UnknownSymbol { symbol: s, alphabet })
                    }
                    Some(_) => {}
                }
                if rows[x][y] != rows[y][x] {
                    return Err(SymbolicError::Asymmetric(x.min(y), x.max(y)));
                }
            }
        }
        Ok(SymbolicMap {
            n,
            alphabet,
            table: rows.iter().flatten().copied().collect(),
        })
    }

    /// The map `(x, y) -> label of lca(x, y)` of a labeled tree.
    pub fn from_tree(tree: &SymbolTree, alphabet: usize) -> Result<Self, SymbolicError> {
        let n = tree.leaf_count();
        let mut table = vec![None; n * n];
        let mut bad = None;
        tree.for_each_pair(|x, y, &s| {
            if s.0 as usize >= alphabet {
                bad = Some(s);
            }
            table[x * n + y] = Some(s);
            table[y * n + x] = Some(s);
        });
        if let Some(symbol) = bad {
            return Err(SymbolicError::UnknownSymbol { symbol, alphabet });
        }
        Ok(SymbolicMap { n, alphabet, table })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// `None` exactly on the diagonal.
    #[inline]
    pub fn get(&self, x: Vertex, y: Vertex) -> Option<Symbol> {
        self.table[x * self.n + y]
    }

    #[inline]
    fn at(&self, x: Vertex, y: Vertex) -> Symbol {
        self.table[x * self.n + y].expect("off-diagonal entry")
    }

    /// Symbols that occur on at least one pair, ascending.
    pub fn used_symbols(&self) -> Vec<Symbol> {
        let mut used: Vec<Symbol> = self.table.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Text form: `n k`, then `n` rows of `n` tokens, `-` on the diagonal
    /// and `s<i>` elsewhere.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.alphabet);
        for x in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|y| self.get(x, y).map_or_else(|| "-".to_string(), |s| s.to_string()))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut lines = text::content_lines(input);
        let (line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing `n k` header"))?;
        let [n, k] = text::exact_tokens::<2>(header, line, "header")?;
        let n = text::parse_count(n, line, "vertex count")?;
        let alphabet = text::parse_count(k, line, "alphabet size")?;
        let mut rows: Vec<Vec<Option<Symbol>>> = Vec::with_capacity(n.min(1024));
        let mut last_line = line;
        for (line, body) in lines {
            last_line = line;
            if rows.len() == n {
                return Err(ParseError::new(line, format!("more than the declared {n} rows")));
            }
            let x = rows.len();
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() != n {
                return Err(ParseError::new(line, format!("expected {n} entries, found {}", tokens.len())));
            }
            let mut row = Vec::with_capacity(n);
            for (y, token) in tokens.into_iter().enumerate() {
                if token == "-" {
                    if x != y {
                        return Err(ParseError::new(line, format!("`-` is only allowed on the diagonal (column {y})")));
                    }
                    row.push(None);
                    continue;
                }
                if x == y {
                    return Err(ParseError::new(line, "diagonal entry must be `-`"));
                }
                let s = Symbol::parse(token)
                    .ok_or_else(|| ParseError::new(line, format!("invalid symbol `{token}`")))?;
                if s.0 as usize >= alphabet {
                    return Err(ParseError::new(line, format!("symbol {s} outside alphabet of size {alphabet}")));
                }
                row.push(Some(s));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(ParseError::new(last_line, format!("declared {n} rows, found {}", rows.len())));
        }
        // Symmetry is reported on the line of the later row.
        for x in 0..n {
            for y in 0..x {
                if rows[x][y] != rows[y][x] {
                    return Err(ParseError::new(
                        row_line(input, x),
                        format!("entries ({x}, {y}) and ({y}, {x}) differ"),
                    ));
                }
            }
        }
        SymbolicMap::from_rows(alphabet, &rows).map_err(|e| ParseError::new(last_line, e.to_string()))
    }
}

/// Line number of data row `row` (0-based) in a symbolic map text.
fn row_line(input: &str, row: usize) -> usize {
    text::content_lines(input).nth(row + 1).map_or(0, |(l, _)| l)
}

/// Why a map fails to be a symbolic ultrametric, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// Three vertices whose three pairs carry three different symbols.
    U2 { triple: [Vertex; 3] },
    /// `quadruple = [x, y, u, v]` with `δ(x,y) = δ(y,u) = δ(u,v)` different
    /// from `δ(y,v) = δ(x,v) = δ(x,u)`.
    U3 { quadruple: [Vertex; 4] },
    /// No symbol covers two of the three pairs of `triple`.
    U2Prime { triple: [Vertex; 3] },
    /// `G_symbol` contains the induced path `witness`.
    U3Prime { symbol: Symbol, witness: P4Witness },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::U2 { triple: [x, y, z] } => write!(f, "(U2) pairs of {{{x},{y},{z}}} carry three symbols"),
            AxiomViolation::U3 { quadruple: [x, y, u, v] } => {
                write!(f, "(U3) forbidden pattern on path {x}-{y}-{u}-{v}")
            }
            AxiomViolation::U2Prime { triple: [x, y, z] } => {
                write!(f, "(U2') no symbol covers two pairs of {{{x},{y},{z}}}")
            }
            AxiomViolation::U3Prime { symbol, witness } => {
                write!(f, "(U3') G_{symbol} contains induced P4 {witness}")
            }
        }
    }
}

impl AxiomViolation {
    /// Re-checks the witness against `d`.
    pub fn holds_in(&self, d: &SymbolicMap) -> bool {
        let in_range = |vs: &[Vertex]| vs.iter().all(|&v| v < d.n);
        match self {
            AxiomViolation::U2 { triple } | AxiomViolation::U2Prime { triple } => {
                in_range(triple) && three_symbols(d, triple[0], triple[1], triple[2])
            }
            AxiomViolation::U3 { quadruple } => in_range(quadruple) && u3_pattern(d, *quadruple),
            AxiomViolation::U3Prime { symbol, witness } => {
                in_range(&witness.vertices()) && witness.holds_in(&color_graph_unchecked(d, *symbol))
            }
        }
    }
}

fn three_symbols(d: &SymbolicMap, x: Vertex, y: Vertex, z: Vertex) -> bool {
    if x == y || x == z || y == z {
        return false;
    }
    let (a, b, c) = (d.at(x, y), d.at(x, z), d.at(y, z));
    a != b && a != c && b != c
}

fn u3_pattern(d: &SymbolicMap, [x, y, u, v]: [Vertex; 4]) -> bool {
    let distinct = x != y && x != u && x != v && y != u && y != v && u != v;
    if !distinct {
        return false;
    }
    let path = d.at(x, y);
    let other = d.at(y, v);
    path == d.at(y, u) && path == d.at(u, v) && path != other && other == d.at(x, v) && other == d.at(x, u)
}

/// Checks (U2) on every triple and (U3) on every quadruple, in
/// lexicographic order, and reports the first violation found.
pub fn check_axioms(d: &SymbolicMap) -> Result<(), AxiomViolation> {
    let n = d.n;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if three_symbols(d, x, y, z) {
                    return Err(AxiomViolation::U2 { triple: [x, y, z] });
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    if let Some(quadruple) = first_u3_orientation([a, b, c, e], d) {
                        return Err(AxiomViolation::U3 { quadruple });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Lexicographically first ordering `[x, y, u, v]` (with `x < v`) of a sorted
/// 4-set showing the (U3) pattern.
fn first_u3_orientation(set: [Vertex; 4], d: &SymbolicMap) -> Option<[Vertex; 4]> {
    const PERMS: [[usize; 4]; 12] = [
        [0, 1, 2, 3],
        [0, 1, 3, 2],
        [0, 2, 1, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [0, 3, 2, 1],
        [1, 0, 2, 3],
        [1, 0, 3, 2],
        [1, 2, 0, 3],
        [1, 3, 0, 2],
        [2, 0, 1, 3],
        [2, 1, 0, 3],
    ];
    PERMS
        .iter()
        .map(|p| [set[p[0]], set[p[1]], set[p[2]], set[p[3]]])
        .find(|&q| u3_pattern(d, q))
}

fn color_graph_unchecked(d: &SymbolicMap, m: Symbol) -> Graph {
    let mut edges = Vec::new();
    for x in 0..d.n {
        for y in x + 1..d.n {
            if d.at(x, y) == m {
                edges.push((x, y));
            }
        }
    }
    Graph::from_normalized(d.n, edges)
}

/// The graph `G_m` whose edges are the pairs mapped to `m`.
pub fn color_graph(d: &SymbolicMap, m: Symbol) -> Result<Graph, SymbolicError> {
    if m.0 as usize >= d.alphabet {
        return Err(SymbolicError::UnknownSymbol {
            symbol: m,
            alphabet: d.alphabet,
        });
    }
    Ok(color_graph_unchecked(d, m))
}

/// Checks (U2') on every triple, then that `G_m` is a cograph for every
/// symbol in use.
pub fn check_via_graphs(d: &SymbolicMap) -> Result<(), AxiomViolation> {
    let n = d.n;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                // Every pair carries one symbol, so two pairs share a symbol
                // unless all three differ.
                if three_symbols(d, x, y, z) {
                    return Err(AxiomViolation::U2Prime { triple: [x, y, z] });
                }
            }
        }
    }
    if n == 0 {
        return Ok(());
    }
    for m in d.used_symbols() {
        let g = color_graph_unchecked(d, m);
        if let Recognition::NotCograph(witness) = cotree::recognize(&g).expect("n > 0") {
            return Err(AxiomViolation::U3Prime { symbol: m, witness });
        }
    }
    Ok(())
}

enum Task {
    Split(Vec<Vertex>),
    Assemble(Symbol, usize),
}

/// Builds a tree whose lca labels reproduce `d` on every pair.
///
/// At each step the root symbol is the unique `m` for which the graph of
/// pairs *not* labeled `m` is disconnected; its components become the
/// children. Candidates are tried in ascending symbol order.
pub fn build_representation(d: &SymbolicMap) -> Result<SymbolTree, SymbolicError> {
    if d.n == 0 {
        return Err(SymbolicError::NoVertices);
    }
    check_axioms(d).map_err(SymbolicError::NotUltrametric)?;
    let mut builder = TreeBuilder::new();
    let mut built: Vec<NodeId> = Vec::new();
    let mut tasks = vec![Task::Split((0..d.n).collect())];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Split(subset) if subset.len() == 1 => built.push(builder.leaf(subset[0])),
            Task::Split(subset) => {
                let mut present: Vec<Symbol> = Vec::new();
                for (i, &x) in subset.iter().enumerate() {
                    for &y in &subset[i + 1..] {
                        present.push(d.at(x, y));
                    }
                }
                present.sort_unstable();
                present.dedup();
                let (symbol, parts) = present
                    .into_iter()
                    .find_map(|m| {
                        let parts = graph::components_by(&subset, |x, y| x != y && d.at(x, y) != m);
                        (parts.len() > 1).then_some((m, parts))
                    })
                    .expect("a symbolic ultrametric always has a splitting symbol");
                tasks.push(Task::Assemble(symbol, parts.len()));
                tasks.extend(parts.into_iter().rev().map(Task::Split));
            }
            Task::Assemble(symbol, count) => {
                let children = built.split_off(built.len() - count);
                built.push(builder.inner(symbol, children));
            }
        }
    }
    let root = built.pop().expect("one root remains");
    Ok(builder
        .build(root)
        .expect("components of the non-m graph give a canonical tree"))
}

/// Parses a symbol tree such as `((0,1)s1,2)s0;`.
pub fn parse_symbol_tree(input: &str) -> Result<SymbolTree, NewickError> {
    tree::parse_newick(input, Symbol::parse)
}

/// Symbol for non-adjacent pairs in [`delta_from_graph`].
pub const NON_EDGE: Symbol = Symbol(0);
/// Symbol for adjacent pairs in [`delta_from_graph`].
pub const EDGE: Symbol = Symbol(1);

/// Two-symbol map of a graph: [`EDGE`] on edges, [`NON_EDGE`] elsewhere.
pub fn delta_from_graph(g: &Graph) -> SymbolicMap {
    SymbolicMap::from_fn(g.vertex_count(), 2, |x, y| if g.has_edge(x, y) { EDGE } else { NON_EDGE })
        .expect("both symbols are in the alphabet")
}

/// Largest vertex count accepted by [`search_separating_delta`].
pub const SEPARATING_SEARCH_MAX_VERTICES: usize = 6;

/// Result of the exhaustive search for a separating symbolic ultrametric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingSearch {
    /// First separating ultrametric in enumeration order, if any.
    pub map: Option<SymbolicMap>,
    /// Set partitions of the pair set accounted for, counting those
    /// discarded before completion (mixed blocks or over the symbol cap).
    pub partitions_screened: u128,
    /// Complete non-mixing partitions within the cap that were axiom-checked.
    pub candidates_checked: u64,
}

/// Searches every set partition of the vertex pairs whose blocks never mix
/// edges with non-edges and which uses at most `max_symbols` blocks, for one
/// whose block map is a symbolic ultrametric. Blocks are numbered in order
/// of first appearance, so block ids serve directly as symbols.
pub fn search_separating_delta(g: &Graph, max_symbols: usize) -> Result<SeparatingSearch, SymbolicError> {
    let n = g.vertex_count();
    if n > SEPARATING_SEARCH_MAX_VERTICES {
        return Err(SymbolicError::TooLarge {
            n,
            max: SEPARATING_SEARCH_MAX_VERTICES,
        });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let kinds: Vec<bool> = pairs.iter().map(|&(x, y)| g.has_edge(x, y)).collect();
    // completions[r][b]: restricted growth strings of length r extending a
    // prefix that already uses b blocks.
    let len = pairs.len();
    let mut completions = vec![vec![0u128; len + 2]; len + 1];
    completions[0].fill(1);
    for r in 1..=len {
        for b in 0..=len {
            completions[r][b] = b as u128 * completions[r - 1][b] + completions[r - 1][b + 1];
        }
    }

    let mut search = PartitionSearch {
        n,
        pairs: &pairs,
        kinds: &kinds,
        max_symbols,
        completions: &completions,
        blocks: Vec::new(),
        block_kind: Vec::new(),
        screened: 0,
        checked: 0,
    };
    let map = search.run(0);
    Ok(SeparatingSearch {
        map,
        partitions_screened: search.screened,
        candidates_checked: search.checked,
    })
}

struct PartitionSearch<'a> {
    n: usize,
    pairs: &'a [(Vertex, Vertex)],
    kinds: &'a [bool],
    max_symbols: usize,
    completions: &'a [Vec<u128>],
    blocks: Vec<u32>,
    block_kind: Vec<bool>,
    screened: u128,
    checked: u64,
}

impl PartitionSearch<'_> {
    fn run(&mut self, i: usize) -> Option<SymbolicMap> {
        if i == self.pairs.len() {
            self.screened += 1;
            self.checked += 1;
            let mut table = vec![None; self.n * self.n];
            for (&(x, y), &b) in self.pairs.iter().zip(&self.blocks) {
                table[x * self.n + y] = Some(Symbol(b));
                table[y * self.n + x] = Some(Symbol(b));
            }
            let map = SymbolicMap {
                n: self.n,
                alphabet: self.block_kind.len(),
                table,
            };
            return check_axioms(&map).is_ok().then_some(map);
        }
        let remaining = self.pairs.len() - i - 1;
        let used = self.block_kind.len();
        for b in 0..used {
            if self.block_kind[b] != self.kinds[i] {
                self.screened += self.completions[remaining][used];
                continue;
            }
            self.blocks.push(b as u32);
            let found = self.run(i + 1);
            self.blocks.pop();
            if found.is_some() {
                return found;
            }
        }
        if used >= self.max_symbols {
            self.screened += self.completions[remaining][used + 1];
            return None;
        }
        self.blocks.push(used as u32);
        self.block_kind.push(self.kinds[i]);
        let found = self.run(i + 1);
        self.block_kind.pop();
        self.blocks.pop();
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// δ(x,y)=δ(y,u)=δ(u,v)=A and δ(y,v)=δ(x,v)=δ(x,u)=B on x,y,u,v = 0,1,2,3.
    fn u3_pattern_map() -> SymbolicMap {
        SymbolicMap::from_fn(4, 2, |x, y| if y == x + 1 { Symbol(0) } else { Symbol(1) }).unwrap()
    }

    #[test]
    fn constant_map_is_ultrametric() {
        let d = SymbolicMap::from_fn(5, 1, |_, _| Symbol(0)).unwrap();
        assert_eq!(check_axioms(&d), Ok(()));
        assert_eq!(check_via_graphs(&d), Ok(()));
        assert_eq!(color_graph(&d, Symbol(0)).unwrap(), Graph::complete(5));
        let star = build_representation(&d).unwrap();
        assert_eq!(star.to_string(), "(0,1,2,3,4)s0;");
    }

    #[test]
    fn unused_symbol_gives_edgeless_graph() {
        let d = SymbolicMap::from_fn(4, 2, |_, _| Symbol(0)).unwrap();
        assert_eq!(color_graph(&d, Symbol(1)).unwrap(), Graph::empty(4));
        assert!(matches!(color_graph(&d, Symbol(2)), Err(SymbolicError::UnknownSymbol { .. })));
    }

    #[test]
    fn u3_pattern_is_rejected_by_both_checkers() {
        let d = u3_pattern_map();
        let v = check_axioms(&d).unwrap_err();
        assert_eq!(v, AxiomViolation::U3 { quadruple: [0, 1, 2, 3] });
        assert!(v.holds_in(&d));
        let w = check_via_graphs(&d).unwrap_err();
        assert!(matches!(w, AxiomViolation::U3Prime { .. }));
        assert!(w.holds_in(&d));
        assert!(matches!(build_representation(&d), Err(SymbolicError::NotUltrametric(_))));
    }

    #[test]
    fn u2_violation() {
        let d = SymbolicMap::from_fn(3, 3, |x, y| Symbol((x + y - 1) as u32)).unwrap();
        assert_eq!(check_axioms(&d), Err(AxiomViolation::U2 { triple: [0, 1, 2] }));
        assert_eq!(check_via_graphs(&d), Err(AxiomViolation::U2Prime { triple: [0, 1, 2] }));
    }

    #[test]
    fn table_validation() {
        let s = |i| Some(Symbol(i));
        assert!(SymbolicMap::from_rows(2, &[vec![None, s(0)], vec![s(0), None]]).is_ok());
        assert_eq!(
            SymbolicMap::from_rows(2, &[vec![None, s(0)], vec![s(1), None]]),
            Err(SymbolicError::Asymmetric(0, 1))
        );
        assert_eq!(
            SymbolicMap::from_rows(2, &[vec![s(0), s(0)], vec![s(0), None]]),
            Err(SymbolicError::DiagonalNotEmpty(0))
        );
        assert_eq!(
            SymbolicMap::from_rows(2, &[vec![None, None], vec![None, None]]),
            Err(SymbolicError::MissingSymbol(0, 1))
        );
    }

    #[test]
    fn text_format() {
        let d = u3_pattern_map();
        let text = d.to_text();
        assert_eq!(text, "4 2\n- s0 s1 s1\ns0 - s0 s1\ns1 s0 - s0\ns1 s1 s0 -\n");
        assert_eq!(SymbolicMap::from_text(&text).unwrap(), d);
        let asym = "2 2\n- s0\ns1 -\n";
        assert_eq!(SymbolicMap::from_text(asym).unwrap_err().line, 3);
        let bad_diag = "2 1\ns0 s0\ns0 -\n";
        assert_eq!(SymbolicMap::from_text(bad_diag).unwrap_err().line, 2);
        assert!(SymbolicMap::from_text("2 1\n- s1\ns1 -\n").is_err());
        assert!(SymbolicMap::from_text("2 1\n- s0\n").is_err());
        assert!(SymbolicMap::from_text("2 1\n- x0\nx0 -\n").is_err());
    }

    #[test]
    fn delta_from_graph_matches_cograph_status() {
        assert_eq!(check_axioms(&delta_from_graph(&Graph::complete(3))), Ok(()));
        assert!(check_axioms(&delta_from_graph(&Graph::path(4))).is_err());
    }

    #[test]
    fn cograph_representation_is_its_cotree() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let cotree = cotree::recognize(&g).unwrap().cotree().unwrap();
        let rep = build_representation(&delta_from_graph(&g)).unwrap();
        let expected = cotree
            .map_labels(|op| if op.bit() == 1 { EDGE } else { NON_EDGE })
            .unwrap();
        assert_eq!(rep, expected);
    }

    #[test]
    fn separating_search_small_cases() {
        let p4 = search_separating_delta(&Graph::path(4), 6).unwrap();
        assert!(p4.map.is_none());
        assert_eq!(p4.partitions_screened, 203);
        // Bell(3) * Bell(3) non-mixing partitions of three edges and three non-edges.
        assert_eq!(p4.candidates_checked, 25);

        let c4 = search_separating_delta(&Graph::cycle(4), 6).unwrap();
        let map = c4.map.expect("C4 is a cograph");
        assert_eq!(check_axioms(&map), Ok(()));
        let c5 = search_separating_delta(&Graph::cycle(5), 10).unwrap();
        assert!(c5.map.is_none());
        assert!(matches!(
            search_separating_delta(&Graph::empty(7), 3),
            Err(SymbolicError::TooLarge { n: 7, max: 6 })
        ));
    }

    #[test]
    fn symbol_tree_text_round_trip() {
        let d = SymbolicMap::from_fn(4, 3, |x, y| if x / 2 == y / 2 { Symbol(2) } else { Symbol(0) }).unwrap();
        let t = build_representation(&d).unwrap();
        let text = t.to_string();
        assert_eq!(parse_symbol_tree(&text), Ok(t));
        assert!(parse_symbol_tree("(0,1)x;").is_err());
    }
}
