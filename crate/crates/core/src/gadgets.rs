//! Gadget graphs for the reduction from Monotone NAE 3-SAT to cograph
//! 2-partition, and certificate translation in both directions.
//!
//! Layout of a formula graph: variable `j` owns the literal graph on
//! vertices `9j..9j+8`; after all variables, clause `i` adds six vertices
//! `o1, o2, o3, a, b, c`. Occurrence vertex `op` hangs off vertex 6 of the
//! literal graph of the clause's `p`-th variable and attaches to the clause
//! triangle: `o1` to `a, c`, `o2` to `a, b`, `o3` to `c, b`.

use serde_json::{Map, Value};
use thiserror::Error;

use crate::decomp::{DecompFault, Decomposition, Mode};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::text::{content_lines, exact_tokens, parse_count, ParseError};

/// Edges of the literal graph: triangle `0 1 2`, spokes `03 14 15 26 27 08`
/// and the rim edges `34 56 78`.
pub const LITERAL_EDGES: [Edge; 12] = [
    (0, 1),
    (1, 2),
    (0, 2),
    (0, 3),
    (3, 4),
    (1, 4),
    (1, 5),
    (5, 6),
    (2, 6),
    (2, 7),
    (7, 8),
    (0, 8),
];

/// Literal-graph edges sharing a class with the triangle in every valid
/// 2-partition.
pub const TRIANGLE_SIDE: [Edge; 6] = [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6), (7, 8)];

/// Literal-graph edges in the class opposite the triangle.
pub const SPOKE_SIDE: [Edge; 6] = [(0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (0, 8)];

const LITERAL_SIZE: usize = 9;
const CLAUSE_SIZE: usize = 6;

/// Clause-triangle corners (offsets 3, 4, 5 = a, b, c) joined to each
/// occurrence vertex.
const ATTACHMENTS: [[usize; 2]; 3] = [[3, 5], [3, 4], [5, 4]];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("clause {clause}: {reason}")]
    BadClause { clause: usize, reason: String },
    #[error("assignment has {actual} values, formula has {expected} variables")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("clause {clause} is not satisfied in the not-all-equal sense")]
    NotNae { clause: usize },
    #[error("decomposition host is not the graph of this formula")]
    WrongHost,
    #[error("expected 2 classes, found {k}")]
    NotTwoClasses { k: usize },
    #[error("invalid decomposition: {0}")]
    Invalid(DecompFault),
    #[error("triangle of variable {variable} is not inside a single class")]
    TriangleSplit { variable: usize },
    #[error("constructed partition failed validation: {0}")]
    Construction(DecompFault),
}

/// A monotone formula: every clause is three distinct positive variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeFormula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl NaeFormula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, GadgetError> {
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(&v) = clause.iter().find(|&&v| v >= num_vars) {
                return Err(GadgetError::BadClause {
                    clause: i,
                    reason: format!("variable {v} out of range for {num_vars} variables"),
                });
            }
            if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
                return Err(GadgetError::BadClause {
                    clause: i,
                    reason: "variables must be distinct".into(),
                });
            }
        }
        Ok(NaeFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Text form: `v c`, then one line of three 0-based variable ids per
    /// clause.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.num_vars, self.clauses.len());
        for [x, y, z] in &self.clauses {
            out.push_str(&format!("{x} {y} {z}\n"));
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(input);
        let (line, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing `v c` header"))?;
        let [v, c] = exact_tokens::<2>(header, line, "header")?;
        let num_vars = parse_count(v, line, "variable count")?;
        let count = parse_count(c, line, "clause count")?;
        let mut clauses = Vec::new();
        let mut last_line = line;
        for (line, text) in lines {
            last_line = line;
            if clauses.len() == count {
                return Err(ParseError::new(line, format!("more than the declared {count} clauses")));
            }
            let tokens = exact_tokens::<3>(text, line, "clause")?;
            let mut clause = [0; 3];
            for (slot, token) in clause.iter_mut().zip(tokens) {
                *slot = parse_count(token, line, "variable id")?;
            }
            clauses.push(clause);
            NaeFormula::new(num_vars, vec![clause]).map_err(|e| match e {
                GadgetError::BadClause { reason, .. } => ParseError::new(line, reason),
                other => ParseError::new(line, other.to_string()),
            })?;
        }
        if clauses.len() != count {
            return Err(ParseError::new(
                last_line,
                format!("declared {count} clauses, found {}", clauses.len()),
            ));
        }
        Ok(NaeFormula { num_vars, clauses })
    }
}

/// Truth values, one per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn complement(&self) -> Assignment {
        Assignment::new(self.values.iter().map(|v| !v).collect())
    }
}

/// `true` iff every clause has a true and a false variable.
pub fn eval_nae(f: &NaeFormula, a: &Assignment) -> Result<bool, GadgetError> {
    Ok(first_nae_violation(f, a)?.is_none())
}

fn first_nae_violation(f: &NaeFormula, a: &Assignment) -> Result<Option<usize>, GadgetError> {
    if a.values.len() != f.num_vars {
        return Err(GadgetError::LengthMismatch {
            expected: f.num_vars,
            actual: a.values.len(),
        });
    }
    Ok(f.clauses.iter().position(|clause| {
        let trues = clause.iter().filter(|&&v| a.values[v]).count();
        trues == 0 || trues == 3
    }))
}

/// Every NAE-satisfying assignment, by brute force over `2^num_vars`
/// candidates in binary counting order (variable 0 is the lowest bit).
pub fn nae_assignments(f: &NaeFormula) -> Vec<Assignment> {
    assert!(f.num_vars < 32, "brute force is limited to fewer than 32 variables");
    (0u64..1 << f.num_vars)
        .map(|bits| Assignment::new((0..f.num_vars).map(|j| bits >> j & 1 == 1).collect()))
        .filter(|a| eval_nae(f, a).expect("lengths match"))
        .collect()
}

/// A gadget graph with a structural name for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    /// `roles[v]` names vertex `v`.
    pub roles: Vec<String>,
}

impl GadgetGraph {
    pub fn vertex(&self, role: &str) -> Option<Vertex> {
        self.roles.iter().position(|r| r == role)
    }

    /// Role map as a JSON object from names to vertex ids, in vertex order.
    pub fn roles_json(&self) -> Value {
        let map: Map<String, Value> = self
            .roles
            .iter()
            .enumerate()
            .map(|(v, name)| (name.clone(), Value::from(v)))
            .collect();
        Value::Object(map)
    }
}

/// The 9-vertex, 12-edge literal graph.
pub fn literal_graph() -> GadgetGraph {
    GadgetGraph {
        graph: Graph::new(LITERAL_SIZE, LITERAL_EDGES).expect("literal edges are in range"),
        roles: (0..LITERAL_SIZE).map(|v| v.to_string()).collect(),
    }
}

/// The literal graph with the pendant edge `6-9` and the edges `9-10`,
/// `9-11`.
pub fn extended_literal_graph() -> GadgetGraph {
    let edges = LITERAL_EDGES.into_iter().chain([(6, 9), (9, 10), (9, 11)]);
    GadgetGraph {
        graph: Graph::new(12, edges).expect("extended literal edges are in range"),
        roles: (0..12).map(|v| v.to_string()).collect(),
    }
}

/// Three literal graphs wired to one clause triangle: the graph of the
/// one-clause formula `(x0, x1, x2)`.
pub fn clause_gadget() -> GadgetGraph {
    let f = NaeFormula::new(3, vec![[0, 1, 2]]).expect("a fixed valid clause");
    build_formula_graph(&f)
}

pub fn literal_vertex(variable: usize, t: usize) -> Vertex {
    LITERAL_SIZE * variable + t
}

fn clause_base(f: &NaeFormula, clause: usize) -> Vertex {
    LITERAL_SIZE * f.num_vars + CLAUSE_SIZE * clause
}

/// Vertex `o_{p+1}` of clause `clause` (`p` in `0..3`).
pub fn occurrence_vertex(f: &NaeFormula, clause: usize, p: usize) -> Vertex {
    clause_base(f, clause) + p
}

/// Triangle corner `a`, `b` or `c` (`corner` = 0, 1, 2) of a clause.
pub fn clause_corner(f: &NaeFormula, clause: usize, corner: usize) -> Vertex {
    clause_base(f, clause) + 3 + corner
}

/// Roles: `x{j}.{t}` for literal vertex `t` of variable `j`, then per
/// clause `C{i}.9_{p}` (p = 1, 2, 3) and `C{i}.a`, `C{i}.b`, `C{i}.c`.
pub fn build_formula_graph(f: &NaeFormula) -> GadgetGraph {
    let n = LITERAL_SIZE * f.num_vars + CLAUSE_SIZE * f.clauses.len();
    let mut edges = Vec::with_capacity(12 * f.num_vars + 12 * f.clauses.len());
    let mut roles = Vec::with_capacity(n);
    for j in 0..f.num_vars {
        edges.extend(LITERAL_EDGES.iter().map(|&(u, v)| (literal_vertex(j, u), literal_vertex(j, v))));
        roles.extend((0..LITERAL_SIZE).map(|t| format!("x{j}.{t}")));
    }
    for (i, clause) in f.clauses.iter().enumerate() {
        let base = clause_base(f, i);
        for (p, &var) in clause.iter().enumerate() {
            edges.push((literal_vertex(var, 6), base + p));
            for corner in ATTACHMENTS[p] {
                edges.push((base + p, base + corner));
            }
            roles.push(format!("C{i}.9_{}", p + 1));
        }
        edges.extend([(base + 3, base + 4), (base + 4, base + 5), (base + 3, base + 5)]);
        roles.extend(["a", "b", "c"].map(|corner| format!("C{i}.{corner}")));
    }
    GadgetGraph {
        graph: Graph::new(n, edges).expect("gadget vertices are in range"),
        roles,
    }
}

/// The 2-partition of the formula graph encoding `a`. True variables put
/// their triangle in class 0, false ones in class 1.
pub fn partition_from_assignment(f: &NaeFormula, a: &Assignment) -> Result<Decomposition, GadgetError> {
    if let Some(clause) = first_nae_violation(f, a)? {
        return Err(GadgetError::NotNae { clause });
    }
    let side = |var: usize| usize::from(!a.values[var]);
    let mut classes = [Vec::new(), Vec::new()];
    for j in 0..f.num_vars {
        let x = side(j);
        for &(u, v) in &TRIANGLE_SIDE {
            classes[x].push((literal_vertex(j, u), literal_vertex(j, v)));
        }
        for &(u, v) in &SPOKE_SIDE {
            classes[1 - x].push((literal_vertex(j, u), literal_vertex(j, v)));
        }
    }
    for (i, clause) in f.clauses.iter().enumerate() {
        let base = clause_base(f, i);
        for (p, &var) in clause.iter().enumerate() {
            let x = side(var);
            classes[x].push((literal_vertex(var, 6), base + p));
            for corner in ATTACHMENTS[p] {
                classes[1 - x].push((base + p, base + corner));
            }
        }
        let sides = clause.map(side);
        let minority = (0..3)
            .find(|&p| sides[(p + 1) % 3] == sides[(p + 2) % 3])
            .expect("a not-all-equal clause has a minority literal");
        let x = sides[minority];
        let [s, t] = ATTACHMENTS[minority];
        for (u, v) in [(3, 4), (4, 5), (3, 5)] {
            let pair = edge(u, v) == edge(s, t);
            classes[if pair { 1 - x } else { x }].push((base + u, base + v));
        }
    }
    let d = Decomposition::new(build_formula_graph(f).graph, classes.into(), Mode::Partition);
    d.validate().map_err(GadgetError::Construction)?;
    Ok(d)
}

/// Reads the assignment off a valid 2-decomposition of the formula graph:
/// variable `j` is true iff its triangle lies in class 0.
pub fn assignment_from_partition(f: &NaeFormula, d: &Decomposition) -> Result<Assignment, GadgetError> {
    if d.host() != &build_formula_graph(f).graph {
        return Err(GadgetError::WrongHost);
    }
    if d.k() != 2 {
        return Err(GadgetError::NotTwoClasses { k: d.k() });
    }
    d.validate().map_err(GadgetError::Invalid)?;
    let membership = d.membership();
    let mut values = Vec::with_capacity(f.num_vars);
    for j in 0..f.num_vars {
        let sets: Vec<&Vec<usize>> = TRIANGLE_SIDE[..3]
            .iter()
            .map(|&(u, v)| {
                let id = d
                    .host()
                    .edge_index(literal_vertex(j, u), literal_vertex(j, v))
                    .expect("triangle edges are host edges");
                &membership[id]
            })
            .collect();
        if sets[0].len() != 1 || sets.iter().any(|s| *s != sets[0]) {
            return Err(GadgetError::TriangleSplit { variable: j });
        }
        values.push(sets[0][0] == 0);
    }
    let a = Assignment::new(values);
    if let Some(clause) = first_nae_violation(f, &a)? {
        return Err(GadgetError::NotNae { clause });
    }
    Ok(a)
}
