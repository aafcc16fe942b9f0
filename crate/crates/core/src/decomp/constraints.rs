use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

/// A length-3 path `a-b-c-d` of the host (not necessarily induced), with
/// the chords among `ac`, `bd`, `ad` that are host edges.
///
/// A class containing all three path edges but none of the listed chords
/// has the induced P4 `a-b-c-d`; conversely every induced P4 of a class
/// arises this way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4Constraint {
    pub path: [Vertex; 4],
    /// Edge ids (positions in `host.edges()`) of `ab`, `bc`, `cd`.
    pub path_edges: [usize; 3],
    /// Edge ids of the host-present chords, in the order `ac`, `bd`, `ad`.
    pub chord_edges: Vec<usize>,
}

impl P4Constraint {
    /// Whether a class with membership predicate `in_class` contains this
    /// path as an induced P4.
    pub fn violated_by(&self, in_class: impl Fn(usize) -> bool) -> bool {
        self.path_edges.iter().all(|&e| in_class(e)) && !self.chord_edges.iter().any(|&e| in_class(e))
    }
}

/// One constraint per length-3 path of `g`, each path listed once with
/// `a < d`, in lexicographic order of `(a, b, c, d)`.
pub fn p4_constraints(g: &Graph) -> Vec<P4Constraint> {
    let id = |u: Vertex, v: Vertex| g.edge_index(u, v).expect("path edges are host edges");
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d == b || d <= a {
                        continue;
                    }
                    let chord_edges = [(a, c), (b, d), (a, d)]
                        .into_iter()
                        .filter_map(|(u, v)| g.edge_index(u, v))
                        .collect();
                    out.push(P4Constraint {
                        path: [a, b, c, d],
                        path_edges: [id(a, b), id(b, c), id(c, d)],
                        chord_edges,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_has_one_chordless_constraint() {
        let cs = p4_constraints(&Graph::path(4));
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].path, [0, 1, 2, 3]);
        assert!(cs[0].chord_edges.is_empty());
    }

    #[test]
    fn c4_paths_each_have_the_closing_chord() {
        let g = Graph::cycle(4);
        let cs = p4_constraints(&g);
        assert_eq!(cs.len(), 4);
        for c in &cs {
            assert_eq!(c.chord_edges.len(), 1);
            let [a, _, _, d] = c.path;
            assert_eq!(c.chord_edges[0], g.edge_index(a, d).unwrap());
        }
    }

    #[test]
    fn triangle_has_none() {
        assert!(p4_constraints(&Graph::complete(3)).is_empty());
    }

    #[test]
    fn violation_matches_induced_p4_of_class() {
        // C4 split 3+1: the three-edge class is an induced P4.
        let g = Graph::cycle(4);
        let closing = g.edge_index(0, 3).unwrap();
        let cs = p4_constraints(&g);
        let violated: Vec<_> = cs.iter().filter(|c| c.violated_by(|e| e != closing)).collect();
        assert_eq!(violated.len(), 1);
        assert_eq!(violated[0].path, [0, 1, 2, 3]);
        assert!(cs.iter().all(|c| !c.violated_by(|_| true)));
    }
}
