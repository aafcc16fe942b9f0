use crate::graph::{Graph, Vertex};

use super::{Decomposition, Mode};

/// Proper edge coloring with at most `Δ + 1` colors (Misra–Gries). Returns
/// one color per edge, indexed like `g.edges()`.
pub fn misra_gries_coloring(g: &Graph) -> Vec<usize> {
    let mut state = Coloring::new(g);
    for e in 0..g.edge_count() {
        state.color_edge(e);
    }
    state
        .color
        .into_iter()
        .map(|c| c.expect("every edge is colored"))
        .collect()
}

/// Cograph partition whose classes are the color classes of a proper edge
/// coloring. Each class is a matching, so at most `Δ + 1` classes arise.
/// Unused colors are dropped; a graph without edges yields one empty class.
pub fn vizing_partition(g: &Graph) -> Decomposition {
    let colors = misra_gries_coloring(g);
    let palette = colors.iter().max().map_or(0, |&c| c + 1);
    let mut classes = vec![Vec::new(); palette];
    for (&e, &c) in g.edges().iter().zip(&colors) {
        classes[c].push(e);
    }
    classes.retain(|c| !c.is_empty());
    if classes.is_empty() {
        classes.push(Vec::new());
    }
    Decomposition::new(g.clone(), classes, Mode::Partition)
}

struct Coloring<'a> {
    g: &'a Graph,
    palette: usize,
    color: Vec<Option<usize>>,
    /// `at[v * palette + c]` is the edge of color `c` at `v`, with its other
    /// endpoint.
    at: Vec<Option<(Vertex, usize)>>,
}

impl<'a> Coloring<'a> {
    fn new(g: &'a Graph) -> Self {
        let palette = g.max_degree() + 1;
        Coloring {
            g,
            palette,
            color: vec![None; g.edge_count()],
            at: vec![None; g.vertex_count() * palette],
        }
    }

    fn is_free(&self, v: Vertex, c: usize) -> bool {
        self.at[v * self.palette + c].is_none()
    }

    fn first_free(&self, v: Vertex) -> usize {
        (0..self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("a vertex of degree at most Δ misses one of Δ+1 colors")
    }

    fn edge_id(&self, u: Vertex, v: Vertex) -> usize {
        self.g.edge_index(u, v).expect("fan members are neighbors")
    }

    fn set(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.edges()[e];
        debug_assert!(self.is_free(u, c) && self.is_free(v, c));
        self.color[e] = Some(c);
        self.at[u * self.palette + c] = Some((v, e));
        self.at[v * self.palette + c] = Some((u, e));
    }

    fn unset(&mut self, e: usize) -> Option<usize> {
        let c = self.color[e].take()?;
        let (u, v) = self.g.edges()[e];
        self.at[u * self.palette + c] = None;
        self.at[v * self.palette + c] = None;
        Some(c)
    }

    fn color_edge(&mut self, e: usize) {
        let (x, first) = self.g.edges()[e];

        // Maximal fan at x: each next edge's color is free on the previous
        // fan vertex.
        let mut fan = vec![first];
        loop {
            let last = *fan.last().expect("fan is non-empty");
            let next = self.g.neighbors(x).iter().copied().find(|&w| {
                !fan.contains(&w)
                    && self.color[self.edge_id(x, w)].is_some_and(|c| self.is_free(last, c))
            });
            match next {
                Some(w) => fan.push(w),
                None => break,
            }
        }

        let c = self.first_free(x);
        let d = self.first_free(*fan.last().expect("fan is non-empty"));
        if c != d {
            self.invert_path(x, c, d);
        }

        // Shortest fan prefix ending in a vertex where d is free.
        let end = (0..fan.len())
            .find(|&i| self.is_free(fan[i], d) && self.is_fan(x, &fan[..=i]))
            .expect("Misra-Gries guarantees a rotatable fan prefix");

        let shifted: Vec<usize> = (0..end)
            .map(|j| self.color[self.edge_id(x, fan[j + 1])].expect("fan edges beyond the first are colored"))
            .collect();
        for &w in &fan[..=end] {
            let id = self.edge_id(x, w);
            self.unset(id);
        }
        for (j, &c) in shifted.iter().enumerate() {
            let id = self.edge_id(x, fan[j]);
            self.set(id, c);
        }
        let id = self.edge_id(x, fan[end]);
        self.set(id, d);
    }

    fn is_fan(&self, x: Vertex, fan: &[Vertex]) -> bool {
        fan.windows(2).all(|pair| {
            self.color[self.edge_id(x, pair[1])].is_some_and(|c| self.is_free(pair[0], c))
        })
    }

    /// Swaps colors `c` and `d` on the maximal c/d-alternating path starting
    /// at `x`, where `c` is free.
    fn invert_path(&mut self, x: Vertex, c: usize, d: usize) {
        let mut path = Vec::new();
        let (mut cur, mut want) = (x, d);
        while let Some((next, e)) = self.at[cur * self.palette + want] {
            path.push(e);
            cur = next;
            want = if want == d { c } else { d };
        }
        let old: Vec<usize> = path.iter().map(|&e| self.unset(e).expect("path edges are colored")).collect();
        for (&e, &col) in path.iter().zip(&old) {
            self.set(e, if col == c { d } else { c });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_proper(g: &Graph, colors: &[usize]) -> bool {
        let edges = g.edges();
        (0..edges.len()).all(|i| {
            (i + 1..edges.len()).all(|j| {
                let (a, b) = (edges[i], edges[j]);
                let incident = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
                !incident || colors[i] != colors[j]
            })
        })
    }

    #[test]
    fn k4_uses_at_most_four_matchings() {
        let g = Graph::complete(4);
        let colors = misra_gries_coloring(&g);
        assert!(is_proper(&g, &colors));
        let d = vizing_partition(&g);
        assert!(d.k() <= 4);
        assert_eq!(d.classes().iter().map(Vec::len).sum::<usize>(), 6);
        assert_eq!(d.validate(), Ok(()));
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let g = Graph::cycle(5);
        let d = vizing_partition(&g);
        assert_eq!(d.k(), 3);
        assert!(is_proper(&g, &misra_gries_coloring(&g)));
        // No proper 2-coloring exists: brute force over all 2^5 labelings.
        let two_colorable = (0u32..32).any(|mask| {
            let colors: Vec<usize> = (0..5).map(|i| (mask >> i) as usize & 1).collect();
            is_proper(&g, &colors)
        });
        assert!(!two_colorable);
    }

    #[test]
    fn edgeless_graph_gives_one_empty_class() {
        let d = vizing_partition(&Graph::empty(3));
        assert_eq!(d.k(), 1);
        assert!(d.classes()[0].is_empty());
        assert_eq!(d.validate(), Ok(()));
        assert_eq!(vizing_partition(&Graph::empty(0)).k(), 1);
    }

    #[test]
    fn dense_graphs_stay_within_bound() {
        for n in 2..12 {
            let g = Graph::complete(n);
            let colors = misra_gries_coloring(&g);
            assert!(is_proper(&g, &colors));
            assert!(colors.iter().all(|&c| c <= g.max_degree()));
        }
        let q5 = Graph::hypercube(5);
        let colors = misra_gries_coloring(&q5);
        assert!(is_proper(&q5, &colors));
        assert!(colors.iter().all(|&c| c <= 5));
    }
}
