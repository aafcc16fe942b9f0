use crate::graph::Graph;

use super::{Decomposition, Mode};

/// Partition of the hypercube `Q_{2n}` into `n` classes: an edge flipping
/// coordinate `c` goes to class `c / 2`. Coordinates `2i` and `2i + 1` span
/// the `i`-th `Q_2` factor, so every class is a disjoint union of 4-cycles.
pub fn layers_partition(n: u32) -> Decomposition {
    assert!(n >= 1, "layers_partition needs n >= 1");
    let g = Graph::hypercube(2 * n);
    let mut classes = vec![Vec::new(); n as usize];
    for &(u, v) in g.edges() {
        let coordinate = (u ^ v).trailing_zeros() as usize;
        classes[coordinate / 2].push((u, v));
    }
    Decomposition::new(g, classes, Mode::Partition)
}
