use crate::graph::{Edge, Graph};

use super::coloring::vizing_partition;
use super::{is_cograph, union_graph, DecompError, Decomposition};

/// Largest class count for which every subset union is scanned.
pub const MAX_SCAN_CLASSES: usize = 20;

/// Outcome of scanning subset unions of a decomposition's classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsenessScan {
    /// First subset (by size, then lexicographically) whose union is a
    /// cograph.
    pub mergeable: Option<Vec<usize>>,
    /// Number of unions examined.
    pub unions_checked: u64,
}

impl CoarsenessScan {
    pub fn is_coarsest(&self) -> bool {
        self.mergeable.is_none()
    }
}

/// Scans every class subset of size at least two, smallest first.
pub fn coarseness_scan(d: &Decomposition) -> Result<CoarsenessScan, DecompError> {
    d.validate()?;
    if d.k() > MAX_SCAN_CLASSES {
        return Err(DecompError::TooManyClasses {
            k: d.k(),
            max: MAX_SCAN_CLASSES,
        });
    }
    Ok(scan(d.classes(), d, d.k()))
}

/// `true` iff no union of two or more classes is a cograph.
pub fn is_coarsest(d: &Decomposition) -> Result<bool, DecompError> {
    coarseness_scan(d).map(|s| s.is_coarsest())
}

fn scan(classes: &[Vec<Edge>], d: &Decomposition, max_size: usize) -> CoarsenessScan {
    let k = classes.len();
    let mut unions_checked = 0;
    for size in 2..=max_size.min(k) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            unions_checked += 1;
            let union = union_graph(d.host(), subset.iter().flat_map(|&c| classes[c].iter().copied()));
            if is_cograph(&union) {
                return CoarsenessScan {
                    mergeable: Some(subset),
                    unions_checked,
                };
            }
            if !next_combination(&mut subset, k) {
                break;
            }
        }
    }
    CoarsenessScan {
        mergeable: None,
        unions_checked,
    }
}

/// Advances `subset` to the next `subset.len()`-combination of `0..k` in
/// lexicographic order.
fn next_combination(subset: &mut [usize], k: usize) -> bool {
    let size = subset.len();
    for i in (0..size).rev() {
        if subset[i] < k - size + i {
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Repeatedly merges the first mergeable subset of classes until none is
/// left. The merged class takes the position of its smallest member.
///
/// Pairs are always scanned; larger subsets only once no pair merges and at
/// most [`MAX_SCAN_CLASSES`] classes remain.
pub fn coarsen(d: &Decomposition) -> Result<Decomposition, DecompError> {
    d.validate()?;
    merge_classes(d, true).map(|classes| d.with_classes(classes))
}

/// Proper-edge-coloring partition followed by coarsening. When too many
/// classes remain for a full subset scan, only pairwise merges are made, so
/// the result is always returned but may not be coarsest.
pub fn greedy_partition(g: &Graph) -> Decomposition {
    let start = vizing_partition(g);
    let classes = merge_classes(&start, false).expect("non-strict merging never fails");
    start.with_classes(classes)
}

fn merge_classes(d: &Decomposition, strict: bool) -> Result<Vec<Vec<Edge>>, DecompError> {
    let mut classes = d.classes().to_vec();
    loop {
        let mut found = scan(&classes, d, 2).mergeable;
        if found.is_none() && classes.len() > 2 {
            if classes.len() > MAX_SCAN_CLASSES {
                if !strict {
                    break;
                }
                return Err(DecompError::TooManyClasses {
                    k: classes.len(),
                    max: MAX_SCAN_CLASSES,
                });
            }
            found = scan(&classes, d, classes.len()).mergeable;
        }
        let Some(subset) = found else { break };
        let mut merged: Vec<Edge> = subset.iter().flat_map(|&c| classes[c].iter().copied()).collect();
        merged.sort_unstable();
        merged.dedup();
        let keep = subset[0];
        for &c in subset.iter().rev() {
            if c != keep {
                classes.remove(c);
            }
        }
        classes[keep] = merged;
    }
    Ok(classes)
}
