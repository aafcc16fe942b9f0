//! Rooted trees whose leaves are graph vertices and whose inner nodes carry
//! labels. Cotrees are the special case with labels in {0, 1}.
//!
//! Trees are always stored in canonical form: nodes in preorder, children
//! ordered by their smallest descendant leaf, every inner node with at least
//! two children and no inner child repeating its parent's label. Two trees
//! realizing the same structure therefore compare equal with `==`.

use std::fmt;

use thiserror::Error;

use crate::graph::Vertex;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("node {0} is reachable more than once")]
    SharedNode(NodeId),
    #[error("inner node {node} has {children} child(ren); at least 2 are required")]
    TooFewChildren { node: NodeId, children: usize },
    #[error("inner node {node} has an inner child with the same label")]
    RepeatedLabel { node: NodeId },
    #[error("leaf for vertex {0} occurs more than once")]
    DuplicateLeaf(Vertex),
    #[error("leaves must be exactly 0..{n}; vertex {missing} is missing")]
    MissingLeaf { n: usize, missing: Vertex },
    #[error("vertex {0} is not a leaf of this tree")]
    UnknownVertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode<L> {
    pub parent: Option<NodeId>,
    /// `None` exactly for leaves.
    pub label: Option<L>,
    pub children: Vec<NodeId>,
    pub leaf: Option<Vertex>,
}

impl<L> TreeNode<L> {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }
}

/// Canonical rooted tree with labeled inner nodes. The root is node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree<L> {
    nodes: Vec<TreeNode<L>>,
    /// Preorder index one past the last node of each subtree.
    subtree_end: Vec<NodeId>,
    depth: Vec<usize>,
    leaf_node: Vec<NodeId>,
}

#[derive(Debug, Clone)]
enum RawNode<L> {
    Leaf(Vertex),
    Inner(L, Vec<NodeId>),
}

/// Assembles a tree bottom-up. Node ids handed out here are only meaningful
/// to the builder; [`TreeBuilder::build`] renumbers into canonical preorder.
#[derive(Debug, Clone)]
pub struct TreeBuilder<L> {
    raw: Vec<RawNode<L>>,
}

impl<L> Default for TreeBuilder<L> {
    fn default() -> Self {
        TreeBuilder { raw: Vec::new() }
    }
}

impl<L: Clone + PartialEq> TreeBuilder<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, vertex: Vertex) -> NodeId {
        self.raw.push(RawNode::Leaf(vertex));
        self.raw.len() - 1
    }

    pub fn inner(&mut self, label: L, children: Vec<NodeId>) -> NodeId {
        self.raw.push(RawNode::Inner(label, children));
        self.raw.len() - 1
    }

    /// Validates and canonicalizes the tree rooted at `root`.
    pub fn build(self, root: NodeId) -> Result<LabeledTree<L>, TreeError> {
        LabeledTree::from_raw(self.raw, root, false)
    }

    /// Like [`TreeBuilder::build`], but first contracts single-child inner
    /// nodes and inner children that repeat their parent's label. The
    /// contraction preserves the label of every lowest common ancestor.
    pub fn build_collapsed(self, root: NodeId) -> Result<LabeledTree<L>, TreeError> {
        LabeledTree::from_raw(self.raw, root, true)
    }
}

impl<L: Clone + PartialEq> LabeledTree<L> {
    fn from_raw(mut raw: Vec<RawNode<L>>, root: NodeId, collapse: bool) -> Result<Self, TreeError> {
        if raw.is_empty() {
            return Err(TreeError::Empty);
        }
        if root >= raw.len() {
            return Err(TreeError::UnknownNode(root));
        }
        // Reachability check and a postorder of the reachable nodes.
        let mut visited = vec![false; raw.len()];
        let mut order = Vec::new();
        let mut stack = vec![(root, false)];
        visited[root] = true;
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            stack.push((id, true));
            if let RawNode::Inner(_, children) = &raw[id] {
                for &c in children.iter().rev() {
                    if c >= raw.len() {
                        return Err(TreeError::UnknownNode(c));
                    }
                    if visited[c] {
                        return Err(TreeError::SharedNode(c));
                    }
                    visited[c] = true;
                    stack.push((c, false));
                }
            }
        }

        // In postorder every child is final before its parent is processed.
        // `rep[id]` is the node standing in for `id` after contraction.
        let mut rep: Vec<NodeId> = (0..raw.len()).collect();
        let mut min_leaf = vec![usize::MAX; raw.len()];
        for &id in &order {
            match &raw[id] {
                RawNode::Leaf(v) => min_leaf[id] = *v,
                RawNode::Inner(label, children) => {
                    let label = label.clone();
                    let mut merged = Vec::with_capacity(children.len());
                    for &c in children {
                        let c = rep[c];
                        match &raw[c] {
                            RawNode::Inner(child_label, grandchildren) if collapse && *child_label == label => {
                                merged.extend(grandchildren.iter().copied())
                            }
                            _ => merged.push(c),
                        }
                    }
                    if collapse && merged.len() == 1 {
                        rep[id] = merged[0];
                        min_leaf[id] = min_leaf[merged[0]];
                        continue;
                    }
                    if merged.len() < 2 {
                        return Err(TreeError::TooFewChildren {
                            node: id,
                            children: merged.len(),
                        });
                    }
                    for &c in &merged {
                        if matches!(&raw[c], RawNode::Inner(l, _) if *l == label) {
                            return Err(TreeError::RepeatedLabel { node: id });
                        }
                    }
                    merged.sort_by_key(|&c| min_leaf[c]);
                    min_leaf[id] = min_leaf[merged[0]];
                    raw[id] = RawNode::Inner(label, merged);
                }
            }
        }

        // Leaves must be exactly 0..n.
        let root = rep[root];
        let leaves: Vec<Vertex> = order
            .iter()
            .filter_map(|&id| match raw[id] {
                RawNode::Leaf(v) => Some(v),
                _ => None,
            })
            .collect();
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v < n {
                if seen[v] {
                    return Err(TreeError::DuplicateLeaf(v));
                }
                seen[v] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(TreeError::MissingLeaf { n, missing });
        }

        // Emit in preorder; children get larger ids than their parent.
        let mut nodes: Vec<TreeNode<L>> = Vec::with_capacity(order.len());
        let mut depth = Vec::with_capacity(order.len());
        let mut leaf_node = vec![0; n];
        let mut stack: Vec<(NodeId, Option<NodeId>, usize)> = vec![(root, None, 0)];
        while let Some((id, parent, d)) = stack.pop() {
            let new_id = nodes.len();
            if let Some(p) = parent {
                nodes[p].children.push(new_id);
            }
            depth.push(d);
            match &raw[id] {
                RawNode::Leaf(v) => {
                    leaf_node[*v] = new_id;
                    nodes.push(TreeNode {
                        parent,
                        label: None,
                        children: Vec::new(),
                        leaf: Some(*v),
                    });
                }
                RawNode::Inner(label, children) => {
                    nodes.push(TreeNode {
                        parent,
                        label: Some(label.clone()),
                        children: Vec::with_capacity(children.len()),
                        leaf: None,
                    });
                    for &c in children.iter().rev() {
                        stack.push((c, Some(new_id), d + 1));
                    }
                }
            }
        }
        let mut subtree_end = vec![0; nodes.len()];
        for id in (0..nodes.len()).rev() {
            subtree_end[id] = match nodes[id].children.last() {
                Some(&last) => subtree_end[last],
                None => id + 1,
            };
        }
        Ok(LabeledTree {
            nodes,
            subtree_end,
            depth,
            leaf_node,
        })
    }

    /// Relabels inner nodes. The mapping must keep parent and child labels
    /// distinct (e.g. be injective on the labels present).
    pub fn map_labels<M: Clone + PartialEq>(&self, f: impl Fn(&L) -> M) -> Result<LabeledTree<M>, TreeError> {
        let mut builder = TreeBuilder::new();
        let mut ids = vec![0; self.nodes.len()];
        for id in (0..self.nodes.len()).rev() {
            let node = &self.nodes[id];
            ids[id] = match (&node.leaf, &node.label) {
                (Some(v), _) => builder.leaf(*v),
                (None, Some(l)) => builder.inner(f(l), node.children.iter().map(|&c| ids[c]).collect()),
                (None, None) => unreachable!("inner node without label"),
            };
        }
        builder.build(ids[0])
    }
}

impl<L> LabeledTree<L> {
    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> &[TreeNode<L>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &TreeNode<L> {
        &self.nodes[id]
    }

    /// Number of leaves, i.e. vertices of the underlying vertex set.
    pub fn leaf_count(&self) -> usize {
        self.leaf_node.len()
    }

    pub fn leaf_of(&self, vertex: Vertex) -> Option<NodeId> {
        self.leaf_node.get(vertex).copied()
    }

    /// Leaves below `node`, in preorder.
    pub fn leaves_below(&self, node: NodeId) -> impl Iterator<Item = Vertex> + '_ {
        self.nodes[node..self.subtree_end[node]].iter().filter_map(|n| n.leaf)
    }

    pub fn lca(&self, x: Vertex, y: Vertex) -> Result<NodeId, TreeError> {
        let mut a = self.leaf_of(x).ok_or(TreeError::UnknownVertex(x))?;
        let mut b = self.leaf_of(y).ok_or(TreeError::UnknownVertex(y))?;
        while self.depth[a] > self.depth[b] {
            a = self.nodes[a].parent.expect("non-root has parent");
        }
        while self.depth[b] > self.depth[a] {
            b = self.nodes[b].parent.expect("non-root has parent");
        }
        while a != b {
            a = self.nodes[a].parent.expect("non-root has parent");
            b = self.nodes[b].parent.expect("non-root has parent");
        }
        Ok(a)
    }

    /// Label of the lowest common ancestor; `None` when `x == y`.
    pub fn lca_label(&self, x: Vertex, y: Vertex) -> Result<Option<&L>, TreeError> {
        if x == y {
            self.leaf_of(x).ok_or(TreeError::UnknownVertex(x))?;
            return Ok(None);
        }
        let node = self.lca(x, y)?;
        Ok(self.nodes[node].label.as_ref())
    }

    /// Calls `f(x, y, label)` once for every unordered pair `x < y` with the
    /// label of its lowest common ancestor. Runs in time linear in the
    /// number of pairs.
    pub fn for_each_pair(&self, mut f: impl FnMut(Vertex, Vertex, &L)) {
        for node in &self.nodes {
            let Some(label) = &node.label else { continue };
            let groups: Vec<Vec<Vertex>> = node.children.iter().map(|&c| self.leaves_below(c).collect()).collect();
            for (i, left) in groups.iter().enumerate() {
                for right in &groups[i + 1..] {
                    for &x in left {
                        for &y in right {
                            if x < y {
                                f(x, y, label)
                            } else {
                                f(y, x, label)
                            }
                        }
                    }
                }
            }
        }
    }

    /// Newick-style text: leaves as vertex ids, inner nodes as
    /// `(child,...)label`, terminated by `;`.
    pub fn to_newick_with(&self, mut label: impl FnMut(&L) -> String) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root(), false)];
        while let Some((id, closing)) = stack.pop() {
            let node = &self.nodes[id];
            if closing {
                out.push(')');
                out.push_str(&label(node.label.as_ref().expect("inner node has a label")));
                continue;
            }
            if node.parent.is_some_and(|p| self.nodes[p].children[0] != id) {
                out.push(',');
            }
            match node.leaf {
                Some(v) => out.push_str(&v.to_string()),
                None => {
                    out.push('(');
                    stack.push((id, true));
                    for &c in node.children.iter().rev() {
                        stack.push((c, false));
                    }
                }
            }
        }
        out.push(';');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewickError {
    #[error("byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid tree: {0}")]
    Invalid(#[from] TreeError),
}

fn syntax(offset: usize, message: impl Into<String>) -> NewickError {
    NewickError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Parses Newick-style text produced by [`LabeledTree::to_newick_with`].
/// Children may appear in any order; structural invariants are enforced.
pub fn parse_newick<L: Clone + PartialEq>(
    input: &str,
    mut parse_label: impl FnMut(&str) -> Option<L>,
) -> Result<LabeledTree<L>, NewickError> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut builder = TreeBuilder::new();
    // Children collected so far for every currently open parenthesis.
    let mut frames: Vec<Vec<NodeId>> = Vec::new();
    let root;
    loop {
        // Expect the start of a node.
        skip_ws(&mut pos);
        let mut node = match bytes.get(pos) {
            Some(b'(') => {
                pos += 1;
                frames.push(Vec::new());
                continue;
            }
            Some(b) if b.is_ascii_digit() => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let v: Vertex = input[start..pos]
                    .parse()
                    .map_err(|_| syntax(start, "vertex id out of range"))?;
                builder.leaf(v)
            }
            Some(_) => return Err(syntax(pos, "expected `(` or a vertex id")),
            None => return Err(syntax(pos, "unexpected end of input")),
        };
        // A node is complete; close as many parentheses as follow it.
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') if !frames.is_empty() => {
                    pos += 1;
                    frames.last_mut().expect("checked").push(node);
                    break;
                }
                Some(b')') if !frames.is_empty() => {
                    pos += 1;
                    let mut children = frames.pop().expect("checked");
                    children.push(node);
                    skip_ws(&mut pos);
                    let start = pos;
                    while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(syntax(pos, "missing inner node label"));
                    }
                    let label = parse_label(&input[start..pos])
                        .ok_or_else(|| syntax(start, format!("invalid label `{}`", &input[start..pos])))?;
                    node = builder.inner(label, children);
                }
                Some(b';') if frames.is_empty() => {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos != bytes.len() {
                        return Err(syntax(pos, "trailing input after `;`"));
                    }
                    root = node;
                    return builder.build(root).map_err(NewickError::from);
                }
                Some(_) => return Err(syntax(pos, "unexpected character")),
                None => return Err(syntax(pos, "unexpected end of input")),
            }
        }
    }
}

impl<L: fmt::Display> fmt::Display for LabeledTree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick_with(|l| l.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_u8(s: &str) -> Result<LabeledTree<u8>, NewickError> {
        parse_newick(s, |l| l.parse().ok())
    }

    #[test]
    fn builder_sorts_children_and_numbers_preorder() {
        let mut b = TreeBuilder::new();
        let l2 = b.leaf(2);
        let l0 = b.leaf(0);
        let l1 = b.leaf(1);
        let pair = b.inner(0u8, vec![l1, l0]);
        let root = b.inner(1u8, vec![l2, pair]);
        let t = b.build(root).unwrap();
        assert_eq!(t.to_string(), "((0,1)0,2)1;");
        assert_eq!(t.node(0).children, vec![1, 4]);
        assert_eq!(t.leaves_below(1).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(t.lca(0, 1).unwrap(), 1);
        assert_eq!(t.lca(0, 2).unwrap(), 0);
        assert_eq!(t.lca_label(1, 1).unwrap(), None);
        assert_eq!(t.lca_label(1, 2).unwrap(), Some(&1));
        assert_eq!(t.lca(0, 7), Err(TreeError::UnknownVertex(7)));
    }

    #[test]
    fn builder_rejects_invariant_violations() {
        let mut b = TreeBuilder::new();
        let l0 = b.leaf(0);
        let root = b.inner(0u8, vec![l0]);
        assert!(matches!(b.build(root), Err(TreeError::TooFewChildren { .. })));

        let mut b = TreeBuilder::new();
        let (l0, l1, l2) = (b.leaf(0), b.leaf(1), b.leaf(2));
        let inner = b.inner(1u8, vec![l0, l1]);
        let root = b.inner(1u8, vec![inner, l2]);
        assert!(matches!(b.clone().build(root), Err(TreeError::RepeatedLabel { .. })));
        assert_eq!(b.build_collapsed(root).unwrap().to_string(), "(0,1,2)1;");

        let mut b = TreeBuilder::new();
        let (l0, l1) = (b.leaf(0), b.leaf(0));
        let root = b.inner(1u8, vec![l0, l1]);
        assert_eq!(b.build(root), Err(TreeError::DuplicateLeaf(0)));

        let mut b = TreeBuilder::new();
        let (l0, l2) = (b.leaf(0), b.leaf(2));
        let root = b.inner(1u8, vec![l0, l2]);
        assert_eq!(b.build(root), Err(TreeError::MissingLeaf { n: 2, missing: 1 }));
    }

    #[test]
    fn single_leaf_tree() {
        let t = parse_u8("0;").unwrap();
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.to_string(), "0;");
    }

    #[test]
    fn newick_round_trip_and_errors() {
        for s in ["((0,1)0,2)1;", "(0,(1,(2,3)1)0)1;", "(0,1,2,3)0;"] {
            assert_eq!(parse_u8(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_u8(" ( 2 , (1,0) 0 ) 1 ; ").unwrap().to_string(), "((0,1)0,2)1;");
        assert!(matches!(parse_u8("(0,1)"), Err(NewickError::Syntax { .. })));
        assert!(matches!(parse_u8("(0,1);"), Err(NewickError::Syntax { .. })));
        assert!(matches!(parse_u8("(0,1)0;x"), Err(NewickError::Syntax { .. })));
        assert!(matches!(parse_u8("(0)1;"), Err(NewickError::Invalid(_))));
        assert!(matches!(parse_u8("((0,1)1,2)1;"), Err(NewickError::Invalid(_))));
        assert!(matches!(parse_u8(""), Err(NewickError::Syntax { .. })));
    }

    #[test]
    fn deep_nesting_does_not_recurse() {
        let n = 20_000;
        let mut s = String::new();
        for _ in 1..n {
            s.push('(');
        }
        s.push('0');
        for v in 1..n {
            s.push_str(&format!(",{v}){}", v % 2));
        }
        s.push(';');
        let t = parse_u8(&s).unwrap();
        assert_eq!(t.leaf_count(), n);
        assert_eq!(t.to_string(), s);
        assert_eq!(t.lca_label(0, n - 1).unwrap(), Some(&(((n - 1) % 2) as u8)));
    }

    #[test]
    fn pairs_cover_every_pair_once() {
        let t = parse_u8("((0,3)0,(1,4)0,2)1;").unwrap();
        let mut count = 0;
        t.for_each_pair(|x, y, l| {
            count += 1;
            assert!(x < y);
            assert_eq!(t.lca_label(x, y).unwrap(), Some(l));
        });
        assert_eq!(count, 10);
    }
}
