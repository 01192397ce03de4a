//! Mixture trees: rooted full binary trees whose internal nodes carry mutation times.
//!
//! Nodes live in a flat arena addressed by [`NodeId`]. A built tree is
//! renumbered in preorder, so the root is always `NodeId(0)`, the left child
//! of an internal node `v` is `v + 1`, and the subtree of `v` occupies the
//! contiguous id range [`MixtureTree::subtree_range`]. Leaves appear in
//! increasing id order from left to right.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::time::TimeTicks;

/// Index of a node in a tree's arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn new(index: usize) -> NodeId {
        NodeId(u32::try_from(index).expect("node index exceeds u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Validity rule for mutation times along parent-child edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// `m(parent) > m(child)`; leaves count as time 0. Required for a zero
    /// distance to imply identical trees.
    #[default]
    Strict,
    /// `m(parent) >= m(child)`. Tolerant ingestion; distinct trees may then
    /// have distance 0.
    Weak,
}

/// An unvalidated node record as produced by a parser or generator.
///
/// `children` holds indices into the same record slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNode {
    pub label: Option<String>,
    pub time: Option<TimeTicks>,
    pub children: Vec<usize>,
}

impl RawNode {
    pub fn leaf(label: impl Into<String>) -> RawNode {
        RawNode {
            label: Some(label.into()),
            time: None,
            children: Vec::new(),
        }
    }

    pub fn internal(time: TimeTicks, left: usize, right: usize) -> RawNode {
        RawNode {
            label: None,
            time: Some(time),
            children: vec![left, right],
        }
    }
}

/// A validated node. Exactly one of `label` (leaf) and `time`/`left`/`right`
/// (internal) is populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub parent: Option<NodeId>,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
    pub time: Option<TimeTicks>,
    pub label: Option<String>,
    pub level: u32,
}

/// A violated tree invariant. Node indices refer to the input record slice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("no nodes")]
    EmptyInput,
    #[error("node {node} has {children} children; full binary trees need 0 or 2")]
    NotBinary { node: usize, children: usize },
    #[error("node {node} refers to missing child {child}")]
    DanglingChild { node: usize, child: usize },
    #[error("node {node} has more than one parent")]
    MultipleParents { node: usize },
    #[error("multiple roots: {roots:?}")]
    MultipleRoots { roots: Vec<usize> },
    #[error("node {node} lies on a cycle or is unreachable from the root")]
    Cycle { node: usize },
    #[error("leaf {node} has no label")]
    MissingLabel { node: usize },
    #[error("leaf {node} has an empty label")]
    EmptyLabel { node: usize },
    #[error("duplicate leaf label {label:?} at node {node}")]
    DuplicateLabel { node: usize, label: String },
    #[error("internal node {node} has no mutation time")]
    MissingTime { node: usize },
    #[error("leaf {node} carries a mutation time")]
    LeafWithTime { node: usize },
    #[error("internal node {node} carries a label")]
    InternalWithLabel { node: usize },
    #[error("time of node {parent} does not exceed time of its child {child}")]
    NonMonotoneTime { parent: usize, child: usize },
}

impl TreeError {
    /// The offending record index, when the violation has a single one.
    pub fn node(&self) -> Option<usize> {
        match *self {
            TreeError::EmptyInput | TreeError::MultipleRoots { .. } => None,
            TreeError::NotBinary { node, .. }
            | TreeError::DanglingChild { node, .. }
            | TreeError::MultipleParents { node }
            | TreeError::Cycle { node }
            | TreeError::MissingLabel { node }
            | TreeError::EmptyLabel { node }
            | TreeError::DuplicateLabel { node, .. }
            | TreeError::MissingTime { node }
            | TreeError::LeafWithTime { node }
            | TreeError::InternalWithLabel { node } => Some(node),
            TreeError::NonMonotoneTime { child, .. } => Some(child),
        }
    }
}

/// Every violated invariant found in a set of records. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<TreeError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks raw records against every tree invariant and reports all violations.
pub fn validate_records(records: &[RawNode], strictness: Strictness) -> ValidationReport {
    let mut violations = Vec::new();
    if records.is_empty() {
        violations.push(TreeError::EmptyInput);
        return ValidationReport { violations };
    }

    let mut parent_count = vec![0u32; records.len()];
    for (i, rec) in records.iter().enumerate() {
        match rec.children.len() {
            0 => {
                match &rec.label {
                    None => violations.push(TreeError::MissingLabel { node: i }),
                    Some(l) if l.is_empty() => violations.push(TreeError::EmptyLabel { node: i }),
                    Some(_) => {}
                }
                if rec.time.is_some() {
                    violations.push(TreeError::LeafWithTime { node: i });
                }
            }
            2 => {
                if rec.time.is_none() {
                    violations.push(TreeError::MissingTime { node: i });
                }
                if rec.label.is_some() {
                    violations.push(TreeError::InternalWithLabel { node: i });
                }
            }
            k => violations.push(TreeError::NotBinary { node: i, children: k }),
        }
        for &c in &rec.children {
            if c >= records.len() {
                violations.push(TreeError::DanglingChild { node: i, child: c });
                continue;
            }
            parent_count[c] += 1;
            if parent_count[c] == 2 {
                violations.push(TreeError::MultipleParents { node: c });
            }
        }
    }

    let roots: Vec<usize> = (0..records.len()).filter(|&i| parent_count[i] == 0).collect();
    match roots.len() {
        0 => violations.push(TreeError::Cycle { node: 0 }),
        1 => {
            let mut seen = vec![false; records.len()];
            let mut stack = vec![roots[0]];
            while let Some(v) = stack.pop() {
                if std::mem::replace(&mut seen[v], true) {
                    continue;
                }
                stack.extend(records[v].children.iter().copied().filter(|&c| c < records.len()));
            }
            if let Some(node) = seen.iter().position(|s| !s) {
                violations.push(TreeError::Cycle { node });
            }
        }
        _ => violations.push(TreeError::MultipleRoots { roots }),
    }

    let mut labels = HashSet::new();
    for (i, rec) in records.iter().enumerate() {
        if let (true, Some(label)) = (rec.children.is_empty(), &rec.label) {
            if !labels.insert(label.as_str()) {
                violations.push(TreeError::DuplicateLabel {
                    node: i,
                    label: label.clone(),
                });
            }
        }
    }

    for (i, rec) in records.iter().enumerate() {
        let Some(pt) = rec.time else { continue };
        for &c in rec.children.iter().filter(|&&c| c < records.len()) {
            let child = &records[c];
            let ct = if child.children.is_empty() {
                TimeTicks::ZERO
            } else {
                match child.time {
                    Some(t) => t,
                    None => continue,
                }
            };
            let ok = match strictness {
                Strictness::Strict => pt > ct,
                Strictness::Weak => pt >= ct,
            };
            if !ok {
                violations.push(TreeError::NonMonotoneTime { parent: i, child: c });
            }
        }
    }

    ValidationReport { violations }
}

/// Validates `records` and assembles a tree, failing on the first violation.
pub fn build_tree(records: &[RawNode], strictness: Strictness) -> Result<MixtureTree, TreeError> {
    let report = validate_records(records, strictness);
    if let Some(err) = report.violations.into_iter().next() {
        return Err(err);
    }
    Ok(MixtureTree::assemble(records, strictness))
}

/// Labels present in only one of two trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trees are not comparable: labels missing from first tree {missing:?}, extra in first tree {extra:?}")]
pub struct NotComparable {
    /// Labels of the second tree absent from the first.
    pub missing: Vec<String>,
    /// Labels of the first tree absent from the second.
    pub extra: Vec<String>,
}

/// Label-preserving map from the leaves of one tree to the leaves of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafBijection {
    image: Vec<Option<NodeId>>,
    len: usize,
}

impl LeafBijection {
    /// Image of a leaf of the first tree; `None` for internal nodes.
    pub fn get(&self, leaf: NodeId) -> Option<NodeId> {
        self.image.get(leaf.index()).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|t| (NodeId::new(i), t)))
    }
}

/// Postorder ranks of leaves, 1-based; equal to left-to-right leaf order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafRanks {
    by_node: Vec<u32>,
    by_rank: Vec<NodeId>,
}

impl LeafRanks {
    pub fn rank(&self, leaf: NodeId) -> Option<u32> {
        match self.by_node.get(leaf.index()) {
            Some(&r) if r > 0 => Some(r),
            _ => None,
        }
    }

    /// Leaf holding `rank` (1-based).
    pub fn leaf(&self, rank: u32) -> NodeId {
        self.by_rank[rank as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }
}

const NONE: u32 = u32::MAX;

/// An immutable, validated mixture tree.
#[derive(Debug, Clone)]
pub struct MixtureTree {
    // Node fields are stored column-wise; the engines touch only a few of them.
    parent: Vec<u32>,
    /// Right child, or `NONE` for leaves. The left child of `v` is `v + 1`.
    right: Vec<u32>,
    time: Vec<u64>,
    level: Vec<u32>,
    labels: Vec<Option<String>>,
    subtree_end: Vec<u32>,
    leaves: Vec<NodeId>,
    leaf_index: HashMap<String, NodeId>,
    height: u32,
    strictness: Strictness,
}

impl MixtureTree {
    fn assemble(records: &[RawNode], strictness: Strictness) -> MixtureTree {
        let mut has_parent = vec![false; records.len()];
        for rec in records {
            for &c in &rec.children {
                has_parent[c] = true;
            }
        }
        let root = has_parent.iter().position(|p| !p).expect("validated tree has a root");

        let count = records.len();
        let mut parent = Vec::with_capacity(count);
        let mut right = Vec::with_capacity(count);
        let mut time = Vec::with_capacity(count);
        let mut level: Vec<u32> = Vec::with_capacity(count);
        let mut labels = Vec::with_capacity(count);
        // (raw index, new parent, is right child)
        let mut stack = vec![(root, NONE, false)];
        while let Some((raw, p, is_right)) = stack.pop() {
            let id = parent.len() as u32;
            if is_right {
                right[p as usize] = id;
            }
            let rec = &records[raw];
            let internal = rec.children.len() == 2;
            parent.push(p);
            right.push(NONE);
            level.push(if p == NONE { 0 } else { level[p as usize] + 1 });
            time.push(if internal { rec.time.unwrap().0 } else { 0 });
            labels.push(if internal { None } else { rec.label.clone() });
            if internal {
                stack.push((rec.children[1], id, true));
                stack.push((rec.children[0], id, false));
            }
        }

        let mut subtree_end = vec![0u32; count];
        for i in (0..count).rev() {
            subtree_end[i] = match right[i] {
                NONE => i as u32 + 1,
                r => subtree_end[r as usize],
            };
        }
        let leaves: Vec<NodeId> = (0..count)
            .filter(|&i| right[i] == NONE)
            .map(NodeId::new)
            .collect();
        let leaf_index = leaves
            .iter()
            .map(|&l| (labels[l.index()].clone().unwrap(), l))
            .collect();
        let height = leaves.iter().map(|l| level[l.index()]).max().unwrap_or(0);

        MixtureTree {
            parent,
            right,
            time,
            level,
            labels,
            subtree_end,
            leaves,
            leaf_index,
            height,
            strictness,
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Number of leaves, `n`.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Maximum leaf level; the root is at level 0.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// Rule the tree was validated under.
    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    pub fn node(&self, v: NodeId) -> NodeRecord {
        let children = self.children(v);
        NodeRecord {
            parent: self.parent(v),
            left: children.map(|c| c.0),
            right: children.map(|c| c.1),
            time: children.map(|_| self.time(v)),
            label: self.labels[v.index()].clone(),
            level: self.level(v),
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::new)
    }

    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.right[v.index()] == NONE
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> Option<(NodeId, NodeId)> {
        match self.right[v.index()] {
            NONE => None,
            r => Some((NodeId(v.0 + 1), NodeId(r))),
        }
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v.index()] {
            NONE => None,
            p => Some(NodeId(p)),
        }
    }

    #[inline]
    pub fn level(&self, v: NodeId) -> u32 {
        self.level[v.index()]
    }

    /// Mutation time; leaves have time 0.
    #[inline]
    pub fn time(&self, v: NodeId) -> TimeTicks {
        TimeTicks(self.time[v.index()])
    }

    pub fn label(&self, v: NodeId) -> Option<&str> {
        self.labels[v.index()].as_deref()
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn leaf_by_label(&self, label: &str) -> Option<NodeId> {
        self.leaf_index.get(label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.leaves.iter().map(|&l| self.label(l).unwrap())
    }

    /// Ids of the subtree rooted at `v`, which are contiguous.
    pub fn subtree_range(&self, v: NodeId) -> Range<usize> {
        v.index()..self.subtree_end[v.index()] as usize
    }

    /// `true` if `a` is `v` or an ancestor of `v`.
    pub fn is_ancestor(&self, a: NodeId, v: NodeId) -> bool {
        self.subtree_range(a).contains(&v.index())
    }

    /// Largest internal time, or 0 for a single leaf.
    pub fn max_time(&self) -> TimeTicks {
        TimeTicks(self.time.iter().copied().max().unwrap_or(0))
    }

    /// Raw records equivalent to this tree, indexed by `NodeId`.
    pub fn to_records(&self) -> Vec<RawNode> {
        self.nodes()
            .map(|v| match self.children(v) {
                Some((l, r)) => RawNode::internal(self.time(v), l.index(), r.index()),
                None => RawNode::leaf(self.label(v).unwrap()),
            })
            .collect()
    }

    /// Re-checks the tree, possibly under a different rule than it was built with.
    pub fn validate(&self, strictness: Strictness) -> ValidationReport {
        validate_records(&self.to_records(), strictness)
    }

    /// Rebuilds the tree with every internal time replaced by `f(time)`.
    pub fn map_times(
        &self,
        mut f: impl FnMut(TimeTicks) -> TimeTicks,
    ) -> Result<MixtureTree, TreeError> {
        let mut records = self.to_records();
        for r in &mut records {
            r.time = r.time.map(&mut f);
        }
        build_tree(&records, self.strictness)
    }

    /// Breadth-first order from the root, left child before right child.
    pub fn level_order(&self, internal_only: bool) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut queue = VecDeque::from([self.root()]);
        while let Some(v) = queue.pop_front() {
            match self.children(v) {
                Some((l, r)) => {
                    out.push(v);
                    queue.push_back(l);
                    queue.push_back(r);
                }
                None if !internal_only => out.push(v),
                None => {}
            }
        }
        out
    }

    pub fn postorder_leaf_ranks(&self) -> LeafRanks {
        let mut by_node = vec![0u32; self.node_count()];
        for (i, &leaf) in self.leaves.iter().enumerate() {
            by_node[leaf.index()] = i as u32 + 1;
        }
        LeafRanks {
            by_node,
            by_rank: self.leaves.clone(),
        }
    }

    /// Lowest common ancestor by walking parent pointers.
    pub fn lca_naive(&self, mut u: NodeId, mut v: NodeId) -> NodeId {
        while self.level(u) > self.level(v) {
            u = self.parent(u).unwrap();
        }
        while self.level(v) > self.level(u) {
            v = self.parent(v).unwrap();
        }
        while u != v {
            u = self.parent(u).unwrap();
            v = self.parent(v).unwrap();
        }
        u
    }
}

/// Matches the leaves of two trees by label.
pub fn check_comparable(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<LeafBijection, NotComparable> {
    let mut extra: Vec<String> = t1
        .labels()
        .filter(|l| t2.leaf_by_label(l).is_none())
        .map(str::to_owned)
        .collect();
    let mut missing: Vec<String> = t2
        .labels()
        .filter(|l| t1.leaf_by_label(l).is_none())
        .map(str::to_owned)
        .collect();
    if !extra.is_empty() || !missing.is_empty() {
        extra.sort();
        missing.sort();
        return Err(NotComparable { missing, extra });
    }
    let mut image = vec![None; t1.node_count()];
    for &leaf in t1.leaves() {
        image[leaf.index()] = t2.leaf_by_label(t1.label(leaf).unwrap());
    }
    Ok(LeafBijection {
        image,
        len: t1.leaf_count(),
    })
}

#[derive(PartialEq, Eq, Hash)]
enum Shape<'a> {
    Leaf(&'a str),
    Join(u32, u32, TimeTicks),
}

/// Interns every subtree shape of `t` into `table` and returns the root's id.
fn canonical_root<'a>(t: &'a MixtureTree, table: &mut HashMap<Shape<'a>, u32>) -> u32 {
    let mut id = vec![0u32; t.node_count()];
    for v in (0..t.node_count()).rev().map(NodeId::new) {
        let shape = match t.children(v) {
            None => Shape::Leaf(t.label(v).unwrap()),
            Some((l, r)) => {
                let (a, b) = (id[l.index()], id[r.index()]);
                Shape::Join(a.min(b), a.max(b), t.time(v))
            }
        };
        let next = table.len() as u32;
        id[v.index()] = *table.entry(shape).or_insert(next);
    }
    id[0]
}

/// Whether the trees are equal up to swapping children, with equal labels and times.
pub fn trees_identical(t1: &MixtureTree, t2: &MixtureTree) -> bool {
    if t1.node_count() != t2.node_count() {
        return false;
    }
    let mut table = HashMap::new();
    canonical_root(t1, &mut table) == canonical_root(t2, &mut table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(units: u64) -> TimeTicks {
        TimeTicks::from_units(units).unwrap()
    }

    /// ((A,B)1,C)2 with the root stored last to exercise renumbering.
    fn abc() -> Vec<RawNode> {
        vec![
            RawNode::leaf("A"),
            RawNode::leaf("B"),
            RawNode::internal(t(1), 0, 1),
            RawNode::leaf("C"),
            RawNode::internal(t(2), 2, 3),
        ]
    }

    #[test]
    fn builds_small_tree() {
        let tree = build_tree(&abc(), Strictness::Strict).unwrap();
        assert_eq!(tree.leaf_count(), 3);
        assert_eq!(tree.height(), 2);
        assert_eq!(tree.time(tree.root()), TimeTicks(2_000_000));
        assert_eq!(tree.label(NodeId::new(2)), Some("A"));
        assert_eq!(tree.subtree_range(NodeId::new(1)), 1..4);
        assert_eq!(tree.subtree_range(tree.root()), 0..5);
    }

    #[test]
    fn single_leaf() {
        let tree = build_tree(&[RawNode::leaf("A")], Strictness::Strict).unwrap();
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(tree.height(), 0);
        assert!(tree.level_order(true).is_empty());
        assert_eq!(tree.level_order(false), vec![NodeId::ROOT]);
    }

    #[test]
    fn equal_times_need_weak_mode() {
        let recs = vec![
            RawNode::leaf("A"),
            RawNode::leaf("B"),
            RawNode::internal(t(1), 0, 1),
            RawNode::leaf("C"),
            RawNode::internal(t(1), 2, 3),
        ];
        assert_eq!(
            build_tree(&recs, Strictness::Strict).unwrap_err(),
            TreeError::NonMonotoneTime { parent: 4, child: 2 }
        );
        assert!(build_tree(&recs, Strictness::Weak).is_ok());
    }

    #[test]
    fn zero_time_above_leaves_is_strict_violation() {
        let recs = vec![
            RawNode::leaf("A"),
            RawNode::leaf("B"),
            RawNode::internal(TimeTicks::ZERO, 0, 1),
        ];
        assert!(matches!(
            build_tree(&recs, Strictness::Strict),
            Err(TreeError::NonMonotoneTime { parent: 2, .. })
        ));
        assert!(build_tree(&recs, Strictness::Weak).is_ok());
    }

    #[test]
    fn reports_structural_errors() {
        assert_eq!(build_tree(&[], Strictness::Strict).unwrap_err(), TreeError::EmptyInput);

        let mut recs = abc();
        recs[3].label = Some("A".into());
        let report = validate_records(&recs, Strictness::Strict);
        assert_eq!(
            report.violations,
            vec![TreeError::DuplicateLabel { node: 3, label: "A".into() }]
        );

        let one_child = vec![
            RawNode::leaf("A"),
            RawNode { label: None, time: Some(t(1)), children: vec![0] },
        ];
        assert_eq!(
            build_tree(&one_child, Strictness::Strict).unwrap_err(),
            TreeError::NotBinary { node: 1, children: 1 }
        );

        let mut missing = abc();
        missing[2].time = None;
        assert_eq!(
            build_tree(&missing, Strictness::Strict).unwrap_err(),
            TreeError::MissingTime { node: 2 }
        );

        let two_roots = vec![RawNode::leaf("A"), RawNode::leaf("B")];
        assert_eq!(
            build_tree(&two_roots, Strictness::Strict).unwrap_err(),
            TreeError::MultipleRoots { roots: vec![0, 1] }
        );

        let cyclic = vec![
            RawNode::internal(t(2), 1, 2),
            RawNode::leaf("A"),
            RawNode::leaf("B"),
            RawNode::internal(t(1), 4, 3),
            RawNode::internal(t(1), 3, 5),
            RawNode::leaf("C"),
        ];
        let report = validate_records(&cyclic, Strictness::Weak);
        assert!(report.violations.iter().any(|v| matches!(v, TreeError::Cycle { .. })));
    }

    #[test]
    fn inverted_times_reported() {
        let mut recs = abc();
        recs[2].time = Some(t(3));
        let report = validate_records(&recs, Strictness::Strict);
        assert_eq!(
            report.violations,
            vec![TreeError::NonMonotoneTime { parent: 4, child: 2 }]
        );
        let tree = build_tree(&recs, Strictness::Weak);
        assert!(tree.is_err());
    }

    #[test]
    fn traversal_orders() {
        let tree = build_tree(&abc(), Strictness::Strict).unwrap();
        let order = tree.level_order(true);
        assert_eq!(order, vec![NodeId::ROOT, NodeId::new(1)]);
        let ranks = tree.postorder_leaf_ranks();
        let r = |l: &str| ranks.rank(tree.leaf_by_label(l).unwrap()).unwrap();
        assert_eq!((r("A"), r("B"), r("C")), (1, 2, 3));
        assert_eq!(ranks.rank(tree.root()), None);
    }

    #[test]
    fn naive_lca() {
        let tree = build_tree(&abc(), Strictness::Strict).unwrap();
        let a = tree.leaf_by_label("A").unwrap();
        let b = tree.leaf_by_label("B").unwrap();
        let c = tree.leaf_by_label("C").unwrap();
        assert_eq!(tree.time(tree.lca_naive(a, b)), t(1));
        assert_eq!(tree.lca_naive(a, c), tree.root());
        assert_eq!(tree.lca_naive(a, a), a);
    }

    #[test]
    fn comparability() {
        let t1 = build_tree(&abc(), Strictness::Strict).unwrap();
        let bij = check_comparable(&t1, &t1).unwrap();
        assert_eq!(bij.len(), 3);
        assert!(bij.iter().all(|(x, y)| x == y));

        let ab = build_tree(
            &[RawNode::leaf("A"), RawNode::leaf("B"), RawNode::internal(t(1), 0, 1)],
            Strictness::Strict,
        )
        .unwrap();
        let ac = build_tree(
            &[RawNode::leaf("A"), RawNode::leaf("C"), RawNode::internal(t(1), 0, 1)],
            Strictness::Strict,
        )
        .unwrap();
        assert_eq!(
            check_comparable(&ab, &ac).unwrap_err(),
            NotComparable { missing: vec!["C".into()], extra: vec!["B".into()] }
        );
    }

    #[test]
    fn identity_ignores_child_order() {
        let t1 = build_tree(&abc(), Strictness::Strict).unwrap();
        let mirrored = build_tree(
            &[
                RawNode::leaf("C"),
                RawNode::leaf("B"),
                RawNode::leaf("A"),
                RawNode::internal(t(1), 1, 2),
                RawNode::internal(t(2), 0, 3),
            ],
            Strictness::Strict,
        )
        .unwrap();
        assert!(trees_identical(&t1, &mirrored));

        let shifted = t1.map_times(|x| TimeTicks(x.0 + 1_000_000)).unwrap();
        assert!(!trees_identical(&t1, &shifted));

        let mut other = abc();
        other[1].label = Some("C".into());
        other[3].label = Some("B".into());
        let other = build_tree(&other, Strictness::Strict).unwrap();
        assert!(!trees_identical(&t1, &other));
    }
}
