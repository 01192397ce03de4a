//! The O(n·h) engine.
//!
//! 1. Leaves of the second tree are ranked left to right; each leaf of the
//!    first tree inherits the rank of its image.
//! 2. Internal nodes `v` of the first tree are processed deepest level first.
//!    The rank-sorted leaf list of `v` is the two-way merge of its children's
//!    lists, left side red and right side green. From that list the minimal
//!    subtree of the second tree spanning those leaves is built in one
//!    left-to-right pass.
//! 3. Red/green pairs are counted bottom-up in the minimal subtree, weighted
//!    by `|m1(v) - m2(u)|`.
//!
//! All lists on one level of the first tree hold at most `n` entries
//! together, so the total work is O(n·h) with `h` the smaller height.

use thiserror::Error;

use crate::distance::{pair_product, prepare, ColorVector, Distance, DistanceError};
use crate::lca::{Anchor, LcaIndex};
use crate::time::TimeTicks;
use crate::tree::{LeafBijection, LeafRanks, MixtureTree, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Green,
}

impl Color {
    fn vector(self) -> ColorVector {
        match self {
            Color::Red => ColorVector::RED,
            Color::Green => ColorVector::GREEN,
        }
    }
}

/// A leaf of the second tree tagged with its rank and current color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankedLeaf {
    pub rank: u32,
    pub color: Color,
    /// The leaf and its query data in the second tree's LCA index.
    pub anchor: Anchor,
}

impl RankedLeaf {
    pub fn new(index: &LcaIndex, rank: u32, leaf: NodeId, color: Color) -> RankedLeaf {
        RankedLeaf {
            rank,
            color,
            anchor: index.anchor(leaf),
        }
    }

    pub fn leaf(&self) -> NodeId {
        self.anchor.node()
    }
}

/// Leaves sorted by strictly increasing rank.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankedLeafList {
    entries: Vec<RankedLeaf>,
}

impl RankedLeafList {
    /// Panics unless ranks are strictly increasing.
    pub fn from_sorted(entries: Vec<RankedLeaf>) -> RankedLeafList {
        assert!(
            entries.windows(2).all(|w| w[0].rank < w[1].rank),
            "ranks must be strictly increasing"
        );
        RankedLeafList { entries }
    }

    pub fn entries(&self) -> &[RankedLeaf] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, color: Color) -> usize {
        self.entries.iter().filter(|e| e.color == color).count()
    }
}

/// Two-way merge of disjoint sorted lists; `left` entries become red and
/// `right` entries green.
pub fn merge_leaf_lists(left: &[RankedLeaf], right: &[RankedLeaf]) -> RankedLeafList {
    let mut out = Vec::with_capacity(left.len() + right.len());
    merge_into(left, right, &mut out);
    RankedLeafList { entries: out }
}

/// Appends the merge to `out`.
fn merge_into(left: &[RankedLeaf], right: &[RankedLeaf], out: &mut Vec<RankedLeaf>) {
    let red = |e: &RankedLeaf| RankedLeaf { color: Color::Red, ..*e };
    let green = |e: &RankedLeaf| RankedLeaf { color: Color::Green, ..*e };
    out.reserve(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if left[i].rank < right[j].rank {
            out.push(red(&left[i]));
            i += 1;
        } else {
            out.push(green(&right[j]));
            j += 1;
        }
    }
    out.extend(left[i..].iter().map(red));
    out.extend(right[j..].iter().map(green));
}

/// Leaf ranks of both trees: the second tree's own left-to-right ranks, and
/// for the first tree the rank of each leaf's image.
#[derive(Debug, Clone)]
pub struct LeafRanking {
    pub second: LeafRanks,
    first: Vec<u32>,
}

impl LeafRanking {
    /// Rank assigned to a leaf of the first tree.
    pub fn first_rank(&self, leaf: NodeId) -> Option<u32> {
        match self.first.get(leaf.index()) {
            Some(&r) if r > 0 => Some(r),
            _ => None,
        }
    }
}

pub fn rank_leaves(t1: &MixtureTree, t2: &MixtureTree, bij: &LeafBijection) -> LeafRanking {
    let second = t2.postorder_leaf_ranks();
    let mut first = vec![0u32; t1.node_count()];
    for (x, y) in bij.iter() {
        first[x.index()] = second.rank(y).unwrap();
    }
    LeafRanking { second, first }
}

/// Fewer than two leaves span no internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a minimal subtree needs at least two leaves, got {0}")]
pub struct DegenerateInput(pub usize);

const NO_CHILD: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualNode {
    /// The node of the second tree this node stands for.
    pub origin: NodeId,
    /// Level of `origin` in the second tree.
    pub level: u32,
    pub time: TimeTicks,
    pub color: ColorVector,
    left: u32,
    right: u32,
}

impl VirtualNode {
    /// Indices of the two children in [`VirtualSubtree::nodes`]; `None` for leaves.
    pub fn children(&self) -> Option<(usize, usize)> {
        (self.left != NO_CHILD).then_some((self.left as usize, self.right as usize))
    }
}

/// Minimal compressed subtree of the second tree spanning a set of leaves.
///
/// Internal nodes are exactly the lowest common ancestors of rank-adjacent
/// leaves; each node's parent is its nearest proper ancestor among them.
#[derive(Debug, Clone, Default)]
pub struct VirtualSubtree {
    nodes: Vec<VirtualNode>,
    /// Node indices with every node after all of its descendants.
    postorder: Vec<u32>,
    stack: Vec<u32>,
}

impl VirtualSubtree {
    pub fn nodes(&self) -> &[VirtualNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        *self.postorder.last().expect("empty virtual subtree") as usize
    }

    pub fn postorder(&self) -> impl Iterator<Item = usize> + '_ {
        self.postorder.iter().map(|&i| i as usize)
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = &VirtualNode> {
        self.nodes.iter().filter(|n| n.left != NO_CHILD)
    }

    fn attach(&mut self, parent: u32, child: u32) {
        let node = &mut self.nodes[parent as usize];
        if node.left == NO_CHILD {
            node.left = child;
        } else {
            assert!(node.right == NO_CHILD, "virtual node of a binary tree gained a third child");
            node.right = child;
        }
    }

    fn finish(&mut self, v: u32) {
        let node = &self.nodes[v as usize];
        if node.left != NO_CHILD {
            debug_assert!(node.right != NO_CHILD, "internal virtual node with one child");
            let color = self.nodes[node.left as usize].color + self.nodes[node.right as usize].color;
            self.nodes[v as usize].color = color;
        }
        self.postorder.push(v);
    }

    fn push(&mut self, origin: NodeId, level: u32, time: TimeTicks, color: ColorVector) -> u32 {
        self.nodes.push(VirtualNode {
            origin,
            level,
            time,
            color,
            left: NO_CHILD,
            right: NO_CHILD,
        });
        (self.nodes.len() - 1) as u32
    }

    /// Rebuilds in place, reusing allocations. `leaves` must be sorted by rank.
    pub fn rebuild(
        &mut self,
        tree: &MixtureTree,
        index: &LcaIndex,
        leaves: &[RankedLeaf],
    ) -> Result<(), DegenerateInput> {
        if leaves.len() < 2 {
            return Err(DegenerateInput(leaves.len()));
        }
        self.nodes.clear();
        self.postorder.clear();
        let mut stack = std::mem::take(&mut self.stack);
        stack.clear();

        let first = &leaves[0];
        stack.push(self.push(first.leaf(), tree.level(first.leaf()), TimeTicks::ZERO, first.color.vector()));

        for pair in leaves.windows(2) {
            let (a, a_level) = index.query_anchors(&pair[0].anchor, &pair[1].anchor);

            // Pop the part of the rightmost path below `a`, chaining each
            // popped node under the next one.
            let mut last = None;
            while let Some(&top) = stack.last() {
                if self.nodes[top as usize].level <= a_level {
                    break;
                }
                stack.pop();
                if let Some(child) = last {
                    self.attach(top, child);
                }
                self.finish(top);
                last = Some(top);
            }
            let below = last.expect("previous leaf lies strictly below the pair's ancestor");

            match stack.last() {
                // The top is an ancestor of the previous leaf, as is `a`.
                Some(&top) if self.nodes[top as usize].level == a_level => self.attach(top, below),
                _ => {
                    let id = self.push(a, a_level, tree.time(a), ColorVector::NONE);
                    self.attach(id, below);
                    stack.push(id);
                }
            }
            let w = &pair[1];
            stack.push(self.push(w.leaf(), tree.level(w.leaf()), TimeTicks::ZERO, w.color.vector()));
        }

        let mut last = None;
        while let Some(top) = stack.pop() {
            if let Some(child) = last {
                self.attach(top, child);
            }
            self.finish(top);
            last = Some(top);
        }
        self.stack = stack;
        Ok(())
    }
}

pub fn build_virtual_subtree(
    tree: &MixtureTree,
    index: &LcaIndex,
    leaves: &RankedLeafList,
) -> Result<VirtualSubtree, DegenerateInput> {
    let mut vt = VirtualSubtree::default();
    vt.rebuild(tree, index, leaves.entries())?;
    Ok(vt)
}

/// Weighted red/green pair count of one minimal subtree, together with the
/// unweighted pair count.
pub fn partial_distance_counted(v_time: TimeTicks, vt: &VirtualSubtree) -> (Distance, u64) {
    let mut total = 0u128;
    let mut pairs = 0u64;
    for node in vt.internal_nodes() {
        let (l, r) = (node.left as usize, node.right as usize);
        let number = pair_product(vt.nodes[l].color, vt.nodes[r].color);
        total += u128::from(v_time.abs_diff(node.time)) * u128::from(number);
        pairs += number;
    }
    (Distance(total), pairs)
}

pub fn partial_distance(v_time: TimeTicks, vt: &VirtualSubtree) -> Distance {
    partial_distance_counted(v_time, vt).0
}

/// Counters from one run of the fast engine.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FastStats {
    /// Red/green pairs counted over all processed nodes.
    pub pairs_counted: u128,
    /// `work_per_level[l]` is the summed leaf-list size over internal nodes
    /// at level `l` of the processed first tree.
    pub work_per_level: Vec<u64>,
    /// Largest number of list entries held at once. Only the lists of the
    /// level being built and of the level below it are kept.
    pub peak_live_entries: usize,
    /// The arguments were exchanged so that the shorter tree is processed.
    pub swapped: bool,
}

pub fn mixture_distance_fast(t1: &MixtureTree, t2: &MixtureTree) -> Result<Distance, DistanceError> {
    mixture_distance_fast_with_stats(t1, t2).map(|(d, _)| d)
}

pub fn mixture_distance_fast_with_stats(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<(Distance, FastStats), DistanceError> {
    let swapped = t2.height() < t1.height();
    let (t1, t2) = if swapped { (t2, t1) } else { (t1, t2) };
    let bij = prepare(t1, t2)?;
    let mut stats = FastStats {
        swapped,
        work_per_level: vec![0; t1.height() as usize],
        ..FastStats::default()
    };
    if t1.leaf_count() < 2 {
        return Ok((Distance(0), stats));
    }

    let index = LcaIndex::build(t2);
    let ranking = rank_leaves(t1, t2, &bij);
    let singleton = |leaf: NodeId| {
        let rank = ranking.first_rank(leaf).unwrap();
        [RankedLeaf::new(&index, rank, bij.get(leaf).unwrap(), Color::Red)]
    };

    // Lists of one level are stored back to back; `span[v]` locates the list
    // of an internal node `v` in `below` once its level is finished.
    let mut span = vec![(0u32, 0u32); t1.node_count()];
    let mut below: Vec<RankedLeaf> = Vec::new();
    let mut current: Vec<RankedLeaf> = Vec::new();
    let mut vt = VirtualSubtree::default();
    let mut total = 0u128;

    let mut order = t1.level_order(true);
    order.reverse();
    let mut level = t1.level(order[0]);
    for v in order {
        if t1.level(v) != level {
            level = t1.level(v);
            std::mem::swap(&mut below, &mut current);
            current.clear();
        }
        let (l, r) = t1.children(v).unwrap();
        let (one_l, one_r);
        let left: &[RankedLeaf] = if t1.is_leaf(l) {
            one_l = singleton(l);
            &one_l
        } else {
            let (start, len) = span[l.index()];
            &below[start as usize..(start + len) as usize]
        };
        let right: &[RankedLeaf] = if t1.is_leaf(r) {
            one_r = singleton(r);
            &one_r
        } else {
            let (start, len) = span[r.index()];
            &below[start as usize..(start + len) as usize]
        };

        let start = current.len();
        merge_into(left, right, &mut current);
        let merged = &current[start..];
        span[v.index()] = (start as u32, merged.len() as u32);
        stats.peak_live_entries = stats.peak_live_entries.max(below.len() + current.len());

        vt.rebuild(t2, &index, merged)
            .expect("an internal node of a full binary tree spans at least two leaves");
        let (part, pairs) = partial_distance_counted(t1.time(v), &vt);
        total += part.0;
        stats.pairs_counted += u128::from(pairs);
        stats.work_per_level[level as usize] += merged.len() as u64;
    }
    Ok((Distance(total), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;
    use crate::tree::Strictness;

    fn tree(s: &str) -> MixtureTree {
        parse_newick(s, Strictness::Strict).unwrap()
    }

    #[test]
    fn merge_recolors_by_side() {
        let t2 = tree("(((A,B)1,C)2,D)3;");
        let idx = LcaIndex::build(&t2);
        let ranks = t2.postorder_leaf_ranks();
        let entry = |r: u32| RankedLeaf::new(&idx, r, ranks.leaf(r), Color::Green);
        let merged = merge_leaf_lists(&[entry(1), entry(3)], &[entry(2)]);
        let got: Vec<_> = merged.entries().iter().map(|e| (e.rank, e.color)).collect();
        assert_eq!(got, [(1, Color::Red), (2, Color::Green), (3, Color::Red)]);
        assert_eq!(merge_leaf_lists(&[entry(4)], &[entry(2)]).len(), 2);
    }

    #[test]
    fn ranks_follow_second_tree() {
        let t1 = tree("((C,B)1,A)2;");
        let t2 = tree("((A,B)1,C)2;");
        let bij = crate::tree::check_comparable(&t1, &t2).unwrap();
        let ranking = rank_leaves(&t1, &t2, &bij);
        let ranks: Vec<u32> = t1.leaves().iter().map(|&l| ranking.first_rank(l).unwrap()).collect();
        assert_eq!(ranks, [3, 2, 1]);
    }

    #[test]
    fn two_leaf_subtree() {
        let t2 = tree("((A,B)1,(C,D)2)3;");
        let idx = LcaIndex::build(&t2);
        let ranks = t2.postorder_leaf_ranks();
        let list = RankedLeafList::from_sorted(vec![
            RankedLeaf::new(&idx, 2, ranks.leaf(2), Color::Red),
            RankedLeaf::new(&idx, 4, ranks.leaf(4), Color::Green),
        ]);
        let vt = build_virtual_subtree(&t2, &idx, &list).unwrap();
        let internal: Vec<_> = vt.internal_nodes().collect();
        assert_eq!(internal.len(), 1);
        assert_eq!(internal[0].origin, t2.root());
        assert_eq!(partial_distance(TimeTicks(1_000_000), &vt), Distance(2_000_000));
    }

    #[test]
    fn degenerate_and_monochrome() {
        let t2 = tree("((A,B)1,(C,D)2)3;");
        let idx = LcaIndex::build(&t2);
        let ranks = t2.postorder_leaf_ranks();
        let one = RankedLeafList::from_sorted(vec![RankedLeaf::new(&idx, 1, ranks.leaf(1), Color::Red)]);
        assert_eq!(build_virtual_subtree(&t2, &idx, &one).unwrap_err(), DegenerateInput(1));

        let all_red = RankedLeafList::from_sorted(
            (1..=4).map(|r| RankedLeaf::new(&idx, r, ranks.leaf(r), Color::Red)).collect(),
        );
        let vt = build_virtual_subtree(&t2, &idx, &all_red).unwrap();
        assert_eq!(vt.internal_nodes().count(), 3);
        assert_eq!(partial_distance(TimeTicks(9_000_000), &vt), Distance(0));
    }

    #[test]
    fn processes_shorter_tree() {
        let tall = tree("(((A,B)1,C)2,D)3;");
        let short = tree("((A,C)1,(B,D)2)3;");
        let (d1, s1) = mixture_distance_fast_with_stats(&tall, &short).unwrap();
        let (d2, s2) = mixture_distance_fast_with_stats(&short, &tall).unwrap();
        assert_eq!(d1, d2);
        assert!(s1.swapped);
        assert!(!s2.swapped);
        assert_eq!(s1.pairs_counted, 6);
        assert_eq!(s1.work_per_level, [4, 4]);
    }
}
