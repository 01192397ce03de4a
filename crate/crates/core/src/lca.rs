//! Constant-time lowest common ancestor queries.
//!
//! Euler tour of the tree plus a range-minimum structure over tour depths.
//! The tour is cut into blocks of [`BLOCK`] positions. A sparse table covers
//! the block minima, and per-block prefix and suffix minima cover the partial
//! blocks at either end of a query. Preprocessing is O(N + (N/B) log(N/B))
//! for N nodes. A query spanning blocks takes four lookups; one inside a
//! single block scans at most `BLOCK` keys.

use crate::tree::{MixtureTree, NodeId};

/// Tour positions per block.
pub const BLOCK: usize = 64;

/// Everything a query needs about one endpoint, precomputed so that callers
/// issuing many queries on the same nodes can keep it next to their own data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    prefix: u64,
    suffix: u64,
    pos: u32,
    node: NodeId,
}

impl Anchor {
    pub fn node(&self) -> NodeId {
        self.node
    }
}

#[derive(Debug, Clone)]
pub struct LcaIndex {
    euler_tour: Vec<NodeId>,
    first_occurrence: Vec<u32>,
    /// `key(j) = depth << 32 | node` for the node at tour position `j`.
    /// Between two first occurrences the shallowest depth belongs to a single
    /// node, the LCA, so equal depths never compete within a query.
    keys: Vec<u64>,
    /// Minimum key from the start of `j`'s block through `j`.
    prefix: Vec<u64>,
    /// Minimum key from `j` through the end of its block.
    suffix: Vec<u64>,
    /// `table[k][b]` is the minimum key over blocks `b..b + 2^k`.
    table: Vec<Vec<u64>>,
}

#[inline]
fn key(depth: u32, node: NodeId) -> u64 {
    (u64::from(depth) << 32) | node.index() as u64
}

#[inline]
fn scan(keys: &[u64]) -> u64 {
    keys.iter().copied().fold(u64::MAX, u64::min)
}

impl LcaIndex {
    pub fn build(tree: &MixtureTree) -> LcaIndex {
        let len = 2 * tree.node_count() - 1;
        let mut euler_tour = Vec::with_capacity(len);
        let mut first_occurrence = vec![u32::MAX; tree.node_count()];

        // (node, children already visited)
        let mut stack = vec![(tree.root(), 0u8)];
        while let Some(&mut (v, ref mut visited)) = stack.last_mut() {
            if *visited == 0 {
                first_occurrence[v.index()] = euler_tour.len() as u32;
            }
            euler_tour.push(v);
            match (tree.children(v), *visited) {
                (Some((l, _)), 0) => {
                    *visited = 1;
                    stack.push((l, 0));
                }
                (Some((_, r)), 1) => {
                    *visited = 2;
                    stack.push((r, 0));
                }
                _ => {
                    stack.pop();
                }
            }
        }
        // a node is emitted every time it is on top, including return visits
        debug_assert_eq!(euler_tour.len(), len);

        let keys: Vec<u64> = euler_tour
            .iter()
            .map(|&v| key(tree.level(v), v))
            .collect();
        let mut prefix = keys.clone();
        let mut suffix = keys.clone();
        for (p, s) in prefix.chunks_mut(BLOCK).zip(suffix.chunks_mut(BLOCK)) {
            for i in 1..p.len() {
                p[i] = p[i].min(p[i - 1]);
            }
            for i in (0..s.len() - 1).rev() {
                s[i] = s[i].min(s[i + 1]);
            }
        }
        let blocks: Vec<u64> = suffix.iter().step_by(BLOCK).copied().collect();
        let m = blocks.len();
        let mut table = vec![blocks];
        let mut width = 1;
        while 2 * width <= m {
            let prev = table.last().unwrap();
            let row: Vec<u64> = (0..=m - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            table.push(row);
            width *= 2;
        }

        LcaIndex {
            euler_tour,
            first_occurrence,
            keys,
            prefix,
            suffix,
            table,
        }
    }

    pub fn euler_tour(&self) -> &[NodeId] {
        &self.euler_tour
    }

    pub fn first_occurrence(&self, v: NodeId) -> usize {
        self.first_occurrence[v.index()] as usize
    }

    /// Lowest common ancestor of `u` and `v`.
    #[inline]
    pub fn query(&self, u: NodeId, v: NodeId) -> NodeId {
        self.query_with_level(u, v).0
    }

    /// Lowest common ancestor together with its level.
    #[inline]
    pub fn query_with_level(&self, u: NodeId, v: NodeId) -> (NodeId, u32) {
        self.query_positions(self.first_occurrence(u), self.first_occurrence(v))
    }

    pub fn anchor(&self, v: NodeId) -> Anchor {
        let pos = self.first_occurrence(v);
        Anchor {
            prefix: self.prefix[pos],
            suffix: self.suffix[pos],
            pos: pos as u32,
            node: v,
        }
    }

    /// Same as [`LcaIndex::query_with_level`] on anchored endpoints.
    #[inline]
    pub fn query_anchors(&self, a: &Anchor, b: &Anchor) -> (NodeId, u32) {
        let (lo, hi) = if a.pos <= b.pos { (a, b) } else { (b, a) };
        let best = self.range_min(lo.pos as usize, hi.pos as usize, lo.suffix, hi.prefix);
        (NodeId::new((best & 0xFFFF_FFFF) as usize), (best >> 32) as u32)
    }

    #[inline]
    fn query_positions(&self, a: usize, b: usize) -> (NodeId, u32) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let best = self.range_min(lo, hi, self.suffix[lo], self.prefix[hi]);
        (NodeId::new((best & 0xFFFF_FFFF) as usize), (best >> 32) as u32)
    }

    /// Smallest key over tour positions `lo..=hi`, given the suffix minimum
    /// at `lo` and the prefix minimum at `hi`.
    #[inline]
    fn range_min(&self, lo: usize, hi: usize, lo_suffix: u64, hi_prefix: u64) -> u64 {
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return scan(&self.keys[lo..=hi]);
        }
        let mut best = lo_suffix.min(hi_prefix);
        if bl + 1 < bh {
            let (first, last) = (bl + 1, bh - 1);
            let k = (usize::BITS - 1 - (last - first + 1).leading_zeros()) as usize;
            let row = &self.table[k];
            best = best.min(row[first]).min(row[last + 1 - (1 << k)]);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;
    use crate::tree::Strictness;

    #[test]
    fn tour_shapes() {
        let leaf = parse_newick("A;", Strictness::Strict).unwrap();
        let idx = LcaIndex::build(&leaf);
        assert_eq!(idx.euler_tour().len(), 1);
        assert_eq!(idx.query(leaf.root(), leaf.root()), leaf.root());

        let t = parse_newick("((A,B)1,C)2;", Strictness::Strict).unwrap();
        let idx = LcaIndex::build(&t);
        assert_eq!(idx.euler_tour().len(), 9);
        assert_eq!(idx.first_occurrence(t.root()), 0);
        for w in idx.euler_tour().windows(2) {
            assert_eq!(t.level(w[0]).abs_diff(t.level(w[1])), 1);
        }
    }

    #[test]
    fn queries() {
        let t = parse_newick("((A,B)1,C)2;", Strictness::Strict).unwrap();
        let idx = LcaIndex::build(&t);
        let a = t.leaf_by_label("A").unwrap();
        let b = t.leaf_by_label("B").unwrap();
        let c = t.leaf_by_label("C").unwrap();
        assert_eq!(idx.query(a, c), t.root());
        assert_eq!(idx.query(a, b), NodeId::new(1));
        assert_eq!(idx.query(b, a), NodeId::new(1));
        assert_eq!(idx.query(b, b), b);
        assert_eq!(idx.query(a, NodeId::new(1)), NodeId::new(1));
    }

    #[test]
    fn queries_across_many_blocks() {
        use crate::treegen::{random_comparable_pair, GenSpec, PairMode, TreeShape};
        for shape in [TreeShape::Random, TreeShape::Caterpillar, TreeShape::Complete] {
            let (t, _) = random_comparable_pair(&GenSpec::new(512, 3, shape), PairMode::Independent).unwrap();
            let idx = LcaIndex::build(&t);
            assert!(idx.euler_tour().len() > 8 * BLOCK);
            let nodes: Vec<NodeId> = t.nodes().collect();
            for (i, &u) in nodes.iter().enumerate().step_by(7) {
                for &v in nodes.iter().skip(i % 5).step_by(3) {
                    assert_eq!(idx.query(u, v), t.lca_naive(u, v));
                }
            }
        }
    }
}
