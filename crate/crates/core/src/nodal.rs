//! Nodal distance, the structure-only baseline: the sum over unordered leaf
//! pairs of the difference in path length (edge count) between the trees.
//! Mutation times play no part.

use crate::lca::LcaIndex;
use crate::tree::{check_comparable, MixtureTree, NodeId, NotComparable};

/// Number of edges on a path between two nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathLength(pub u32);

pub fn path_length(tree: &MixtureTree, index: &LcaIndex, x: NodeId, y: NodeId) -> PathLength {
    let w = index.query(x, y);
    PathLength(tree.level(x) + tree.level(y) - 2 * tree.level(w))
}

/// O(n²) with constant-time LCA queries.
pub fn nodal_distance(t1: &MixtureTree, t2: &MixtureTree) -> Result<u64, NotComparable> {
    let bij = check_comparable(t1, t2)?;
    let (i1, i2) = (LcaIndex::build(t1), LcaIndex::build(t2));
    let leaves = t1.leaves();
    let mut total = 0u64;
    for (i, &x) in leaves.iter().enumerate() {
        let x2 = bij.get(x).unwrap();
        for &y in &leaves[i + 1..] {
            let d1 = path_length(t1, &i1, x, y).0;
            let d2 = path_length(t2, &i2, x2, bij.get(y).unwrap()).0;
            total += u64::from(d1.abs_diff(d2));
        }
    }
    Ok(total)
}
