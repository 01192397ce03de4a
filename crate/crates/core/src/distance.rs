//! Mixture distance: the sum over unordered leaf pairs `{u, v}` of the
//! absolute difference between the times of their lowest common ancestors in
//! the two trees.
//!
//! Three engines compute the same integer:
//!
//! * [`mixture_distance_bruteforce`] walks parent pointers for every pair and
//!   serves as the oracle. It never touches [`LcaIndex`].
//! * [`mixture_distance_coloring`] colors the two sides of each internal node
//!   of the first tree and counts red/green pairs under every internal node of
//!   the second tree, O(n²).
//! * [`crate::fast::mixture_distance_fast`] restricts that count to the
//!   minimal subtree spanning the colored leaves, O(n·h).

use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::lca::LcaIndex;
use crate::time::{format_ticks, TimeTicks};
use crate::tree::{check_comparable, MixtureTree, NodeId, NotComparable};

/// A distance in ticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Distance(pub u128);

impl Distance {
    pub fn ticks(self) -> u128 {
        self.0
    }
}

/// Prints time units with the shortest exact decimal.
impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ticks(self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error(transparent)]
    NotComparable(#[from] NotComparable),
    #[error("distance of {leaves} leaves with times up to {max_ticks} ticks exceeds 128 bits")]
    Overflow { leaves: usize, max_ticks: u64 },
    #[error("the pair time is defined for two distinct leaves")]
    SameLeaf,
}

/// Which engine computes the distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Naive,
    Coloring,
    Fast,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Naive, Algorithm::Coloring, Algorithm::Fast];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Coloring => "coloring",
            Algorithm::Fast => "fast",
        }
    }
}

/// Counts of red and green leaves below a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ColorVector {
    pub red: u32,
    pub green: u32,
}

impl ColorVector {
    pub const NONE: ColorVector = ColorVector { red: 0, green: 0 };
    pub const RED: ColorVector = ColorVector { red: 1, green: 0 };
    pub const GREEN: ColorVector = ColorVector { red: 0, green: 1 };
}

impl Add for ColorVector {
    type Output = ColorVector;

    fn add(self, o: ColorVector) -> ColorVector {
        ColorVector {
            red: self.red + o.red,
            green: self.green + o.green,
        }
    }
}

/// Red/green pairs split between two sibling subtrees: `(a, b) * (c, d) = ad + bc`.
#[inline]
pub fn pair_product(a: ColorVector, b: ColorVector) -> u64 {
    u64::from(a.red) * u64::from(b.green) + u64::from(a.green) * u64::from(b.red)
}

/// Time of the lowest common ancestor of two distinct leaves.
pub fn lca_time(
    tree: &MixtureTree,
    index: &LcaIndex,
    u: NodeId,
    v: NodeId,
) -> Result<TimeTicks, DistanceError> {
    if u == v {
        return Err(DistanceError::SameLeaf);
    }
    Ok(tree.time(index.query(u, v)))
}

/// Rejects inputs whose worst-case distance, C(n,2) times the largest time,
/// does not fit in 128 bits.
pub fn check_capacity(leaves: usize, max_ticks: u64) -> Result<(), DistanceError> {
    let n = leaves as u128;
    n.checked_mul(n.saturating_sub(1))
        .and_then(|p| (p / 2).checked_mul(u128::from(max_ticks)))
        .map(|_| ())
        .ok_or(DistanceError::Overflow { leaves, max_ticks })
}

pub(crate) fn prepare(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<crate::tree::LeafBijection, DistanceError> {
    let bij = check_comparable(t1, t2)?;
    check_capacity(t1.leaf_count(), t1.max_time().max(t2.max_time()).ticks())?;
    Ok(bij)
}

/// Sums over every unordered leaf pair using parent-pointer walks only.
pub fn mixture_distance_bruteforce(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<Distance, DistanceError> {
    let bij = prepare(t1, t2)?;
    let leaves = t1.leaves();
    let mut total = 0u128;
    for (i, &x) in leaves.iter().enumerate() {
        let x2 = bij.get(x).unwrap();
        for &y in &leaves[i + 1..] {
            let y2 = bij.get(y).unwrap();
            let p1 = t1.time(t1.lca_naive(x, y));
            let p2 = t2.time(t2.lca_naive(x2, y2));
            total += u128::from(p1.abs_diff(p2));
        }
    }
    Ok(Distance(total))
}

/// Counters from one run of the coloring engine.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoringStats {
    /// Sum of `number(u)` over every processed `(v, u)`.
    pub pairs_counted: u128,
    /// For each internal `v` of the first tree, in breadth-first order, the
    /// red/green pairs counted while `v` was colored.
    pub per_node: Vec<(NodeId, u64)>,
}

pub fn mixture_distance_coloring(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<Distance, DistanceError> {
    mixture_distance_coloring_with_stats(t1, t2).map(|(d, _)| d)
}

pub fn mixture_distance_coloring_with_stats(
    t1: &MixtureTree,
    t2: &MixtureTree,
) -> Result<(Distance, ColoringStats), DistanceError> {
    let bij = prepare(t1, t2)?;
    let outer = t1.level_order(true);
    let sweep = Sweep::new(t2);

    // A leaf of the second tree is colored in iteration `epoch` iff
    // `mark >> 1 == epoch`; the low bit selects green. Nothing is cleared
    // between iterations.
    let mut mark = vec![0u32; t2.node_count()];
    let mut color = vec![ColorVector::NONE; sweep.nodes.len()];
    let mut stats = ColoringStats {
        pairs_counted: 0,
        per_node: Vec::with_capacity(outer.len()),
    };
    let mut total = 0u128;

    for (epoch, &v) in (1u32..).zip(&outer) {
        let (left, right) = t1.children(v).unwrap();
        for (side, green) in [(left, 0), (right, 1)] {
            for id in t1.subtree_range(side).map(NodeId::new) {
                if let Some(w) = bij.get(id) {
                    mark[w.index()] = epoch << 1 | green;
                }
            }
        }

        let v_time = t1.time(v);
        let mut counted = 0u64;
        for (i, u) in sweep.nodes.iter().enumerate() {
            let child_color = |c: u32| {
                if c & LEAF_BIT == 0 {
                    color[c as usize]
                } else {
                    let m = mark[(c & !LEAF_BIT) as usize];
                    match (m >> 1 == epoch, m & 1) {
                        (false, _) => ColorVector::NONE,
                        (true, 0) => ColorVector::RED,
                        (true, _) => ColorVector::GREEN,
                    }
                }
            };
            let (cl, cr) = (child_color(u.left), child_color(u.right));
            let number = pair_product(cl, cr);
            total += u128::from(v_time.abs_diff(u.time)) * u128::from(number);
            counted += number;
            color[i] = cl + cr;
        }
        stats.pairs_counted += u128::from(counted);
        stats.per_node.push((v, counted));
    }
    Ok((Distance(total), stats))
}

const LEAF_BIT: u32 = 1 << 31;

struct SweepNode {
    /// Leaf id with `LEAF_BIT` set, or the child's position in the sweep.
    left: u32,
    right: u32,
    time: TimeTicks,
}

/// Internal nodes of a tree in reverse breadth-first order, so every node
/// comes after its internal children.
struct Sweep {
    nodes: Vec<SweepNode>,
}

impl Sweep {
    fn new(tree: &MixtureTree) -> Sweep {
        let mut order = tree.level_order(true);
        order.reverse();
        let mut position = vec![0u32; tree.node_count()];
        for (i, u) in order.iter().enumerate() {
            position[u.index()] = i as u32;
        }
        let encode = |c: NodeId| {
            if tree.is_leaf(c) {
                c.index() as u32 | LEAF_BIT
            } else {
                position[c.index()]
            }
        };
        let nodes = order
            .iter()
            .map(|&u| {
                let (l, r) = tree.children(u).unwrap();
                SweepNode {
                    left: encode(l),
                    right: encode(r),
                    time: tree.time(u),
                }
            })
            .collect();
        Sweep { nodes }
    }
}

/// Computes the distance with the selected engine.
pub fn mixture_distance(
    t1: &MixtureTree,
    t2: &MixtureTree,
    algo: Algorithm,
) -> Result<Distance, DistanceError> {
    match algo {
        Algorithm::Naive => mixture_distance_bruteforce(t1, t2),
        Algorithm::Coloring => mixture_distance_coloring(t1, t2),
        Algorithm::Fast => crate::fast::mixture_distance_fast(t1, t2),
    }
}
