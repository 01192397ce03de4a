#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mixdist::newick::parse_newick;
use mixdist::time::TimeTicks;
use mixdist::tree::{build_tree, MixtureTree, NodeId, Strictness};
use mixdist::treegen::{random_comparable_pair, GenSpec, PairMode, TimeModel, TreeShape};

pub fn tree(text: &str) -> MixtureTree {
    parse_newick(text, Strictness::Strict).unwrap()
}

pub fn shape_for(k: u64) -> TreeShape {
    match k % 3 {
        0 => TreeShape::Random,
        1 => TreeShape::Caterpillar,
        _ => TreeShape::Complete,
    }
}

/// A seeded pair; complete shapes round `n` down to a power of two.
pub fn pair(n: usize, seed: u64, shape: TreeShape, mode: PairMode) -> (MixtureTree, MixtureTree) {
    let n = match shape {
        TreeShape::Complete => 1 << (usize::BITS - 1 - n.max(1).leading_zeros()),
        _ => n.max(1),
    };
    let spec = GenSpec {
        n,
        seed,
        shape,
        time_model: TimeModel::UniformJitter { max_step: 3_000_000 },
    };
    random_comparable_pair(&spec, mode).unwrap()
}

/// Rounds every internal time down to a multiple of `step`, which keeps
/// parent >= child but creates ties, so the result is only weakly monotone.
pub fn coarsen(tree: &MixtureTree, step: u64) -> MixtureTree {
    let mut records = tree.to_records();
    for r in &mut records {
        r.time = r.time.map(|t| TimeTicks(t.0 / step * step));
    }
    build_tree(&records, Strictness::Weak).unwrap()
}

/// Swaps the children of `v`.
pub fn swap_children(tree: &MixtureTree, v: NodeId) -> MixtureTree {
    let mut records = tree.to_records();
    records[v.index()].children.reverse();
    build_tree(&records, tree.strictness()).unwrap()
}

/// Pair times of every unordered label pair, computed by walking parents.
pub fn pair_times(tree: &MixtureTree) -> BTreeMap<(String, String), u64> {
    let leaves = tree.leaves();
    let mut out = BTreeMap::new();
    for (i, &x) in leaves.iter().enumerate() {
        for &y in &leaves[i + 1..] {
            let (a, b) = (tree.label(x).unwrap(), tree.label(y).unwrap());
            let key = if a < b { (a, b) } else { (b, a) };
            let t = tree.time(tree.lca_naive(x, y)).0;
            out.insert((key.0.to_owned(), key.1.to_owned()), t);
        }
    }
    out
}

/// Label pair maximizing `|P1 - P2|`; ties go to the smallest pair.
pub fn argmax_pair(t1: &MixtureTree, t2: &MixtureTree) -> Option<(String, String)> {
    let p2 = pair_times(t2);
    let mut best: Option<(u64, (String, String))> = None;
    for (key, a) in pair_times(t1) {
        let d = a.abs_diff(p2[&key]);
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, key));
        }
    }
    best.map(|(_, k)| k)
}

/// Minimal subtree of `tree` spanning `leaves`, by brute force: every
/// pairwise LCA is marked, and each marked node hangs under its nearest
/// marked proper ancestor. Maps each marked node to its parent (`None` for
/// the root) and its time.
pub fn minimal_subtree(tree: &MixtureTree, leaves: &[NodeId]) -> BTreeMap<NodeId, (Option<NodeId>, TimeTicks)> {
    let mut marked: BTreeSet<NodeId> = leaves.iter().copied().collect();
    for (i, &x) in leaves.iter().enumerate() {
        for &y in &leaves[i + 1..] {
            marked.insert(tree.lca_naive(x, y));
        }
    }
    marked
        .iter()
        .map(|&v| {
            let mut p = tree.parent(v);
            while let Some(u) = p {
                if marked.contains(&u) {
                    break;
                }
                p = tree.parent(u);
            }
            (v, (p, tree.time(v)))
        })
        .collect()
}

/// The same map read off a built virtual subtree.
pub fn virtual_map(vt: &mixdist::fast::VirtualSubtree) -> BTreeMap<NodeId, (Option<NodeId>, TimeTicks)> {
    let nodes = vt.nodes();
    let mut parent = vec![None; nodes.len()];
    for (i, n) in nodes.iter().enumerate() {
        if let Some((l, r)) = n.children() {
            parent[l] = Some(nodes[i].origin);
            parent[r] = Some(nodes[i].origin);
        }
    }
    nodes.iter().zip(parent).map(|(n, p)| (n.origin, (p, n.time))).collect()
}
