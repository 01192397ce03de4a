mod common;

use common::{minimal_subtree, pair, shape_for, tree, virtual_map};
use mixdist::fast::{build_virtual_subtree, merge_leaf_lists, partial_distance_counted, Color, RankedLeaf, RankedLeafList};
use mixdist::time::TimeTicks;
use mixdist::tree::NodeId;
use mixdist::treegen::PairMode;
use mixdist::LcaIndex;
use proptest::prelude::*;
use proptest::sample::subsequence;

proptest! {
    #[test]
    fn lca_matches_parent_walk(n in 1usize..64, seed: u64) {
        let t = pair(n, seed, shape_for(seed), PairMode::PermutedLeaves).0;
        let idx = LcaIndex::build(&t);
        prop_assert_eq!(idx.euler_tour().len(), 2 * t.node_count() - 1);
        for u in t.nodes() {
            for v in t.nodes() {
                prop_assert_eq!(idx.query(u, v), t.lca_naive(u, v));
            }
        }
    }

    #[test]
    fn level_order_puts_parents_first(n in 1usize..100, seed: u64) {
        let t = pair(n, seed, shape_for(seed), PairMode::Independent).0;
        let all = t.level_order(false);
        prop_assert_eq!(all.len(), t.node_count());
        let mut seen = vec![false; t.node_count()];
        for w in all.windows(2) {
            prop_assert!(t.level(w[0]) <= t.level(w[1]));
        }
        for &v in &all {
            if let Some(p) = t.parent(v) {
                prop_assert!(seen[p.index()]);
            }
            seen[v.index()] = true;
        }
        let internal: Vec<NodeId> = all.iter().copied().filter(|&v| !t.is_leaf(v)).collect();
        prop_assert_eq!(t.level_order(true), internal);
    }

    #[test]
    fn ranks_follow_leaf_order(n in 1usize..100, seed: u64) {
        let t = pair(n, seed, shape_for(seed), PairMode::PermutedLeaves).1;
        let ranks = t.postorder_leaf_ranks();
        prop_assert_eq!(ranks.len(), t.leaf_count());
        for (i, &leaf) in t.leaves().iter().enumerate() {
            prop_assert_eq!(ranks.rank(leaf), Some(i as u32 + 1));
            prop_assert_eq!(ranks.leaf(i as u32 + 1), leaf);
        }
        let idx = LcaIndex::build(&t);
        for w in t.leaves().windows(2) {
            prop_assert!(idx.first_occurrence(w[0]) < idx.first_occurrence(w[1]));
        }
    }

    #[test]
    fn merge_is_sorted_union(a in subsequence((1u32..=40).collect::<Vec<_>>(), 0..40), pick in any::<u64>()) {
        let t = pair(40, 1, mixdist::treegen::TreeShape::Random, PairMode::Independent).0;
        let idx = LcaIndex::build(&t);
        let ranks = t.postorder_leaf_ranks();
        let (left, right): (Vec<u32>, Vec<u32>) = a.iter().partition(|&&r| pick >> (r % 64) & 1 == 0);
        let entry = |r: u32| RankedLeaf::new(&idx, r, ranks.leaf(r), Color::Green);
        let l: Vec<_> = left.iter().map(|&r| entry(r)).collect();
        let r: Vec<_> = right.iter().map(|&r| entry(r)).collect();
        let merged = merge_leaf_lists(&l, &r);
        let got: Vec<u32> = merged.entries().iter().map(|e| e.rank).collect();
        prop_assert_eq!(&got, &a);
        prop_assert_eq!(merged.count(Color::Red), left.len());
        for e in merged.entries() {
            let expect = if left.contains(&e.rank) { Color::Red } else { Color::Green };
            prop_assert_eq!(e.color, expect);
        }
    }

    #[test]
    fn virtual_subtree_matches_brute_force(n in 2usize..64, seed: u64, subset in any::<u64>(), colors in any::<u64>()) {
        let t = pair(n, seed, shape_for(seed), PairMode::PermutedLeaves).1;
        let n = t.leaf_count();
        let idx = LcaIndex::build(&t);
        let ranks = t.postorder_leaf_ranks();
        // Keep a pseudo-random subset of at least two leaves.
        let mut chosen: Vec<u32> = (1..=n as u32).filter(|r| subset.rotate_left(*r) & 3 != 0).collect();
        if chosen.len() < 2 {
            chosen = vec![1, n as u32];
        }
        let color = |r: u32| if colors >> (r % 64) & 1 == 0 { Color::Red } else { Color::Green };
        let list = RankedLeafList::from_sorted(
            chosen.iter().map(|&r| RankedLeaf::new(&idx, r, ranks.leaf(r), color(r))).collect(),
        );
        let vt = build_virtual_subtree(&t, &idx, &list).unwrap();
        let leaves: Vec<NodeId> = chosen.iter().map(|&r| ranks.leaf(r)).collect();
        prop_assert_eq!(virtual_map(&vt), minimal_subtree(&t, &leaves));
        prop_assert_eq!(vt.internal_nodes().count(), leaves.len() - 1);
        for node in vt.internal_nodes() {
            let (l, r) = node.children().unwrap();
            prop_assert_eq!(node.color, vt.nodes()[l].color + vt.nodes()[r].color);
        }

        // Each red/green pair is counted at the node standing for its LCA.
        let reds = list.count(Color::Red) as u64;
        let (_, pairs) = partial_distance_counted(TimeTicks::ZERO, &vt);
        prop_assert_eq!(pairs, reds * (leaves.len() as u64 - reds));
        let mut expected = 0u128;
        for (i, x) in list.entries().iter().enumerate() {
            for y in &list.entries()[i + 1..] {
                if x.color != y.color {
                    expected += u128::from(t.time(t.lca_naive(x.leaf(), y.leaf())).0);
                }
            }
        }
        prop_assert_eq!(partial_distance_counted(TimeTicks::ZERO, &vt).0.ticks(), expected);
    }
}

/// Leaves A, B, G, H of a tree where lca(B, G) is the root and the later
/// leaf pair G, H has an earlier LCA than B, G.
#[test]
fn chain_reattachment_instance() {
    let t = tree("((((A,B)1,C)2,D)4,(E,(F,(G,H)1)2)3)5;");
    let idx = LcaIndex::build(&t);
    let ranks = t.postorder_leaf_ranks();
    let by = |l: &str| t.leaf_by_label(l).unwrap();
    let entry = |l: &str| RankedLeaf::new(&idx, ranks.rank(by(l)).unwrap(), by(l), Color::Red);

    // After three leaves: lca(B, G) on top of lca(A, B) and G.
    let three = RankedLeafList::from_sorted(vec![entry("A"), entry("B"), entry("G")]);
    let vt = build_virtual_subtree(&t, &idx, &three).unwrap();
    let root = &vt.nodes()[vt.root()];
    assert_eq!(root.origin, t.lca_naive(by("B"), by("G")));
    let (l, r) = root.children().unwrap();
    assert_eq!(vt.nodes()[l].origin, t.lca_naive(by("A"), by("B")));
    assert_eq!(vt.nodes()[r].origin, by("G"));

    // H moves G's edge under lca(G, H), which itself hangs under lca(B, G).
    let four = RankedLeafList::from_sorted(vec![entry("A"), entry("B"), entry("G"), entry("H")]);
    let vt = build_virtual_subtree(&t, &idx, &four).unwrap();
    let root = &vt.nodes()[vt.root()];
    assert_eq!(root.origin, t.root());
    assert_eq!(root.time, TimeTicks::from_units(5).unwrap());
    let (l, r) = root.children().unwrap();
    assert_eq!(vt.nodes()[l].origin, t.lca_naive(by("A"), by("B")));
    assert_eq!(vt.nodes()[r].origin, t.lca_naive(by("G"), by("H")));
    let leaves: Vec<NodeId> = ["A", "B", "G", "H"].map(by).to_vec();
    assert_eq!(virtual_map(&vt), minimal_subtree(&t, &leaves));
}
