//! Build the minimal subtree spanning a colored leaf subset and count its
//! weighted red/green pairs.
use mixdist::fast::{build_virtual_subtree, partial_distance, Color, RankedLeaf, RankedLeafList};
use mixdist::{parse_newick, LcaIndex, Strictness, TimeTicks};

fn main() {
    let tree = parse_newick("((((A,B)1,C)2,D)4,(E,(F,(G,H)1)2)3)5;", Strictness::Strict).unwrap();
    let index = LcaIndex::build(&tree);
    let ranks = tree.postorder_leaf_ranks();

    let picks = [("A", Color::Red), ("B", Color::Green), ("G", Color::Red), ("H", Color::Green)];
    let list = RankedLeafList::from_sorted(
        picks
            .iter()
            .map(|&(label, color)| {
                let leaf = tree.leaf_by_label(label).unwrap();
                RankedLeaf::new(&index, ranks.rank(leaf).unwrap(), leaf, color)
            })
            .collect(),
    );
    let vt = build_virtual_subtree(&tree, &index, &list).unwrap();

    for i in vt.postorder() {
        let node = &vt.nodes()[i];
        let name = tree.label(node.origin).map_or_else(|| format!("node {}", node.origin.index()), str::to_owned);
        match node.children() {
            Some((l, r)) => println!("{name} time {} children {l} {r} colors {:?}", node.time, node.color),
            None => println!("{name} leaf"),
        }
    }
    println!("partial distance at time 2.5: {}", partial_distance(TimeTicks(2_500_000), &vt));
}
