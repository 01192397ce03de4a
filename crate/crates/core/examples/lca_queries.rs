//! Constant-time LCA queries checked against parent walking.
use mixdist::treegen::{random_mixture_tree, GenSpec, TreeShape};
use mixdist::LcaIndex;

fn main() {
    let tree = random_mixture_tree(&GenSpec::new(10_000, 3, TreeShape::Random)).unwrap();
    let index = LcaIndex::build(&tree);
    println!("euler tour length {}", index.euler_tour().len());

    let leaves = tree.leaves();
    let mut checked = 0;
    for (i, &x) in leaves.iter().enumerate().step_by(97) {
        let y = leaves[(i * 31 + 5) % leaves.len()];
        let (a, level) = index.query_with_level(x, y);
        assert_eq!(a, tree.lca_naive(x, y));
        assert_eq!(level, tree.level(a));
        checked += 1;
    }
    println!("{checked} queries agree with the naive walk");

    let (x, y) = (leaves[0], leaves[leaves.len() - 1]);
    let a = index.query(x, y);
    println!("lca({}, {}) = node {} at time {}", tree.label(x).unwrap(), tree.label(y).unwrap(), a.index(), tree.time(a));
}
