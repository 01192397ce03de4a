//! Spot-check identity, symmetry and the triangle inequality on random trees.
use mixdist::treegen::{random_comparable_pair, GenSpec, PairMode, TreeShape};
use mixdist::{mixture_distance, trees_identical, Algorithm, MixtureTree};

fn d(a: &MixtureTree, b: &MixtureTree) -> u128 {
    mixture_distance(a, b, Algorithm::Fast).unwrap().ticks()
}

fn main() {
    let mut violations = 0;
    for seed in 0..200u64 {
        let spec = |s| GenSpec::new(64, s, TreeShape::Random);
        let a = random_comparable_pair(&spec(seed), PairMode::PermutedLeaves).unwrap().0;
        let b = random_comparable_pair(&spec(seed), PairMode::PermutedLeaves).unwrap().1;
        let c = random_comparable_pair(&spec(seed + 1000), PairMode::PermutedLeaves).unwrap().1;
        let ok = d(&a, &a) == 0
            && d(&a, &b) == d(&b, &a)
            && d(&a, &c) <= d(&a, &b) + d(&b, &c)
            && (d(&a, &b) == 0) == trees_identical(&a, &b);
        violations += usize::from(!ok);
    }
    println!("200 triples, {violations} violations");
}
