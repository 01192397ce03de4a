//! Seeded generation of single trees and comparable pairs.
use mixdist::newick::write_newick;
use mixdist::treegen::{random_comparable_pair, random_mixture_tree, GenSpec, PairMode, TimeModel, TreeShape};
use mixdist::{mixture_distance, Algorithm, TimeTicks};

fn main() {
    for shape in [TreeShape::Random, TreeShape::Complete, TreeShape::Caterpillar] {
        let tree = random_mixture_tree(&GenSpec::new(8, 42, shape)).unwrap();
        println!("{:<12} {}", shape.name(), write_newick(&tree));
    }

    let spec = GenSpec {
        time_model: TimeModel::UniformJitter { max_step: 2_000_000 },
        ..GenSpec::new(500, 9, TreeShape::Random)
    };
    let modes = [
        PairMode::Independent,
        PairMode::SameTopologyJitteredTimes { max_jitter: TimeTicks(500_000) },
        PairMode::PermutedLeaves,
    ];
    for mode in modes {
        let (t1, t2) = random_comparable_pair(&spec, mode).unwrap();
        println!("{mode:?}: distance {}", mixture_distance(&t1, &t2, Algorithm::Fast).unwrap());
    }

    let again = random_mixture_tree(&GenSpec::new(8, 42, TreeShape::Random)).unwrap();
    let first = random_mixture_tree(&GenSpec::new(8, 42, TreeShape::Random)).unwrap();
    assert_eq!(write_newick(&first), write_newick(&again));
    println!("same seed, same tree");
}
