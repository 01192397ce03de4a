//! Run the brute-force, coloring and fast engines on one pair.
use std::time::Instant;

use mixdist::treegen::{random_comparable_pair, GenSpec, PairMode, TreeShape};
use mixdist::{mixture_distance, parse_newick, Algorithm, Strictness};

fn main() {
    let t1 = parse_newick("(((A,B)1,C)2,D)3;", Strictness::Strict).unwrap();
    let t2 = parse_newick("((A,C)1,(B,D)2)4;", Strictness::Strict).unwrap();
    for algo in Algorithm::ALL {
        println!("{:>8}: {}", algo.name(), mixture_distance(&t1, &t2, algo).unwrap());
    }

    let (t1, t2) = random_comparable_pair(&GenSpec::new(2000, 7, TreeShape::Random), PairMode::Independent).unwrap();
    println!("random pair, n = 2000, heights {} and {}", t1.height(), t2.height());
    for algo in Algorithm::ALL {
        let start = Instant::now();
        let d = mixture_distance(&t1, &t2, algo).unwrap();
        println!("{:>8}: {d} in {:.1?}", algo.name(), start.elapsed());
    }
}
