//! The nodal distance ignores times; the mixture distance does not.
use mixdist::{mixture_distance, nodal_distance, parse_newick, Algorithm, Strictness};

fn main() {
    let pairs = [
        ("((A,B)1,C)2;", "((A,B)2,C)5;"),
        ("((A,B)1,C)2;", "((A,C)1,B)2;"),
        ("((A,B)1,(C,D)2)3;", "(((A,B)1,C)2,D)3;"),
    ];
    for (a, b) in pairs {
        let t1 = parse_newick(a, Strictness::Strict).unwrap();
        let t2 = parse_newick(b, Strictness::Strict).unwrap();
        let mixture = mixture_distance(&t1, &t2, Algorithm::Fast).unwrap();
        let nodal = nodal_distance(&t1, &t2).unwrap();
        println!("{a:<20} {b:<20} mixture {mixture:<6} nodal {nodal}");
    }
}
