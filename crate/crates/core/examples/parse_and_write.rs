//! Parse a timed Newick string, inspect it, and write it back.
use mixdist::{parse_newick, write_newick, Strictness};

fn main() {
    let text = "( (A,B)1.5 , (C,D)0.25 )3;";
    let tree = match parse_newick(text, Strictness::Strict) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("parse failed: {e}");
            std::process::exit(1);
        }
    };
    println!("leaves {} height {} max time {}", tree.leaf_count(), tree.height(), tree.max_time());
    for v in tree.level_order(true) {
        let (l, r) = tree.children(v).unwrap();
        println!("  node {} at level {} time {} -> {} {}", v.index(), tree.level(v), tree.time(v), l.index(), r.index());
    }
    println!("canonical: {}", write_newick(&tree));

    // Equal parent and child times only pass in weak mode.
    let tied = "((A,B)1,C)1;";
    println!("strict: {:?}", parse_newick(tied, Strictness::Strict).map(|_| ()));
    println!("weak:   {:?}", parse_newick(tied, Strictness::Weak).map(|_| ()));
}
