//! Mixture distance between comparable mixture trees.
//!
//! A mixture tree is a rooted full binary tree whose leaves are labelled and
//! whose internal nodes carry mutation times that increase toward the root.
//! The mixture distance of two trees over the same labels sums, over every
//! unordered leaf pair, the absolute difference between the times of the
//! pair's lowest common ancestors.
//!
//! ```
//! use mixdist::{mixture_distance, parse_newick, Algorithm, Strictness};
//!
//! let t1 = parse_newick("((A,B)1,C)2;", Strictness::Strict).unwrap();
//! let t2 = parse_newick("((A,C)1,B)2;", Strictness::Strict).unwrap();
//! for algo in Algorithm::ALL {
//!     assert_eq!(mixture_distance(&t1, &t2, algo).unwrap().to_string(), "2");
//! }
//! ```
//!
//! Modules:
//!
//! * [`tree`]: the tree model, validation, traversals, comparability.
//! * [`newick`]: the timed Newick dialect.
//! * [`lca`]: constant-time lowest common ancestor queries.
//! * [`distance`]: brute-force and coloring engines, plus the dispatcher.
//! * [`fast`]: the O(n·h) engine built on minimal spanning subtrees.
//! * [`nodal`]: the structure-only nodal distance.
//! * [`treegen`]: seeded random trees and comparable pairs.
//! * [`bench`]: timing harness and log-log slope fits.
//! * [`cli`]: the `mixdist` command line.

pub mod bench;
pub mod cli;
pub mod distance;
pub mod fast;
pub mod lca;
pub mod newick;
pub mod nodal;
pub mod time;
pub mod tree;
pub mod treegen;

pub use distance::{mixture_distance, Algorithm, Distance, DistanceError};
pub use lca::LcaIndex;
pub use newick::{parse_newick, write_newick, NewickError};
pub use nodal::nodal_distance;
pub use time::TimeTicks;
pub use tree::{
    build_tree, check_comparable, trees_identical, MixtureTree, NodeId, RawNode, Strictness,
    TreeError,
};
