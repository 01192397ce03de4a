//! Seeded generation of valid mixture trees and comparable pairs.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`. Independent draws use separate ChaCha streams of
//! the same seed: stream 0 for the first tree, stream 1 for whatever makes
//! the second tree of a pair differ. Uniform integers come from
//! `Rng::gen_range`.
//!
//! Random shapes are coalescent-style. Every step merges two distinct live
//! subtrees chosen uniformly, and the i-th merge is later than all earlier
//! ones, so times strictly increase toward the root.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::time::{TimeTicks, TICKS_PER_UNIT};
use crate::tree::{build_tree, MixtureTree, RawNode, Strictness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeShape {
    /// Uniform pairwise merging of live subtrees.
    Random,
    /// Perfectly balanced; `n` must be a power of two.
    Complete,
    /// Every internal node has a leaf as its right child; height `n - 1`.
    Caterpillar,
}

impl TreeShape {
    pub fn name(self) -> &'static str {
        match self {
            TreeShape::Random => "random",
            TreeShape::Complete => "complete",
            TreeShape::Caterpillar => "caterpillar",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeModel {
    /// The i-th merge (1-based) happens at time i.
    UnitCoalescent,
    /// Each merge is later than the previous one by a uniform 1..=max_step ticks.
    UniformJitter { max_step: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub shape: TreeShape,
    pub time_model: TimeModel,
}

impl GenSpec {
    pub fn new(n: usize, seed: u64, shape: TreeShape) -> GenSpec {
        GenSpec {
            n,
            seed,
            shape,
            time_model: TimeModel::UnitCoalescent,
        }
    }

    pub fn check(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::InvalidSpec("need at least one leaf".into()));
        }
        if self.shape == TreeShape::Complete && !self.n.is_power_of_two() {
            return Err(GenError::InvalidSpec(format!(
                "complete trees need a power-of-two leaf count, got {}",
                self.n
            )));
        }
        if let TimeModel::UniformJitter { max_step: 0 } = self.time_model {
            return Err(GenError::InvalidSpec("max_step must be positive".into()));
        }
        Ok(())
    }
}

/// How the second tree of a pair relates to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairMode {
    /// Two shapes drawn independently.
    Independent,
    /// Same topology and labels; every internal time moves up by a uniform
    /// 0..=max_jitter ticks, then is raised where needed to stay above its children.
    SameTopologyJitteredTimes { max_jitter: TimeTicks },
    /// Same topology and times with leaf labels shuffled.
    PermutedLeaves,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn generate(spec: &GenSpec, rng: &mut ChaCha8Rng) -> MixtureTree {
    let n = spec.n;
    let mut records: Vec<RawNode> = (1..=n).map(|i| RawNode::leaf(format!("L{i}"))).collect();
    let mut clock = 0u64;
    let mut merge = |records: &mut Vec<RawNode>, rng: &mut ChaCha8Rng, l: usize, r: usize| {
        clock = match spec.time_model {
            TimeModel::UnitCoalescent => clock + TICKS_PER_UNIT,
            TimeModel::UniformJitter { max_step } => clock + rng.gen_range(1..=max_step),
        };
        records.push(RawNode::internal(TimeTicks(clock), l, r));
        records.len() - 1
    };

    match spec.shape {
        TreeShape::Random => {
            let mut live: Vec<usize> = (0..n).collect();
            while live.len() > 1 {
                let i = rng.gen_range(0..live.len());
                let mut j = rng.gen_range(0..live.len() - 1);
                if j >= i {
                    j += 1;
                }
                let (l, r) = (live[i], live[j]);
                live.swap_remove(i.max(j));
                live.swap_remove(i.min(j));
                let m = merge(&mut records, rng, l, r);
                live.push(m);
            }
        }
        TreeShape::Complete => {
            let mut level: Vec<usize> = (0..n).collect();
            while level.len() > 1 {
                level = level
                    .chunks(2)
                    .map(|p| merge(&mut records, rng, p[0], p[1]))
                    .collect();
            }
        }
        TreeShape::Caterpillar => {
            let mut acc = 0;
            for leaf in 1..n {
                acc = merge(&mut records, rng, acc, leaf);
            }
        }
    }
    build_tree(&records, Strictness::Strict).expect("generated trees are valid")
}

/// Deterministic for a fixed spec.
pub fn random_mixture_tree(spec: &GenSpec) -> Result<MixtureTree, GenError> {
    spec.check()?;
    Ok(generate(spec, &mut rng_for(spec.seed, 0)))
}

/// Rebuilds `tree` so that the leaf at left-to-right position `i` carries the
/// label of the leaf at position `perm[i]`.
pub fn permute_leaves(tree: &MixtureTree, perm: &[usize]) -> MixtureTree {
    assert_eq!(perm.len(), tree.leaf_count());
    let labels: Vec<&str> = tree.labels().collect();
    let mut records = tree.to_records();
    for (pos, &leaf) in tree.leaves().iter().enumerate() {
        records[leaf.index()].label = Some(labels[perm[pos]].to_owned());
    }
    build_tree(&records, tree.strictness()).expect("relabelling keeps validity")
}

/// Raises every internal time by a uniform 0..=max_jitter ticks, then lifts
/// any node not strictly above its children.
pub fn jitter_times(tree: &MixtureTree, max_jitter: TimeTicks, rng: &mut impl Rng) -> MixtureTree {
    let mut records = tree.to_records();
    // Preorder ids: children have larger ids than parents.
    for i in (0..records.len()).rev() {
        let Some(t) = records[i].time else { continue };
        let bumped = t.0 + rng.gen_range(0..=max_jitter.0);
        let floor = records[i]
            .children
            .iter()
            .map(|&c| records[c].time.map_or(0, |ct| ct.0))
            .max()
            .unwrap()
            + 1;
        records[i].time = Some(TimeTicks(bumped.max(floor)));
    }
    build_tree(&records, Strictness::Strict).expect("jittered times stay monotone")
}

pub fn random_comparable_pair(
    spec: &GenSpec,
    mode: PairMode,
) -> Result<(MixtureTree, MixtureTree), GenError> {
    let first = random_mixture_tree(spec)?;
    let mut rng = rng_for(spec.seed, 1);
    let second = match mode {
        PairMode::Independent => generate(spec, &mut rng),
        PairMode::SameTopologyJitteredTimes { max_jitter } => {
            jitter_times(&first, max_jitter, &mut rng)
        }
        PairMode::PermutedLeaves => {
            let mut perm: Vec<usize> = (0..spec.n).collect();
            perm.shuffle(&mut rng);
            permute_leaves(&first, &perm)
        }
    };
    Ok((first, second))
}
