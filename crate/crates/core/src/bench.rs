//! Timing harness for the distance engines.
//!
//! Every cell `(shape, algo, n)` times one engine on a seeded pair of
//! comparable trees with the same shape and permuted leaf labels, and
//! reports the median over the repeats, after one untimed warm-up run.
//! Repeats of all sizes of one `(shape, algo)` series are interleaved. The CSV columns are
//! `n,shape,algo,repeats,seconds_median,distance`.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{mixture_distance, Algorithm};
use crate::nodal::nodal_distance;
use crate::treegen::{random_comparable_pair, GenError, GenSpec, PairMode, TreeShape};
use crate::tree::MixtureTree;

/// Default largest exponent for the brute-force engine.
pub const NAIVE_CAP_EXP: u32 = 13;
pub const MIN_REPEATS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchAlgo {
    Mixture(Algorithm),
    Nodal,
}

impl BenchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgo::Mixture(a) => a.name(),
            BenchAlgo::Nodal => "nodal",
        }
    }

    /// Runs once and returns the printed distance.
    pub fn run(self, t1: &MixtureTree, t2: &MixtureTree) -> String {
        match self {
            BenchAlgo::Mixture(a) => mixture_distance(t1, t2, a)
                .expect("generated pairs are comparable")
                .to_string(),
            BenchAlgo::Nodal => nodal_distance(t1, t2)
                .expect("generated pairs are comparable")
                .to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub shape: String,
    pub algo: String,
    pub repeats: usize,
    pub seconds_median: f64,
    pub distance: String,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub shapes: Vec<TreeShape>,
    pub algos: Vec<BenchAlgo>,
    pub min_exp: u32,
    pub max_exp: u32,
    pub repeats: usize,
    pub seed: u64,
    /// Skip the brute-force engine above `2^cap`; `None` disables the cap.
    pub naive_cap_exp: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid exponent range {min}..={max}")]
    BadRange { min: u32, max: u32 },
    #[error("need at least {MIN_REPEATS} repeats, got {0}")]
    TooFewRepeats(usize),
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// One cell plus the per-repeat times in seconds.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub record: BenchRecord,
    pub samples: Vec<f64>,
}

pub fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2.0
    }
}

pub fn bench_cell(
    shape: TreeShape,
    algo: BenchAlgo,
    n: usize,
    repeats: usize,
    seed: u64,
) -> Result<CellResult, BenchError> {
    Ok(bench_series(shape, algo, &[n], repeats, seed)?.remove(0))
}

/// Times one engine on one shape at several sizes.
///
/// Repeats run in rounds, each round timing every size once, so that a
/// stretch of machine-wide slowdown lands on all sizes rather than on
/// whichever cell happened to be running.
pub fn bench_series(
    shape: TreeShape,
    algo: BenchAlgo,
    sizes: &[usize],
    repeats: usize,
    seed: u64,
) -> Result<Vec<CellResult>, BenchError> {
    if repeats < MIN_REPEATS {
        return Err(BenchError::TooFewRepeats(repeats));
    }
    let pairs = sizes
        .iter()
        .map(|&n| random_comparable_pair(&GenSpec::new(n, seed, shape), PairMode::PermutedLeaves))
        .collect::<Result<Vec<_>, _>>()?;
    // Untimed warm-up so that no sample pays for first-touch page faults.
    let distances: Vec<String> = pairs.iter().map(|(t1, t2)| algo.run(t1, t2)).collect();
    let mut samples = vec![Vec::with_capacity(repeats); sizes.len()];
    for _ in 0..repeats {
        for ((t1, t2), out) in pairs.iter().zip(&mut samples) {
            let start = Instant::now();
            std::hint::black_box(algo.run(t1, t2));
            out.push(start.elapsed().as_secs_f64().max(1e-9));
        }
    }
    Ok(sizes
        .iter()
        .zip(distances)
        .zip(samples)
        .map(|((&n, distance), samples)| CellResult {
            record: BenchRecord {
                n,
                shape: shape.name().to_owned(),
                algo: algo.name().to_owned(),
                repeats,
                seconds_median: median(&mut samples.clone()),
                distance,
            },
            samples,
        })
        .collect())
}

/// Runs every cell in shape, algorithm, then size order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<CellResult>, BenchError> {
    if config.min_exp > config.max_exp || config.max_exp > 30 {
        return Err(BenchError::BadRange {
            min: config.min_exp,
            max: config.max_exp,
        });
    }
    if config.repeats < MIN_REPEATS {
        return Err(BenchError::TooFewRepeats(config.repeats));
    }
    let mut out = Vec::new();
    for &shape in &config.shapes {
        for &algo in &config.algos {
            let sizes: Vec<usize> = (config.min_exp..=config.max_exp)
                .filter(|&exp| {
                    algo != BenchAlgo::Mixture(Algorithm::Naive)
                        || config.naive_cap_exp.is_none_or(|cap| exp <= cap)
                })
                .map(|exp| 1 << exp)
                .collect();
            if !sizes.is_empty() {
                out.extend(bench_series(shape, algo, &sizes, config.repeats, config.seed)?);
            }
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln(seconds)` against `ln(n)`.
pub fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, s)| s.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
