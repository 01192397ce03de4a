//! Time the engines over doubling sizes and fit log-log slopes.
//!
//! Run with `--release`; pass a maximum exponent to go larger (default 13).
use mixdist::bench::{bench_series, loglog_slope, BenchAlgo};
use mixdist::treegen::TreeShape;
use mixdist::Algorithm;

fn main() {
    let max_exp: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    let sizes: Vec<usize> = (8..=max_exp).map(|e| 1 << e).collect();
    for shape in [TreeShape::Complete, TreeShape::Random, TreeShape::Caterpillar] {
        for algo in [BenchAlgo::Mixture(Algorithm::Fast), BenchAlgo::Mixture(Algorithm::Coloring)] {
            let cells = bench_series(shape, algo, &sizes, 5, 1).unwrap();
            let points: Vec<(usize, f64)> = cells.iter().map(|c| (c.record.n, c.record.seconds_median)).collect();
            let largest = cells.last().unwrap();
            println!(
                "{:<12} {:<9} slope {:.2}  n={} median {:.3} ms",
                shape.name(),
                algo.name(),
                loglog_slope(&points),
                largest.record.n,
                largest.record.seconds_median * 1e3
            );
        }
    }
}
