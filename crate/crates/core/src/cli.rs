//! The `mixdist` command line.
//!
//! Exit codes: 0 success, 2 parse/validation/spec errors, 3 trees not
//! comparable, 4 arithmetic overflow. Every error is a single line on the
//! diagnostic stream starting with `E_PARSE`, `E_COMPARE`, `E_OVERFLOW`,
//! `E_SPEC` or `E_IO`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, write_csv, BenchAlgo, BenchConfig, NAIVE_CAP_EXP};
use crate::distance::{mixture_distance, Algorithm, DistanceError};
use crate::newick::{parse_newick_lines, parse_records, write_newick};
use crate::nodal::nodal_distance;
use crate::time::{format_ticks, TimeTicks, TICKS_PER_UNIT};
use crate::tree::{validate_records, MixtureTree, Strictness};
use crate::treegen::{random_comparable_pair, random_mixture_tree, GenSpec, PairMode, TimeModel, TreeShape};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_COMPARABLE: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "mixdist", version, about = "Mixture distance between timed binary trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum AlgoArg {
    Naive,
    Coloring,
    Fast,
    Nodal,
}

impl From<AlgoArg> for BenchAlgo {
    fn from(a: AlgoArg) -> BenchAlgo {
        match a {
            AlgoArg::Naive => BenchAlgo::Mixture(Algorithm::Naive),
            AlgoArg::Coloring => BenchAlgo::Mixture(Algorithm::Coloring),
            AlgoArg::Fast => BenchAlgo::Mixture(Algorithm::Fast),
            AlgoArg::Nodal => BenchAlgo::Nodal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ShapeArg {
    Random,
    Complete,
    Caterpillar,
}

impl From<ShapeArg> for TreeShape {
    fn from(s: ShapeArg) -> TreeShape {
        match s {
            ShapeArg::Random => TreeShape::Random,
            ShapeArg::Complete => TreeShape::Complete,
            ShapeArg::Caterpillar => TreeShape::Caterpillar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PairArg {
    Independent,
    SameTopologyJitteredTimes,
    PermutedLeaves,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum TimeModelArg {
    UnitCoalescent,
    UniformJitter,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between the first trees of two files.
    Dist {
        t1: PathBuf,
        t2: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        algo: AlgoArg,
        /// Divide by the number of leaf pairs.
        #[arg(long)]
        normalize: bool,
        /// Print integer ticks instead of time units.
        #[arg(long)]
        raw_ticks: bool,
        /// Accept equal parent and child times.
        #[arg(long)]
        weak: bool,
    },
    /// Check every tree in a file.
    Validate {
        path: PathBuf,
        #[arg(long)]
        weak: bool,
    },
    /// Generate a seeded tree, or a comparable pair with --pair.
    Gen {
        #[arg(long)]
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        shape: ShapeArg,
        #[arg(long, value_enum)]
        pair: Option<PairArg>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "unit_coalescent")]
        time_model: TimeModelArg,
        /// Largest gap between consecutive merges for uniform_jitter, in ticks.
        #[arg(long, default_value_t = TICKS_PER_UNIT)]
        max_step: u64,
        /// Largest time shift for same_topology_jittered_times, in time units.
        #[arg(long, default_value = "0.5")]
        jitter: TimeTicks,
    },
    /// Time the engines and print CSV.
    Bench {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "complete")]
        shapes: Vec<ShapeArg>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "coloring,fast")]
        algos: Vec<AlgoArg>,
        #[arg(long)]
        min_exp: u32,
        #[arg(long)]
        max_exp: u32,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the brute-force engine above 2^13 leaves too.
        #[arg(long)]
        no_naive_cap: bool,
        /// Print per-repeat times to stderr.
        #[arg(long)]
        verbose: bool,
    },
}

/// A failed command: exit code plus the one-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, tag: &str, message: impl std::fmt::Display) -> Failure {
        let message = message.to_string().replace('\n', " ");
        Failure {
            code,
            message: format!("{tag}: {message}"),
        }
    }

    fn parse(path: &Path, e: impl std::fmt::Display) -> Failure {
        Failure::new(EXIT_INPUT, "E_PARSE", format!("{}: {e}", path.display()))
    }

    fn io(path: &Path, e: std::io::Error) -> Failure {
        Failure::new(EXIT_INPUT, "E_IO", format!("{}: {e}", path.display()))
    }
}

impl From<DistanceError> for Failure {
    fn from(e: DistanceError) -> Failure {
        match e {
            DistanceError::NotComparable(_) => Failure::new(EXIT_NOT_COMPARABLE, "E_COMPARE", e),
            DistanceError::Overflow { .. } => Failure::new(EXIT_OVERFLOW, "E_OVERFLOW", e),
            DistanceError::SameLeaf => Failure::new(EXIT_INPUT, "E_SPEC", e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "E_SPEC: {}", first.trim_start_matches("error: "));
            return EXIT_INPUT;
        }
    };
    let result = match cli.command {
        Command::Dist { t1, t2, algo, normalize, raw_ticks, weak } => {
            cmd_dist(&t1, &t2, algo, normalize, raw_ticks, strictness(weak), out)
        }
        Command::Validate { path, weak } => cmd_validate(&path, strictness(weak), out),
        Command::Gen { leaves, seed, shape, pair, out: path, time_model, max_step, jitter } => {
            let time_model = match time_model {
                TimeModelArg::UnitCoalescent => TimeModel::UnitCoalescent,
                TimeModelArg::UniformJitter => TimeModel::UniformJitter { max_step },
            };
            let spec = GenSpec { n: leaves, seed, shape: shape.into(), time_model };
            let pair = pair.map(|p| match p {
                PairArg::Independent => PairMode::Independent,
                PairArg::SameTopologyJitteredTimes => {
                    PairMode::SameTopologyJitteredTimes { max_jitter: jitter }
                }
                PairArg::PermutedLeaves => PairMode::PermutedLeaves,
            });
            cmd_gen(&spec, pair, path.as_deref(), out)
        }
        Command::Bench { shapes, algos, min_exp, max_exp, repeats, seed, no_naive_cap, verbose } => {
            let config = BenchConfig {
                shapes: shapes.into_iter().map(Into::into).collect(),
                algos: algos.into_iter().map(Into::into).collect(),
                min_exp,
                max_exp,
                repeats,
                seed,
                naive_cap_exp: (!no_naive_cap).then_some(NAIVE_CAP_EXP),
            };
            cmd_bench(&config, verbose, out, err)
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn strictness(weak: bool) -> Strictness {
    if weak {
        Strictness::Weak
    } else {
        Strictness::Strict
    }
}

fn read_first_tree(path: &Path, strictness: Strictness) -> Result<MixtureTree, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let trees = parse_newick_lines(&text, strictness).map_err(|e| Failure::parse(path, e))?;
    trees
        .into_iter()
        .next()
        .ok_or_else(|| Failure::parse(path, "no tree in file"))
}

/// `value / divisor` rounded half up, in millionths.
fn ratio_in_ticks(value: u128, divisor: u128, scale: u128) -> u128 {
    (2 * value * scale + divisor) / (2 * divisor)
}

fn cmd_dist(
    p1: &Path,
    p2: &Path,
    algo: AlgoArg,
    normalize: bool,
    raw_ticks: bool,
    strictness: Strictness,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let t1 = read_first_tree(p1, strictness)?;
    let t2 = read_first_tree(p2, strictness)?;
    let n = t1.leaf_count() as u128;
    let pairs = n * n.saturating_sub(1) / 2;
    if normalize && pairs == 0 {
        return Err(Failure::new(EXIT_INPUT, "E_SPEC", "--normalize needs at least two leaves"));
    }
    let text = match BenchAlgo::from(algo) {
        BenchAlgo::Nodal => {
            let d = u128::from(nodal_distance(&t1, &t2).map_err(DistanceError::from)?);
            if normalize {
                format_ticks(ratio_in_ticks(d, pairs, u128::from(TICKS_PER_UNIT)))
            } else {
                d.to_string()
            }
        }
        BenchAlgo::Mixture(a) => {
            let ticks = mixture_distance(&t1, &t2, a)?.ticks();
            let ticks = if normalize { ratio_in_ticks(ticks, pairs, 1) } else { ticks };
            if raw_ticks {
                ticks.to_string()
            } else {
                format_ticks(ticks)
            }
        }
    };
    writeln!(out, "{text}").map_err(|e| Failure::io(Path::new("<stdout>"), e))
}

fn cmd_validate(path: &Path, strictness: Strictness, out: &mut dyn Write) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let mut problems = Vec::new();
    let mut trees = 0;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        trees += 1;
        match parse_records(line) {
            Err(e) => problems.push(format!("line {}: {e}", i + 1)),
            Ok((records, offsets)) => {
                for v in validate_records(&records, strictness).violations {
                    let at = v.node().map_or(String::new(), |n| format!(", byte {}", offsets[n]));
                    problems.push(format!("line {}{at}: {v}", i + 1));
                }
            }
        }
    }
    if trees == 0 {
        return Err(Failure::parse(path, "no tree in file"));
    }
    let io = |e| Failure::io(Path::new("<stdout>"), e);
    if problems.is_empty() {
        writeln!(out, "OK").map_err(io)?;
        return Ok(());
    }
    for p in &problems {
        writeln!(out, "{p}").map_err(io)?;
    }
    Err(Failure::parse(path, format!("{} violation(s); first: {}", problems.len(), problems[0])))
}

fn cmd_gen(
    spec: &GenSpec,
    pair: Option<PairMode>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let spec_err = |e: crate::treegen::GenError| Failure::new(EXIT_INPUT, "E_SPEC", e);
    let trees = match pair {
        None => vec![random_mixture_tree(spec).map_err(spec_err)?],
        Some(mode) => {
            let (a, b) = random_comparable_pair(spec, mode).map_err(spec_err)?;
            vec![a, b]
        }
    };
    let mut text = String::new();
    for t in &trees {
        text.push_str(&write_newick(t));
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
    }
}

fn cmd_bench(
    config: &BenchConfig,
    verbose: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let cells = run_bench(config).map_err(|e| Failure::new(EXIT_INPUT, "E_SPEC", e))?;
    if verbose {
        for c in &cells {
            let r = &c.record;
            let _ = writeln!(err, "{} {} n={} samples={:?}", r.shape, r.algo, r.n, c.samples);
        }
    }
    let records: Vec<_> = cells.into_iter().map(|c| c.record).collect();
    write_csv(&records, out).map_err(|e| Failure::new(EXIT_INPUT, "E_IO", e))
}
