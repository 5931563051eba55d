// Copyright 2026 The qtree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end. Every command writes to a caller-supplied sink
//! so the binary and the tests share one code path.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtree_core::branching::{grover_iterations, ladder_table, speedup_report, BranchingScenario};
use qtree_core::oracle::{path_value_distribution, CostPlusHeuristic};
use qtree_core::puzzle::{
    h1_misplaced, h2_euclidean, heuristic_distribution, BlankPolicy, PuzzleBoard,
};
use qtree_core::statevector::{optimal_iteration_count, DEFAULT_MAX_QUBITS};
use qtree_core::{
    DistributionKind, Error, Oracle, PathCodec, QuantileBand, SearchTree, StateVector,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_NO_SOLUTION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "qtree",
    version,
    about = "Grover search over encoded tree paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every admissible path with its per-level bit codes.
    Encode(TreeArgs),
    /// Amplify goal or threshold paths and measure once.
    Grover(GroverArgs),
    /// Classical versus Grover work for a branching scenario.
    Branching(BranchingArgs),
    /// Distribution of an 8-puzzle heuristic over the solved board's class.
    PuzzleDist(PuzzleDistArgs),
    /// Amplify the paths whose value falls in a quantile band.
    QuantileDemo(QuantileArgs),
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Tree description in JSON.
    #[arg(long)]
    pub tree: PathBuf,
    /// Number of actions per encoded path.
    #[arg(long)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the optimal iteration count.
    #[arg(long)]
    pub iterations: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
    /// Append wall time to the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GroverArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Goal nodes; replaces the goals listed in the tree file.
    #[arg(long = "goal")]
    pub goals: Vec<String>,
    /// Mark paths with `cost + h ≤ T` instead of goal paths.
    #[arg(long, conflicts_with = "goals")]
    pub threshold: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub action_cost: f64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct BranchingArgs {
    #[arg(required_unless_present = "range")]
    pub b_max: Option<u64>,
    #[arg(required_unless_present = "range")]
    pub b_avg: Option<f64>,
    #[arg(required_unless_present = "range")]
    pub depth: Option<u32>,
    /// Print the crossover ladder for `b_max` in `LO..=HI` as CSV.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], conflicts_with_all = ["b_max", "b_avg", "depth"])]
    pub range: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeuristicName {
    H1,
    H2,
}

#[derive(Debug, Args)]
pub struct PuzzleDistArgs {
    pub heuristic: HeuristicName,
    /// Equal-width bin count; h2 defaults to bins of width 0.25.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Do not count the blank as a misplaced tile (h1 only).
    #[arg(long)]
    pub exclude_blank: bool,
}

#[derive(Debug, Args)]
pub struct QuantileArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Probability band `A B` with `B − A = 0.25`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], required = true, allow_negative_numbers = true)]
    pub band: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub action_cost: f64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::NoSolution => EXIT_NO_SOLUTION,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A closed stdout (`qtree ... | head`) ends the command quietly with code 0.
impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Self {
                code: 0,
                message: String::new(),
            };
        }
        Self::usage(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Encode(args) => cmd_encode(args, out),
        Command::Grover(args) => cmd_grover(args, out),
        Command::Branching(args) => cmd_branching(args, out),
        Command::PuzzleDist(args) => cmd_puzzle_dist(args, out),
        Command::QuantileDemo(args) => cmd_quantile_demo(args, out),
    }
}

pub fn load_tree(path: &Path) -> Result<SearchTree, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(SearchTree::from_json(&text)?)
}

pub fn cmd_encode(args: &TreeArgs, out: &mut dyn Write) -> CliResult {
    let tree = load_tree(&args.tree)?;
    let codec = PathCodec::for_tree(&tree, args.depth)?;
    let mut rows: Vec<(String, String)> = codec
        .admissible_paths(&tree)
        .into_iter()
        .map(|p| {
            let codes: Vec<String> = p
                .path
                .actions()
                .iter()
                .map(|&a| codec.action_bits(a))
                .collect();
            (tree.node_name(p.terminal).to_owned(), codes.join(","))
        })
        .collect();
    rows.sort();
    let header: Vec<String> = (1..=args.depth).map(|l| format!("level_{l}")).collect();
    writeln!(out, "node,{}", header.join(","))?;
    for (node, codes) in rows {
        writeln!(out, "{node},{codes}")?;
    }
    Ok(())
}

/// Outcome of one amplify-and-measure run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub n_total: usize,
    pub k: usize,
    pub iterations: u64,
    pub success_probability: f64,
    pub measured_index: usize,
    pub bits: String,
    pub path: String,
    /// `None` when the measured index is inadmissible.
    pub terminal: Option<String>,
    pub marked: bool,
    pub wall_time: Option<f64>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N: {}", self.n_total)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "success_probability: {:.12}", self.success_probability)?;
        writeln!(f, "measured_index: {}", self.measured_index)?;
        writeln!(f, "bits: {}", self.bits)?;
        writeln!(f, "path: {}", self.path)?;
        writeln!(f, "terminal: {}", self.terminal.as_deref().unwrap_or("-"))?;
        writeln!(f, "marked: {}", self.marked)?;
        if let Some(t) = self.wall_time {
            writeln!(f, "wall_time_s: {t:.6}")?;
        }
        Ok(())
    }
}

/// Amplifies `oracle` over the codec's register and measures once.
pub fn simulate(
    tree: &SearchTree,
    codec: &PathCodec,
    oracle: &Oracle,
    run: &RunArgs,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let n_total = codec.code_space();
    let k = oracle.k();
    let iterations = match run.iterations {
        Some(j) => j,
        None if k == 0 => 0,
        None => optimal_iteration_count(n_total as u64, k as u64)?,
    };
    let mut state = StateVector::uniform_with_cap(codec.total_bits(), run.max_qubits)?;
    state.amplify(oracle.predicate(), iterations as usize);
    let success_probability = state.marked_probability(oracle.predicate());
    let measured_index = state.measure(run.seed);
    let decoded = codec.decode(measured_index);
    let path = decoded.display_with(tree).to_string();
    Ok(RunReport {
        n_total,
        k,
        iterations,
        success_probability,
        measured_index,
        bits: codec.index_bits(measured_index),
        path,
        terminal: codec
            .is_admissible(measured_index, tree)
            .map(|n| tree.node_name(n).to_owned()),
        marked: oracle.is_marked(measured_index),
        wall_time: run.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

fn finish(report: &RunReport, out: &mut dyn Write) -> CliResult {
    write!(out, "{report}")?;
    if report.k == 0 {
        return Err(CliError {
            code: EXIT_NO_SOLUTION,
            message: "warning: no marked paths; the measurement is a uniform draw".into(),
        });
    }
    Ok(())
}

pub fn cmd_grover(args: &GroverArgs, out: &mut dyn Write) -> CliResult {
    let mut tree = load_tree(&args.tree.tree)?;
    if !args.goals.is_empty() {
        tree.set_goals(&args.goals)?;
    }
    let codec =
        PathCodec::with_max_bits(tree.alphabet_size(), args.tree.depth, args.run.max_qubits)?;
    let oracle = match args.threshold {
        Some(t) => {
            let f = CostPlusHeuristic {
                action_cost: args.action_cost,
            };
            Oracle::threshold(&tree, &codec, &f, t)
        }
        None => Oracle::goal(&tree, &codec),
    };
    let report = simulate(&tree, &codec, &oracle, &args.run)?;
    finish(&report, out)
}

pub fn cmd_quantile_demo(args: &QuantileArgs, out: &mut dyn Write) -> CliResult {
    let tree = load_tree(&args.tree.tree)?;
    let codec =
        PathCodec::with_max_bits(tree.alphabet_size(), args.tree.depth, args.run.max_qubits)?;
    let band = QuantileBand::new(args.band[0], args.band[1])?;
    let f = CostPlusHeuristic {
        action_cost: args.action_cost,
    };
    let dist = path_value_distribution(&tree, &codec, &f, DistributionKind::Discrete)?;
    let oracle = Oracle::quantile_band(&tree, &codec, &f, band, &dist)?;
    let (lower, upper) = band.value_bounds(&dist)?;
    writeln!(out, "band: [{}, {}]", band.lower(), band.upper())?;
    writeln!(out, "value_lower: {lower}")?;
    writeln!(out, "value_upper: {upper}")?;
    writeln!(out, "admissible: {}", oracle.admissible_count())?;
    writeln!(
        out,
        "admissible_fraction_marked: {:.12}",
        oracle.admissible_fraction()
    )?;
    let report = simulate(&tree, &codec, &oracle, &args.run)?;
    finish(&report, out)
}

pub fn cmd_branching(args: &BranchingArgs, out: &mut dyn Write) -> CliResult {
    if let Some(range) = &args.range {
        let (lo, hi) = (range[0], range[1]);
        if lo < 2 || hi < lo {
            return Err(CliError::usage("range needs 2 ≤ LO ≤ HI"));
        }
        writeln!(out, "b_max,threshold,smooth,smooth_upper")?;
        for r in ladder_table(lo..=hi) {
            writeln!(
                out,
                "{},{},{},{}",
                r.b_max, r.threshold, r.smooth, r.smooth_upper
            )?;
        }
        return Ok(());
    }
    let (Some(b_max), Some(b_avg), Some(depth)) = (args.b_max, args.b_avg, args.depth) else {
        return Err(CliError::usage(
            "expected B_MAX B_AVG DEPTH or --range LO HI",
        ));
    };
    let scenario = BranchingScenario::new(b_max, b_avg, depth)?;
    let r = speedup_report(&scenario);
    writeln!(out, "bits_per_action: {}", scenario.bits_per_action())?;
    writeln!(out, "total_bits: {}", scenario.total_bits())?;
    writeln!(out, "classical_max: {}", r.classical_max)?;
    writeln!(out, "classical_avg: {}", r.classical_avg)?;
    writeln!(out, "grover_iterations: {}", grover_iterations(&scenario))?;
    writeln!(out, "ratio_max_avg: {:.6}", r.ratio_max_avg)?;
    writeln!(out, "ratio_avg_grover: {:.6}", r.ratio_avg_grover)?;
    writeln!(out, "crossover_b_avg: {:.12}", r.threshold)?;
    writeln!(out, "hybrid_wins: {}", r.hybrid_wins)?;
    Ok(())
}

pub fn cmd_puzzle_dist(args: &PuzzleDistArgs, out: &mut dyn Write) -> CliResult {
    let goal = PuzzleBoard::solved();
    match args.heuristic {
        HeuristicName::H1 => {
            if args.bins.is_some() {
                return Err(CliError::usage("--bins applies to h2 only"));
            }
            let policy = if args.exclude_blank {
                BlankPolicy::Excluded
            } else {
                BlankPolicy::Counted
            };
            let dist = heuristic_distribution(
                |b| f64::from(h1_misplaced(b, &goal, policy)),
                &goal,
                DistributionKind::Discrete,
            )?;
            let total = qtree_core::puzzle::CLASS_SIZE as f64;
            writeln!(out, "value,count,mass")?;
            for (&v, &m) in dist.support().iter().zip(dist.mass()) {
                writeln!(out, "{v},{},{m}", (m * total).round() as u64)?;
            }
        }
        HeuristicName::H2 => {
            if args.exclude_blank {
                return Err(CliError::usage("--exclude-blank applies to h1 only"));
            }
            let kind = match args.bins {
                Some(0) => return Err(CliError::usage("--bins must be positive")),
                Some(n) => DistributionKind::BinnedCount(n),
                None => DistributionKind::BinnedWidth(0.25),
            };
            let dist = heuristic_distribution(|b| h2_euclidean(b, &goal), &goal, kind)?;
            writeln!(out, "bin_start,bin_end,mass,density")?;
            for (lo, hi, m, d) in dist.bins() {
                writeln!(out, "{lo},{hi},{m},{d}")?;
            }
        }
    }
    Ok(())
}
