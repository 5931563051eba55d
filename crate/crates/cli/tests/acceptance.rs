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

//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any fails. Expected values are computed
//! here independently of the library wherever possible.

use std::collections::{HashMap, VecDeque};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use qtree_cli::{run, Cli};
use qtree_core::classical::{a_star, SearchOptions};
use qtree_core::oracle::{marked_count, path_value_distribution, CostPlusHeuristic};
use qtree_core::puzzle::{
    enumerate_reachable, h1_misplaced, BlankPolicy, EightPuzzle, Move, PuzzleBoard,
};
use qtree_core::special::normal_quantile;
use qtree_core::statevector::optimal_iteration_count;
use qtree_core::{
    DistributionKind, EmpiricalDistribution, Oracle, PathCodec, QuantileBand, SearchTree,
    StateVector,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, check and runtime bound.
type Criterion = (&'static str, fn() -> Check, Duration);

fn tree_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("trees")
        .join(name)
}

/// Runs the CLI in-process and returns stdout.
fn qtree(args: &[&str]) -> Result<String, String> {
    let cli = Cli::try_parse_from(std::iter::once("qtree").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    run(&cli, &mut out).map_err(|e| e.message)?;
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn field<'a>(report: &'a str, key: &str) -> Result<&'a str, String> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .ok_or_else(|| format!("missing field {key}"))
}

fn num(report: &str, key: &str) -> Result<f64, String> {
    field(report, key)?
        .parse()
        .map_err(|e| format!("{key}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_worked_example() -> Check {
    let out = qtree(&["branching", "5", "3", "10"])?;
    // 5^10, 3^10 and 2^(3·10/2), computed in integers.
    let (max, avg, grover) = (5u64.pow(10), 3u64.pow(10), 1u64 << 15);
    ensure(num(&out, "classical_max")? == max as f64, || {
        format!("classical_max\n{out}")
    })?;
    ensure(num(&out, "classical_avg")? == avg as f64, || {
        format!("classical_avg\n{out}")
    })?;
    ensure(num(&out, "grover_iterations")? == grover as f64, || {
        format!("grover\n{out}")
    })?;
    let r1 = num(&out, "ratio_max_avg")?;
    let r2 = num(&out, "ratio_avg_grover")?;
    ensure((r1 - 165.4).abs() <= 0.5, || {
        format!("ratio_max_avg = {r1}")
    })?;
    ensure((r2 - 1.80).abs() <= 0.01, || {
        format!("ratio_avg_grover = {r2}")
    })?;
    Ok(format!("{max} / {avg} / {grover}, ratios {r1} and {r2}"))
}

fn c2_ladder() -> Check {
    let out = qtree(&["branching", "--range", "2", "128"])?;
    let rows: Vec<(u64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    ensure(rows.len() == 127, || format!("{} rows", rows.len()))?;
    let mut plateaus = 0;
    for j in 1..=7u32 {
        let members: Vec<f64> = rows
            .iter()
            .filter(|&&(b, _)| b > 1 << (j - 1) && b <= 1 << j)
            .map(|&(_, t)| t)
            .collect();
        ensure(members.iter().all(|&t| t == members[0]), || {
            format!("plateau {j} not constant")
        })?;
        // 2^(j/2), the crossover for j bits per action.
        let expected = 2f64.powf(j as f64 / 2.0);
        ensure((members[0] - expected).abs() < 1e-9, || {
            format!("plateau {j}: {}", members[0])
        })?;
        if j > 1 {
            let prev = rows.iter().find(|&&(b, _)| b == 1 << (j - 1)).unwrap().1;
            let step = members[0] / prev;
            ensure((step - std::f64::consts::SQRT_2).abs() < 1e-12, || {
                format!("step {j}: {step}")
            })?;
        }
        plateaus += 1;
    }
    Ok(format!("{plateaus} plateaus, √2 steps"))
}

fn c3_closed_form() -> Check {
    let mut checked = 0usize;
    for m in 1..=14usize {
        let n = 1usize << m;
        // N is a power of two, so each fraction is exact once it reaches 1.
        let mut ks: Vec<usize> = [1, 2, n / 8, n / 4, n / 2]
            .into_iter()
            .filter(|&k| k >= 1)
            .collect();
        ks.sort_unstable();
        ks.dedup();
        for k in ks {
            let opt =
                optimal_iteration_count(n as u64, k as u64).map_err(|e| e.to_string())? as usize;
            let marked = |x: usize| x < k;
            let theta = ((k as f64) / (n as f64)).sqrt().asin();
            let mut s = StateVector::uniform(m).map_err(|e| e.to_string())?;
            for j in 0..=3 * opt {
                let p = s.marked_probability(marked);
                let expected = (((2 * j + 1) as f64) * theta).sin().powi(2);
                ensure((p - expected).abs() <= 1e-9, || {
                    format!("m={m} k={k} j={j}: {p} vs {expected}")
                })?;
                checked += 1;
                s.grover_iterate(marked);
            }
        }
    }
    Ok(format!("{checked} (m, k, j) points"))
}

fn c4_quarter_certainty() -> Check {
    for n in [4usize, 16, 64, 1024] {
        let m = n.trailing_zeros() as usize;
        let marked = |x: usize| x < n / 4;
        let mut s = StateVector::uniform(m).map_err(|e| e.to_string())?;
        s.grover_iterate(marked);
        let p = s.marked_probability(marked);
        ensure((p - 1.0).abs() <= 1e-12, || format!("N={n}: {p}"))?;
    }
    Ok("N = 4, 16, 64, 1024".into())
}

/// Expected encode output for the two bundled trees.
const EXPECTED_BINARY: &str = "node,level_1,level_2,level_3
H,0,0,0
I,0,0,1
J,0,1,0
K,0,1,1
L,1,0,0
M,1,0,1
N,1,1,0
O,1,1,1
";

const EXPECTED_IRREGULAR: &str = "node,level_1,level_2,level_3
G,000,000,000
H,000,000,001
I,001,010,011
J,001,100,000
K,001,100,001
L,001,100,010
M,001,100,100
";

fn c5_encoding() -> Check {
    let binary = tree_file("binary.json");
    let irregular = tree_file("irregular.json");
    let a = qtree(&["encode", "--tree", binary.to_str().unwrap(), "--depth", "3"])?;
    ensure(a == EXPECTED_BINARY, || format!("binary output:\n{a}"))?;
    let b = qtree(&[
        "encode",
        "--tree",
        irregular.to_str().unwrap(),
        "--depth",
        "3",
    ])?;
    ensure(b == EXPECTED_IRREGULAR, || {
        format!("irregular output:\n{b}")
    })?;
    let tree =
        SearchTree::from_json(&std::fs::read_to_string(&irregular).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let codec = PathCodec::for_tree(&tree, 3).map_err(|e| e.to_string())?;
    let admissible = (0..codec.code_space())
        .filter(|&i| codec.is_admissible(i, &tree).is_some())
        .count();
    ensure(codec.code_space() == 512, || {
        format!("code space {}", codec.code_space())
    })?;
    ensure(admissible == 7, || format!("{admissible} admissible"))?;
    Ok("8 + 7 rows, 7 of 512 admissible".into())
}

fn c6_path_recovery() -> Check {
    let binary = tree_file("binary.json");
    let binary = binary.to_str().unwrap();
    let mut hits = 0;
    for seed in 0..1000u64 {
        let s = seed.to_string();
        let out = qtree(&[
            "grover", "--tree", binary, "--depth", "3", "--goal", "K", "--seed", &s,
        ])?;
        hits += usize::from(field(&out, "path")? == "(a0,a1,a1)");
    }
    ensure(hits >= 900, || format!("{hits}/1000"))?;
    Ok(format!("{hits}/1000 runs decoded (a0,a1,a1)"))
}

fn c7_puzzle_enumeration() -> Check {
    let goal = PuzzleBoard::solved();
    let boards = enumerate_reachable(&goal);
    ensure(boards.len() == 181_440, || {
        format!("{} boards", boards.len())
    })?;
    let values: Vec<f64> = boards
        .iter()
        .map(|b| f64::from(h1_misplaced(b, &goal, BlankPolicy::Counted)))
        .collect();
    let d = EmpiricalDistribution::from_samples(&values, DistributionKind::Discrete)
        .map_err(|e| e.to_string())?;
    let total: f64 = d.mass().iter().sum();
    ensure((total - 1.0).abs() <= 1e-12, || format!("mass {total}"))?;
    ensure((d.mass_at(0.0) - 1.0 / 181_440.0).abs() <= 1e-15, || {
        format!("mass at 0 = {}", d.mass_at(0.0))
    })?;
    ensure(d.mass_at(1.0) == 0.0, || {
        format!("mass at 1 = {}", d.mass_at(1.0))
    })?;
    Ok("181440 boards, h1 mass 1, P(0) = 1/181440, P(1) = 0".into())
}

/// erf from its all-positive power series.
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-18 * sum.abs() {
        n += 1.0;
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp() * sum
}

fn c8_quantiles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..1000 {
        let len = rng.random_range(1..50);
        let mut samples: Vec<f64> = (0..len)
            .map(|_| f64::from(rng.random_range(-30i32..30)))
            .collect();
        let d = EmpiricalDistribution::from_samples(&samples, DistributionKind::Discrete)
            .map_err(|e| e.to_string())?;
        samples.sort_by(f64::total_cmp);
        for _ in 0..50 {
            let p: f64 = rng.random_range(f64::EPSILON..=1.0);
            let q = d.quantile(p).map_err(|e| e.to_string())?;
            // Empirical CDF by counting.
            let cdf = |x: f64| samples.iter().filter(|&&s| s <= x).count() as f64 / len as f64;
            ensure(cdf(q) >= p, || {
                format!("trial {trial}: F(F⁻¹({p})) = {} < p", cdf(q))
            })?;
            let below = samples.iter().copied().rfind(|&s| s < q);
            if let Some(b) = below {
                ensure(cdf(b) < p, || {
                    format!("trial {trial}: {b} < {q} already reaches {p}")
                })?;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..=800 {
        let x = -4.0 + f64::from(i) * 0.01;
        let p = 0.5 * (1.0 + erf_series(x / std::f64::consts::SQRT_2));
        let back = normal_quantile(p, 0.0, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max((back - x).abs());
    }
    ensure(worst <= 1e-7, || format!("normal quantile error {worst:e}"))?;
    Ok(format!(
        "50000 quantile checks, normal round-trip error {worst:.1e}"
    ))
}

fn c9_quantile_band() -> Check {
    let demo = tree_file("demo.json");
    let out = qtree(&[
        "quantile-demo",
        "--tree",
        demo.to_str().unwrap(),
        "--depth",
        "2",
        "--band",
        "0",
        "0.25",
    ])?;
    let tree = SearchTree::from_json(&std::fs::read_to_string(&demo).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let codec = PathCodec::for_tree(&tree, 2).map_err(|e| e.to_string())?;
    let f = CostPlusHeuristic::default();
    let dist = path_value_distribution(&tree, &codec, &f, DistributionKind::Discrete)
        .map_err(|e| e.to_string())?;
    let band = QuantileBand::new(0.0, 0.25).map_err(|e| e.to_string())?;
    let oracle =
        Oracle::quantile_band(&tree, &codec, &f, band, &dist).map_err(|e| e.to_string())?;
    let (_, upper) = band.value_bounds(&dist).map_err(|e| e.to_string())?;
    let exhaustive = marked_count(oracle.predicate(), codec.code_space());
    let k = num(&out, "k")? as usize;
    ensure(k == exhaustive, || {
        format!("reported k = {k}, exhaustive {exhaustive}")
    })?;
    let q = oracle.admissible_fraction();
    let atom = dist.mass_at(upper);
    ensure((q - 0.25).abs() <= atom, || format!("q = {q}, atom {atom}"))?;
    Ok(format!("k = {k}, q = {q}, atom {atom}"))
}

/// Exact distances from the solved board, up to `limit` moves.
fn bfs_oracle(limit: usize) -> HashMap<PuzzleBoard, usize> {
    let goal = PuzzleBoard::solved();
    let mut dist = HashMap::from([(goal, 0)]);
    let mut queue = VecDeque::from([goal]);
    while let Some(b) = queue.pop_front() {
        let d = dist[&b];
        if d == limit {
            continue;
        }
        for mv in Move::ALL {
            if let Some(n) = b.apply(mv) {
                dist.entry(n).or_insert_with(|| {
                    queue.push_back(n);
                    d + 1
                });
            }
        }
    }
    dist
}

fn c10_a_star() -> Check {
    let oracle = bfs_oracle(14);
    let mut by_distance: Vec<Vec<PuzzleBoard>> = vec![Vec::new(); 15];
    let mut boards: Vec<(&PuzzleBoard, &usize)> = oracle.iter().collect();
    boards.sort_by_key(|(b, _)| b.pack());
    for (b, &d) in boards {
        by_distance[d].push(*b);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut longest = 0;
    for i in 0..100 {
        // Cycle through every distance so the hardest instances are covered.
        let target = 1 + i % 14;
        let b = *by_distance[target].choose(&mut rng).unwrap();
        let truth = oracle[&b];
        let r = a_star(
            &EightPuzzle::new(b, PuzzleBoard::solved()),
            SearchOptions::graph(),
        );
        ensure(r.found(), || format!("instance {i}: no path"))?;
        ensure(r.path_cost == truth as f64, || {
            format!("instance {i}: cost {} vs {truth}", r.path_cost)
        })?;
        longest = longest.max(truth);
    }
    Ok(format!("100 instances optimal, longest {longest} moves"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "C1 branching worked example",
            c1_worked_example,
            Duration::from_millis(1),
        ),
        ("C2 crossover ladder", c2_ladder, Duration::from_millis(10)),
        (
            "C3 closed-form equivalence",
            c3_closed_form,
            Duration::from_secs(30),
        ),
        (
            "C4 certainty at k = N/4",
            c4_quarter_certainty,
            Duration::from_secs(1),
        ),
        (
            "C5 encoding fidelity",
            c5_encoding,
            Duration::from_millis(10),
        ),
        (
            "C6 end-to-end path recovery",
            c6_path_recovery,
            Duration::from_secs(5),
        ),
        (
            "C7 8-puzzle enumeration",
            c7_puzzle_enumeration,
            Duration::from_secs(60),
        ),
        (
            "C8 quantile correctness",
            c8_quantiles,
            Duration::from_secs(10),
        ),
        (
            "C9 quantile-band oracle",
            c9_quantile_band,
            Duration::from_secs(1),
        ),
        (
            "C10 A* versus BFS oracle",
            c10_a_star,
            Duration::from_secs(60),
        ),
    ];
    let mut failures = 0;
    for (name, check, bound) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed < bound => {
                format!("PASS {name}: {detail} [{elapsed:.2?} < {bound:?}]")
            }
            Ok(detail) => format!("FAIL {name}: {detail} [took {elapsed:.2?}, bound {bound:?}]"),
            Err(why) => format!("FAIL {name}: {why} [{elapsed:.2?}]"),
        };
        if verdict.starts_with("FAIL") {
            failures += 1;
        }
        println!("{verdict}");
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
