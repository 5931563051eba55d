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

//! Iteration-count arithmetic for encoded tree search.
//!
//! With `n = ⌈log₂ b_max⌉` bits per action and depth `d`, the register
//! holds `2^(n·d)` paths and amplitude amplification needs on the order of
//! `|G| = 2^(n·d/2)` iterates. A classical search over the actual tree
//! touches about `b_avg^d` nodes, so the quantum route only wins when
//! `b_avg > 2^(n/2)`, a threshold that does not depend on `d`.

use std::f64::consts::SQRT_2;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::tree::bits_for_alphabet;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchingScenario {
    b_max: u64,
    b_avg: f64,
    depth: u32,
}

impl BranchingScenario {
    pub fn new(b_max: u64, b_avg: f64, depth: u32) -> Result<Self> {
        if b_max < 2 {
            return Err(Error::Config(format!("b_max = {b_max} must be at least 2")));
        }
        if !(b_avg >= 1.0 && b_avg <= b_max as f64) {
            return Err(Error::Config(format!(
                "b_avg = {b_avg} must lie in [1, b_max = {b_max}]"
            )));
        }
        if depth == 0 {
            return Err(Error::Config("depth must be at least 1".into()));
        }
        Ok(Self {
            b_max,
            b_avg,
            depth,
        })
    }

    pub fn b_max(&self) -> u64 {
        self.b_max
    }

    pub fn b_avg(&self) -> f64 {
        self.b_avg
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Bits per action, `⌈log₂ b_max⌉`.
    pub fn bits_per_action(&self) -> u32 {
        bits_per_action(self.b_max)
    }

    /// Register width `n·d`.
    pub fn total_bits(&self) -> u64 {
        u64::from(self.bits_per_action()) * u64::from(self.depth)
    }
}

pub fn bits_per_action(b_max: u64) -> u32 {
    bits_for_alphabet(b_max as usize) as u32
}

/// `⌊2^(n·d/2)⌋` as an exact integer.
pub fn grover_iterations(scenario: &BranchingScenario) -> BigUint {
    let bits = usize::try_from(scenario.total_bits()).expect("register width fits usize");
    (BigUint::one() << bits).sqrt()
}

/// [`grover_iterations`] narrowed to `u64`.
pub fn grover_iterations_u64(scenario: &BranchingScenario) -> Result<u64> {
    grover_iterations(scenario)
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("2^({}/2) iterations", scenario.total_bits())))
}

/// `2^(n·d/2)` as a real number, not floored. Odd exponents give an
/// irrational count.
pub fn grover_iterations_real(scenario: &BranchingScenario) -> f64 {
    half_power_of_two(scenario.total_bits())
}

/// `2^(e/2)`, exact in the even case and `2^⌊e/2⌋·√2` otherwise.
fn half_power_of_two(exponent: u64) -> f64 {
    let whole = 2f64.powi((exponent / 2) as i32);
    if exponent.is_multiple_of(2) {
        whole
    } else {
        whole * SQRT_2
    }
}

/// Nodes a classical search of a uniform `b`-ary tree may visit, `b^d`.
pub fn classical_node_count(b: f64, depth: u32) -> f64 {
    if depth <= i32::MAX as u32 {
        b.powi(depth as i32)
    } else {
        (f64::from(depth) * b.ln()).exp()
    }
}

/// Exact `b^d` for integral `b`.
pub fn classical_node_count_exact(b: u64, depth: u32) -> BigUint {
    BigUint::from(b).pow(depth)
}

/// Average branching factor at which `b_avg^d = |G|`: `2^(⌈log₂ b_max⌉/2)`.
pub fn crossover_b_avg(b_max: u64) -> f64 {
    half_power_of_two(u64::from(bits_per_action(b_max)))
}

/// Ceiling-free variant, `√b_max`.
pub fn smooth_crossover(b_max: u64) -> f64 {
    (b_max as f64).sqrt()
}

/// Upper envelope of the staircase, `√(2·b_max)`.
pub fn smooth_crossover_upper(b_max: u64) -> f64 {
    (2.0 * b_max as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRow {
    pub b_max: u64,
    pub bits: u32,
    pub threshold: f64,
    pub smooth: f64,
    pub smooth_upper: f64,
}

/// One row per `b_max` in `range`, ascending.
pub fn ladder_table(range: std::ops::RangeInclusive<u64>) -> Vec<LadderRow> {
    range
        .filter(|&b| b >= 2)
        .map(|b_max| LadderRow {
            b_max,
            bits: bits_per_action(b_max),
            threshold: crossover_b_avg(b_max),
            smooth: smooth_crossover(b_max),
            smooth_upper: smooth_crossover_upper(b_max),
        })
        .collect()
}

/// A maximal run of `b_max` values sharing one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub bits: u32,
    pub first: u64,
    pub last: u64,
    pub threshold: f64,
}

pub fn plateaus(rows: &[LadderRow]) -> Vec<Plateau> {
    let mut out: Vec<Plateau> = Vec::new();
    for row in rows {
        match out.last_mut() {
            Some(p) if p.bits == row.bits => p.last = row.b_max,
            _ => out.push(Plateau {
                bits: row.bits,
                first: row.b_max,
                last: row.b_max,
                threshold: row.threshold,
            }),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedupReport {
    pub classical_max: f64,
    pub classical_avg: f64,
    /// `2^(n·d/2)`, unfloored.
    pub grover: f64,
    pub ratio_max_avg: f64,
    pub ratio_avg_grover: f64,
    pub threshold: f64,
    /// True when the classical count exceeds the iterate count.
    pub hybrid_wins: bool,
}

pub fn speedup_report(scenario: &BranchingScenario) -> SpeedupReport {
    let classical_max = classical_node_count(scenario.b_max as f64, scenario.depth);
    let classical_avg = classical_node_count(scenario.b_avg, scenario.depth);
    let grover = grover_iterations_real(scenario);
    SpeedupReport {
        classical_max,
        classical_avg,
        grover,
        ratio_max_avg: classical_max / classical_avg,
        ratio_avg_grover: classical_avg / grover,
        threshold: crossover_b_avg(scenario.b_max),
        hybrid_wins: classical_avg > grover,
    }
}

fn check_counts(n_bits: u32, k: u64) -> Result<u64> {
    if n_bits >= 64 {
        return Err(Error::Overflow(format!("2^{n_bits} states")));
    }
    let n_total = 1u64 << n_bits;
    if k > n_total {
        return Err(Error::Domain(format!("k = {k} exceeds 2^{n_bits}")));
    }
    Ok(n_total)
}

/// Angle with `tan θ = √(k_d / (2^n − k_d))`.
pub fn theta_of_depth(n_bits: u32, k_d: u64) -> Result<f64> {
    let n_total = check_counts(n_bits, k_d)?;
    Ok((k_d as f64).sqrt().atan2(((n_total - k_d) as f64).sqrt()))
}

/// `θ(k_d2) − θ(k_d1)`.
pub fn delta_theta(n_bits: u32, k_d1: u64, k_d2: u64) -> Result<f64> {
    Ok(theta_of_depth(n_bits, k_d2)? - theta_of_depth(n_bits, k_d1)?)
}

/// `(√(k/2^n), √((2^n−k)/2^n))`, the state's coordinates in the good/bad
/// plane.
pub fn good_bad_point(n_bits: u32, k: u64) -> Result<(f64, f64)> {
    let n_total = check_counts(n_bits, k)? as f64;
    Ok((
        (k as f64 / n_total).sqrt(),
        ((n_total - k as f64) / n_total).sqrt(),
    ))
}

/// Marked-state counts per search depth.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthSolutionProfile {
    pub n_bits: u32,
    pub k_by_depth: std::collections::BTreeMap<u32, u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitCheck {
    /// Distance from each depth's point to the full-`k` point.
    pub distances: Vec<f64>,
    /// Counts never decrease with depth.
    pub nondecreasing: bool,
    /// No count exceeds `k`.
    pub bounded: bool,
    /// Distances never increase with depth.
    pub distances_monotone: bool,
    /// Last count equals `k` and its distance is below 1e-12.
    pub converged: bool,
}

/// Checks that the per-depth states approach the final one as `k_d → k`.
/// Decreasing sequences are reported through `nondecreasing`, not
/// rejected.
pub fn psi_kd_limit_check(n_bits: u32, k: u64, k_by_depth: &[u64]) -> Result<LimitCheck> {
    let target = good_bad_point(n_bits, k)?;
    let distances = k_by_depth
        .iter()
        .map(|&kd| {
            let (g, b) = good_bad_point(n_bits, kd)?;
            Ok((g - target.0).hypot(b - target.1))
        })
        .collect::<Result<Vec<f64>>>()?;
    let nondecreasing = k_by_depth.windows(2).all(|w| w[0] <= w[1]);
    let bounded = k_by_depth.iter().all(|&kd| kd <= k);
    let distances_monotone = distances.windows(2).all(|w| w[1] <= w[0]);
    let converged = k_by_depth.last() == Some(&k) && distances.last().is_some_and(|&d| d < 1e-12);
    Ok(LimitCheck {
        distances,
        nondecreasing,
        bounded,
        distances_monotone,
        converged,
    })
}

impl DepthSolutionProfile {
    pub fn limit_check(&self, k: u64) -> Result<LimitCheck> {
        let counts: Vec<u64> = self.k_by_depth.values().copied().collect();
        psi_kd_limit_check(self.n_bits, k, &counts)
    }
}
