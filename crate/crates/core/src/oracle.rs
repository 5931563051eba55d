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

//! Phase-oracle predicates over encoded tree paths.
//!
//! Three kinds are supported: goal membership of the terminal node, an
//! evaluation-function threshold `f ≤ T`, and a quantile band that selects
//! the paths whose `f` value ranks inside `(a, b]` of its distribution.
//! Inadmissible code words are never marked.

use crate::stats::{DistributionKind, EmpiricalDistribution};
use crate::tree::{ActionPath, AdmissiblePath, NodeId, PathCodec, SearchTree};
use crate::{Error, Result};

/// Width of a quantile band: one quarter of the distribution, the marked
/// fraction for which a single Grover iterate is exact.
pub const BAND_WIDTH: f64 = 0.25;

/// Evaluation function over a complete path and the node it ends at.
pub trait PathEvaluator {
    fn evaluate(&self, tree: &SearchTree, path: &ActionPath, terminal: NodeId) -> f64;
}

impl<F> PathEvaluator for F
where
    F: Fn(&SearchTree, &ActionPath, NodeId) -> f64,
{
    fn evaluate(&self, tree: &SearchTree, path: &ActionPath, terminal: NodeId) -> f64 {
        self(tree, path, terminal)
    }
}

/// `f = g + h` where `g` charges `action_cost` per step and `h` is the
/// terminal node's heuristic from the tree description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostPlusHeuristic {
    pub action_cost: f64,
}

impl Default for CostPlusHeuristic {
    fn default() -> Self {
        Self { action_cost: 1.0 }
    }
}

impl PathEvaluator for CostPlusHeuristic {
    fn evaluate(&self, tree: &SearchTree, path: &ActionPath, terminal: NodeId) -> f64 {
        self.action_cost * path.len() as f64 + tree.heuristic(terminal)
    }
}

/// Probability band `(a, b]` with `b − a = 0.25`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileBand {
    lower: f64,
    upper: f64,
}

impl QuantileBand {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lower) || !(upper > lower && upper <= 1.0) {
            return Err(Error::Config(format!(
                "quantile band ({lower}, {upper}) must satisfy 0 <= a < b <= 1"
            )));
        }
        if ((upper - lower) - BAND_WIDTH).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "quantile band ({lower}, {upper}) must be {BAND_WIDTH} wide"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Value bounds `(F⁻¹(a), F⁻¹(b))`; the lower one is `−∞` when `a = 0`.
    pub fn value_bounds(&self, dist: &EmpiricalDistribution) -> Result<(f64, f64)> {
        let lo = if self.lower == 0.0 {
            f64::NEG_INFINITY
        } else {
            dist.quantile(self.lower)?
        };
        Ok((lo, dist.quantile(self.upper)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleKind {
    Goal,
    Threshold {
        threshold: f64,
    },
    /// Marks `lower < f ≤ upper` (or `f ≤ upper` when the band starts at 0).
    QuantileBand {
        band: QuantileBand,
        lower: f64,
        upper: f64,
    },
}

/// A marking predicate, materialized as the sorted list of marked indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Oracle {
    kind: OracleKind,
    code_space: usize,
    admissible: usize,
    marked: Vec<usize>,
}

impl Oracle {
    fn from_paths<F>(kind: OracleKind, codec: &PathCodec, paths: &[AdmissiblePath], keep: F) -> Self
    where
        F: Fn(&AdmissiblePath) -> bool,
    {
        let marked = paths.iter().filter(|p| keep(p)).map(|p| p.index).collect();
        Self {
            kind,
            code_space: codec.code_space(),
            admissible: paths.len(),
            marked,
        }
    }

    /// Marks admissible paths that end at a goal node.
    pub fn goal(tree: &SearchTree, codec: &PathCodec) -> Self {
        let paths = codec.admissible_paths(tree);
        Self::from_paths(OracleKind::Goal, codec, &paths, |p| {
            tree.is_goal(p.terminal)
        })
    }

    /// Marks admissible paths with `f(path) ≤ threshold`.
    pub fn threshold<E: PathEvaluator>(
        tree: &SearchTree,
        codec: &PathCodec,
        f: &E,
        threshold: f64,
    ) -> Self {
        let paths = codec.admissible_paths(tree);
        Self::from_paths(OracleKind::Threshold { threshold }, codec, &paths, |p| {
            f.evaluate(tree, &p.path, p.terminal) <= threshold
        })
    }

    /// Marks admissible paths whose `f` value lies in the band's value range
    /// under `dist`.
    pub fn quantile_band<E: PathEvaluator>(
        tree: &SearchTree,
        codec: &PathCodec,
        f: &E,
        band: QuantileBand,
        dist: &EmpiricalDistribution,
    ) -> Result<Self> {
        let (lower, upper) = band.value_bounds(dist)?;
        let paths = codec.admissible_paths(tree);
        let kind = OracleKind::QuantileBand { band, lower, upper };
        Ok(Self::from_paths(kind, codec, &paths, |p| {
            let v = f.evaluate(tree, &p.path, p.terminal);
            v > lower && v <= upper
        }))
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.marked.binary_search(&index).is_ok()
    }

    /// Borrowing closure form, for [`crate::StateVector`] operations.
    pub fn predicate(&self) -> impl Fn(usize) -> bool + '_ {
        move |i| self.is_marked(i)
    }

    pub fn marked_indices(&self) -> &[usize] {
        &self.marked
    }

    /// Number of marked states `k`.
    pub fn k(&self) -> usize {
        self.marked.len()
    }

    /// `N = 2^(n·d)`.
    pub fn code_space(&self) -> usize {
        self.code_space
    }

    pub fn admissible_count(&self) -> usize {
        self.admissible
    }

    /// Marked share of the admissible paths.
    pub fn admissible_fraction(&self) -> f64 {
        if self.admissible == 0 {
            0.0
        } else {
            self.marked.len() as f64 / self.admissible as f64
        }
    }
}

/// Exhaustive count of indices in `[0, code_space)` satisfying `predicate`.
pub fn marked_count<P>(predicate: P, code_space: usize) -> usize
where
    P: Fn(usize) -> bool,
{
    (0..code_space).filter(|&i| predicate(i)).count()
}

/// Distribution of `f` over the admissible paths of `tree`.
pub fn path_value_distribution<E: PathEvaluator>(
    tree: &SearchTree,
    codec: &PathCodec,
    f: &E,
    kind: DistributionKind,
) -> Result<EmpiricalDistribution> {
    let values: Vec<f64> = codec
        .admissible_paths(tree)
        .iter()
        .map(|p| f.evaluate(tree, &p.path, p.terminal))
        .collect();
    EmpiricalDistribution::from_samples(&values, kind)
}
