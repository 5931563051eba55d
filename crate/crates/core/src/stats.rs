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

//! Empirical distributions: PMFs over discrete values and normalized
//! histograms standing in for continuous densities.

use crate::{Error, Result};

/// Tolerance on total probability mass.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// How samples are turned into a distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind {
    /// One atom per distinct value (exact `f64` equality).
    Discrete,
    /// Histogram with bins of the given width, aligned to multiples of it.
    BinnedWidth(f64),
    /// Histogram with this many equal bins spanning `[min, max]`.
    BinnedCount(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Discrete,
    Binned,
}

/// A normalized distribution with CDF and quantile function.
///
/// For a discrete distribution `support` holds the atoms in increasing
/// order. For a binned one it holds the `mass.len() + 1` bin edges and the
/// density is piecewise constant.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    shape: Shape,
    support: Vec<f64>,
    mass: Vec<f64>,
    cumulative: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn from_samples(values: &[f64], kind: DistributionKind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("no samples".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("samples must be finite".into()));
        }
        match kind {
            DistributionKind::Discrete => {
                let mut sorted = values.to_vec();
                sorted.sort_by(f64::total_cmp);
                let mut support: Vec<f64> = Vec::new();
                let mut counts: Vec<u64> = Vec::new();
                for v in sorted {
                    match support.last() {
                        Some(&last) if last == v => *counts.last_mut().unwrap() += 1,
                        _ => {
                            support.push(v);
                            counts.push(1);
                        }
                    }
                }
                Ok(Self::from_counts(Shape::Discrete, support, &counts))
            }
            DistributionKind::BinnedWidth(width) => {
                if !(width > 0.0 && width.is_finite()) {
                    return Err(Error::Config(format!("bin width {width} must be positive")));
                }
                let (min, max) = min_max(values);
                let lo = (min / width).floor() * width;
                let bins = ((max - lo) / width).floor() as usize + 1;
                let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
                let mut counts = vec![0u64; bins];
                for &v in values {
                    let i = (((v - lo) / width).floor() as usize).min(bins - 1);
                    counts[i] += 1;
                }
                Ok(Self::from_counts(Shape::Binned, edges, &counts))
            }
            DistributionKind::BinnedCount(bins) => {
                if bins == 0 {
                    return Err(Error::Config("bin count must be positive".into()));
                }
                let (min, max) = min_max(values);
                let width = if max > min {
                    (max - min) / bins as f64
                } else {
                    1.0
                };
                let mut edges: Vec<f64> = (0..=bins).map(|i| min + i as f64 * width).collect();
                if max > min {
                    edges[bins] = max;
                }
                let mut counts = vec![0u64; bins];
                for &v in values {
                    let i = (((v - min) / width).floor() as usize).min(bins - 1);
                    counts[i] += 1;
                }
                Ok(Self::from_counts(Shape::Binned, edges, &counts))
            }
        }
    }

    fn from_counts(shape: Shape, support: Vec<f64>, counts: &[u64]) -> Self {
        let total: u64 = counts.iter().sum();
        let t = total as f64;
        let mass = counts.iter().map(|&c| c as f64 / t).collect();
        let mut acc = 0u64;
        let cumulative = counts
            .iter()
            .map(|&c| {
                acc += c;
                acc as f64 / t
            })
            .collect();
        Self {
            shape,
            support,
            mass,
            cumulative,
        }
    }

    /// Discrete distribution from explicit atoms and probabilities.
    pub fn from_pmf(support: Vec<f64>, mass: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != mass.len() {
            return Err(Error::Domain(
                "support and mass must be non-empty and equal length".into(),
            ));
        }
        if support.iter().any(|v| !v.is_finite()) || support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "support must be finite and strictly increasing".into(),
            ));
        }
        if mass.iter().any(|&m| m.is_nan() || m < 0.0) {
            return Err(Error::Domain("probabilities must be non-negative".into()));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Domain(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = mass
            .iter()
            .map(|m| {
                acc += m;
                acc.min(1.0)
            })
            .collect();
        *cumulative.last_mut().unwrap() = 1.0;
        Ok(Self {
            shape: Shape::Discrete,
            support,
            mass,
            cumulative,
        })
    }

    pub fn is_discrete(&self) -> bool {
        self.shape == Shape::Discrete
    }

    /// Atoms (discrete) or bin edges (binned).
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `P(X = x)` for a discrete distribution; 0 off the support or for
    /// binned distributions.
    pub fn mass_at(&self, x: f64) -> f64 {
        if self.shape != Shape::Discrete {
            return 0.0;
        }
        self.support
            .binary_search_by(|s| s.total_cmp(&x))
            .map_or(0.0, |i| self.mass[i])
    }

    /// Histogram density at `x`; 0 outside the bins or for discrete
    /// distributions.
    pub fn density(&self, x: f64) -> f64 {
        match self.bin_of(x) {
            Some(i) => self.mass[i] / self.bin_width(i),
            None => 0.0,
        }
    }

    /// `(lo, hi, mass, density)` for each bin of a binned distribution.
    pub fn bins(&self) -> Vec<(f64, f64, f64, f64)> {
        if self.shape != Shape::Binned {
            return Vec::new();
        }
        (0..self.mass.len())
            .map(|i| {
                let w = self.bin_width(i);
                (
                    self.support[i],
                    self.support[i + 1],
                    self.mass[i],
                    self.mass[i] / w,
                )
            })
            .collect()
    }

    fn bin_width(&self, i: usize) -> f64 {
        self.support[i + 1] - self.support[i]
    }

    fn bin_of(&self, x: f64) -> Option<usize> {
        if self.shape != Shape::Binned {
            return None;
        }
        let last = *self.support.last().unwrap();
        if x < self.support[0] || x > last {
            return None;
        }
        let i = self.support.partition_point(|&e| e <= x);
        Some(i.saturating_sub(1).min(self.mass.len() - 1))
    }

    /// `F(x) = P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match self.shape {
            Shape::Discrete => {
                let j = self.support.partition_point(|&s| s <= x);
                if j == 0 {
                    0.0
                } else {
                    self.cumulative[j - 1]
                }
            }
            Shape::Binned => {
                if x < self.support[0] {
                    return 0.0;
                }
                if x >= *self.support.last().unwrap() {
                    return 1.0;
                }
                let i = self.bin_of(x).unwrap();
                let prev = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
                let frac = (x - self.support[i]) / self.bin_width(i);
                (prev + self.mass[i] * frac).min(self.cumulative[i])
            }
        }
    }

    /// `F⁻¹(p) = inf{x : p ≤ F(x)}` for `p ∈ (0, 1]`. Binned distributions
    /// interpolate linearly inside the bin that crosses `p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!("probability {p} not in (0, 1]")));
        }
        let i = self.cumulative.partition_point(|&c| c < p);
        let i = i.min(self.cumulative.len() - 1);
        match self.shape {
            Shape::Discrete => Ok(self.support[i]),
            Shape::Binned => {
                let prev = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
                let frac = ((p - prev) / self.mass[i]).clamp(0.0, 1.0);
                Ok(self.support[i] + frac * self.bin_width(i))
            }
        }
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}
