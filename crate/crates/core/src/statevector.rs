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

//! Dense state-vector register and Grover's iterate.
//!
//! The oracle is applied as a phase flip driven by a predicate over basis
//! indices rather than through an explicit ancilla qubit; with the ancilla
//! prepared in the `|−⟩` eigenstate both give identical amplitudes on the
//! input register.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Default qubit cap: 2^26 amplitudes of 16 bytes each is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Tolerance on `Σ|α|² = 1` accepted by [`StateVector::from_amplitudes`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A register of `m` qubits stored as its `2^m` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition over `m` qubits, capped at [`DEFAULT_MAX_QUBITS`].
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        Self::uniform_with_cap(num_qubits, DEFAULT_MAX_QUBITS)
    }

    /// Uniform superposition with an explicit qubit cap.
    pub fn uniform_with_cap(num_qubits: usize, max_qubits: usize) -> Result<Self> {
        check_capacity(num_qubits, max_qubits)?;
        let len = 1usize << num_qubits;
        let amp = Complex64::new((1.0 / len as f64).sqrt(), 0.0);
        Ok(Self {
            num_qubits,
            amplitudes: vec![amp; len],
        })
    }

    /// Wraps explicit amplitudes. The length must be a power of two of at
    /// least 2 and the vector must be normalized within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Config(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_capacity(num_qubits, DEFAULT_MAX_QUBITS)?;
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Config(format!(
                "state is not normalized (norm² = {norm})"
            )));
        }
        Ok(state)
    }

    /// Basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_capacity(num_qubits, DEFAULT_MAX_QUBITS)?;
        let len = 1usize << num_qubits;
        if index >= len {
            return Err(Error::Domain(format!("basis index {index} >= {len}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of basis states, `N = 2^m`.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability carried by indices for which `marked` holds.
    pub fn marked_probability<P>(&self, marked: P) -> f64
    where
        P: Fn(usize) -> bool,
    {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| marked(*i))
            .fold(0.0, |acc, (_, a)| acc + a.norm_sqr())
    }

    /// Flips the sign of every amplitude whose index satisfies `marked`.
    pub fn apply_phase_oracle<P>(&mut self, marked: P)
    where
        P: Fn(usize) -> bool,
    {
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if marked(i) {
                *a = -*a;
            }
        }
    }

    /// Reflects every amplitude about the mean: `α ↦ 2A − α`.
    pub fn invert_about_mean(&mut self) {
        let sum: Complex64 = self.amplitudes.iter().sum();
        let twice_mean = sum * (2.0 / self.amplitudes.len() as f64);
        for a in &mut self.amplitudes {
            *a = twice_mean - *a;
        }
    }

    /// One Grover iterate: phase oracle followed by inversion about the mean.
    pub fn grover_iterate<P>(&mut self, marked: P)
    where
        P: Fn(usize) -> bool,
    {
        self.apply_phase_oracle(marked);
        self.invert_about_mean();
    }

    /// Applies `iterations` Grover iterates.
    pub fn amplify<P>(&mut self, marked: P, iterations: usize)
    where
        P: Fn(usize) -> bool,
    {
        for _ in 0..iterations {
            self.grover_iterate(&marked);
        }
    }

    /// Samples a basis index with probability `|α_x|²`. The outcome is a pure
    /// function of the state and `seed`.
    pub fn measure(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = rng.random::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                acc += p;
                last_nonzero = i;
                if target < acc {
                    return i;
                }
            }
        }
        last_nonzero
    }

    /// Precomputes the cumulative distribution for repeated sampling.
    pub fn sampler(&self) -> Sampler {
        Sampler::new(self)
    }
}

fn check_capacity(num_qubits: usize, max_qubits: usize) -> Result<()> {
    // Hard ceiling well below the pointer width so `1 << m` cannot overflow.
    let max = max_qubits.min(usize::BITS as usize - 2);
    if num_qubits == 0 || num_qubits > max {
        return Err(Error::Capacity {
            requested: num_qubits,
            max,
        });
    }
    Ok(())
}

/// Inverse-CDF sampler over the measurement distribution of a state.
#[derive(Debug, Clone)]
pub struct Sampler {
    cumulative: Vec<f64>,
}

impl Sampler {
    pub fn new(state: &StateVector) -> Self {
        let mut acc = 0.0;
        let cumulative = state
            .amplitudes
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Self { cumulative }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("non-empty state");
        let target = rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= target);
        idx.min(self.cumulative.len() - 1)
    }

    /// `shots` samples drawn from one ChaCha stream seeded by `seed`.
    pub fn shots(&self, shots: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..shots).map(|_| self.sample(&mut rng)).collect()
    }
}

/// Number of Grover iterates used for `k` marked states out of `n_total`:
/// `⌊(π/4)·√(N/k)⌋`, at least 1 when `k < N` and 0 when every state is
/// marked.
pub fn optimal_iteration_count(n_total: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::NoSolution);
    }
    if k > n_total {
        return Err(Error::Domain(format!(
            "marked count {k} exceeds state count {n_total}"
        )));
    }
    if k == n_total {
        return Ok(0);
    }
    let count = (FRAC_PI_4 * (n_total as f64 / k as f64).sqrt()).floor() as u64;
    Ok(count.max(1))
}

/// Marked-state probability after `iterations` iterates from the uniform
/// state: `sin²((2j+1)·θ)` with `sin θ = √(k/N)`.
pub fn closed_form_success(n_total: u64, k: u64, iterations: u64) -> f64 {
    let theta = (k as f64 / n_total as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Split of the uniform superposition into its solution and non-solution
/// components, `√(k/N)·|ψ_good⟩ + √((N−k)/N)·|ψ_bad⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodBadDecomposition {
    pub k: u64,
    pub n_total: u64,
    pub amp_good: f64,
    pub amp_bad: f64,
    /// Angle of the state above the `|ψ_bad⟩` axis, in radians.
    pub theta: f64,
}

pub fn decompose(num_qubits: usize, k: u64) -> Result<GoodBadDecomposition> {
    if num_qubits >= 64 {
        return Err(Error::Overflow(format!("2^{num_qubits} states")));
    }
    let n_total = 1u64 << num_qubits;
    if k > n_total {
        return Err(Error::Domain(format!(
            "marked count {k} exceeds state count {n_total}"
        )));
    }
    let amp_good = (k as f64 / n_total as f64).sqrt();
    let amp_bad = ((n_total - k) as f64 / n_total as f64).sqrt();
    let theta = if k == n_total {
        FRAC_PI_2
    } else {
        (amp_good / amp_bad).atan()
    };
    Ok(GoodBadDecomposition {
        k,
        n_total,
        amp_good,
        amp_bad,
        theta,
    })
}
