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

//! Simulation of a hybrid quantum tree search.
//!
//! Paths through a search tree are encoded as fixed-width bit strings
//! ([`tree`]), a phase oracle marks the interesting ones ([`oracle`]) and
//! Grover amplitude amplification is run on a dense state vector
//! ([`statevector`]). Alongside sit the classical baselines
//! ([`classical`]), the branching-factor arithmetic that decides when the
//! quantum route pays off ([`branching`]) and the heuristic-distribution
//! machinery used by quantile-band oracles ([`stats`], [`puzzle`]).

pub mod branching;
pub mod classical;
mod error;
pub mod oracle;
pub mod puzzle;
pub mod special;
pub mod statevector;
pub mod stats;
pub mod tree;

pub use error::{Error, Result};
pub use oracle::{Oracle, OracleKind, QuantileBand};
pub use statevector::{GoodBadDecomposition, StateVector};
pub use stats::{DistributionKind, EmpiricalDistribution};
pub use tree::{ActionPath, PathCodec, SearchTree, TreeSpec};
