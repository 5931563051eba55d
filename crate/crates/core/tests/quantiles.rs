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

use proptest::prelude::*;
use qtree_core::special::{normal_cdf, normal_quantile};
use qtree_core::stats::{DistributionKind, EmpiricalDistribution};

/// erf via the all-positive series `2/√π e^{-x²} Σ 2^n x^{2n+1} / (2n+1)!!`.
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

fn phi(x: f64) -> f64 {
    0.5 * (1.0 + erf_series(x / std::f64::consts::SQRT_2))
}

#[test]
fn normal_quantile_inverts_series_cdf() {
    for i in 0..=800 {
        let x = -4.0 + i as f64 * 0.01;
        let p = phi(x);
        let back = normal_quantile(p, 0.0, 1.0).unwrap();
        assert!((back - x).abs() < 1e-7, "x={x} p={p} back={back}");
        assert!((normal_cdf(x, 0.0, 1.0) - p).abs() < 1e-14);
    }
}

#[test]
fn normal_quantile_scales() {
    let (mu, sigma) = (3.5, 2.25);
    for p in [0.01, 0.2, 0.5, 0.77, 0.999] {
        let z = normal_quantile(p, 0.0, 1.0).unwrap();
        let x = normal_quantile(p, mu, sigma).unwrap();
        assert!((x - (mu + sigma * z)).abs() < 1e-12);
    }
    assert!(normal_quantile(0.0, 0.0, 1.0).is_err());
    assert!(normal_quantile(1.0, 0.0, 1.0).is_err());
    assert!(normal_quantile(0.5, 0.0, 0.0).is_err());
}

fn discrete() -> impl Strategy<Value = EmpiricalDistribution> {
    prop::collection::vec(-20i32..20, 1..60).prop_map(|v| {
        let samples: Vec<f64> = v.into_iter().map(f64::from).collect();
        EmpiricalDistribution::from_samples(&samples, DistributionKind::Discrete).unwrap()
    })
}

proptest! {
    #[test]
    fn quantile_is_smallest_value_reaching_p(d in discrete(), p in 1e-9f64..=1.0) {
        let q = d.quantile(p).unwrap();
        prop_assert!(d.cdf(q) >= p - 1e-12);
        for &x in d.support().iter().filter(|&&x| x < q) {
            prop_assert!(d.cdf(x) < p);
        }
    }

    #[test]
    fn galois_connection(d in discrete(), p in 1e-9f64..=1.0, x in -25.0f64..25.0) {
        let q = d.quantile(p).unwrap();
        prop_assert_eq!(q <= x, p <= d.cdf(x) + 1e-12);
    }

    #[test]
    fn binned_quantile_round_trips(v in prop::collection::vec(0.0f64..10.0, 2..80), p in 0.01f64..0.99) {
        let d = EmpiricalDistribution::from_samples(&v, DistributionKind::BinnedWidth(0.5)).unwrap();
        prop_assert!((d.total_mass() - 1.0).abs() < 1e-12);
        let q = d.quantile(p).unwrap();
        prop_assert!(d.cdf(q) >= p - 1e-9);
    }
}
