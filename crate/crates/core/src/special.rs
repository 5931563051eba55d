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

//! Inverse error function and the normal quantile built on it.
//!
//! The initial guess is Giles' single-precision rational approximation
//! ("Approximating the erfinv function", GPU Computing Gems, 2011),
//! polished by two Newton steps against `libm`'s `erf`/`erfc`.

use std::f64::consts::{PI, SQRT_2};

use crate::{Error, Result};

/// Giles' approximation of `erfinv(y)` given `w = −ln((1−y)(1+y))`.
fn giles(w: f64, y: f64) -> f64 {
    let p = if w < 5.0 {
        let w = w - 2.5;
        let mut p = 2.810_226_36e-08;
        p = 3.432_739_39e-07 + p * w;
        p = -3.523_387_7e-06 + p * w;
        p = -4.391_506_54e-06 + p * w;
        p = 0.000_218_580_87 + p * w;
        p = -0.001_253_725_03 + p * w;
        p = -0.004_177_681_64 + p * w;
        p = 0.246_640_727 + p * w;
        1.501_409_41 + p * w
    } else {
        let w = w.sqrt() - 3.0;
        let mut p = -0.000_200_214_257;
        p = 0.000_100_950_558 + p * w;
        p = 0.001_349_343_22 + p * w;
        p = -0.003_673_428_44 + p * w;
        p = 0.005_739_507_73 + p * w;
        p = -0.007_622_461_3 + p * w;
        p = 0.009_438_870_47 + p * w;
        p = 1.001_674_06 + p * w;
        2.832_976_82 + p * w
    };
    p * y
}

fn erf_derivative(x: f64) -> f64 {
    2.0 / PI.sqrt() * (-x * x).exp()
}

/// Inverse of the error function on `[−1, 1]`.
pub fn erf_inv(y: f64) -> f64 {
    if y.is_nan() || !(-1.0..=1.0).contains(&y) {
        return f64::NAN;
    }
    if y == 1.0 {
        return f64::INFINITY;
    }
    if y == -1.0 {
        return f64::NEG_INFINITY;
    }
    if y.abs() > 0.5 {
        // erfc keeps precision where erf saturates.
        let x = erfc_inv(1.0 - y.abs());
        return x.copysign(y);
    }
    let mut x = giles(-((1.0 - y) * (1.0 + y)).ln(), y);
    for _ in 0..2 {
        x -= (libm::erf(x) - y) / erf_derivative(x);
    }
    x
}

/// Inverse of the complementary error function on `[0, 2]`.
pub fn erfc_inv(q: f64) -> f64 {
    if q.is_nan() || !(0.0..=2.0).contains(&q) {
        return f64::NAN;
    }
    if q == 0.0 {
        return f64::INFINITY;
    }
    if q == 2.0 {
        return f64::NEG_INFINITY;
    }
    if q > 1.0 {
        return -erfc_inv(2.0 - q);
    }
    // (1−y)(1+y) with y = 1 − q, without forming y.
    let w = -(q * (2.0 - q)).ln();
    if w > DEEP_TAIL_W {
        return erfc_inv_deep_tail(q);
    }
    let mut x = giles(w, 1.0 - q);
    for _ in 0..2 {
        let slope = erf_derivative(x);
        if slope == 0.0 {
            break;
        }
        x += (libm::erfc(x) - q) / slope;
    }
    x
}

/// Beyond this `w` the rational fit is no longer usable.
const DEEP_TAIL_W: f64 = 36.0;

/// `erfc(x) ≈ e^(−x²)/(x√π)` fixed point, then Newton on `ln erfc`.
fn erfc_inv_deep_tail(q: f64) -> f64 {
    let ln_q = q.ln();
    let mut x = (-ln_q).sqrt();
    for _ in 0..4 {
        x = (-ln_q - (x * PI.sqrt()).ln()).sqrt();
    }
    for _ in 0..3 {
        let erfc = libm::erfc(x);
        let slope = erf_derivative(x);
        if erfc == 0.0 || slope == 0.0 {
            break;
        }
        x += (erfc.ln() - ln_q) * erfc / slope;
    }
    x
}

/// Standard normal CDF, `Φ(x) = ½·erfc(−x/√2)`.
pub fn normal_cdf(x: f64, mu: f64, sigma: f64) -> f64 {
    0.5 * libm::erfc(-(x - mu) / (sigma * SQRT_2))
}

/// Quantile of `N(μ, σ²)`: `μ + √2·σ·erfinv(2p − 1)`.
///
/// Evaluated as `μ − √2·σ·erfcinv(2p)`, which is the same function but does
/// not lose the low bits of `p` in `2p − 1`.
pub fn normal_quantile(p: f64, mu: f64, sigma: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("probability {p} not in (0, 1)")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma {sigma} must be positive")));
    }
    if p == 0.5 {
        return Ok(mu);
    }
    Ok(mu - SQRT_2 * sigma * erfc_inv(2.0 * p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_inv_inverts_erf() {
        let mut y = -0.999;
        while y < 1.0 {
            let x = erf_inv(y);
            assert!((libm::erf(x) - y).abs() < 1e-15, "y={y}");
            y += 0.0037;
        }
        assert_eq!(erf_inv(0.0), 0.0);
        assert_eq!(erf_inv(1.0), f64::INFINITY);
        assert_eq!(erf_inv(-1.0), f64::NEG_INFINITY);
        assert!(erf_inv(1.5).is_nan());
    }

    #[test]
    fn erfc_inv_tails() {
        for q in [
            1e-300,
            1e-100,
            1e-20,
            1e-8,
            0.01,
            0.3,
            1.0,
            1.7,
            2.0 - 1e-12,
        ] {
            let x = erfc_inv(q);
            let back = libm::erfc(x);
            assert!(((back - q) / q).abs() < 1e-12, "q={q} back={back}");
        }
    }

    #[test]
    fn normal_quantile_cases() {
        assert_eq!(normal_quantile(0.5, 3.25, 2.0), Ok(3.25));
        assert!((normal_quantile(0.975, 0.0, 1.0).unwrap() - 1.959964).abs() < 1e-4);
        assert!((normal_quantile(0.8413447, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-4);
        assert!(normal_quantile(0.0, 0.0, 1.0).is_err());
        assert!(normal_quantile(1.0, 0.0, 1.0).is_err());
        assert!(normal_quantile(0.3, 0.0, 0.0).is_err());
        let a = normal_quantile(0.2, 10.0, 3.0).unwrap();
        let b = normal_quantile(0.8, 10.0, 3.0).unwrap();
        assert!((a + b - 20.0).abs() < 1e-12);
    }
}
