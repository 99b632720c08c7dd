//! Stable subordinators and their inverses (first-passage processes).
//!
//! The subordinator `Y` has totally skewed stable increments
//! `S_alpha(sigma dt^{1/alpha}, 1, 0)` with `0 < alpha < 1`, hence
//! non-decreasing paths. The inverse process is the first passage strictly
//! above each level: `X(t) = inf{ s > 0 : Y(s) > t }`, non-decreasing and
//! alpha-self-similar. It is simulated by walking `Y` on an s-grid `refine`
//! times finer than the requested output resolution and locating crossings
//! with a two-pointer sweep; ties resolve to the smallest crossing index and
//! the left grid endpoint of the crossing cell is reported, so `X(0) = 0`.

use super::stable::standard_stable;
use super::{ProcessSpec, SamplePath, Seed};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use std::f64::consts::FRAC_PI_2;

pub fn stable_subordinator_path(
    alpha: f64,
    sigma: f64,
    n: usize,
    horizon: f64,
    seed: Seed,
) -> Result<SamplePath> {
    let spec = ProcessSpec::StableSubordinator { alpha, sigma };
    spec.validate()?;
    let mut rng = SplitMix64::stream(seed.0, "subordinator");
    let dt = horizon / n as f64;
    let scale = sigma * dt.powf(1.0 / alpha);
    let increments: Vec<f64> = (0..n)
        .map(|_| scale * standard_stable(alpha, 1.0, &mut rng))
        .collect();
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}

pub fn inverse_subordinator_path(
    alpha: f64,
    refine: u32,
    n: usize,
    horizon: f64,
    seed: Seed,
) -> Result<SamplePath> {
    let spec = ProcessSpec::InverseStableSubordinator { alpha, refine };
    spec.validate()?;
    let mut rng = SplitMix64::stream(seed.0, "inverse-subordinator");

    // Expected first-passage scale: E X(t) ~ t^alpha cos(pi alpha/2), used
    // only to size the s-grid so the walk takes about n*refine steps.
    let s_scale = horizon.powf(alpha) * (FRAC_PI_2 * alpha).cos();
    let steps = n as u64 * refine as u64;
    let ds = s_scale / steps as f64;
    let jump_scale = ds.powf(1.0 / alpha);

    let dt = horizon / n as f64;
    let mut times = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    let mut y = 0.0_f64;
    let mut i = 0u64;
    let cap = steps.saturating_mul(4096);
    for k in 0..=n {
        let level = k as f64 * dt;
        while y <= level {
            i += 1;
            if i > cap {
                return Err(Error::Numeric(
                    "first-passage walk failed to cross the horizon".into(),
                ));
            }
            y += jump_scale * standard_stable(alpha, 1.0, &mut rng);
        }
        times.push(level);
        values.push((i - 1) as f64 * ds);
    }
    SamplePath::new(times, values, Some(spec), Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats;

    #[test]
    fn subordinator_is_strictly_increasing() {
        let p = stable_subordinator_path(0.6, 1.0, 512, 1.0, Seed(1)).unwrap();
        for w in p.values().windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn subordinator_laplace_transform_matches() {
        // E e^{-u Y(1)} = exp{-sigma^alpha u^alpha / cos(pi alpha / 2)}.
        let alpha = 0.6;
        let u = 1.0_f64;
        let vals: Vec<f64> = (0..4000)
            .map(|s| {
                let p = stable_subordinator_path(alpha, 1.0, 8, 1.0, Seed(s)).unwrap();
                (-u * p.values()[8]).exp()
            })
            .collect();
        let expect = (-u.powf(alpha) / (FRAC_PI_2 * alpha).cos()).exp();
        let got = stats::mean(&vals);
        assert!((got - expect).abs() < 0.02, "got {got}, expected {expect}");
    }

    #[test]
    fn inverse_starts_at_zero_and_is_non_decreasing() {
        let p = inverse_subordinator_path(0.7, 8, 256, 1.0, Seed(2)).unwrap();
        assert_eq!(p.values()[0], 0.0);
        for w in p.values().windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn inverse_is_alpha_self_similar() {
        // X(1) against 2^alpha X(1/2) from independent seeds, two-sample KS.
        let alpha = 0.7;
        let n = 128;
        let a: Vec<f64> = (0..200)
            .map(|s| {
                let p = inverse_subordinator_path(alpha, 8, n, 1.0, Seed(s)).unwrap();
                p.values()[n]
            })
            .collect();
        let b: Vec<f64> = (0..200)
            .map(|s| {
                let p = inverse_subordinator_path(alpha, 8, n, 1.0, Seed(5000 + s)).unwrap();
                2f64.powf(alpha) * p.values()[n / 2]
            })
            .collect();
        let d = stats::ks_statistic_two_sample(&a, &b);
        let p = stats::ks_pvalue_two_sample(d, a.len(), b.len());
        assert!(p > 0.01, "self-similarity KS p = {p}");
    }

    #[test]
    fn doubling_refine_moves_the_mean_by_under_two_percent() {
        let alpha = 0.7;
        let mean_at = |refine: u32, base: u64| {
            let vals: Vec<f64> = (0..6000)
                .map(|s| {
                    let p = inverse_subordinator_path(alpha, refine, 64, 1.0, Seed(base + s))
                        .unwrap();
                    p.values()[64]
                })
                .collect();
            stats::mean(&vals)
        };
        let coarse = mean_at(4, 0);
        let fine = mean_at(8, 100_000);
        let rel = (fine - coarse).abs() / fine;
        assert!(rel < 0.02, "coarse {coarse}, fine {fine}, rel {rel}");
    }
}
