//! Log-normal cascade measure and the multifractal random walk.
//!
//! The cascade process is the non-decreasing measure process
//! `theta(t) = integral of e^{2 omega}` where `omega` is a log-correlated
//! stationary Gaussian field. On the increment grid the field is synthesized
//! by circulant embedding from
//! `Cov(omega_k, omega_l) = lambda^2 ln+ ( L / ((|k-l|+1) dt) )`,
//! with `L` the decorrelation length. Increments are normalized as
//! `theta_k = dt exp(2 omega_k - 2 E omega^2)` so that `E theta(t) = t`,
//! which gives the moment scaling `tau(q) = q(1 + 2 lambda^2) - 2 lambda^2 q^2`
//! at scales well below `L`. The multifractal random walk subordinates an
//! independent Brownian motion: `X(t) = B(theta(t))`, with scaling
//! `tau(q) = q(1/2 + lambda^2) - lambda^2 q^2 / 2`.

use super::fbm::stationary_gaussian_circulant;
use super::{ProcessSpec, SamplePath, Seed, SimWarning};
use crate::error::Result;
use crate::rng::SplitMix64;

/// Cascade increments on a grid of `n` steps of width `dt`.
fn cascade_increments(
    lambda2: f64,
    corr_length: f64,
    n: usize,
    dt: f64,
    rng: &mut SplitMix64,
    warnings: &mut Vec<SimWarning>,
) -> Result<Vec<f64>> {
    let autocov: Vec<f64> = (0..=n)
        .map(|j| {
            let sep = (j + 1) as f64 * dt;
            lambda2 * (corr_length / sep).ln().max(0.0)
        })
        .collect();
    let variance = autocov[0];
    let omega = stationary_gaussian_circulant(&autocov, n, rng, warnings)?;
    Ok(omega
        .iter()
        .map(|w| dt * (2.0 * w - 2.0 * variance).exp())
        .collect())
}

pub fn cascade_path(
    lambda2: f64,
    corr_length: f64,
    n: usize,
    horizon: f64,
    seed: Seed,
    warnings: &mut Vec<SimWarning>,
) -> Result<SamplePath> {
    let spec = ProcessSpec::LognormalCascade {
        lambda2,
        horizon: corr_length,
    };
    spec.validate()?;
    let mut rng = SplitMix64::stream(seed.0, "cascade-omega");
    let dt = horizon / n as f64;
    let increments = cascade_increments(lambda2, corr_length, n, dt, &mut rng, warnings)?;
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}

pub fn mrw_path(
    lambda2: f64,
    corr_length: f64,
    n: usize,
    horizon: f64,
    seed: Seed,
    warnings: &mut Vec<SimWarning>,
) -> Result<SamplePath> {
    let spec = ProcessSpec::Mrw {
        lambda2,
        horizon: corr_length,
    };
    spec.validate()?;
    let mut omega_rng = SplitMix64::stream(seed.0, "mrw-omega");
    let mut bm_rng = SplitMix64::stream(seed.0, "mrw-bm");
    let dt = horizon / n as f64;
    let theta = cascade_increments(lambda2, corr_length, n, dt, &mut omega_rng, warnings)?;
    let increments: Vec<f64> = theta
        .iter()
        .map(|&th| th.sqrt() * bm_rng.next_normal())
        .collect();
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}
