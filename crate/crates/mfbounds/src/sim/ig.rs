//! Inverse Gaussian variates and the IG Levy subordinator.
//!
//! Density in the (delta, lambda) parametrization:
//! `f(x) = delta/sqrt(2 pi) e^{delta lambda} x^{-3/2}
//!         exp{-(delta^2/x + lambda^2 x)/2}`, x > 0,
//! i.e. mean `delta/lambda` and shape `delta^2` in the textbook
//! (mean, shape) parametrization. Sampling follows Michael-Schucany-Haas:
//! solve the quadratic for the root transformation of a chi-square variate,
//! then pick between the two roots with the size-biased probability.

use super::{ProcessSpec, SamplePath, Seed};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

fn ig_draw(mean: f64, shape: f64, rng: &mut SplitMix64) -> f64 {
    let v = rng.next_normal();
    let y = v * v;
    let x = mean + mean * mean * y / (2.0 * shape)
        - (mean / (2.0 * shape)) * (4.0 * mean * shape * y + mean * mean * y * y).sqrt();
    let u = rng.next_uniform();
    if u <= mean / (mean + x) {
        x
    } else {
        mean * mean / x
    }
}

/// One draw from IG(delta, lambda). `lambda = 0` is rejected: the tilt
/// degenerates and the mean diverges.
pub fn ig_variate(delta: f64, lambda: f64, seed: Seed) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", "must be positive"));
    }
    if !(lambda > 0.0) {
        return Err(Error::invalid(
            "lambda",
            "must be positive for variate generation",
        ));
    }
    let mut rng = SplitMix64::stream(seed.0, "ig");
    Ok(ig_draw(delta / lambda, delta * delta, &mut rng))
}

/// IG Levy process: independent IG(delta dt, lambda) increments.
pub fn ig_levy_path(
    delta: f64,
    lambda: f64,
    n: usize,
    horizon: f64,
    seed: Seed,
) -> Result<SamplePath> {
    let spec = ProcessSpec::IgLevy { delta, lambda };
    spec.validate()?;
    if !(lambda > 0.0) {
        return Err(Error::invalid(
            "lambda",
            "must be positive for variate generation",
        ));
    }
    let mut rng = SplitMix64::stream(seed.0, "ig-levy");
    let dt = horizon / n as f64;
    let d = delta * dt;
    let (mean, shape) = (d / lambda, d * d);
    let increments: Vec<f64> = (0..n).map(|_| ig_draw(mean, shape, &mut rng)).collect();
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}
