//! Linear fractional stable motion by FFT convolution of a discretized
//! moving-average kernel with stable noise.
//!
//! LFSM is the stochastic integral
//! `X(t) = C^{-1} \int ((t-u)_+^{H-1/alpha} - (-u)_+^{H-1/alpha}) dL_alpha(u)`
//! with symmetric alpha-stable noise. Its unit-lag increments form a moving
//! average with kernel `g(s) = s_+^d - (s-1)_+^d`, `d = H - 1/alpha`. The
//! kernel is sampled on a mesh of `mesh` points per unit time and truncated
//! at `kernel_cutoff` time units; the normalization `C` is the Riemann sum of
//! `|g|^alpha` on the same mesh, so the synthesized increments have scale
//! parameter exactly 1 under the truncated kernel. The path on `[0, horizon]`
//! is the integer-time path rescaled by self-similarity.

use super::stable::standard_stable;
use super::{ProcessSpec, SamplePath, Seed, SimWarning};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Smallest 5-smooth length >= n (rustfft is efficient for 2^a 3^b 5^c).
fn next_fast_fft_len(n: usize) -> usize {
    let mut best = usize::MAX;
    let mut p5 = 1usize;
    while p5 < best {
        let mut p35 = p5;
        while p35 < best {
            let mut len = p35;
            while len < n {
                len *= 2;
            }
            best = best.min(len);
            match p35.checked_mul(3) {
                Some(v) => p35 = v,
                None => break,
            }
        }
        match p5.checked_mul(5) {
            Some(v) => p5 = v,
            None => break,
        }
    }
    best
}

#[allow(clippy::too_many_arguments)]
pub fn lfsm_path(
    hurst: f64,
    alpha: f64,
    kernel_cutoff: u32,
    mesh: u32,
    n: usize,
    horizon: f64,
    seed: Seed,
    warnings: &mut Vec<SimWarning>,
) -> Result<SamplePath> {
    let spec = ProcessSpec::Lfsm {
        hurst,
        alpha,
        kernel_cutoff,
        mesh,
    };
    spec.validate()?;
    if n < 8 {
        return Err(Error::Size("LFSM synthesis needs n >= 8".into()));
    }
    let m = mesh as usize;
    let cutoff = kernel_cutoff as usize;
    let d = hurst - 1.0 / alpha;

    // Increment kernel sampled at j/m, j = 1..m(cutoff+1).
    let taps = m * (cutoff + 1);
    let mut kernel = Vec::with_capacity(taps);
    for j in 1..=taps {
        let s = j as f64 / m as f64;
        let lead = s.powf(d);
        let lag = if s > 1.0 { (s - 1.0).powf(d) } else { 0.0 };
        kernel.push(lead - lag);
    }
    let norm_alpha: f64 = kernel.iter().map(|a| a.abs().powf(alpha)).sum::<f64>() / m as f64;
    let c = norm_alpha.powf(1.0 / alpha);

    // Truncation diagnostic: relative alpha-mass of the neglected tail,
    // estimated from g(s) ~ d s^{d-1} beyond the cutoff.
    let tail = d.abs().powf(alpha) * (cutoff as f64).powf(alpha * (hurst - 1.0))
        / (alpha * (1.0 - hurst));
    let relative_tail = tail / norm_alpha;
    if relative_tail > 0.25 {
        warnings.push(SimWarning::KernelTruncation { relative_tail });
    }
    // Mesh diagnostic: a single cell dominating the Riemann sum signals an
    // under-resolved kernel singularity.
    let first_share = kernel[0].abs().powf(alpha) / m as f64 / norm_alpha;
    if first_share > 0.25 {
        warnings.push(SimWarning::KernelTruncation {
            relative_tail: first_share,
        });
    }

    // Stable noise on the mesh over (-cutoff, n], scale (1/m)^{1/alpha}.
    let mut rng = SplitMix64::stream(seed.0, "lfsm");
    let noise_len = m * (cutoff + n);
    let noise_scale = (1.0 / m as f64).powf(1.0 / alpha);
    let fft_len = next_fast_fft_len(noise_len + taps);

    let mut noise_buf: Vec<Complex<f64>> = Vec::with_capacity(fft_len);
    for _ in 0..noise_len {
        noise_buf.push(Complex::new(
            noise_scale * standard_stable(alpha, 0.0, &mut rng),
            0.0,
        ));
    }
    noise_buf.resize(fft_len, Complex::new(0.0, 0.0));

    let mut kernel_buf: Vec<Complex<f64>> = kernel
        .iter()
        .map(|&a| Complex::new(a, 0.0))
        .collect();
    kernel_buf.resize(fft_len, Complex::new(0.0, 0.0));

    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(fft_len);
    forward.process(&mut noise_buf);
    forward.process(&mut kernel_buf);
    for (x, k) in noise_buf.iter_mut().zip(kernel_buf.iter()) {
        *x *= *k;
    }
    drop(kernel_buf);
    planner.plan_fft_inverse(fft_len).process(&mut noise_buf);

    // Increment k of the integer-time path sits at convolution index
    // m k + m cutoff - 1; cumulate and rescale to the requested horizon.
    let inv_len = 1.0 / fft_len as f64;
    let dt = horizon / n as f64;
    let amp = dt.powf(hurst) / c;
    let mut increments = Vec::with_capacity(n);
    for k in 1..=n {
        let y = noise_buf[m * k + m * cutoff - 1].re * inv_len;
        increments.push(amp * y);
    }
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}
