//! Fractional Brownian motion via circulant embedding of fractional Gaussian
//! noise, with an exact Cholesky fallback for small paths.
//!
//! FBM is the zero-mean Gaussian process with
//! `E B_H(t) B_H(s) = (|t|^{2H} + |s|^{2H} - |t-s|^{2H}) / 2`.
//! Unit-spacing increments form a stationary sequence with autocovariance
//! `r(k) = ((k+1)^{2H} - 2 k^{2H} + (k-1)^{2H}) / 2`, which embeds in a
//! 2n-circulant whose eigenvalues are the FFT of the first row; sampling in
//! the eigenbasis gives exact covariances up to eigenvalue clipping.

use super::{ProcessSpec, SamplePath, Seed, SimWarning};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
pub(crate) fn fgn_autocov(hurst: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let k = k as f64;
    let e = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).powf(e))
}

/// Draw `n` values of a stationary Gaussian sequence with autocovariance
/// `autocov[0..=n]` by circulant embedding. Mild negative eigenvalues are
/// clipped to zero (recorded in `warnings`); eigenvalues below
/// `-1e-10 * max_eigenvalue` mean the embedding is numerically non-PSD and
/// produce an error so the caller can fall back or abort.
pub(crate) fn stationary_gaussian_circulant(
    autocov: &[f64],
    n: usize,
    rng: &mut SplitMix64,
    warnings: &mut Vec<SimWarning>,
) -> Result<Vec<f64>> {
    assert!(autocov.len() >= n + 1);
    let m = 2 * n;
    let mut row: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); m];
    for (j, slot) in row.iter_mut().enumerate().take(n + 1) {
        *slot = Complex::new(autocov[j], 0.0);
    }
    for j in 1..n {
        row[m - j] = Complex::new(autocov[j], 0.0);
    }

    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut row);

    let max_eig = row.iter().map(|c| c.re).fold(0.0_f64, f64::max);
    let tol = 1e-10 * max_eig.max(1.0);
    let mut clipped = 0usize;
    let mut worst = 0.0_f64;
    let mut eig = vec![0.0; m];
    for (k, c) in row.iter().enumerate() {
        let v = c.re;
        if v < -tol {
            return Err(Error::Numeric(format!(
                "circulant embedding not positive semi-definite (eigenvalue {v:e})"
            )));
        }
        if v < 0.0 {
            clipped += 1;
            worst = worst.min(v);
            eig[k] = 0.0;
        } else {
            eig[k] = v;
        }
    }
    if clipped > 0 {
        warnings.push(SimWarning::ClippedEigenvalues {
            count: clipped,
            worst,
        });
    }

    // Hermitian-symmetric complex Gaussians in the eigenbasis.
    let mut spectrum: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); m];
    spectrum[0] = Complex::new(eig[0].sqrt() * rng.next_normal(), 0.0);
    spectrum[n] = Complex::new(eig[n].sqrt() * rng.next_normal(), 0.0);
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for k in 1..n {
        let a = rng.next_normal();
        let b = rng.next_normal();
        let s = eig[k].sqrt() * half;
        spectrum[k] = Complex::new(s * a, s * b);
        spectrum[m - k] = Complex::new(s * a, -(s * b));
    }

    planner.plan_fft_inverse(m).process(&mut spectrum);
    let norm = 1.0 / (m as f64).sqrt();
    Ok(spectrum[..n].iter().map(|c| c.re * norm).collect())
}

/// Exact fractional Gaussian noise via Cholesky factorization, O(n^3).
fn fgn_cholesky(hurst: f64, n: usize, rng: &mut SplitMix64) -> Result<Vec<f64>> {
    let mut l = vec![0.0_f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = fgn_autocov(hurst, i - j);
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::Numeric(
                        "fGn covariance matrix is not positive definite".into(),
                    ));
                }
                l[i * n + j] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    let z: Vec<f64> = (0..n).map(|_| rng.next_normal()).collect();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for k in 0..=i {
            acc += l[i * n + k] * z[k];
        }
        out[i] = acc;
    }
    Ok(out)
}

const CHOLESKY_FALLBACK_MAX: usize = 2048;

pub fn fbm_path(
    hurst: f64,
    n: usize,
    horizon: f64,
    seed: Seed,
    warnings: &mut Vec<SimWarning>,
) -> Result<SamplePath> {
    let spec = ProcessSpec::Fbm { hurst };
    spec.validate()?;
    if n < 8 {
        return Err(Error::Size("FBM synthesis needs n >= 8".into()));
    }
    let mut rng = SplitMix64::stream(seed.0, "fbm");
    let autocov: Vec<f64> = (0..=n).map(|k| fgn_autocov(hurst, k)).collect();
    let fgn = match stationary_gaussian_circulant(&autocov, n, &mut rng, warnings) {
        Ok(v) => v,
        Err(_) if n <= CHOLESKY_FALLBACK_MAX => {
            warnings.push(SimWarning::CholeskyFallback);
            fgn_cholesky(hurst, n, &mut rng)?
        }
        Err(e) => return Err(e),
    };
    let dt = horizon / n as f64;
    let scale = dt.powf(hurst);
    let increments: Vec<f64> = fgn.iter().map(|x| scale * x).collect();
    Ok(SamplePath::from_increments(&increments, horizon, spec, seed))
}
