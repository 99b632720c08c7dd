//! Seedable generators for the process families used by the estimation and
//! spectrum pipelines: Brownian motion, fractional Brownian motion, stable
//! Levy motion, linear fractional stable motion, the inverse Gaussian Levy
//! process, stable subordinators and their inverses, log-normal cascade
//! measures and the multifractal random walk built on them.
//!
//! Every generator is a pure function of `(spec, n, horizon, seed)`: same
//! inputs give a bit-identical path, and distinct seeds give independent
//! streams, so paths can be produced concurrently without coordination.

mod cascade;
mod fbm;
mod ig;
mod lfsm;
mod stable;
mod subordinator;

pub use cascade::{cascade_path, mrw_path};
pub use fbm::fbm_path;
pub use ig::{ig_levy_path, ig_variate};
pub use lfsm::lfsm_path;
pub use stable::{stable_levy_path, stable_variate};
pub use subordinator::{inverse_subordinator_path, stable_subordinator_path};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};

/// Seed for one path. A single seed fans out into the independent internal
/// streams a generator needs (noise, volatility field, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// Tagged union of the supported process families and their parameters.
///
/// For the cascade-based families, `horizon` is the decorrelation length of
/// the log-volatility field (the scale beyond which increments decouple),
/// normally set equal to the sampling horizon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ProcessSpec {
    Bm,
    Fbm {
        hurst: f64,
    },
    StableLevy {
        alpha: f64,
        sigma: f64,
        beta: f64,
        mu: f64,
    },
    Lfsm {
        hurst: f64,
        alpha: f64,
        kernel_cutoff: u32,
        mesh: u32,
    },
    IgLevy {
        delta: f64,
        lambda: f64,
    },
    StableSubordinator {
        alpha: f64,
        sigma: f64,
    },
    InverseStableSubordinator {
        alpha: f64,
        refine: u32,
    },
    LognormalCascade {
        lambda2: f64,
        horizon: f64,
    },
    Mrw {
        lambda2: f64,
        horizon: f64,
    },
}

impl ProcessSpec {
    /// Validate parameter ranges. Errors name the offending field.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProcessSpec::Bm => Ok(()),
            ProcessSpec::Fbm { hurst } => {
                if !(hurst > 0.0 && hurst < 1.0) {
                    return Err(Error::invalid("hurst", "must lie in (0, 1)"));
                }
                Ok(())
            }
            ProcessSpec::StableLevy {
                alpha,
                sigma,
                beta,
                mu,
            } => {
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
                if !(sigma > 0.0) {
                    return Err(Error::invalid("sigma", "must be positive"));
                }
                if !(-1.0..=1.0).contains(&beta) {
                    return Err(Error::invalid("beta", "must lie in [-1, 1]"));
                }
                if !mu.is_finite() {
                    return Err(Error::invalid("mu", "must be finite"));
                }
                Ok(())
            }
            ProcessSpec::Lfsm {
                hurst,
                alpha,
                kernel_cutoff,
                mesh,
            } => {
                if !(hurst > 0.0 && hurst < 1.0) {
                    return Err(Error::invalid("hurst", "must lie in (0, 1)"));
                }
                // alpha = 2 is admitted so the Gaussian degeneracy (reduction
                // to fractional Brownian motion) can be exercised directly.
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
                if (hurst - 1.0 / alpha).abs() < 1e-12 {
                    return Err(Error::invalid("hurst", "must differ from 1/alpha"));
                }
                if kernel_cutoff == 0 {
                    return Err(Error::invalid("kernel_cutoff", "must be positive"));
                }
                if mesh == 0 {
                    return Err(Error::invalid("mesh", "must be positive"));
                }
                Ok(())
            }
            ProcessSpec::IgLevy { delta, lambda } => {
                if !(delta > 0.0) {
                    return Err(Error::invalid("delta", "must be positive"));
                }
                if !(lambda >= 0.0) {
                    return Err(Error::invalid("lambda", "must be non-negative"));
                }
                Ok(())
            }
            ProcessSpec::StableSubordinator { alpha, sigma } => {
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 1)"));
                }
                if !(sigma > 0.0) {
                    return Err(Error::invalid("sigma", "must be positive"));
                }
                Ok(())
            }
            ProcessSpec::InverseStableSubordinator { alpha, refine } => {
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 1)"));
                }
                if refine == 0 {
                    return Err(Error::invalid("refine", "must be positive"));
                }
                Ok(())
            }
            ProcessSpec::LognormalCascade { lambda2, horizon }
            | ProcessSpec::Mrw { lambda2, horizon } => {
                if !(lambda2 > 0.0 && lambda2 < 0.5) {
                    return Err(Error::invalid("lambda2", "must lie in (0, 1/2)"));
                }
                if !(horizon > 0.0) {
                    return Err(Error::invalid("horizon", "must be positive"));
                }
                Ok(())
            }
        }
    }

    /// Families whose sample paths are non-decreasing.
    pub fn is_monotone(&self) -> bool {
        matches!(
            self,
            ProcessSpec::IgLevy { .. }
                | ProcessSpec::StableSubordinator { .. }
                | ProcessSpec::InverseStableSubordinator { .. }
                | ProcessSpec::LognormalCascade { .. }
        )
    }
}

/// Non-fatal accuracy notes emitted by generators.
#[derive(Debug, Clone, PartialEq)]
pub enum SimWarning {
    /// Circulant-embedding eigenvalues were negative and clipped to zero.
    ClippedEigenvalues { count: usize, worst: f64 },
    /// Moving-average synthesis fell back to exact Cholesky factorization.
    CholeskyFallback,
    /// Kernel truncation leaves a non-negligible tail mass.
    KernelTruncation { relative_tail: f64 },
}

impl std::fmt::Display for SimWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimWarning::ClippedEigenvalues { count, worst } => write!(
                f,
                "clipped {count} negative embedding eigenvalue(s), worst {worst:e}"
            ),
            SimWarning::CholeskyFallback => {
                write!(f, "circulant embedding not positive semi-definite; used exact Cholesky")
            }
            SimWarning::KernelTruncation { relative_tail } => write!(
                f,
                "kernel_cutoff/mesh leave a relative tail mass of {relative_tail:.2e}; consider larger values"
            ),
        }
    }
}

/// One realization on a uniform grid over `[0, horizon]` with `n + 1` points.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    times: Vec<f64>,
    values: Vec<f64>,
    /// Generating family, when the path came from a generator (paths loaded
    /// from disk or built synthetically carry `None`).
    pub spec: Option<ProcessSpec>,
    pub seed: Option<Seed>,
}

impl SamplePath {
    pub fn new(
        times: Vec<f64>,
        values: Vec<f64>,
        spec: Option<ProcessSpec>,
        seed: Option<Seed>,
    ) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Grid("times/values length mismatch".into()));
        }
        if times.len() < 2 {
            return Err(Error::Size("a path needs at least 2 points".into()));
        }
        if times[0] != 0.0 {
            return Err(Error::Grid("times must start at 0".into()));
        }
        if values[0] != 0.0 {
            return Err(Error::Grid("values must start at 0".into()));
        }
        let dt = times[1] - times[0];
        if !(dt > 0.0) {
            return Err(Error::Grid("times must be strictly increasing".into()));
        }
        for i in 1..times.len() {
            let step = times[i] - times[i - 1];
            if (step - dt).abs() > 1e-9 * dt.max(1.0) {
                return Err(Error::Grid(format!(
                    "non-uniform spacing at index {i}: expected {dt}, found {step}"
                )));
            }
        }
        Ok(SamplePath {
            times,
            values,
            spec,
            seed,
        })
    }

    /// Build a path from `n` increments: `values[k] = sum of the first k`.
    pub(crate) fn from_increments(
        increments: &[f64],
        horizon: f64,
        spec: ProcessSpec,
        seed: Seed,
    ) -> Self {
        let n = increments.len();
        let dt = horizon / n as f64;
        let mut values = Vec::with_capacity(n + 1);
        let mut times = Vec::with_capacity(n + 1);
        values.push(0.0);
        times.push(0.0);
        let mut acc = 0.0;
        for (k, inc) in increments.iter().enumerate() {
            acc += inc;
            values.push(acc);
            times.push((k + 1) as f64 * dt);
        }
        SamplePath {
            times,
            values,
            spec: Some(spec),
            seed: Some(seed),
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of increments (`len() - 1`).
    pub fn n_increments(&self) -> usize {
        self.times.len() - 1
    }

    pub fn spacing(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    /// Increments at integer lag `step` (in grid units).
    pub fn increments(&self, step: usize) -> impl Iterator<Item = f64> + '_ {
        let count = self.n_increments() / step;
        (1..=count).map(move |i| self.values[i * step] - self.values[(i - 1) * step])
    }

    /// Stable content identifier: hash of provenance when known, otherwise of
    /// the raw samples.
    pub fn id(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        match (&self.spec, &self.seed) {
            (Some(spec), Some(seed)) => {
                eat(serde_json::to_string(spec).unwrap().as_bytes());
                eat(&seed.0.to_le_bytes());
                eat(&(self.n_increments() as u64).to_le_bytes());
                eat(&self.horizon().to_le_bytes());
            }
            _ => {
                for v in &self.values {
                    eat(&v.to_le_bytes());
                }
                eat(&self.horizon().to_le_bytes());
            }
        }
        format!("{h:016x}")
    }
}

fn check_generate_args(spec: &ProcessSpec, n: usize, horizon: f64) -> Result<()> {
    spec.validate()?;
    if n < 2 {
        return Err(Error::Size("n must be at least 2".into()));
    }
    if !(horizon > 0.0) {
        return Err(Error::invalid("horizon", "must be positive"));
    }
    if matches!(spec, ProcessSpec::Fbm { .. } | ProcessSpec::Lfsm { .. }) && n < 8 {
        return Err(Error::Size(
            "FFT-based synthesis (FBM/LFSM) needs n >= 8".into(),
        ));
    }
    Ok(())
}

/// Generate one realization of `spec` on `n + 1` uniformly spaced points over
/// `[0, horizon]`, discarding accuracy warnings.
pub fn generate(spec: &ProcessSpec, n: usize, horizon: f64, seed: Seed) -> Result<SamplePath> {
    generate_with_warnings(spec, n, horizon, seed).map(|(path, _)| path)
}

/// Like [`generate`], additionally returning any accuracy warnings.
pub fn generate_with_warnings(
    spec: &ProcessSpec,
    n: usize,
    horizon: f64,
    seed: Seed,
) -> Result<(SamplePath, Vec<SimWarning>)> {
    check_generate_args(spec, n, horizon)?;
    let mut warnings = Vec::new();
    let path = match *spec {
        ProcessSpec::Bm => bm_path(n, horizon, seed),
        ProcessSpec::Fbm { hurst } => fbm_path(hurst, n, horizon, seed, &mut warnings)?,
        ProcessSpec::StableLevy {
            alpha,
            sigma,
            beta,
            mu,
        } => stable_levy_path(alpha, sigma, beta, mu, n, horizon, seed)?,
        ProcessSpec::Lfsm {
            hurst,
            alpha,
            kernel_cutoff,
            mesh,
        } => lfsm_path(
            hurst,
            alpha,
            kernel_cutoff,
            mesh,
            n,
            horizon,
            seed,
            &mut warnings,
        )?,
        ProcessSpec::IgLevy { delta, lambda } => ig_levy_path(delta, lambda, n, horizon, seed)?,
        ProcessSpec::StableSubordinator { alpha, sigma } => {
            stable_subordinator_path(alpha, sigma, n, horizon, seed)?
        }
        ProcessSpec::InverseStableSubordinator { alpha, refine } => {
            inverse_subordinator_path(alpha, refine, n, horizon, seed)?
        }
        ProcessSpec::LognormalCascade { lambda2, horizon: l } => {
            cascade_path(lambda2, l, n, horizon, seed, &mut warnings)?
        }
        ProcessSpec::Mrw { lambda2, horizon: l } => {
            mrw_path(lambda2, l, n, horizon, seed, &mut warnings)?
        }
    };
    debug_assert_eq!(path.len(), n + 1);
    debug_assert_eq!(path.values()[0], 0.0);
    Ok((path, warnings))
}

/// i.i.d. standard normal draws, deterministic in the seed.
pub fn gaussian_variates(count: usize, seed: Seed) -> Vec<f64> {
    let mut rng = SplitMix64::stream(seed.0, "gaussian");
    let mut out = vec![0.0; count];
    rng.fill_normals(&mut out);
    out
}

/// Standard Brownian motion on `[0, horizon]`.
pub fn bm_path(n: usize, horizon: f64, seed: Seed) -> SamplePath {
    let mut rng = SplitMix64::stream(seed.0, "bm");
    let dt = horizon / n as f64;
    let scale = dt.sqrt();
    let increments: Vec<f64> = (0..n).map(|_| scale * rng.next_normal()).collect();
    SamplePath::from_increments(&increments, horizon, ProcessSpec::Bm, seed)
}
