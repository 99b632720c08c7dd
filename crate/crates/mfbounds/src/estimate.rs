//! Partition functions and scaling-function estimation.
//!
//! The partition function of a path sampled on `[0, T]` at lag `dt` is
//! `S_q(T, dt) = (1/floor(T/dt)) sum_i |X(i dt) - X((i-1) dt)|^q`.
//! Its robust variant replaces each increment by the maximum of `m`
//! consecutive increments of the same length before raising to the power q:
//! blocks i = 0..floor(T/(m dt))-1 cover `[i m dt, (i+1) m dt]` and contribute
//! `(max_{l=1..m} |X((i m + l) dt) - X((i m + l - 1) dt)|)^q`.
//! Taking the maximum first keeps negative-order moments finite for paths
//! whose raw increments can be arbitrarily small.
//!
//! The empirical scaling function is the OLS slope of `ln S_q` against
//! `ln dt` over the scale grid, computed per moment order with the raw-sum
//! slope formula.

use crate::error::{Error, Result};
use crate::sim::SamplePath;
use serde::{Deserialize, Serialize};

/// Moment orders with |q| below this are excluded: `S_q` is within noise of 1
/// there and contributes a zero-information regression row.
pub const Q_EPS: f64 = 0.01;

/// Increments smaller than this trigger [`Error::DegenerateIncrement`] when
/// the moment grid contains a negative order (a literal zero increment would
/// make the partition function infinite).
pub const TINY_GUARD: f64 = 1e-300;

pub const DEFAULT_R2_THRESHOLD: f64 = 0.98;
pub const DEFAULT_SCALE_COUNT: usize = 20;
pub const DEFAULT_BLOCK_LEN: u32 = 20;

/// Ascending grid of lags, each an integer multiple of the path spacing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleGrid {
    deltas: Vec<f64>,
}

impl ScaleGrid {
    pub fn new(deltas: Vec<f64>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::Grid("scale grid is empty".into()));
        }
        for w in deltas.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Grid("scale grid must be strictly increasing".into()));
            }
        }
        if !(deltas[0] > 0.0) {
            return Err(Error::Grid("lags must be positive".into()));
        }
        Ok(ScaleGrid { deltas })
    }

    /// Geometric grid `max_delta^{i/count}`, i = 1..count, rounded to the
    /// nearest multiple of `spacing` and deduplicated.
    pub fn geometric(max_delta: f64, count: usize, spacing: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::Grid("scale count must be positive".into()));
        }
        if !(max_delta >= spacing) {
            return Err(Error::Grid(format!(
                "max lag {max_delta} below the sample spacing {spacing}"
            )));
        }
        let mut deltas = Vec::with_capacity(count);
        for i in 1..=count {
            let raw = max_delta.powf(i as f64 / count as f64);
            let steps = (raw / spacing).round().max(1.0);
            let snapped = steps * spacing;
            if snapped <= max_delta * (1.0 + 1e-12) && deltas.last() != Some(&snapped) {
                deltas.push(snapped);
            }
        }
        ScaleGrid::new(deltas)
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// Ascending moment orders, excluding the `(-Q_EPS, Q_EPS)` neighborhood of 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentGrid {
    qs: Vec<f64>,
}

impl MomentGrid {
    pub fn new(qs: Vec<f64>) -> Result<Self> {
        if qs.is_empty() {
            return Err(Error::Grid("moment grid is empty".into()));
        }
        for w in qs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Grid("moment grid must be strictly increasing".into()));
            }
        }
        if qs.iter().any(|q| q.abs() < Q_EPS) {
            return Err(Error::invalid(
                "q",
                format!("|q| < {Q_EPS} carries no scaling information"),
            ));
        }
        Ok(MomentGrid { qs })
    }

    /// Regular grid from `min` to `max` in steps of `step`, dropping any
    /// point inside the excluded neighborhood of zero.
    pub fn range(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(max > min) {
            return Err(Error::Grid("need max > min and step > 0".into()));
        }
        let mut qs = Vec::new();
        let count = ((max - min) / step).round() as usize;
        for i in 0..=count {
            let q = min + i as f64 * step;
            if q.abs() >= Q_EPS && q <= max + 1e-12 {
                qs.push(q);
            }
        }
        MomentGrid::new(qs)
    }

    pub fn qs(&self) -> &[f64] {
        &self.qs
    }

    pub fn has_negative(&self) -> bool {
        self.qs.first().is_some_and(|q| *q < 0.0)
    }

    pub fn len(&self) -> usize {
        self.qs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qs.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum TableMode {
    Standard,
    Modified { m: u32 },
}

impl std::fmt::Display for TableMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableMode::Standard => write!(f, "standard"),
            TableMode::Modified { m } => write!(f, "modified(m={m})"),
        }
    }
}

/// Matrix of partition-function values over a (q, dt) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionTable {
    pub qs: MomentGrid,
    pub deltas: ScaleGrid,
    /// `values[qi][di]`, all finite and positive.
    pub values: Vec<Vec<f64>>,
    pub mode: TableMode,
    /// Content id of the source path.
    pub source: String,
}

impl PartitionTable {
    pub fn value(&self, qi: usize, di: usize) -> f64 {
        self.values[qi][di]
    }
}

/// Number of grid steps per lag; errors when the lag is not commensurate
/// with the sampling step or exceeds the horizon.
fn steps_for_delta(path: &SamplePath, delta: f64) -> Result<usize> {
    let spacing = path.spacing();
    let ratio = delta / spacing;
    let steps = ratio.round();
    if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) || steps < 1.0 {
        return Err(Error::Grid(format!(
            "lag {delta} is not an integer multiple of the sample spacing {spacing}"
        )));
    }
    let steps = steps as usize;
    if steps > path.n_increments() {
        return Err(Error::Grid(format!(
            "lag {delta} exceeds the path horizon {}",
            path.horizon()
        )));
    }
    Ok(steps)
}

/// Standard partition function `S_q(T, dt)` on the given grids.
pub fn partition_function(
    path: &SamplePath,
    qs: &MomentGrid,
    deltas: &ScaleGrid,
) -> Result<PartitionTable> {
    let guard_negative = qs.has_negative();
    let mut values = vec![Vec::with_capacity(deltas.len()); qs.len()];
    for &delta in deltas.deltas() {
        let step = steps_for_delta(path, delta)?;
        let count = path.n_increments() / step;
        let mut magnitudes = Vec::with_capacity(count);
        for (i, inc) in path.increments(step).enumerate() {
            let a = inc.abs();
            if guard_negative && a < TINY_GUARD {
                return Err(Error::DegenerateIncrement {
                    block: i + 1,
                    delta_t: delta,
                });
            }
            magnitudes.push(a);
        }
        for (qi, &q) in qs.qs().iter().enumerate() {
            let mut sum = 0.0;
            for &a in &magnitudes {
                sum += a.powf(q);
            }
            values[qi].push(sum / count as f64);
        }
    }
    Ok(PartitionTable {
        qs: qs.clone(),
        deltas: deltas.clone(),
        values,
        mode: TableMode::Standard,
        source: path.id(),
    })
}

/// Modified partition function built on block-wise maxima of `m` increments.
pub fn modified_partition_function(
    path: &SamplePath,
    qs: &MomentGrid,
    deltas: &ScaleGrid,
    m: u32,
) -> Result<PartitionTable> {
    if m == 0 {
        return Err(Error::invalid("m", "must be a positive integer"));
    }
    let m = m as usize;
    let guard_negative = qs.has_negative();
    let mut values = vec![Vec::with_capacity(deltas.len()); qs.len()];
    for &delta in deltas.deltas() {
        let step = steps_for_delta(path, delta)?;
        let blocks = path.n_increments() / (m * step);
        if blocks < 2 {
            return Err(Error::Block(format!(
                "m = {m} with lag {delta} needs m*dt <= T/2 (got {} block(s))",
                blocks
            )));
        }
        let vals = path.values();
        let mut maxima = Vec::with_capacity(blocks);
        for i in 0..blocks {
            let mut block_max = 0.0_f64;
            for l in 1..=m {
                let hi = (i * m + l) * step;
                let inc = (vals[hi] - vals[hi - step]).abs();
                block_max = block_max.max(inc);
            }
            if guard_negative && block_max < TINY_GUARD {
                return Err(Error::DegenerateIncrement {
                    block: i,
                    delta_t: delta,
                });
            }
            maxima.push(block_max);
        }
        for (qi, &q) in qs.qs().iter().enumerate() {
            let mut sum = 0.0;
            for &a in &maxima {
                sum += a.powf(q);
            }
            values[qi].push(sum / blocks as f64);
        }
    }
    Ok(PartitionTable {
        qs: qs.clone(),
        deltas: deltas.clone(),
        values,
        mode: TableMode::Modified { m: m as u32 },
        source: path.id(),
    })
}

/// One least-squares fit of `ln S` on `ln dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub npoints: usize,
}

/// OLS with the raw-sum slope formula
/// `(sum x y - (sum x)(sum y)/N) / (sum x^2 - (sum x)^2/N)`.
fn ols_fit(xs: &[f64], ys: &[f64]) -> Result<RegressionFit> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::Regression(format!(
            "need at least 3 scales for the log-log regression, got {n}"
        )));
    }
    let nf = n as f64;
    let sum_x: f64 = xs.iter().sum();
    let sum_y: f64 = ys.iter().sum();
    let sum_xx: f64 = xs.iter().map(|x| x * x).sum();
    let sum_xy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = sum_xx - sum_x * sum_x / nf;
    if denom.abs() < 1e-12 {
        return Err(Error::Regression(
            "degenerate scale grid: all lags equal in log space".into(),
        ));
    }
    let slope = (sum_xy - sum_x * sum_y / nf) / denom;
    let intercept = (sum_y - slope * sum_x) / nf;
    let y_mean = sum_y / nf;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean) * (y - y_mean)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r2 = if ss_tot < 1e-300 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept,
        r2,
        npoints: n,
    })
}

/// Empirical scaling function: per-q OLS slope of the log-log table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFunctionEstimate {
    pub qs: MomentGrid,
    pub tau: Vec<f64>,
    pub r2: Vec<f64>,
    pub intercept: Vec<f64>,
    pub mode: TableMode,
}

impl ScalingFunctionEstimate {
    pub fn tau_at(&self, q: f64) -> Option<f64> {
        self.qs
            .qs()
            .iter()
            .position(|&x| (x - q).abs() < 1e-9)
            .map(|i| self.tau[i])
    }
}

pub fn scaling_function(table: &PartitionTable) -> Result<ScalingFunctionEstimate> {
    let xs: Vec<f64> = table.deltas.deltas().iter().map(|d| d.ln()).collect();
    let mut tau = Vec::with_capacity(table.qs.len());
    let mut r2 = Vec::with_capacity(table.qs.len());
    let mut intercept = Vec::with_capacity(table.qs.len());
    for row in &table.values {
        if row.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::Numeric(
                "partition values must be finite and positive for the log-log fit".into(),
            ));
        }
        let ys: Vec<f64> = row.iter().map(|s| s.ln()).collect();
        let fit = ols_fit(&xs, &ys)?;
        tau.push(fit.slope);
        r2.push(fit.r2);
        intercept.push(fit.intercept);
    }
    Ok(ScalingFunctionEstimate {
        qs: table.qs.clone(),
        tau,
        r2,
        intercept,
        mode: table.mode,
    })
}

/// Single-scale dyadic estimate `log2 S_q(T, 2^{-j} T) / (-j)`.
pub fn dyadic_scaling_estimate(path: &SamplePath, q: f64, j: u32) -> Result<f64> {
    if j == 0 {
        return Err(Error::invalid("j", "must be positive"));
    }
    let pieces = 1usize
        .checked_shl(j)
        .ok_or_else(|| Error::invalid("j", "too large"))?;
    let n = path.n_increments();
    if n % pieces != 0 {
        return Err(Error::Grid(format!(
            "2^{j} must divide the number of increments ({n})"
        )));
    }
    let step = n / pieces;
    let guard = q < 0.0;
    let mut sum = 0.0;
    for (i, inc) in path.increments(step).enumerate() {
        let a = inc.abs();
        if guard && a < TINY_GUARD {
            return Err(Error::DegenerateIncrement {
                block: i + 1,
                delta_t: path.horizon() / pieces as f64,
            });
        }
        sum += a.powf(q);
    }
    let s = sum / pieces as f64;
    Ok(s.log2() / -(j as f64))
}

/// Per-q log-log linearity report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearityReport {
    pub q: f64,
    pub r2: f64,
    pub pass: bool,
}

/// Flag moment orders whose log-log relation is not convincingly linear.
pub fn linearity_check(table: &PartitionTable, r2_threshold: f64) -> Result<Vec<LinearityReport>> {
    let est = scaling_function(table)?;
    Ok(est
        .qs
        .qs()
        .iter()
        .zip(est.r2.iter())
        .map(|(&q, &r2)| LinearityReport {
            q,
            r2,
            pass: r2 >= r2_threshold,
        })
        .collect())
}
