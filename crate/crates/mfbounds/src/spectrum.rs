//! Scaling functions, Legendre-transform spectra, and bounds on the support
//! of the singularity spectrum.
//!
//! A scaling function `tau` describes moment scaling
//! `E|X(t)-X(s)|^q = c(q)|t-s|^{tau(q)}` on a range of finite moment orders
//! `(q_lower, q_upper)`. The singularity spectrum follows from the
//! multifractal formalism `d(h) = inf_q (h q - tau(q) + 1)`, with the
//! convention that an empty level set has dimension -inf (encoded here as
//! `f64::NEG_INFINITY`).
//!
//! Support bounds derived from `tau`:
//! - `H^- = sup { (tau(q)-1)/q : q in (0, q_upper), tau(q) > 1 }` bounds the
//!   spectrum away from small h (local Holder continuity),
//! - `H~+ = inf { (tau(q)-1)/q : q in (q_lower, 0), tau(q) < 1 }` bounds it
//!   from above via negative-order moments,
//! - `H^+ = min { (tau(q)-1)/q : q < 0 feasible for the multiplicative
//!   factor }` sharpens the upper bound when the process itself has
//!   diverging negative moments but its scaling factor does not,
//! - an H-sssi process with top moment order `q_upper` satisfies
//!   `H - 1/q_upper <= H(t) <= H`; with all positive moments finite the
//!   spectrum collapses to the single point (H, 1).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sentinel for "level set empty" entries of a spectrum curve.
pub const NOT_ATTAINED: f64 = f64::NEG_INFINITY;

pub const DEFAULT_Q_WINDOW: (f64, f64) = (-20.0, 20.0);
pub const DEFAULT_Q_STEP: f64 = 1e-3;
/// Raw Legendre values may exceed 1 by roundoff of this order before clipping.
pub const CLIP_TOL: f64 = 1e-9;

/// Cap used when a moment range is unbounded and an optimizer needs a finite
/// search window.
const Q_SEARCH_CAP: f64 = 1e4;

/// Closed-form scaling-function families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TauFamily {
    /// `tau(q) = H q` (self-similar scaling).
    SelfSimilar { hurst: f64 },
    /// Asymptotic empirical scaling of an alpha-stable Levy motion:
    /// `q/alpha` up to `alpha`, then constant 1.
    StableAsym { alpha: f64 },
    /// Asymptotic empirical scaling of LFSM: `H q` up to `alpha`, then
    /// `1 + q (H - 1/alpha)`.
    LfsmAsym { hurst: f64, alpha: f64 },
    /// Asymptotic empirical scaling of a heavy-tailed Levy process with tail
    /// index `alpha` (four branches; the `alpha > 2` tail branch carries a
    /// correction term).
    LevyAsym { alpha: f64 },
    /// Log-normal cascade: `q (1 + 2 l2) - 2 l2 q^2`.
    Cascade { lambda2: f64 },
    /// Dyadic-estimator limit of the cascade: the quadratic on
    /// `(q0-, q0+)`, extended by its tangent lines `h0 q + 1` outside, with
    /// `q0+- = +-1/sqrt(2 l2)` and `h0+- = tau'(q0+-)`.
    CascadeLinearized { lambda2: f64 },
    /// Multifractal random walk: `q (1/2 + l2) - l2 q^2 / 2`.
    Mrw { lambda2: f64 },
}

impl TauFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TauFamily::SelfSimilar { hurst } => {
                if !(hurst > 0.0) {
                    return Err(Error::invalid("hurst", "must be positive"));
                }
            }
            TauFamily::StableAsym { alpha } => {
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
            }
            TauFamily::LfsmAsym { hurst, alpha } => {
                if !(hurst > 0.0 && hurst < 1.0) {
                    return Err(Error::invalid("hurst", "must lie in (0, 1)"));
                }
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
            }
            TauFamily::LevyAsym { alpha } => {
                if !(alpha > 0.0) {
                    return Err(Error::invalid("alpha", "must be positive"));
                }
            }
            TauFamily::Cascade { lambda2 }
            | TauFamily::CascadeLinearized { lambda2 }
            | TauFamily::Mrw { lambda2 } => {
                if !(lambda2 > 0.0 && lambda2 < 0.5) {
                    return Err(Error::invalid("lambda2", "must lie in (0, 1/2)"));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, q: f64) -> f64 {
        match *self {
            TauFamily::SelfSimilar { hurst } => hurst * q,
            TauFamily::StableAsym { alpha } => {
                if q <= alpha {
                    q / alpha
                } else {
                    1.0
                }
            }
            TauFamily::LfsmAsym { hurst, alpha } => {
                if q <= alpha {
                    hurst * q
                } else {
                    1.0 + q * (hurst - 1.0 / alpha)
                }
            }
            TauFamily::LevyAsym { alpha } => {
                if alpha <= 2.0 {
                    if q <= alpha {
                        q / alpha
                    } else {
                        1.0
                    }
                } else if q <= alpha {
                    q / 2.0
                } else {
                    let da = alpha - q;
                    q / 2.0
                        + 2.0 * da * da * (2.0 * alpha + 4.0 * q - 3.0 * alpha * q)
                            / (alpha.powi(3) * (2.0 - q) * (2.0 - q))
                }
            }
            TauFamily::Cascade { lambda2 } => q * (1.0 + 2.0 * lambda2) - 2.0 * lambda2 * q * q,
            TauFamily::CascadeLinearized { lambda2 } => {
                let q0 = 1.0 / (2.0 * lambda2).sqrt();
                let quad = TauFamily::Cascade { lambda2 };
                if q >= q0 {
                    // tangent at q0+: slope tau'(q0) = 1 + 2 l2 - 4 l2 q0
                    (1.0 + 2.0 * lambda2 - 4.0 * lambda2 * q0) * q + 1.0
                } else if q <= -q0 {
                    (1.0 + 2.0 * lambda2 + 4.0 * lambda2 * q0) * q + 1.0
                } else {
                    quad.eval(q)
                }
            }
            TauFamily::Mrw { lambda2 } => q * (0.5 + lambda2) - lambda2 * q * q / 2.0,
        }
    }

    /// Range of finite moment orders of the corresponding process.
    pub fn default_moment_range(&self) -> (f64, f64) {
        match *self {
            TauFamily::SelfSimilar { .. } => (-1.0, f64::INFINITY),
            TauFamily::StableAsym { alpha } => (-1.0, alpha),
            TauFamily::LfsmAsym { alpha, .. } => (-1.0, alpha),
            TauFamily::LevyAsym { alpha } => (-1.0, alpha),
            TauFamily::Cascade { lambda2 } | TauFamily::CascadeLinearized { lambda2 } => {
                (f64::NEG_INFINITY, 2.0 / lambda2)
            }
            TauFamily::Mrw { lambda2 } => (-1.0, 1.0 / lambda2),
        }
    }

    /// Coefficients `(a, b)` of the underlying quadratic `a q - b q^2` for
    /// the families that have one.
    fn quadratic_coefficients(&self) -> Option<(f64, f64)> {
        match *self {
            TauFamily::Cascade { lambda2 } | TauFamily::CascadeLinearized { lambda2 } => {
                Some((1.0 + 2.0 * lambda2, 2.0 * lambda2))
            }
            TauFamily::Mrw { lambda2 } => Some((0.5 + lambda2, lambda2 / 2.0)),
            _ => None,
        }
    }
}

/// A scaling function together with its range of finite moment orders.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingFunction {
    Parametric {
        family: TauFamily,
        moment_range: (f64, f64),
    },
    Tabulated {
        qs: Vec<f64>,
        tau: Vec<f64>,
        moment_range: (f64, f64),
    },
}

/// Closed-form scaling function for a family, with its natural moment range.
pub fn theoretical_tau(family: TauFamily) -> Result<ScalingFunction> {
    family.validate()?;
    Ok(ScalingFunction::Parametric {
        family,
        moment_range: family.default_moment_range(),
    })
}

impl ScalingFunction {
    pub fn tabulated(qs: Vec<f64>, tau: Vec<f64>, moment_range: (f64, f64)) -> Result<Self> {
        if qs.len() != tau.len() || qs.len() < 2 {
            return Err(Error::Argument(
                "tabulated scaling function needs >= 2 aligned points".into(),
            ));
        }
        for w in qs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Argument("tabulated q grid must be ascending".into()));
            }
        }
        Ok(ScalingFunction::Tabulated {
            qs,
            tau,
            moment_range,
        })
    }

    /// Tabulated scaling function from an empirical estimate; the moment
    /// range defaults to the estimated span of q.
    pub fn from_estimate(est: &crate::estimate::ScalingFunctionEstimate) -> Self {
        let qs = est.qs.qs().to_vec();
        let span = (qs[0], *qs.last().unwrap());
        ScalingFunction::Tabulated {
            qs,
            tau: est.tau.clone(),
            moment_range: span,
        }
    }

    pub fn with_moment_range(mut self, lower: f64, upper: f64) -> Self {
        match &mut self {
            ScalingFunction::Parametric { moment_range, .. }
            | ScalingFunction::Tabulated { moment_range, .. } => *moment_range = (lower, upper),
        }
        self
    }

    pub fn moment_range(&self) -> (f64, f64) {
        match self {
            ScalingFunction::Parametric { moment_range, .. }
            | ScalingFunction::Tabulated { moment_range, .. } => *moment_range,
        }
    }

    /// Domain over which the function can be evaluated (tabulated span, or
    /// the whole line for parametric forms).
    pub fn eval_span(&self) -> (f64, f64) {
        match self {
            ScalingFunction::Parametric { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            ScalingFunction::Tabulated { qs, .. } => (qs[0], *qs.last().unwrap()),
        }
    }

    /// Evaluate `tau(q)`; tabulated forms interpolate linearly and clamp to
    /// their end values outside the tabulated span.
    pub fn eval(&self, q: f64) -> f64 {
        match self {
            ScalingFunction::Parametric { family, .. } => family.eval(q),
            ScalingFunction::Tabulated { qs, tau, .. } => {
                if q <= qs[0] {
                    return tau[0];
                }
                if q >= *qs.last().unwrap() {
                    return *tau.last().unwrap();
                }
                let idx = qs.partition_point(|&x| x < q);
                let (q0, q1) = (qs[idx - 1], qs[idx]);
                let w = (q - q0) / (q1 - q0);
                tau[idx - 1] * (1.0 - w) + tau[idx] * w
            }
        }
    }

    fn family(&self) -> Option<TauFamily> {
        match self {
            ScalingFunction::Parametric { family, .. } => Some(*family),
            ScalingFunction::Tabulated { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumProvenance {
    LegendreOfTau,
    ClosedForm,
}

/// Spectrum `d(h)` on an h grid; entries are in `[0, 1]` or `NOT_ATTAINED`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCurve {
    pub hs: Vec<f64>,
    pub d: Vec<f64>,
    pub provenance: SpectrumProvenance,
}

impl SpectrumCurve {
    pub fn attained(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.hs
            .iter()
            .zip(self.d.iter())
            .filter(|(_, d)| d.is_finite())
            .map(|(&h, &d)| (h, d))
    }

    /// First and last attained h on the grid.
    pub fn support(&self) -> Option<(f64, f64)> {
        let mut it = self.attained().map(|(h, _)| h);
        let first = it.next()?;
        Some((first, it.last().unwrap_or(first)))
    }

    /// Grid point with the largest attained d.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.attained()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
    }
}

/// Regular h grid helper.
pub fn h_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(max > min) {
        return Err(Error::Argument("need max > min and step > 0".into()));
    }
    let count = ((max - min) / step).round() as usize;
    Ok((0..=count).map(|i| min + i as f64 * step).collect())
}

/// Numerical Legendre transform `d(h) = inf_q (h q - tau(q) + 1)` over a q
/// grid. Raw values below 0 are reported as `NOT_ATTAINED`; values slightly
/// above 1 (roundoff or grid effects) are clipped to 1.
pub fn legendre_spectrum(
    tau: &ScalingFunction,
    hs: &[f64],
    q_window: (f64, f64),
    q_step: f64,
) -> Result<SpectrumCurve> {
    let (qmin, qmax) = q_window;
    if !(qmax > qmin) || !(q_step > 0.0) {
        return Err(Error::Argument(
            "q window must be non-degenerate with a positive step".into(),
        ));
    }
    let span = tau.eval_span();
    if qmin < span.0 - 1e-9 || qmax > span.1 + 1e-9 {
        return Err(Error::Argument(format!(
            "q window ({qmin}, {qmax}) outside the tabulated range ({}, {})",
            span.0, span.1
        )));
    }
    let count = ((qmax - qmin) / q_step).ceil() as usize;
    let mut q_values = Vec::with_capacity(count + 2);
    let mut tau_values = Vec::with_capacity(count + 2);
    for i in 0..=count {
        let q = (qmin + i as f64 * q_step).min(qmax);
        q_values.push(q);
        tau_values.push(tau.eval(q));
        if q == qmax {
            break;
        }
    }
    if *q_values.last().unwrap() < qmax {
        q_values.push(qmax);
        tau_values.push(tau.eval(qmax));
    }

    let d = hs
        .iter()
        .map(|&h| {
            let mut raw = f64::INFINITY;
            for (q, t) in q_values.iter().zip(tau_values.iter()) {
                let v = h * q - t + 1.0;
                if v < raw {
                    raw = v;
                }
            }
            // Support-boundary grid points land on raw = 0 up to roundoff;
            // the clip tolerance keeps them attained.
            if raw < -CLIP_TOL {
                NOT_ATTAINED
            } else {
                raw.clamp(0.0, 1.0)
            }
        })
        .collect();
    Ok(SpectrumCurve {
        hs: hs.to_vec(),
        d,
        provenance: SpectrumProvenance::LegendreOfTau,
    })
}

/// `(tau(q) - 1) / q`, the bound-generating functional.
fn bound_value(tau: &ScalingFunction, q: f64) -> f64 {
    (tau.eval(q) - 1.0) / q
}

/// Golden-section refinement of an extremum of `f` on `[lo, hi]`.
fn golden_refine(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> (f64, f64) {
    let phi = 0.618_033_988_749_894_9;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        let pick_left = if maximize { f1 > f2 } else { f1 < f2 };
        if pick_left {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
        if (hi - lo).abs() < 1e-12 * (1.0 + hi.abs()) {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

const FEASIBILITY_TOL: f64 = 1e-12;

/// sup of `(tau(q)-1)/q` over `q in (0, q_upper)` with `tau(q) > 1`,
/// together with the maximizing q. Closed form for the quadratic families,
/// grid search plus golden-section refinement otherwise.
pub fn h_minus_with_argmax(tau: &ScalingFunction) -> Option<(f64, f64)> {
    let (_, q_upper) = tau.moment_range();
    if !(q_upper > 0.0) {
        return None;
    }
    if let Some(family) = tau.family() {
        if let Some((a, b)) = family.quadratic_coefficients() {
            // tau(q) = 1 at r1 < r2; feasible q in (r1, min(r2, q_upper));
            // for the tangent-extended variant the feasible set reaches
            // q_upper but (tau(q)-1)/q is constant past the vertex, so the
            // same vertex formula applies.
            let disc = a * a - 4.0 * b;
            if disc <= 0.0 {
                return None;
            }
            let r1 = (a - disc.sqrt()) / (2.0 * b);
            let r2 = match family {
                TauFamily::CascadeLinearized { .. } => q_upper,
                _ => ((a + disc.sqrt()) / (2.0 * b)).min(q_upper),
            };
            if r2 <= r1 {
                return None;
            }
            let vertex = 1.0 / b.sqrt();
            let q_star = vertex.min(r2).max(r1);
            let value = if q_star == vertex {
                a - 2.0 * b.sqrt()
            } else {
                bound_value(tau, q_star)
            };
            return Some((value, q_star));
        }
    }
    // Numeric route over (0, min(q_upper, span, cap)].
    let span = tau.eval_span();
    let hi = q_upper.min(span.1).min(Q_SEARCH_CAP);
    if !(hi > 0.0) {
        return None;
    }
    let lo = 1e-6_f64.min(hi / 2.0);
    let n = 4096;
    let log_lo = lo.ln();
    let log_hi = hi.ln();
    let mut best: Option<(f64, f64, usize)> = None;
    let grid: Vec<f64> = (0..=n)
        .map(|i| (log_lo + (log_hi - log_lo) * i as f64 / n as f64).exp())
        .collect();
    for (i, &q) in grid.iter().enumerate() {
        if tau.eval(q) > 1.0 + FEASIBILITY_TOL {
            let v = bound_value(tau, q);
            if best.map_or(true, |(bv, _, _)| v > bv) {
                best = Some((v, q, i));
            }
        }
    }
    let (_, q_best, idx) = best?;
    let lo_b = if idx > 0 { grid[idx - 1] } else { q_best };
    let hi_b = if idx < grid.len() - 1 {
        grid[idx + 1]
    } else {
        q_best
    };
    let (q_ref, v_ref) = golden_refine(|q| bound_value(tau, q), lo_b, hi_b, true);
    if tau.eval(q_ref) > 1.0 + FEASIBILITY_TOL {
        Some((v_ref, q_ref))
    } else {
        Some((bound_value(tau, q_best), q_best))
    }
}

/// inf of `(tau(q)-1)/q` over negative feasible q, with the minimizing q.
/// `require_tau_below_one` keeps the level-set condition `tau(q) < 1` used by
/// the moment bound; the factor bound drops it.
fn negative_side_inf(tau: &ScalingFunction, require_tau_below_one: bool) -> Option<(f64, f64)> {
    let (q_lower, _) = tau.moment_range();
    if !(q_lower < 0.0) {
        return None;
    }
    if let Some(family) = tau.family() {
        if let Some((a, b)) = family.quadratic_coefficients() {
            // tau(q) < 1 holds for every q < 0 (tau is negative there), so
            // the feasible set is (q_lower, 0) in both variants. The bound
            // functional a - b q - 1/q has its negative-side vertex at
            // -1/sqrt(b); the infimum sits there or at the boundary q_lower.
            let vertex = -1.0 / b.sqrt();
            let q_star = vertex.max(q_lower);
            let value = if q_star == vertex {
                a + 2.0 * b.sqrt()
            } else {
                bound_value(tau, q_star)
            };
            return Some((value, q_star));
        }
    }
    let span = tau.eval_span();
    let lo = q_lower.max(span.0).max(-Q_SEARCH_CAP);
    if !(lo < 0.0) {
        return None;
    }
    let hi = -(1e-6_f64.min(-lo / 2.0));
    let n = 4096;
    let log_lo = (-lo).ln();
    let log_hi = (-hi).ln();
    let grid: Vec<f64> = (0..=n)
        .map(|i| -((log_lo + (log_hi - log_lo) * i as f64 / n as f64).exp()))
        .collect();
    let mut best: Option<(f64, f64, usize)> = None;
    for (i, &q) in grid.iter().enumerate() {
        if !require_tau_below_one || tau.eval(q) < 1.0 - FEASIBILITY_TOL {
            let v = bound_value(tau, q);
            if best.map_or(true, |(bv, _, _)| v < bv) {
                best = Some((v, q, i));
            }
        }
    }
    let (_, q_best, idx) = best?;
    let lo_b = if idx > 0 { grid[idx - 1] } else { q_best };
    let hi_b = if idx < grid.len() - 1 {
        grid[idx + 1]
    } else {
        q_best
    };
    let (lo_b, hi_b) = (lo_b.min(hi_b), lo_b.max(hi_b));
    let (q_ref, v_ref) = golden_refine(|q| bound_value(tau, q), lo_b, hi_b, false);
    if !require_tau_below_one || tau.eval(q_ref) < 1.0 - FEASIBILITY_TOL {
        Some((v_ref.min(bound_value(tau, q_best)), q_ref))
    } else {
        Some((bound_value(tau, q_best), q_best))
    }
}

/// H-sssi spectrum-support interval with the trivial-spectrum flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HsssiBounds {
    pub low: f64,
    pub high: f64,
    /// Set when every positive moment is finite: the spectrum is the single
    /// point (H, 1).
    pub trivial: bool,
}

/// Bounds on the support of the singularity spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectrumBounds {
    pub h_minus: Option<f64>,
    pub h_tilde_plus: Option<f64>,
    pub h_plus: Option<f64>,
    pub hsssi: Option<HsssiBounds>,
}

/// Lower/upper support bounds from the scaling function of the process.
pub fn support_bounds_from_tau(tau: &ScalingFunction) -> SpectrumBounds {
    SpectrumBounds {
        h_minus: h_minus_with_argmax(tau).map(|(v, _)| v),
        h_tilde_plus: negative_side_inf(tau, true).map(|(v, _)| v),
        h_plus: None,
        hsssi: None,
    }
}

/// Upper support bound from the scaling function of the multiplicative
/// factor (its moment range, not the process's, constrains q).
pub fn h_plus_from_factor_tau(tau_of_factor: &ScalingFunction) -> Option<f64> {
    negative_side_inf(tau_of_factor, false).map(|(v, _)| v)
}

/// `H - 1/q_upper <= H(t) <= H` for an H-sssi process with top moment order
/// `q_upper`; `q_upper = +inf` forces the trivial spectrum.
pub fn hsssi_bounds(hurst: f64, q_upper: f64) -> Result<HsssiBounds> {
    if !(hurst > 0.0) {
        return Err(Error::invalid("hurst", "must be positive"));
    }
    if q_upper.is_infinite() {
        return Ok(HsssiBounds {
            low: hurst,
            high: hurst,
            trivial: true,
        });
    }
    if !(q_upper > 0.0) {
        return Err(Error::invalid("q_upper", "must be positive or +inf"));
    }
    let low = hurst - 1.0 / q_upper;
    if low < 0.0 {
        return Err(Error::Argument(format!(
            "hypothesis H - 1/q_upper >= 0 violated: H = {hurst}, q_upper = {q_upper}"
        )));
    }
    Ok(HsssiBounds {
        low,
        high: hurst,
        trivial: false,
    })
}

/// Closed-form spectrum families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SpectrumFamily {
    /// `d(h) = alpha h` on `[0, 1/alpha]`.
    Stable { alpha: f64 },
    /// `d(h) = alpha (h - H) + 1` on `[H - 1/alpha, H]`.
    Lfsm { hurst: f64, alpha: f64 },
    /// `d(h) = beta h` on `[0, 1/beta')`, `1` at `h = 1/beta'`, where
    /// `beta` is the small-jump activity (Blumenthal-Getoor) index and
    /// `beta' = 2` when a Gaussian component is present, else `beta`.
    Levy {
        beta: f64,
        has_gaussian_component: bool,
    },
    /// Parabola `1 - (h - 1 - 2 l2)^2 / (8 l2)`.
    Cascade { lambda2: f64 },
    /// Parabola `1 - (h - 1/2 - l2)^2 / (2 l2)`.
    Mrw { lambda2: f64 },
}

impl SpectrumFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpectrumFamily::Stable { alpha } => {
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
            }
            SpectrumFamily::Lfsm { hurst, alpha } => {
                if !(hurst > 0.0 && hurst < 1.0) {
                    return Err(Error::invalid("hurst", "must lie in (0, 1)"));
                }
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::invalid("alpha", "must lie in (0, 2]"));
                }
                if hurst - 1.0 / alpha < 0.0 {
                    return Err(Error::invalid("hurst", "needs H >= 1/alpha"));
                }
            }
            SpectrumFamily::Levy {
                beta,
                has_gaussian_component,
            } => {
                if !(beta >= 0.0 && beta <= 2.0) {
                    return Err(Error::invalid("beta", "must lie in [0, 2]"));
                }
                if !has_gaussian_component && beta == 0.0 {
                    return Err(Error::invalid(
                        "beta",
                        "must be positive without a Gaussian component",
                    ));
                }
            }
            SpectrumFamily::Cascade { lambda2 } | SpectrumFamily::Mrw { lambda2 } => {
                if !(lambda2 > 0.0 && lambda2 < 0.5) {
                    return Err(Error::invalid("lambda2", "must lie in (0, 1/2)"));
                }
            }
        }
        Ok(())
    }

    /// Spectrum value at one h (possibly `NOT_ATTAINED`).
    pub fn eval(&self, h: f64) -> f64 {
        const EDGE: f64 = 1e-12;
        match *self {
            SpectrumFamily::Stable { alpha } => {
                if (-EDGE..=1.0 / alpha + EDGE).contains(&h) {
                    (alpha * h).clamp(0.0, 1.0)
                } else {
                    NOT_ATTAINED
                }
            }
            SpectrumFamily::Lfsm { hurst, alpha } => {
                if (hurst - 1.0 / alpha - EDGE..=hurst + EDGE).contains(&h) {
                    (alpha * (h - hurst) + 1.0).clamp(0.0, 1.0)
                } else {
                    NOT_ATTAINED
                }
            }
            SpectrumFamily::Levy {
                beta,
                has_gaussian_component,
            } => {
                let beta_prime = if has_gaussian_component { 2.0 } else { beta };
                let edge = 1.0 / beta_prime;
                if (h - edge).abs() <= EDGE {
                    1.0
                } else if h >= -EDGE && h < edge {
                    (beta * h.max(0.0)).min(1.0)
                } else {
                    NOT_ATTAINED
                }
            }
            SpectrumFamily::Cascade { lambda2 } => {
                let c = h - 1.0 - 2.0 * lambda2;
                let d = 1.0 - c * c / (8.0 * lambda2);
                if d >= 0.0 {
                    d
                } else {
                    NOT_ATTAINED
                }
            }
            SpectrumFamily::Mrw { lambda2 } => {
                let c = h - 0.5 - lambda2;
                let d = 1.0 - c * c / (2.0 * lambda2);
                if d >= 0.0 {
                    d
                } else {
                    NOT_ATTAINED
                }
            }
        }
    }

    /// Closed-form support interval.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            SpectrumFamily::Stable { alpha } => (0.0, 1.0 / alpha),
            SpectrumFamily::Lfsm { hurst, alpha } => (hurst - 1.0 / alpha, hurst),
            SpectrumFamily::Levy {
                beta,
                has_gaussian_component,
            } => {
                let beta_prime = if has_gaussian_component { 2.0 } else { beta };
                (0.0, 1.0 / beta_prime)
            }
            SpectrumFamily::Cascade { lambda2 } => {
                let r = 2.0 * (2.0 * lambda2).sqrt();
                (1.0 + 2.0 * lambda2 - r, 1.0 + 2.0 * lambda2 + r)
            }
            SpectrumFamily::Mrw { lambda2 } => {
                let r = (2.0 * lambda2).sqrt();
                (0.5 + lambda2 - r, 0.5 + lambda2 + r)
            }
        }
    }
}

/// Closed-form spectrum curve on a supplied h grid.
pub fn theoretical_spectrum(family: &SpectrumFamily, hs: &[f64]) -> Result<SpectrumCurve> {
    family.validate()?;
    Ok(SpectrumCurve {
        hs: hs.to_vec(),
        d: hs.iter().map(|&h| family.eval(h)).collect(),
        provenance: SpectrumProvenance::ClosedForm,
    })
}

/// Absolute moment `E|X(1)|^q` of the IG(delta, lambda) law by adaptive
/// trapezoidal quadrature on the log axis. The integrand
/// `x^q f(x)` becomes, with `x = e^u`, proportional to
/// `exp((q - 1/2) u - delta^2 e^{-u}/2 - lambda^2 e^u/2)`,
/// which decays double-exponentially in both directions, so trapezoid sums
/// converge geometrically under step halving. The quadrature is the
/// reference implementation; no special-function shortcut is taken.
pub fn ig_abs_moment(q: f64, delta: f64, lambda: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", "must be positive"));
    }
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda", "must be positive"));
    }
    let log_prefactor = (delta / (2.0 * std::f64::consts::PI).sqrt()).ln() + delta * lambda;
    let exponent = |u: f64| {
        (q - 0.5) * u - 0.5 * delta * delta * (-u).exp() - 0.5 * lambda * lambda * u.exp()
    };
    // Mode of the exponent: lambda^2 x^2 - (2q - 1) x - delta^2 = 0, x = e^u.
    let b = 2.0 * q - 1.0;
    let x_star = (b + (b * b + 4.0 * lambda * lambda * delta * delta).sqrt())
        / (2.0 * lambda * lambda);
    let u_star = x_star.ln();
    let peak = exponent(u_star);

    let mut lo = u_star;
    while exponent(lo) > peak - 750.0 {
        lo -= 1.0;
    }
    let mut hi = u_star;
    while exponent(hi) > peak - 750.0 {
        hi += 1.0;
    }

    let integral_with_step = |h: f64| {
        let n = ((hi - lo) / h).ceil() as usize;
        let mut sum = 0.0;
        for i in 0..=n {
            let u = lo + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            sum += w * (exponent(u) - peak).exp();
        }
        sum * h
    };

    let mut h = 0.5;
    let mut prev = integral_with_step(h);
    let mut achieved = f64::INFINITY;
    for _ in 0..16 {
        h *= 0.5;
        let next = integral_with_step(h);
        achieved = (next - prev).abs() / next.abs();
        if achieved <= 1e-12 {
            return Ok((log_prefactor + peak + next.ln()).exp());
        }
        prev = next;
    }
    Err(Error::Numeric(format!(
        "IG moment quadrature did not converge below 1e-12 relative (achieved {achieved:e})"
    )))
}

/// Cumulant function of the tempered stable subordinator,
/// `Phi(theta) = delta lambda - delta (lambda^{1/alpha} + 2 theta)^alpha`,
/// provided as an analytic reference (no path-level simulation).
pub fn tempered_stable_cumulant(theta: f64, alpha: f64, delta: f64, lambda: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha", "must lie in (0, 1)"));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", "must be positive"));
    }
    if !(lambda >= 0.0) {
        return Err(Error::invalid("lambda", "must be non-negative"));
    }
    if !(theta >= 0.0) {
        return Err(Error::invalid("theta", "must be non-negative"));
    }
    Ok(delta * lambda - delta * (lambda.powf(1.0 / alpha) + 2.0 * theta).powf(alpha))
}
