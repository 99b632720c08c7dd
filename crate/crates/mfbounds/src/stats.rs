//! Small statistical helpers used by the generator diagnostics and the
//! verification suites: Kolmogorov-Smirnov tests, medians, correlation.

/// Survival function of the Kolmogorov distribution,
/// `Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)`.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample KS statistic against a closed-form CDF.
pub fn ks_statistic_cdf(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((i as f64 / n - f).abs());
    }
    d
}

/// Asymptotic p-value for a one-sample KS test.
pub fn ks_pvalue_one_sample(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d)
}

/// Two-sample KS statistic (sup distance between empirical CDFs).
pub fn ks_statistic_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len(), ys.len());
    let mut i = 0;
    let mut j = 0;
    let mut d: f64 = 0.0;
    while i < na && j < nb {
        let v = xs[i].min(ys[j]);
        while i < na && xs[i] <= v {
            i += 1;
        }
        while j < nb && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    d
}

/// Asymptotic p-value for a two-sample KS test.
pub fn ks_pvalue_two_sample(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na as f64 * nb as f64) / (na as f64 + nb as f64);
    let sn = ne.sqrt();
    kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d)
}

pub fn median(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty());
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64
}

/// Pearson correlation of two equally long series.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let ma = mean(a);
    let mb = mean(b);
    let mut num = 0.0;
    let mut da = 0.0;
    let mut db = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        num += (x - ma) * (y - mb);
        da += (x - ma) * (x - ma);
        db += (y - mb) * (y - mb);
    }
    num / (da * db).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn kolmogorov_sf_reference_values() {
        // Q(0.5) = 0.9639..., Q(1.0) = 0.2700..., Q(1.63) ~ 0.0102 (1% critical point).
        assert!((kolmogorov_sf(1.0) - 0.27).abs() < 0.005);
        assert!((kolmogorov_sf(1.63) - 0.010).abs() < 0.002);
        assert!(kolmogorov_sf(0.0) == 1.0);
    }

    #[test]
    fn two_sample_ks_accepts_same_distribution() {
        let mut r = SplitMix64::new(11);
        let a: Vec<f64> = (0..4000).map(|_| r.next_normal()).collect();
        let b: Vec<f64> = (0..4000).map(|_| r.next_normal()).collect();
        let d = ks_statistic_two_sample(&a, &b);
        assert!(ks_pvalue_two_sample(d, a.len(), b.len()) > 0.01);
    }

    #[test]
    fn two_sample_ks_rejects_shifted_distribution() {
        let mut r = SplitMix64::new(12);
        let a: Vec<f64> = (0..4000).map(|_| r.next_normal()).collect();
        let b: Vec<f64> = (0..4000).map(|_| r.next_normal() + 0.5).collect();
        let d = ks_statistic_two_sample(&a, &b);
        assert!(ks_pvalue_two_sample(d, a.len(), b.len()) < 1e-6);
    }

    #[test]
    fn one_sample_ks_uniform() {
        let mut r = SplitMix64::new(13);
        let a: Vec<f64> = (0..5000).map(|_| r.next_uniform()).collect();
        let d = ks_statistic_cdf(&a, |x| x.clamp(0.0, 1.0));
        assert!(ks_pvalue_one_sample(d, a.len()) > 0.01);
    }

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
