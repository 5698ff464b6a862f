//! Numerical core: standardisation, Gaussian KDE, Pearson correlation with
//! Student-t significance, quantiles and summary statistics.
//!
//! Standard deviations are population standard deviations throughout.

use alloc::vec::Vec;

pub mod special;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("degenerate distribution: at least two distinct values are required")]
    DegenerateDistribution,
    #[error("empty input")]
    EmptyInput,
    #[error("bandwidth must be a positive finite number, got {0}")]
    InvalidBandwidth(f64),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("constant vector: correlation is undefined")]
    ConstantVector,
    #[error("need at least {needed} observations, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("quantile fraction must lie in (0, 1), got {0}")]
    InvalidQuantile(f64),
    #[error("non-finite input value")]
    NonFinite,
}

pub type Result<T> = core::result::Result<T, StatsError>;

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StatsError::NonFinite)
    }
}

fn all_equal(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Population standard deviation (divides by n).
pub fn population_stddev(values: &[f64]) -> Result<f64> {
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Ok(libm::sqrt(ss / values.len() as f64))
}

fn sorted(values: &[f64]) -> Result<Vec<f64>> {
    check_finite(values)?;
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(s)
}

/// Standardised scores `(p - μ) / σ` of one indicator over all papers.
#[derive(Debug, Clone, PartialEq)]
pub struct ZScoreSet {
    pub mean: f64,
    pub stddev: f64,
    pub scores: Vec<f64>,
    pub raw: Vec<f64>,
}

pub fn zscores(raw: &[f64]) -> Result<ZScoreSet> {
    check_finite(raw)?;
    if raw.len() < 2 || all_equal(raw) {
        return Err(StatsError::DegenerateDistribution);
    }
    let mean = mean(raw)?;
    let stddev = population_stddev(raw)?;
    if stddev <= 0.0 {
        return Err(StatsError::DegenerateDistribution);
    }
    let scores = raw.iter().map(|v| (v - mean) / stddev).collect();
    Ok(ZScoreSet {
        mean,
        stddev,
        scores,
        raw: raw.to_vec(),
    })
}

/// Linear interpolation between order statistics at position `(n - 1)·q`.
///
/// Every value at or above the result lies in the upper `1 - q` tail, up to
/// ties.
pub fn quantile_lower_bound(values: &[f64], q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(StatsError::InvalidQuantile(q));
    }
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let s = sorted(values)?;
    Ok(interpolate_sorted(&s, q))
}

fn interpolate_sorted(s: &[f64], q: f64) -> f64 {
    let pos = (s.len() - 1) as f64 * q;
    let lo = libm::floor(pos) as usize;
    let hi = (lo + 1).min(s.len() - 1);
    let frac = pos - lo as f64;
    if frac == 0.0 || s[lo] == s[hi] {
        s[lo]
    } else {
        s[lo] + frac * (s[hi] - s[lo])
    }
}

/// Interquartile range from quartiles placed at `(n + 1)·p` and clamped to
/// the sample range.
pub fn interquartile_range(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let s = sorted(values)?;
    let quartile = |p: f64| {
        let pos = (s.len() + 1) as f64 * p - 1.0;
        if pos <= 0.0 {
            s[0]
        } else if pos >= (s.len() - 1) as f64 {
            s[s.len() - 1]
        } else {
            interpolate_sorted(&s, pos / (s.len() - 1) as f64)
        }
    };
    Ok(quartile(0.75) - quartile(0.25))
}

/// Silverman's rule of thumb `0.9 · min(σ, IQR / 1.34) · n^(-1/5)`, falling
/// back to `1.06 · σ · n^(-1/5)` when the IQR vanishes.
pub fn silverman_bandwidth(raw: &[f64]) -> Result<f64> {
    check_finite(raw)?;
    if raw.len() < 2 || all_equal(raw) {
        return Err(StatsError::DegenerateDistribution);
    }
    let sigma = population_stddev(raw)?;
    let iqr = interquartile_range(raw)?;
    let n_factor = libm::pow(raw.len() as f64, -0.2);
    let h = if iqr > 0.0 {
        0.9 * sigma.min(iqr / 1.34) * n_factor
    } else {
        1.06 * sigma * n_factor
    };
    if h > 0.0 && h.is_finite() {
        Ok(h)
    } else {
        Err(StatsError::DegenerateDistribution)
    }
}

/// A Gaussian kernel density estimate evaluated on a set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct KdeCurve {
    pub bandwidth: f64,
    pub eval_points: Vec<f64>,
    pub densities: Vec<f64>,
}

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn std_normal_pdf(u: f64) -> f64 {
    INV_SQRT_2PI * libm::exp(-0.5 * u * u)
}

/// `d(x) = 1 / (n·h) · Σ φ((x - x_k) / h)`. The bandwidth defaults to
/// [`silverman_bandwidth`].
pub fn kde(raw: &[f64], eval_points: &[f64], bandwidth: Option<f64>) -> Result<KdeCurve> {
    if raw.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    check_finite(raw)?;
    check_finite(eval_points)?;
    let h = match bandwidth {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => return Err(StatsError::InvalidBandwidth(h)),
        None => silverman_bandwidth(raw)?,
    };
    let norm = 1.0 / (raw.len() as f64 * h);
    let densities = eval_points
        .iter()
        .map(|&x| {
            norm * raw
                .iter()
                .map(|&xi| std_normal_pdf((x - xi) / h))
                .sum::<f64>()
        })
        .collect();
    Ok(KdeCurve {
        bandwidth: h,
        eval_points: eval_points.to_vec(),
        densities,
    })
}

/// `points` evenly spaced evaluation points spanning
/// `[min - pad·h, max + pad·h]`.
pub fn kde_grid(raw: &[f64], bandwidth: f64, points: usize, pad: f64) -> Result<Vec<f64>> {
    if raw.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    if points < 2 {
        return Err(StatsError::TooFewSamples {
            needed: 2,
            got: points,
        });
    }
    let s = sorted(raw)?;
    let lo = s[0] - pad * bandwidth;
    let hi = s[s.len() - 1] + pad * bandwidth;
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|k| lo + step * k as f64).collect())
}

impl KdeCurve {
    /// Trapezoidal integral of the density over the evaluation points.
    pub fn trapezoid_integral(&self) -> f64 {
        self.eval_points
            .windows(2)
            .zip(self.densities.windows(2))
            .map(|(x, d)| 0.5 * (x[1] - x[0]) * (d[0] + d[1]))
            .sum()
    }

    /// Smallest and largest evaluation point whose density is at least
    /// `level`.
    pub fn span_above(&self, level: f64) -> Option<(f64, f64)> {
        let mut hits = self
            .eval_points
            .iter()
            .zip(&self.densities)
            .filter(|(_, d)| **d >= level)
            .map(|(x, _)| *x);
        let first = hits.next()?;
        let last = hits.next_back().unwrap_or(first);
        Some((first, last))
    }

    pub fn max_density(&self) -> f64 {
        self.densities.iter().copied().fold(0.0, f64::max)
    }
}

/// Sample Pearson correlation with its two-sided Student-t p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub r: f64,
    pub n: usize,
    pub p_value: f64,
    /// `√((1 − r²) / (n − 2))`
    pub standard_error: f64,
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 3 {
        return Err(StatsError::TooFewSamples { needed: 3, got: n });
    }
    check_finite(x)?;
    check_finite(y)?;
    if all_equal(x) || all_equal(y) {
        return Err(StatsError::ConstantVector);
    }
    let mx = mean(x)?;
    let my = mean(y)?;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(StatsError::ConstantVector);
    }
    let r = (sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0);
    let df = (n - 2) as f64;
    let one_minus_r2 = (1.0 - r * r).max(0.0);
    let p_value = if one_minus_r2 == 0.0 {
        0.0
    } else {
        let t = r * libm::sqrt(df / one_minus_r2);
        special::student_t_two_sided(t, df)
    };
    Ok(CorrelationResult {
        r,
        n,
        p_value,
        standard_error: libm::sqrt(one_minus_r2 / df),
    })
}

/// Rescales to `[0, 1]` with `(v - min) / (max - min)`.
pub fn minmax_normalize(values: &[f64]) -> Result<Vec<f64>> {
    let s = sorted(values)?;
    let (Some(&lo), Some(&hi)) = (s.first(), s.last()) else {
        return Err(StatsError::EmptyInput);
    };
    if hi <= lo {
        return Err(StatsError::DegenerateDistribution);
    }
    Ok(values.iter().map(|v| (v - lo) / (hi - lo)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub max: f64,
    pub mean: f64,
    pub median: f64,
}

pub fn summary(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let s = sorted(values)?;
    let n = s.len();
    let median = if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    };
    Ok(Summary {
        max: s[n - 1],
        mean: mean(values)?,
        median,
    })
}
