//! Goodness-of-fit tests and the log-log slope fit.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::distributions::IntegerDistribution;
use crate::error::{invalid, Result};

/// Asymptotic two-sample KS coefficient `c(α) = √(-ln(α/2)/2)`; 1.628 at α = 0.01.
pub fn ks_coefficient(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub pass: bool,
}

fn sorted(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.iter().any(|x| x.is_nan()) {
        return Err(invalid("samples contain NaN"));
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Two-sample Kolmogorov–Smirnov test at level `alpha`.
pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> Result<KsOutcome> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("KS test needs two non-empty samples"));
    }
    let a = sorted(a)?;
    let b = sorted(b)?;
    let (m, n) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / m - j as f64 / n).abs());
    }
    let critical = ks_coefficient(alpha) * ((m + n) / (m * n)).sqrt();
    Ok(KsOutcome {
        statistic: d,
        critical,
        pass: d <= critical,
    })
}

/// One-sample KS test against a continuous CDF.
pub fn ks_one_sample(xs: &[f64], cdf: impl Fn(f64) -> f64, alpha: f64) -> Result<KsOutcome> {
    if xs.is_empty() {
        return Err(invalid("KS test needs a non-empty sample"));
    }
    let xs = sorted(xs)?;
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    let critical = ks_coefficient(alpha) / n.sqrt();
    Ok(KsOutcome {
        statistic: d,
        critical,
        pass: d <= critical,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub df: u64,
    pub critical: f64,
    pub pass: bool,
}

/// Pearson goodness-of-fit of `counts` against cell probabilities `probs`
/// (renormalized), with `cells - 1` degrees of freedom.
pub fn chi_square(counts: &[u64], probs: &[f64], alpha: f64) -> Result<ChiSquareOutcome> {
    if counts.len() != probs.len() || counts.len() < 2 {
        return Err(invalid(
            "chi-square needs matching counts and probabilities, >= 2 cells",
        ));
    }
    let total_p: f64 = probs.iter().sum();
    if total_p.is_nan() || total_p <= 0.0 || probs.iter().any(|&p| p.is_nan() || p <= 0.0) {
        return Err(invalid("chi-square cell probabilities must be positive"));
    }
    let total: u64 = counts.iter().sum();
    let statistic = counts
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = total as f64 * p / total_p;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let df = counts.len() as u64 - 1;
    let critical = ChiSquared::new(df as f64)
        .map_err(|e| invalid(e.to_string()))?
        .inverse_cdf(1.0 - alpha);
    Ok(ChiSquareOutcome {
        statistic,
        df,
        critical,
        pass: statistic <= critical,
    })
}

/// Bins integer samples into cells `1, 2, …, K-1, [K, ∞)` where `K` is the
/// first value whose tail expectation drops below `min_expected`, then runs
/// [`chi_square`] against `dist`.
pub fn chi_square_integer(
    samples: &[u64],
    dist: &dyn IntegerDistribution,
    min_expected: f64,
    alpha: f64,
) -> Result<ChiSquareOutcome> {
    let n = samples.len() as f64;
    let mut probs = Vec::new();
    let mut x = 1u64;
    loop {
        if n * dist.tail(x) < min_expected || x > 1_000_000 {
            // cell for x itself and everything above it
            probs.push(dist.tail(x - 1));
            break;
        }
        probs.push(dist.pmf(x));
        x += 1;
    }
    // merge a thin last regular cell into the tail cell
    while probs.len() > 2 && n * probs[probs.len() - 2] < min_expected {
        let last = probs.pop().unwrap();
        *probs.last_mut().unwrap() += last;
    }
    let top = probs.len() as u64; // values >= top share the last cell
    let mut counts = vec![0u64; probs.len()];
    for &s in samples {
        let cell = s.clamp(1, top) - 1;
        counts[cell as usize] += 1;
    }
    chi_square(&counts, &probs, alpha)
}

/// Least-squares slope of `ln(mean)` against `ln(n)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(invalid("slope needs at least two points"));
    }
    if points.iter().any(|&(n, l)| !(n > 0.0 && l > 0.0)) {
        return Err(invalid("log-log slope needs positive coordinates"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("slope needs at least two distinct n"));
    }
    Ok(sxy / sxx)
}
