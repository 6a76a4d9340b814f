//! Kolmogorov–Smirnov distances and Pearson correlation.

use serde::Serialize;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KsSizes {
    One(usize),
    Two(usize, usize),
}

/// A Kolmogorov–Smirnov distance `d ∈ [0, 1]` with its sample size(s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsStat {
    pub d: f64,
    pub sizes: KsSizes,
}

fn sorted(data: &[f64]) -> Vec<f64> {
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// One-sample KS distance between the empirical CDF of `data` and `cdf`:
///
/// `D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)`.
///
/// Exact. Tied observations need no special casing: within a run of equal
/// values the largest upper gap sits at the last index and the largest lower
/// gap at the first, so the per-point maximum already equals the gap at the
/// tied value's cumulative count.
pub fn ks_one_sample(data: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsStat> {
    if data.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if data.iter().any(|x| x.is_nan()) {
        return Err(domain("NaN in KS sample"));
    }
    let xs = sorted(data);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let upper = (i + 1) as f64 / n - f;
        let lower = f - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    Ok(KsStat {
        d: d.clamp(0.0, 1.0),
        sizes: KsSizes::One(xs.len()),
    })
}

/// Two-sample KS distance: the sup-distance between the two empirical CDFs,
/// by a merged sweep over both sorted samples. Symmetric in its arguments.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsStat> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InsufficientData {
            needed: 1,
            got: a.len().min(b.len()),
        });
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(domain("NaN in KS sample"));
    }
    let xa = sorted(a);
    let xb = sorted(b);
    let (na, nb) = (xa.len(), xb.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < na && j < nb {
        // Step past every copy of the smaller value in both samples before
        // comparing, so ties across samples never open a spurious gap.
        let x = xa[i].min(xb[j]);
        while i < na && xa[i] <= x {
            i += 1;
        }
        while j < nb && xb[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / na as f64 - j as f64 / nb as f64).abs();
        d = d.max(gap);
    }
    Ok(KsStat {
        d: d.min(1.0),
        sizes: KsSizes::Two(na, nb),
    })
}

/// Pearson product-moment correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(domain(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    if !(sxx > 0.0 && syy > 0.0) || !(sxx.is_finite() && syy.is_finite()) {
        return Err(Error::Degenerate("zero or non-finite variance in correlation input".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
