//! Test-only oracles: brute-force statistics, adaptive quadrature and a
//! synthetic market generator.
#![allow(dead_code, clippy::excessive_precision)]

use rand::Rng;
use rand_distr::StandardNormal;
use varratio::distributions::seeded_rng;
use varratio::volatility::DailySeries;
use varratio::{Distribution, Family, NaiveDate};

/// Empirical CDF by counting, `#{x <= t} / n`.
fn ecdf(data: &[f64], t: f64) -> f64 {
    data.iter().filter(|&&x| x <= t).count() as f64 / data.len() as f64
}

/// Fraction strictly below `t`.
fn ecdf_left(data: &[f64], t: f64) -> f64 {
    data.iter().filter(|&&x| x < t).count() as f64 / data.len() as f64
}

/// `sup_t |F_n(t) - F(t)|`, checking both sides of every jump. O(n²).
pub fn brute_ks_one(data: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    data.iter()
        .map(|&x| {
            let f = cdf(x);
            (ecdf(data, x) - f).abs().max((ecdf_left(data, x) - f).abs())
        })
        .fold(0.0, f64::max)
}

/// `max_t |F_a(t) - F_b(t)|` over every sample point. O(n²).
pub fn brute_ks_two(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .chain(b)
        .map(|&t| (ecdf(a, t) - ecdf(b, t)).abs())
        .fold(0.0, f64::max)
}

/// Pearson correlation from all pairwise differences:
/// `Σ_{i<j} dx dy / sqrt(Σ dx² Σ dy²)`. O(n²).
pub fn brute_pearson(x: &[f64], y: &[f64]) -> f64 {
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
    }
    sxy / (sxx * syy).sqrt()
}

const GK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GK_WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = GK_WK[7] * fc;
    let mut g = GK_WG[3] * fc;
    for i in 0..7 {
        let dx = h * GK_X[i];
        let s = f(c - dx) + f(c + dx);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return v;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod (7, 15) on a finite interval.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adapt(&f, a, b, tol, 50)
}

/// `∫_0^∞ g(x) dx` for a density given by its log, via `x = e^u`. The `u`
/// range grows from the mode until the integrand is negligible.
pub fn integrate_positive(ln_g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let h = |u: f64| {
        let v = ln_g(u.exp()) + u;
        if v.is_nan() {
            0.0
        } else {
            v.exp()
        }
    };
    // Locate the peak on a coarse grid.
    let (mut u_peak, mut best) = (0.0, f64::NEG_INFINITY);
    let mut u = -60.0;
    while u <= 60.0 {
        let v = h(u);
        if v > best {
            best = v;
            u_peak = u;
        }
        u += 0.05;
    }
    let cut = best * 1e-22;
    let mut lo = u_peak - 1.0;
    while h(lo) > cut && lo > -700.0 {
        lo -= 1.0;
    }
    let mut hi = u_peak + 1.0;
    while h(hi) > cut && hi < 700.0 {
        hi += 1.0;
    }
    // Split at the peak so the bulk is resolved before bisection kicks in.
    integrate(h, lo, u_peak, tol) + integrate(h, u_peak, hi, tol)
}

/// Business-day price and volatility-index series with persistent,
/// mean-reverting log-volatility. The index is the annualized volatility of
/// the coming month's conditional variance times a multiplicative error and
/// a variance premium.
pub fn synthetic_market(days: usize, seed: u64) -> (DailySeries, DailySeries) {
    let mut rng = seeded_rng(seed);
    let mut z = || -> f64 { rng.sample(StandardNormal) };
    let mut dates = Vec::with_capacity(days);
    let mut d = NaiveDate::from_ymd_opt(1990, 1, 2).unwrap();
    while dates.len() < days {
        if !matches!(d.format("%a").to_string().as_str(), "Sat" | "Sun") {
            dates.push(d);
        }
        d += chrono::TimeDelta::days(1);
    }
    let (phi, mean_lv, eta) = (0.985f64, (0.17f64 / 252f64.sqrt()).ln(), 0.12);
    let mut lv = mean_lv;
    let mut sig = Vec::with_capacity(days);
    for _ in 0..days {
        lv = mean_lv + phi * (lv - mean_lv) + eta * z();
        sig.push(lv.exp());
    }
    let mut prices = Vec::with_capacity(days);
    let mut p = 350.0f64;
    for s in &sig {
        p *= (s * z() - 0.5 * s * s).exp();
        prices.push(p);
    }
    // Conditional expectation of the next month's mean daily variance.
    let mut levels = Vec::with_capacity(days);
    for &s in &sig {
        let mut acc = 0.0;
        for k in 1..=21 {
            let m = mean_lv + phi.powi(k) * (s.ln() - mean_lv);
            let v = eta * eta * (1.0 - phi.powi(2 * k)) / (1.0 - phi * phi);
            acc += (2.0 * m + 2.0 * v).exp();
        }
        let daily = acc / 21.0;
        let level = 100.0 * (252.0 * daily * 1.15).sqrt() * (0.08 * z()).exp();
        levels.push((level * 100.0).round() / 100.0);
    }
    (
        DailySeries::new(dates.clone(), prices).unwrap(),
        DailySeries::new(dates, levels).unwrap(),
    )
}

/// Published fits of real variance-ratio series: family, parameters in report
/// order (Weibull as scale, shape) and the reported KS distance.
pub const REFERENCE_FITS: &[(Family, &[f64], f64)] = &[
    (Family::Normal, &[1.0000, 0.9067], 0.1940),
    (Family::LogNormal, &[-0.2027, 0.5867], 0.0446),
    (Family::InverseGamma, &[3.3595, 2.3466], 0.0246),
    (Family::Gamma, &[2.6219, 0.3814], 0.0978),
    (Family::Weibull, &[1.1124, 1.4009], 0.1224),
    (Family::InverseGaussian, &[1.0000, 2.3168], 0.0607),
    (Family::BetaPrime, &[27.2279, 3.8055, 0.1014], 0.0198),
    (Family::Normal, &[1.0000, 0.5626], 0.0972),
    (Family::LogNormal, &[-0.1562, 0.5867], 0.0446),
    (Family::InverseGamma, &[2.6219, 1.8314], 0.0978),
    (Family::Gamma, &[3.3595, 0.2977], 0.0246),
    (Family::Weibull, &[1.1306, 1.8882], 0.0500),
    (Family::InverseGaussian, &[1.0000, 2.3168], 0.0734),
    (Family::BetaPrime, &[3.8055, 27.2279, 6.8913], 0.0198),
    (Family::Normal, &[1.0000, 0.8747], 0.1910),
    (Family::LogNormal, &[-0.1973, 0.5795], 0.0449),
    (Family::InverseGamma, &[3.4629, 2.4438], 0.0224),
    (Family::Gamma, &[2.6897, 0.3718], 0.0971),
    (Family::Weibull, &[1.1150, 1.4256], 0.1230),
    (Family::InverseGaussian, &[1.0000, 2.3981], 0.0611),
    (Family::BetaPrime, &[47.6001, 3.7157, 0.0563], 0.0177),
    (Family::Normal, &[1.0000, 0.5467], 0.0925),
    (Family::LogNormal, &[-0.1513, 0.5795], 0.0449),
    (Family::InverseGamma, &[2.6897, 1.8982], 0.0971),
    (Family::Gamma, &[3.4629, 0.2888], 0.0224),
    (Family::Weibull, &[1.1308, 1.9374], 0.0499),
    (Family::InverseGaussian, &[1.0000, 2.3981], 0.0729),
    (Family::BetaPrime, &[3.7157, 47.6002, 12.5409], 0.0177),
    (Family::Normal, &[1.0000, 0.4974], 0.0992),
    (Family::LogNormal, &[-0.1099, 0.4689], 0.0147),
    (Family::InverseGamma, &[4.6889, 3.7619], 0.0431),
    (Family::Gamma, &[4.7110, 0.2123], 0.0381),
    (Family::Weibull, &[1.1325, 2.1250], 0.0672),
    (Family::InverseGaussian, &[1.0000, 4.0580], 0.0215),
    (Family::BetaPrime, &[9.2230, 9.9855, 0.9742], 0.0117),
    (Family::Normal, &[1.0000, 0.4999], 0.1059),
    (Family::LogNormal, &[-0.1104, 0.4689], 0.0147),
    (Family::InverseGamma, &[4.7110, 3.7796], 0.0381),
    (Family::Gamma, &[4.6889, 0.2133], 0.0431),
    (Family::Weibull, &[1.1329, 2.1186], 0.0751),
    (Family::InverseGaussian, &[1.0000, 4.0580], 0.0163),
    (Family::BetaPrime, &[9.9855, 9.2230, 0.8236], 0.0117),
    (Family::Normal, &[1.0000, 0.4915], 0.1064),
    (Family::LogNormal, &[-0.1041, 0.4539], 0.0150),
    (Family::InverseGamma, &[5.0351, 4.0948], 0.0331),
    (Family::Gamma, &[4.9618, 0.2015], 0.0454),
    (Family::Weibull, &[1.1316, 2.1383], 0.0730),
    (Family::InverseGaussian, &[1.0000, 4.3548], 0.0203),
    (Family::BetaPrime, &[11.1694, 9.4027, 0.7520], 0.0133),
    (Family::Normal, &[1.0000, 0.4768], 0.0933),
    (Family::LogNormal, &[-0.1026, 0.4539], 0.0150),
    (Family::InverseGamma, &[4.9618, 4.0352], 0.0454),
    (Family::Gamma, &[5.0351, 0.1986], 0.0331),
    (Family::Weibull, &[1.1319, 2.2099], 0.0689),
    (Family::InverseGaussian, &[1.0000, 4.3548], 0.0212),
    (Family::BetaPrime, &[9.4027, 11.1694, 1.0814], 0.0133),
    (Family::Normal, &[1.3175, 1.2580], 0.1809),
    (Family::LogNormal, &[-0.0037, 0.7211], 0.0244),
    (Family::InverseGamma, &[2.1291, 1.6472], 0.0472),
    (Family::Gamma, &[1.9390, 0.6795], 0.0801),
    (Family::Weibull, &[1.4403, 1.2869], 0.0922),
    (Family::InverseGaussian, &[1.3175, 1.8743], 0.0340),
    (Family::BetaPrime, &[5.8771, 3.4893, 0.5556], 0.0123),
    (Family::Normal, &[1.2925, 1.0777], 0.1422),
    (Family::LogNormal, &[0.0037, 0.7211], 0.0244),
    (Family::InverseGamma, &[1.9390, 1.4717], 0.0801),
    (Family::Gamma, &[2.1291, 0.6071], 0.0472),
    (Family::Weibull, &[1.4300, 1.3951], 0.0608),
    (Family::InverseGaussian, &[1.2925, 1.8387], 0.0513),
    (Family::BetaPrime, &[3.4893, 5.8771, 1.7999], 0.0123),
];

/// Builds a distribution from report-order parameters.
pub fn from_display(family: Family, params: &[f64]) -> Distribution {
    let mut p = params.to_vec();
    if family == Family::Weibull {
        p.swap(0, 1);
    }
    Distribution::from_params(family, &p).unwrap()
}
