//! Special functions backing the distribution families: log-gamma, log-beta,
//! the regularized incomplete beta and gamma functions, digamma and trigamma.
//!
//! The checked entry points (`log_gamma`, `reg_inc_beta`, ...) validate their
//! domain and return [`Error::Domain`]. The crate-internal `ln_*` variants
//! assume validated input and are used on hot paths.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Iteration cap for the incomplete-beta continued fraction.
pub const BETA_CF_MAX_ITER: usize = 300;
const BETA_CF_EPS: f64 = 1e-14;
const GAMMA_MAX_ITER: usize = 100_000;
const GAMMA_EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {x}")))
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(ln_gamma(x))
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `ln B(p, q)`.
pub fn log_beta(p: f64, q: f64) -> Result<f64> {
    check_positive("p", p)?;
    check_positive("q", q)?;
    Ok(ln_beta(p, q))
}

pub(crate) fn ln_beta(p: f64, q: f64) -> f64 {
    // Ordered so that ln_beta(p, q) and ln_beta(q, p) are bitwise identical.
    let (a, b) = if p <= q { (p, q) } else { (q, p) };
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Regularized incomplete beta `I_z(p, q)`.
///
/// Evaluated by Lentz's continued fraction, switching to `1 - I_{1-z}(q, p)`
/// when `z >= (p + 1) / (p + q + 2)`. Fails with [`Error::NoConvergence`]
/// after [`BETA_CF_MAX_ITER`] iterations.
pub fn reg_inc_beta(p: f64, q: f64, z: f64) -> Result<f64> {
    check_positive("p", p)?;
    check_positive("q", q)?;
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(format!("z must lie in [0, 1], got {z}")));
    }
    reg_inc_beta_zw(p, q, z, 1.0 - z, BETA_CF_MAX_ITER)
}

/// `I_z(p, q)` with the complement `w = 1 - z` supplied by the caller, so that
/// callers holding an accurate `w` (e.g. `β / (x + β)`) do not lose digits
/// to the subtraction.
pub(crate) fn reg_inc_beta_zw(p: f64, q: f64, z: f64, w: f64, max_iter: usize) -> Result<f64> {
    if z <= 0.0 {
        return Ok(0.0);
    }
    if w <= 0.0 {
        return Ok(1.0);
    }
    let ln_front = p * z.ln() + q * w.ln() - ln_beta(p, q);
    let value = if z < (p + 1.0) / (p + q + 2.0) {
        ln_front.exp() * beta_cf(p, q, z, max_iter)? / p
    } else {
        1.0 - ln_front.exp() * beta_cf(q, p, w, max_iter)? / q
    };
    Ok(value.clamp(0.0, 1.0))
}

fn beta_cf(a: f64, b: f64, x: f64, max_iter: usize) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=max_iter {
        let m = m as f64;
        let m2 = 2.0 * m;
        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < BETA_CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete beta",
        iterations: max_iter,
    })
}

/// Regularized incomplete gamma pair `(P(a, x), Q(a, x))`, with `P + Q = 1`
/// exactly in floating point (both come from the same expansion).
pub fn reg_inc_gamma(a: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("a", a)?;
    if !(x >= 0.0) {
        return Err(domain(format!("x must be >= 0, got {x}")));
    }
    Ok(inc_gamma_pq(a, x))
}

pub(crate) fn inc_gamma_pq(a: f64, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    if x < a + 1.0 {
        let p = inc_gamma_series(a, x).exp().min(1.0);
        (p, 1.0 - p)
    } else {
        let q = inc_gamma_cf(a, x).exp().min(1.0);
        (1.0 - q, q)
    }
}

/// `ln Q(a, x)`, accurate deep into the upper tail where `Q` underflows.
pub(crate) fn ln_upper_inc_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        (-inc_gamma_series(a, x).exp()).ln_1p()
    } else {
        inc_gamma_cf(a, x)
    }
}

/// `ln P(a, x)` by the power series.
fn inc_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum.ln() - x + a * x.ln() - ln_gamma(a)
}

/// `ln Q(a, x)` by Lentz's continued fraction.
fn inc_gamma_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    h.ln() - x + a * x.ln() - ln_gamma(a)
}

/// Standard normal CDF via `erfc(t) = Q(1/2, t^2)`.
pub fn norm_cdf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    let (p, q) = inc_gamma_pq(0.5, 0.5 * z * z);
    if z < 0.0 {
        0.5 * q
    } else {
        0.5 + 0.5 * p
    }
}

/// `ln Φ(z)`, finite for arbitrarily negative `z`.
pub fn ln_norm_cdf(z: f64) -> f64 {
    if z < 0.0 {
        (0.5f64).ln() + ln_upper_inc_gamma(0.5, 0.5 * z * z)
    } else {
        norm_cdf(z).ln()
    }
}

/// Digamma `ψ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(psi(x))
}

pub(crate) fn psi(x: f64) -> f64 {
    let mut x = x;
    let mut shift = 0.0;
    while x < 6.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    // Bernoulli-number asymptotic tail.
    let series = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32_760.0 - r / 12.0))))));
    shift + x.ln() - 0.5 / x - series
}

/// Trigamma `ψ'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    Ok(psi1(x))
}

pub(crate) fn psi1(x: f64) -> f64 {
    let mut x = x;
    let mut shift = 0.0;
    while x < 6.0 {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    let series = 1.0 / x
        + r / 2.0
        + r / x
            * (1.0 / 6.0
                - r * (1.0 / 30.0
                    - r * (1.0 / 42.0 - r * (1.0 / 30.0 - r * (5.0 / 66.0 - r * 691.0 / 2730.0)))));
    shift + series
}
