//! Maximum-likelihood fits of the seven families.
//!
//! Normal, LogNormal and InverseGaussian have closed forms. Gamma and
//! Weibull reduce to one-dimensional root finds on the profile score;
//! InverseGamma is the Gamma fit of the reciprocals. Beta prime is fitted by
//! Nelder–Mead over `(ln p, ln q, ln beta)` from a moment-matching start.

use serde::Serialize;

use crate::distributions::{
    BetaPrime, Continuous, Distribution, Family, Gamma, InverseGaussian, LogNormal, Normal, Weibull,
};
use crate::error::{domain, Error, Result};
use crate::gof::ks_one_sample;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::special::{ln_beta, psi, psi1};

/// Smallest sample accepted by [`fit_mle`].
pub const MIN_SAMPLE: usize = 2;

/// Upper bound on the beta prime shapes during fitting. Gamma-, IGa- and
/// near-lognormal data pull one or both shapes towards infinity, where the
/// likelihood is flat and `ln B(p, q)` loses digits.
pub const BP_MAX_SHAPE: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitConfig {
    /// Iteration cap for each optimizer run (and for the 1-D root finds).
    pub max_iterations: usize,
    /// Relative spread of the negative log-likelihood across the simplex at
    /// which a Nelder–Mead run stops.
    pub convergence_tol: f64,
    /// Perturbed re-runs of the beta prime optimizer after the first.
    pub restarts: usize,
    /// Log-likelihood gain (nats) below which a beta prime run does not
    /// replace the incumbent.
    pub min_gain: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            convergence_tol: 1e-10,
            restarts: 3,
            min_gain: 1e-3,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || !(self.convergence_tol > 0.0) || !(self.min_gain >= 0.0) {
            return Err(domain("fit config: max_iterations and convergence_tol must be positive, min_gain non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub distribution: Distribution,
    pub loglik: f64,
    /// One-sample KS distance of the data against the fitted CDF.
    pub ks: f64,
    pub n: usize,
    pub converged: bool,
}

impl FitResult {
    pub fn family(&self) -> Family {
        self.distribution.family()
    }
}

/// `-Σ ln f(x_i)`; `+inf` as soon as one point has zero density.
/// An empty sample has likelihood one.
pub fn neg_loglik(dist: &Distribution, data: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &x in data {
        let l = dist.ln_pdf(x);
        if l == f64::NEG_INFINITY || l.is_nan() {
            return f64::INFINITY;
        }
        acc -= l;
    }
    acc
}

fn validate_sample(data: &[f64], family: Family) -> Result<()> {
    if data.len() < MIN_SAMPLE {
        return Err(Error::InsufficientData {
            needed: MIN_SAMPLE,
            got: data.len(),
        });
    }
    if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(domain(format!("non-finite observation {bad}")));
    }
    if family.positive_support() {
        if let Some(bad) = data.iter().find(|&&x| x <= 0.0) {
            return Err(domain(format!("{family} needs strictly positive data, found {bad}")));
        }
    }
    let first = data[0];
    if data.iter().all(|&x| x == first) {
        return Err(Error::Degenerate(format!(
            "all {} observations equal {first}; the {family} MLE is undefined",
            data.len()
        )));
    }
    Ok(())
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len() as f64;
    xs.sum::<f64>() / n
}

/// Mean and biased (1/n) standard deviation.
fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let m = mean(xs.iter().copied());
    let v = mean(xs.iter().map(|x| (x - m) * (x - m)));
    (m, v.sqrt())
}

/// Fits `family` to `data` by maximum likelihood.
///
/// Non-convergence of an iterative fit is reported through
/// [`FitResult::converged`]; invalid or degenerate samples are errors.
pub fn fit_mle(data: &[f64], family: Family, config: &FitConfig) -> Result<FitResult> {
    fit_mle_seeded(data, family, config, None)
}

/// As [`fit_mle`], but a beta prime fit starts from `bp_seed` (when given)
/// instead of the moment-matching initializer.
pub fn fit_mle_seeded(
    data: &[f64],
    family: Family,
    config: &FitConfig,
    bp_seed: Option<BetaPrime>,
) -> Result<FitResult> {
    config.validate()?;
    validate_sample(data, family)?;
    let (distribution, converged) = match family {
        Family::Normal => {
            let (m, s) = mean_sd(data);
            (Normal::new(m, s)?.into(), true)
        }
        Family::LogNormal => {
            let logs: Vec<f64> = data.iter().map(|x| x.ln()).collect();
            let (m, s) = mean_sd(&logs);
            (LogNormal::new(m, s)?.into(), true)
        }
        Family::InverseGaussian => {
            let mu = mean(data.iter().copied());
            let s: f64 = data.iter().map(|x| 1.0 / x - 1.0 / mu).sum();
            if !(s > 0.0) {
                return Err(Error::Degenerate("no spread in reciprocals".into()));
            }
            (InverseGaussian::new(mu, data.len() as f64 / s)?.into(), true)
        }
        Family::Gamma => {
            let (g, ok) = gamma_mle(data, config.max_iterations)?;
            (g.into(), ok)
        }
        Family::InverseGamma => {
            let recip: Vec<f64> = data.iter().map(|x| 1.0 / x).collect();
            let (g, ok) = gamma_mle(&recip, config.max_iterations)?;
            (g.reciprocal().into(), ok)
        }
        Family::Weibull => {
            let (w, ok) = weibull_mle(data, config.max_iterations)?;
            (w.into(), ok)
        }
        Family::BetaPrime => {
            let init = bp_seed.unwrap_or_else(|| bp_moment_init(data));
            let (bp, ok) = beta_prime_mle(data, init, config);
            (bp.into(), ok)
        }
    };
    let loglik = -neg_loglik(&distribution, data);
    let ks = ks_one_sample(data, |x| distribution.cdf(x))?.d;
    Ok(FitResult {
        distribution,
        loglik,
        ks,
        n: data.len(),
        converged: converged && loglik.is_finite(),
    })
}

/// Fits all seven families concurrently; results come back in
/// [`Family::ALL`] order regardless of completion order.
pub fn fit_all(data: &[f64], config: &FitConfig, bp_seed: Option<BetaPrime>) -> Vec<Result<FitResult>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = Family::ALL
            .iter()
            .map(|&fam| scope.spawn(move || fit_mle_seeded(data, fam, config, bp_seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fit thread panicked"))
            .collect()
    })
}

/// Gamma MLE: Newton on `ln k - ψ(k) = ln(mean) - mean(ln x)`, `θ = mean / k`.
fn gamma_mle(data: &[f64], max_iter: usize) -> Result<(Gamma, bool)> {
    let m = mean(data.iter().copied());
    let mean_log = mean(data.iter().map(|x| x.ln()));
    let s = m.ln() - mean_log;
    if !(s > 0.0) {
        return Err(Error::Degenerate("log-mean gap is not positive".into()));
    }
    // Minka's closed-form start is within a few percent of the root.
    let mut k = (3.0 - s + ((s - 3.0).powi(2) + 24.0 * s).sqrt()) / (12.0 * s);
    let mut converged = false;
    for _ in 0..max_iter.max(1) {
        let f = k.ln() - psi(k) - s;
        let df = 1.0 / k - psi1(k);
        let mut next = k - f / df;
        if !(next > 0.0) || !next.is_finite() {
            next = k / 2.0;
        }
        let done = (next - k).abs() <= 1e-14 * k;
        k = next;
        if done {
            converged = true;
            break;
        }
    }
    Ok((Gamma::new(k, m / k)?, converged))
}

/// Weibull MLE by a safeguarded Newton iteration on the profile score
///
/// `g(k) = 1/k + mean(ln x) - Σ x^k ln x / Σ x^k`,
///
/// which is strictly decreasing in `k`; then `λ = (mean x^k)^(1/k)`.
fn weibull_mle(data: &[f64], max_iter: usize) -> Result<(Weibull, bool)> {
    let logs: Vec<f64> = data.iter().map(|x| x.ln()).collect();
    let (c, sd) = mean_sd(&logs);
    if !(sd > 0.0) {
        return Err(Error::Degenerate("no spread in log data".into()));
    }
    let y: Vec<f64> = logs.iter().map(|l| l - c).collect();
    let y_max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // Returns (g, g', log mean of e^{k y}).
    let score = |k: f64| -> (f64, f64, f64) {
        let shift = k * y_max;
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &yi in &y {
            let w = (k * yi - shift).exp();
            s0 += w;
            s1 += w * yi;
            s2 += w * yi * yi;
        }
        let a = s1 / s0;
        let var = (s2 / s0 - a * a).max(0.0);
        let log_mean = shift + (s0 / y.len() as f64).ln();
        (1.0 / k - a, -1.0 / (k * k) - var, log_mean)
    };

    // Gumbel variance of ln X is π²/(6k²).
    let mut k = std::f64::consts::PI / (sd * 6f64.sqrt());
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    let mut converged = false;
    for _ in 0..max_iter.max(1) {
        let (g, dg, _) = score(k);
        if g > 0.0 {
            lo = lo.max(k);
        } else {
            hi = hi.min(k);
        }
        let mut next = k - g / dg;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * k };
        }
        let done = (next - k).abs() <= 1e-14 * k;
        k = next;
        if done || g == 0.0 {
            converged = true;
            break;
        }
    }
    let (_, _, log_mean) = score(k);
    let scale = (c + log_mean / k).exp();
    Ok((Weibull::new(k, scale)?, converged))
}

/// Moment-matching start for the beta prime fit.
///
/// Matches the mean `m = βp/(q-1)`, the variance
/// `v = m²(p+q-1)/(p(q-2))` and the reciprocal mean `E[1/X] = q/(β(p-1))`.
/// When the implied `q` is at most 2.1 (or no solution exists), `q` is
/// clamped to 2.5 and `p`, `β` follow from the two means alone. Returns
/// `BP(2, 3, m)` when the system has no admissible solution.
pub fn bp_moment_init(data: &[f64]) -> BetaPrime {
    let m = if data.is_empty() { f64::NAN } else { mean(data.iter().copied()) };
    let fallback = BetaPrime::new(2.0, 3.0, if m.is_finite() && m > 0.0 { m } else { 1.0 })
        .expect("fallback parameters are valid");
    if data.len() < 2 {
        return fallback;
    }
    let v = mean(data.iter().map(|x| (x - m) * (x - m)));
    let h = mean(data.iter().map(|x| 1.0 / x));
    if !(m > 0.0 && v > 0.0 && h > 0.0) || !(m.is_finite() && v.is_finite() && h.is_finite()) {
        return fallback;
    }
    let a = m * h;
    let c = v / (m * m);

    // The variance equation gives p(q) = (q-1) / (c(q-2) - 1) for q > 2 + 1/c.
    let p_of = |q: f64| (q - 1.0) / (c * (q - 2.0) - 1.0);
    let g = |q: f64| {
        let p = p_of(q);
        p * q / ((q - 1.0) * (p - 1.0)) - a
    };
    let q_min = 2.0 + 1.0 / c;
    let mut solution = None;
    let grid: Vec<f64> = (0..=400)
        .map(|i| q_min + 1e-9 * q_min + (1e4f64).powf(i as f64 / 400.0) - 1.0)
        .collect();
    for w in grid.windows(2) {
        let (q0, q1) = (w[0], w[1]);
        if p_of(q0) <= 1.0 || p_of(q1) <= 1.0 {
            continue;
        }
        let (g0, g1) = (g(q0), g(q1));
        if g0.is_finite() && g1.is_finite() && g0.signum() != g1.signum() {
            let (mut lo, mut hi, mut glo) = (q0, q1, g0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if gm.signum() == glo.signum() {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            solution = Some(0.5 * (lo + hi));
            break;
        }
    }
    let (p, q) = match solution {
        Some(q) if q > 2.1 => (p_of(q), q),
        _ => {
            let q = 2.5;
            let denom = a * (q - 1.0) - q;
            (a * (q - 1.0) / denom, q)
        }
    };
    let beta = m * (q - 1.0) / p;
    BetaPrime::new(p, q, beta).unwrap_or(fallback)
}

/// Negative log-likelihood of the beta prime law in log-parameters, with
/// the data-only sums hoisted out of the objective.
struct BpObjective<'a> {
    data: &'a [f64],
    sum_ln: f64,
}

impl<'a> BpObjective<'a> {
    fn new(data: &'a [f64]) -> Self {
        Self {
            data,
            sum_ln: data.iter().map(|x| x.ln()).sum(),
        }
    }

    fn eval(&self, theta: &[f64]) -> f64 {
        let (p, q, beta) = from_theta_raw(theta);
        if !(p.is_finite() && q.is_finite() && beta.is_finite() && p > 0.0 && q > 0.0 && beta > 0.0) {
            return f64::INFINITY;
        }
        let n = self.data.len() as f64;
        let ln_beta_scale = theta[2];
        let inv_beta = 1.0 / beta;
        let sum_ln1p: f64 = self.data.iter().map(|x| (x * inv_beta).ln_1p()).sum();
        let ll = (p - 1.0) * (self.sum_ln - n * ln_beta_scale) - (p + q) * sum_ln1p - n * ln_beta_scale - n * ln_beta(p, q);
        -ll
    }
}

fn to_theta(bp: &BetaPrime) -> Vec<f64> {
    let cap = BP_MAX_SHAPE.ln();
    vec![bp.p().ln().min(cap), bp.q().ln().min(cap), bp.beta().ln()]
}

/// Shapes are projected onto the cap, so the objective is flat beyond it.
fn from_theta_raw(theta: &[f64]) -> (f64, f64, f64) {
    (theta[0].exp().min(BP_MAX_SHAPE), theta[1].exp().min(BP_MAX_SHAPE), theta[2].exp())
}

fn from_theta(theta: &[f64]) -> Option<BetaPrime> {
    let (p, q, beta) = from_theta_raw(theta);
    BetaPrime::new(p, q, beta).ok()
}

/// Nelder–Mead over log-parameters from `init`, then `config.restarts`
/// re-runs from the incumbent perturbed by ±20% per coordinate. A run
/// replaces the incumbent only if it gains more than `min_gain` nats, so a
/// start that is already optimal is returned unchanged.
fn beta_prime_mle(data: &[f64], init: BetaPrime, config: &FitConfig) -> (BetaPrime, bool) {
    let objective = BpObjective::new(data);
    let f = |t: &[f64]| objective.eval(t);
    let opts = NelderMeadOptions {
        max_iterations: config.max_iterations,
        f_tol: config.convergence_tol,
        ..NelderMeadOptions::default()
    };

    let mut best_theta = to_theta(&init);
    let mut best_f = f(&best_theta);
    let mut best_converged = false;
    let mut accept = |theta: Vec<f64>, fx: f64, converged: bool, best_theta: &mut Vec<f64>, best_f: &mut f64| {
        let margin = (config.convergence_tol * best_f.abs()).max(config.min_gain);
        if fx < *best_f - margin || !best_f.is_finite() {
            *best_theta = theta;
            *best_f = fx;
            best_converged = converged;
        } else if fx <= *best_f {
            // No significant move: the incumbent is confirmed.
            best_converged |= converged;
        }
    };

    let first = nelder_mead(f, &best_theta, &opts);
    accept(first.x, first.f, first.converged, &mut best_theta, &mut best_f);

    let restart_opts = NelderMeadOptions {
        initial_step: 1.2f64.ln(),
        ..opts
    };
    for r in 0..config.restarts {
        let start: Vec<f64> = best_theta
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let factor = if (r + j) % 2 == 0 { 1.2f64 } else { 0.8 };
                t + factor.ln()
            })
            .collect();
        let run = nelder_mead(f, &start, &restart_opts);
        accept(run.x, run.f, run.converged, &mut best_theta, &mut best_f);
    }

    match from_theta(&best_theta) {
        Some(bp) => (bp, best_converged && best_f.is_finite()),
        None => (init, false),
    }
}
