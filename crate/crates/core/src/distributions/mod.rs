//! The seven candidate laws for variance-ratio data.
//!
//! Every family exposes a log-density, density, CDF, seeded sampler and its
//! first two moments where they exist. Densities are evaluated in log space;
//! positive-support families return `-inf` log-density and zero CDF for
//! `x <= 0`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

mod beta_prime;
mod gamma;
mod inverse_gaussian;
mod lognormal;
mod normal;
pub(crate) mod sampling;
mod weibull;

pub use beta_prime::BetaPrime;
pub use gamma::{Gamma, InverseGamma};
pub use inverse_gaussian::InverseGaussian;
pub use lognormal::LogNormal;
pub use normal::Normal;
pub use weibull::Weibull;

/// Seeded generator used by every sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub trait Continuous {
    fn ln_pdf(&self, x: f64) -> f64;

    fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    fn cdf(&self, x: f64) -> f64;

    /// One variate from the caller's generator.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64;

    /// `n` i.i.d. variates from a private generator seeded with `seed`.
    fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = seeded_rng(seed);
        (0..n).map(|_| self.draw(&mut rng)).collect()
    }

    fn mean(&self) -> Option<f64>;

    fn variance(&self) -> Option<f64>;
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {v}")))
    }
}

pub(crate) fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

/// Family tag. Declaration order is the row order of the report tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Normal,
    LogNormal,
    InverseGamma,
    Gamma,
    Weibull,
    InverseGaussian,
    BetaPrime,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Normal,
        Family::LogNormal,
        Family::InverseGamma,
        Family::Gamma,
        Family::Weibull,
        Family::InverseGaussian,
        Family::BetaPrime,
    ];

    /// Row label used in the text tables.
    pub fn label(self) -> &'static str {
        match self {
            Family::Normal => "Normal",
            Family::LogNormal => "LogNormal",
            Family::InverseGamma => "IGa",
            Family::Gamma => "Gamma",
            Family::Weibull => "Weibull",
            Family::InverseGaussian => "IG",
            Family::BetaPrime => "BP",
        }
    }

    /// Short constructor-style prefix, e.g. `BP(p, q, beta)`.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Normal => "N",
            Family::LogNormal => "LN",
            Family::InverseGamma => "IGa",
            Family::Gamma => "Gamma",
            Family::Weibull => "Weibul",
            Family::InverseGaussian => "IG",
            Family::BetaPrime => "BP",
        }
    }

    pub fn n_params(self) -> usize {
        match self {
            Family::BetaPrime => 3,
            _ => 2,
        }
    }

    pub fn positive_support(self) -> bool {
        self != Family::Normal
    }

    /// Parameter names in storage order (the order of [`Distribution::params`]).
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Normal | Family::LogNormal => &["mu", "sigma"],
            Family::InverseGamma => &["alpha", "beta"],
            Family::Gamma => &["k", "theta"],
            Family::Weibull => &["shape", "scale"],
            Family::InverseGaussian => &["mu", "lambda"],
            Family::BetaPrime => &["p", "q", "beta"],
        }
    }

    /// Parameter names in report order; Weibull is printed as (scale, shape).
    pub fn display_param_names(self) -> &'static [&'static str] {
        match self {
            Family::Weibull => &["scale", "shape"],
            f => f.param_names(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fam = match s.to_ascii_lowercase().as_str() {
            "normal" | "n" => Family::Normal,
            "lognormal" | "ln" => Family::LogNormal,
            "iga" | "invgamma" | "inversegamma" => Family::InverseGamma,
            "gamma" | "ga" => Family::Gamma,
            "weibull" | "weibul" => Family::Weibull,
            "ig" | "invgauss" | "inversegaussian" => Family::InverseGaussian,
            "bp" | "betaprime" => Family::BetaPrime,
            other => return Err(domain(format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }
}

/// A family together with a valid parameter record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Normal(Normal),
    LogNormal(LogNormal),
    InverseGamma(InverseGamma),
    Gamma(Gamma),
    Weibull(Weibull),
    InverseGaussian(InverseGaussian),
    BetaPrime(BetaPrime),
}

macro_rules! dispatch {
    ($self:expr, $d:ident => $body:expr) => {
        match $self {
            Distribution::Normal($d) => $body,
            Distribution::LogNormal($d) => $body,
            Distribution::InverseGamma($d) => $body,
            Distribution::Gamma($d) => $body,
            Distribution::Weibull($d) => $body,
            Distribution::InverseGaussian($d) => $body,
            Distribution::BetaPrime($d) => $body,
        }
    };
}

impl Distribution {
    pub fn family(&self) -> Family {
        match self {
            Distribution::Normal(_) => Family::Normal,
            Distribution::LogNormal(_) => Family::LogNormal,
            Distribution::InverseGamma(_) => Family::InverseGamma,
            Distribution::Gamma(_) => Family::Gamma,
            Distribution::Weibull(_) => Family::Weibull,
            Distribution::InverseGaussian(_) => Family::InverseGaussian,
            Distribution::BetaPrime(_) => Family::BetaPrime,
        }
    }

    /// Builds a distribution from parameters in storage order
    /// (see [`Family::param_names`]).
    pub fn from_params(family: Family, params: &[f64]) -> Result<Self> {
        if params.len() != family.n_params() {
            return Err(domain(format!(
                "{family} takes {} parameters, got {}",
                family.n_params(),
                params.len()
            )));
        }
        let p = params;
        Ok(match family {
            Family::Normal => Distribution::Normal(Normal::new(p[0], p[1])?),
            Family::LogNormal => Distribution::LogNormal(LogNormal::new(p[0], p[1])?),
            Family::InverseGamma => Distribution::InverseGamma(InverseGamma::new(p[0], p[1])?),
            Family::Gamma => Distribution::Gamma(Gamma::new(p[0], p[1])?),
            Family::Weibull => Distribution::Weibull(Weibull::new(p[0], p[1])?),
            Family::InverseGaussian => {
                Distribution::InverseGaussian(InverseGaussian::new(p[0], p[1])?)
            }
            Family::BetaPrime => Distribution::BetaPrime(BetaPrime::new(p[0], p[1], p[2])?),
        })
    }

    /// Parameters in storage order.
    pub fn params(&self) -> Vec<f64> {
        match self {
            Distribution::Normal(d) => vec![d.mu(), d.sigma()],
            Distribution::LogNormal(d) => vec![d.mu(), d.sigma()],
            Distribution::InverseGamma(d) => vec![d.alpha(), d.beta()],
            Distribution::Gamma(d) => vec![d.shape(), d.scale()],
            Distribution::Weibull(d) => vec![d.shape(), d.scale()],
            Distribution::InverseGaussian(d) => vec![d.mu(), d.lambda()],
            Distribution::BetaPrime(d) => vec![d.p(), d.q(), d.beta()],
        }
    }

    /// Parameters in report order (see [`Family::display_param_names`]).
    pub fn display_params(&self) -> Vec<f64> {
        let mut p = self.params();
        if self.family() == Family::Weibull {
            p.swap(0, 1);
        }
        p
    }

    /// Law of `1 / X`, for the families closed under reciprocals
    /// (LogNormal, BetaPrime, and the Gamma/InverseGamma pair).
    pub fn reciprocal(&self) -> Option<Distribution> {
        match self {
            Distribution::LogNormal(d) => Some(Distribution::LogNormal(d.reciprocal())),
            Distribution::BetaPrime(d) => Some(Distribution::BetaPrime(d.reciprocal())),
            Distribution::Gamma(d) => Some(Distribution::InverseGamma(d.reciprocal())),
            Distribution::InverseGamma(d) => Some(Distribution::Gamma(d.reciprocal())),
            _ => None,
        }
    }

    /// Law of `c * X` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Distribution> {
        check_positive("scale factor", c)?;
        Ok(match self {
            Distribution::Normal(d) => Distribution::Normal(Normal::new(c * d.mu(), c * d.sigma())?),
            Distribution::LogNormal(d) => {
                Distribution::LogNormal(LogNormal::new(d.mu() + c.ln(), d.sigma())?)
            }
            Distribution::InverseGamma(d) => {
                Distribution::InverseGamma(InverseGamma::new(d.alpha(), c * d.beta())?)
            }
            Distribution::Gamma(d) => Distribution::Gamma(Gamma::new(d.shape(), c * d.scale())?),
            Distribution::Weibull(d) => {
                Distribution::Weibull(Weibull::new(d.shape(), c * d.scale())?)
            }
            Distribution::InverseGaussian(d) => {
                Distribution::InverseGaussian(InverseGaussian::new(c * d.mu(), c * d.lambda())?)
            }
            Distribution::BetaPrime(d) => {
                Distribution::BetaPrime(BetaPrime::new(d.p(), d.q(), c * d.beta())?)
            }
        })
    }

    /// Quantile by bracketing and bisection on the CDF.
    pub fn quantile(&self, prob: f64) -> Result<f64> {
        if !(prob > 0.0 && prob < 1.0) {
            return Err(domain(format!("probability must lie in (0, 1), got {prob}")));
        }
        let (mut lo, mut hi) = if self.family().positive_support() {
            (0.0, 1.0)
        } else {
            (-1.0, 1.0)
        };
        while self.cdf(hi) < prob {
            hi = if hi > 0.0 { hi * 2.0 } else { 1.0 };
        }
        while !self.family().positive_support() && self.cdf(lo) > prob {
            lo *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) < prob {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl Continuous for Distribution {
    fn ln_pdf(&self, x: f64) -> f64 {
        dispatch!(self, d => d.ln_pdf(x))
    }

    fn cdf(&self, x: f64) -> f64 {
        dispatch!(self, d => d.cdf(x))
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        dispatch!(self, d => d.draw(rng))
    }

    fn mean(&self) -> Option<f64> {
        dispatch!(self, d => d.mean())
    }

    fn variance(&self) -> Option<f64> {
        dispatch!(self, d => d.variance())
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self
            .display_params()
            .iter()
            .map(|v| format!("{v:.4}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{}({params})", self.family().symbol())
    }
}

macro_rules! impl_from {
    ($($t:ident),*) => {
        $(impl From<$t> for Distribution {
            fn from(d: $t) -> Self {
                Distribution::$t(d)
            }
        })*
    };
}
impl_from!(Normal, LogNormal, InverseGamma, Gamma, Weibull, InverseGaussian, BetaPrime);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_round_trip_through_labels() {
        for fam in Family::ALL {
            assert_eq!(fam.label().parse::<Family>().unwrap(), fam);
        }
        assert!("cauchy".parse::<Family>().is_err());
    }

    #[test]
    fn from_params_checks_arity_and_values() {
        assert!(Distribution::from_params(Family::BetaPrime, &[1.0, 2.0]).is_err());
        assert!(Distribution::from_params(Family::Gamma, &[1.0, -2.0]).is_err());
        let d = Distribution::from_params(Family::Weibull, &[1.4009, 1.1124]).unwrap();
        assert_eq!(d.params(), vec![1.4009, 1.1124]);
        assert_eq!(d.to_string(), "Weibul(1.1124, 1.4009)");
        assert_eq!(d.display_params(), vec![1.1124, 1.4009]);
    }

    #[test]
    fn quantile_inverts_cdf() {
        let d: Distribution = Gamma::new(2.6219, 0.3814).unwrap().into();
        for &u in &[0.01, 0.25, 0.5, 0.9, 0.999] {
            let x = d.quantile(u).unwrap();
            assert!((d.cdf(x) - u).abs() < 1e-12);
        }
        let n: Distribution = Normal::new(1.0, 0.9067).unwrap().into();
        assert!((n.quantile(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(n.quantile(0.0).is_err());
    }

    #[test]
    fn lognormal_median_from_table_parameters() {
        let d: Distribution = LogNormal::new(-0.2027, 0.5867).unwrap().into();
        let median = d.quantile(0.5).unwrap();
        assert!((median - (-0.2027f64).exp()).abs() < 1e-12);
        assert!((median - 0.8165).abs() < 1e-4);
    }

    #[test]
    fn scaling_moves_the_law() {
        let c = 2.5;
        for d in [
            Distribution::from_params(Family::Gamma, &[2.0, 0.5]).unwrap(),
            Distribution::from_params(Family::InverseGaussian, &[1.0, 2.3]).unwrap(),
            Distribution::from_params(Family::BetaPrime, &[5.0, 3.0, 0.6]).unwrap(),
            Distribution::from_params(Family::LogNormal, &[-0.2, 0.6]).unwrap(),
        ] {
            let s = d.scaled(c).unwrap();
            for &x in &[0.3, 1.0, 2.0] {
                assert!((s.cdf(c * x) - d.cdf(x)).abs() < 1e-13, "{d}");
            }
        }
    }
}
