use rand::Rng;

use super::sampling::{open01, positive, standard_normal};
use super::{check_positive, Continuous};
use crate::error::Result;
use crate::special::{ln_norm_cdf, norm_cdf};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Inverse Gaussian (Wald) with mean `mu` and shape `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseGaussian {
    mu: f64,
    lambda: f64,
}

impl InverseGaussian {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("lambda", lambda)?;
        Ok(Self { mu, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Continuous for InverseGaussian {
    fn ln_pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let d = x - self.mu;
        0.5 * (self.lambda.ln() - LN_2PI - 3.0 * x.ln())
            - self.lambda * d * d / (2.0 * self.mu * self.mu * x)
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return 1.0;
        }
        let s = (self.lambda / x).sqrt();
        let first = norm_cdf(s * (x / self.mu - 1.0));
        // exp(2 lambda / mu) overflows long before the product does.
        let second = (2.0 * self.lambda / self.mu + ln_norm_cdf(-s * (x / self.mu + 1.0))).exp();
        (first + second).clamp(0.0, 1.0)
    }

    /// Michael–Schucany–Haas transformation with one rejection step.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        positive(rng, |r| {
            let nu = standard_normal(r);
            let a = self.mu * nu * nu / (2.0 * self.lambda);
            // smaller root of the quadratic, written without cancellation
            let x = self.mu / (1.0 + a + (a * (2.0 + a)).sqrt());
            if open01(r) <= self.mu / (self.mu + x) {
                x
            } else {
                self.mu * self.mu / x
            }
        })
    }

    fn mean(&self) -> Option<f64> {
        Some(self.mu)
    }

    fn variance(&self) -> Option<f64> {
        Some(self.mu.powi(3) / self.lambda)
    }
}
