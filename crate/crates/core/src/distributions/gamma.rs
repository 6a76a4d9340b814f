use rand::Rng;

use super::sampling::{positive, standard_gamma};
use super::{check_positive, Continuous};
use crate::error::Result;
use crate::special::{inc_gamma_pq, ln_gamma};

/// Gamma with shape `k` and scale `theta`: density ∝ x^(k-1) e^(-x/theta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma {
    shape: f64,
    scale: f64,
}

impl Gamma {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        check_positive("shape", shape)?;
        check_positive("scale", scale)?;
        Ok(Self { shape, scale })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `1/X ~ IGa(k, 1/theta)`.
    pub fn reciprocal(&self) -> InverseGamma {
        InverseGamma {
            alpha: self.shape,
            beta: 1.0 / self.scale,
        }
    }
}

impl Continuous for Gamma {
    fn ln_pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        (self.shape - 1.0) * x.ln() - x / self.scale - ln_gamma(self.shape) - self.shape * self.scale.ln()
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        inc_gamma_pq(self.shape, x / self.scale).0
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        positive(rng, |r| self.scale * standard_gamma(r, self.shape))
    }

    fn mean(&self) -> Option<f64> {
        Some(self.shape * self.scale)
    }

    fn variance(&self) -> Option<f64> {
        Some(self.shape * self.scale * self.scale)
    }
}

/// Inverse gamma with shape `alpha` and scale `beta`:
/// density ∝ x^(-alpha-1) e^(-beta/x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseGamma {
    alpha: f64,
    beta: f64,
}

impl InverseGamma {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `1/X ~ Gamma(alpha, 1/beta)`.
    pub fn reciprocal(&self) -> Gamma {
        Gamma {
            shape: self.alpha,
            scale: 1.0 / self.beta,
        }
    }
}

impl Continuous for InverseGamma {
    fn ln_pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.alpha * self.beta.ln() - ln_gamma(self.alpha) - (self.alpha + 1.0) * x.ln() - self.beta / x
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        inc_gamma_pq(self.alpha, self.beta / x).1
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        positive(rng, |r| self.beta / standard_gamma(r, self.alpha))
    }

    fn mean(&self) -> Option<f64> {
        (self.alpha > 1.0).then(|| self.beta / (self.alpha - 1.0))
    }

    fn variance(&self) -> Option<f64> {
        (self.alpha > 2.0).then(|| {
            let am1 = self.alpha - 1.0;
            self.beta * self.beta / (am1 * am1 * (self.alpha - 2.0))
        })
    }
}
