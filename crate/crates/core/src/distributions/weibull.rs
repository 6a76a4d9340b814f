use rand::Rng;

use super::sampling::{open01, positive};
use super::{check_positive, Continuous};
use crate::error::Result;
use crate::special::ln_gamma;

/// Weibull with shape `k` and scale `lambda`: F(x) = 1 - exp(-(x/lambda)^k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weibull {
    shape: f64,
    scale: f64,
}

impl Weibull {
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
}

impl Continuous for Weibull {
    fn ln_pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let lz = (x / self.scale).ln();
        (self.shape / self.scale).ln() + (self.shape - 1.0) * lz - (self.shape * lz).exp()
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        -(-(x / self.scale).powf(self.shape)).exp_m1()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        positive(rng, |r| self.scale * (-open01(r).ln()).powf(1.0 / self.shape))
    }

    fn mean(&self) -> Option<f64> {
        Some(self.scale * ln_gamma(1.0 + 1.0 / self.shape).exp())
    }

    fn variance(&self) -> Option<f64> {
        let g1 = ln_gamma(1.0 + 1.0 / self.shape).exp();
        let g2 = ln_gamma(1.0 + 2.0 / self.shape).exp();
        Some(self.scale * self.scale * (g2 - g1 * g1))
    }
}
