use rand::Rng;

use super::sampling::{positive, standard_gamma};
use super::{check_positive, Continuous};
use crate::error::Result;
use crate::special::{ln_beta, reg_inc_beta_zw, BETA_CF_MAX_ITER};

/// Beta prime law with shapes `p`, `q` and scale `beta`:
///
/// ```text
/// f(x) = (x/β)^(p-1) (1 + x/β)^(-p-q) / (β B(p, q))
/// ```
///
/// Power law `x^(p-1)` below the scale and tail `x^(-q-1)` above it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPrime {
    p: f64,
    q: f64,
    beta: f64,
}

impl BetaPrime {
    pub fn new(p: f64, q: f64, beta: f64) -> Result<Self> {
        check_positive("p", p)?;
        check_positive("q", q)?;
        check_positive("beta", beta)?;
        Ok(Self { p, q, beta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Exponents of the small-x power law and of the tail: `(p - 1, -q - 1)`.
    pub fn tail_exponents(&self) -> (f64, f64) {
        (self.p - 1.0, -self.q - 1.0)
    }

    /// Exact law of `1/X`: `BP(q, p, 1/beta)`.
    pub fn reciprocal(&self) -> BetaPrime {
        BetaPrime {
            p: self.q,
            q: self.p,
            beta: 1.0 / self.beta,
        }
    }
}

impl Continuous for BetaPrime {
    fn ln_pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let t = x / self.beta;
        (self.p - 1.0) * t.ln() - (self.p + self.q) * t.ln_1p() - self.beta.ln() - ln_beta(self.p, self.q)
    }

    /// `I_{x/(x+β)}(p, q)`.
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return 1.0;
        }
        let z = x / (x + self.beta);
        let w = self.beta / (x + self.beta);
        // Shapes far outside the fitted range need more than the default
        // iteration budget; the CDF itself must stay total.
        reg_inc_beta_zw(self.p, self.q, z, w, BETA_CF_MAX_ITER)
            .or_else(|_| reg_inc_beta_zw(self.p, self.q, z, w, 1_000_000))
            .unwrap_or(f64::NAN)
    }

    /// `beta * G_p / G_q` with independent standard gamma variates.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        positive(rng, |r| {
            let gp = standard_gamma(r, self.p);
            let gq = standard_gamma(r, self.q);
            self.beta * gp / gq
        })
    }

    fn mean(&self) -> Option<f64> {
        (self.q > 1.0).then(|| self.beta * self.p / (self.q - 1.0))
    }

    fn variance(&self) -> Option<f64> {
        (self.q > 2.0).then(|| {
            let qm1 = self.q - 1.0;
            self.beta * self.beta * self.p * (self.p + self.q - 1.0) / ((self.q - 2.0) * qm1 * qm1)
        })
    }
}
