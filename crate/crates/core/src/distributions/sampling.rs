use rand::Rng;
use rand_distr::StandardNormal;

pub(crate) fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Uniform on the open interval (0, 1).
pub(crate) fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Standard gamma variate (unit scale) by the Marsaglia–Tsang squeeze.
/// Shapes below one are boosted: `G(k) = G(k + 1) * U^(1/k)`.
pub(crate) fn standard_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape < 1.0 {
        let boost = open01(rng).powf(1.0 / shape);
        return standard_gamma(rng, shape + 1.0) * boost;
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = standard_normal(rng);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = open01(rng);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Draws from `draw` until the value is strictly positive and finite.
/// Extreme shapes can underflow a gamma variate to zero.
pub(crate) fn positive<R: Rng + ?Sized>(rng: &mut R, mut draw: impl FnMut(&mut R) -> f64) -> f64 {
    loop {
        let x = draw(rng);
        if x > 0.0 && x.is_finite() {
            return x;
        }
    }
}
