//! Realized variance from daily closes, implied variance from volatility
//! index levels, and the aligned ratio series built from them.
//!
//! Returns are dated by the close they end on: `r_t = ln(C_t / C_{t-1})`.
//! With horizon `h`, the *next* window of anchor `t` holds `r_{t+1} ..= r_{t+h}`
//! and the *previous* window holds `r_{t-h+1} ..= r_t`, so the next window of
//! `t` is exactly the previous window of `t + h`.

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::distributions::seeded_rng;
use crate::error::{domain, Error, Result};

/// Strictly increasing dates with strictly positive finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

/// Daily closes of the underlying index.
pub type PriceSeries = DailySeries;
/// Daily levels of a volatility index, in annualized percent.
pub type IndexSeries = DailySeries;

impl DailySeries {
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(domain(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(domain(format!("dates not strictly increasing at {}", w[1])));
        }
        if let Some((d, v)) = dates.iter().zip(&values).find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::DataQuality(format!("non-positive value {v} on {d}")));
        }
        Ok(Self { dates, values })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    /// Points with `from <= date <= to`.
    pub fn between(&self, from: NaiveDate, to: NaiveDate) -> DailySeries {
        let (dates, values) = self
            .dates
            .iter()
            .zip(&self.values)
            .filter(|(d, _)| **d >= from && **d <= to)
            .map(|(d, v)| (*d, *v))
            .unzip();
        DailySeries { dates, values }
    }

    /// Keeps the points whose date is in `keep` (which must be sorted).
    pub(crate) fn restricted_to(&self, keep: &[NaiveDate]) -> DailySeries {
        let (dates, values) = self
            .dates
            .iter()
            .zip(&self.values)
            .filter(|(d, _)| keep.binary_search(d).is_ok())
            .map(|(d, v)| (*d, *v))
            .unzip();
        DailySeries { dates, values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rescale {
    None,
    /// Multiply each realized variance by
    /// `window_trading_days * (365 / annualization) / window_calendar_days`.
    Calendar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowStep {
    /// One window per trading date.
    Rolling,
    /// Non-overlapping windows, one anchor every `horizon` trading days.
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolConfig {
    /// Trading days per "month".
    pub horizon: usize,
    /// Trading days per year.
    pub annualization: f64,
    pub rescale: Rescale,
    pub step: WindowStep,
}

impl Default for VolConfig {
    fn default() -> Self {
        Self {
            horizon: 21,
            annualization: 252.0,
            rescale: Rescale::Calendar,
            step: WindowStep::Rolling,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// The `horizon` returns after the anchor (the month an index predicts).
    Next,
    /// The `horizon` returns up to and including the anchor.
    Previous,
}

/// Annualized realized variance per anchor date.
#[derive(Debug, Clone, PartialEq)]
pub struct RvSeries {
    pub dates: Vec<NaiveDate>,
    pub rv2: Vec<f64>,
    pub window: Window,
    pub window_trading_days: usize,
    pub window_calendar_days: Vec<u32>,
}

/// `ln(C_t / C_{t-1})`, one shorter than the price series.
pub fn log_returns(prices: &PriceSeries) -> Result<Vec<f64>> {
    if prices.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: prices.len(),
        });
    }
    Ok(prices.values().windows(2).map(|w| (w[1] / w[0]).ln()).collect())
}

/// `window_trading_days * (365 / annualization) / window_calendar_days`.
pub fn trading_day_rescale_factor(window_calendar_days: f64, window_trading_days: usize, annualization: f64) -> f64 {
    window_trading_days as f64 * (365.0 / annualization) / window_calendar_days
}

/// Applies [`trading_day_rescale_factor`] to one realized variance.
pub fn trading_day_rescale(rv2: f64, window_calendar_days: f64, window_trading_days: usize, annualization: f64) -> f64 {
    rv2 * trading_day_rescale_factor(window_calendar_days, window_trading_days, annualization)
}

/// First and last price index of the window around anchor `t`, or `None`
/// when the window runs off the series.
fn window_bounds(t: usize, n_prices: usize, h: usize, window: Window) -> Option<(usize, usize)> {
    match window {
        Window::Next => (t + h < n_prices).then_some((t, t + h)),
        Window::Previous => (t >= h && t < n_prices).then(|| (t - h, t)),
    }
}

/// Realized variance of the window anchored at `prices.dates()[anchor]`:
/// `(annualization / h) * Σ r²` over the window's `h` returns, optionally
/// rescaled for the window's calendar length.
pub fn realized_variance(prices: &PriceSeries, anchor: usize, window: Window, cfg: &VolConfig) -> Result<f64> {
    let h = cfg.horizon;
    if h == 0 {
        return Err(domain("horizon must be at least one trading day"));
    }
    let (start, end) = window_bounds(anchor, prices.len(), h, window).ok_or_else(|| {
        Error::InsufficientWindow(format!(
            "{window:?} window of {h} returns at index {anchor} needs prices beyond the {} available",
            prices.len()
        ))
    })?;
    let closes = prices.values();
    let sum_sq: f64 = (start + 1..=end).map(|i| (closes[i] / closes[i - 1]).ln().powi(2)).sum();
    let rv2 = cfg.annualization / h as f64 * sum_sq;
    Ok(match cfg.rescale {
        Rescale::None => rv2,
        Rescale::Calendar => {
            let days = calendar_days(prices.dates(), start, end);
            trading_day_rescale(rv2, f64::from(days), h, cfg.annualization)
        }
    })
}

fn calendar_days(dates: &[NaiveDate], start: usize, end: usize) -> u32 {
    (dates[end] - dates[start]).num_days().max(1) as u32
}

/// Realized variance at every anchor with a full window (every `horizon`-th
/// anchor under [`WindowStep::Disjoint`]).
pub fn realized_variance_series(prices: &PriceSeries, window: Window, cfg: &VolConfig) -> Result<RvSeries> {
    let h = cfg.horizon;
    if h == 0 {
        return Err(domain("horizon must be at least one trading day"));
    }
    if prices.len() <= h {
        return Err(Error::InsufficientWindow(format!(
            "{} prices cannot hold a {h}-return window",
            prices.len()
        )));
    }
    let anchors: Vec<usize> = match window {
        Window::Next => (0..prices.len() - h).collect(),
        Window::Previous => (h..prices.len()).collect(),
    };
    let anchors: Vec<usize> = match cfg.step {
        WindowStep::Rolling => anchors,
        WindowStep::Disjoint => anchors.into_iter().step_by(h).collect(),
    };
    let mut out = RvSeries {
        dates: Vec::with_capacity(anchors.len()),
        rv2: Vec::with_capacity(anchors.len()),
        window,
        window_trading_days: h,
        window_calendar_days: Vec::with_capacity(anchors.len()),
    };
    for t in anchors {
        let (start, end) = window_bounds(t, prices.len(), h, window).expect("anchor range checked");
        out.dates.push(prices.dates()[t]);
        out.rv2.push(realized_variance(prices, t, window, cfg)?);
        out.window_calendar_days.push(calendar_days(prices.dates(), start, end));
    }
    Ok(out)
}

/// Squared index level as annualized decimal variance: `(level / 100)²`.
pub fn implied_variance(index: &IndexSeries) -> DailySeries {
    DailySeries {
        dates: index.dates().to_vec(),
        values: index.values().iter().map(|v| (v / 100.0).powi(2)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioMode {
    /// Next-window RV² over same-date IV².
    Predicted,
    /// Previous-window RV² over same-date IV².
    Preceding,
    /// Next-window RV² over previous-window RV².
    #[serde(rename = "adjacent")]
    AdjacentRv,
    /// Previous-window RV² at shuffled anchors over IV².
    #[serde(rename = "random")]
    RandomPairing,
}

impl RatioMode {
    /// Unit-mean scaling applies to ratios against implied variance; the
    /// RV-over-RV ratio is left in natural units.
    pub fn default_scaling(self) -> bool {
        !matches!(self, RatioMode::AdjacentRv)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    pub dates: Vec<NaiveDate>,
    pub values: Vec<f64>,
    pub mode: RatioMode,
    pub scaled_to_unit_mean: bool,
}

/// Inputs shared by all ratio modes.
#[derive(Debug, Clone, Copy)]
pub struct RatioInputs<'a> {
    pub next_rv: &'a RvSeries,
    pub prev_rv: &'a RvSeries,
    pub implied: &'a DailySeries,
}

/// Indices `(i, j)` with `a[i] == b[j]`, in date order.
fn matching_dates(a: &[NaiveDate], b: &[NaiveDate]) -> Vec<(usize, usize)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((i, j));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn pair_up(
    num_dates: &[NaiveDate],
    num: &[f64],
    den_dates: &[NaiveDate],
    den: &[f64],
) -> Result<(Vec<NaiveDate>, Vec<f64>, Vec<f64>)> {
    let pairs = matching_dates(num_dates, den_dates);
    if pairs.is_empty() {
        return Err(Error::Alignment(
            "numerator and denominator share no dates".into(),
        ));
    }
    let dropped = num_dates.len() + den_dates.len() - 2 * pairs.len();
    if dropped > 0 {
        log::info!("ratio alignment dropped {dropped} unmatched points");
    }
    let dates = pairs.iter().map(|&(i, _)| num_dates[i]).collect();
    let n = pairs.iter().map(|&(i, _)| num[i]).collect();
    let d = pairs.iter().map(|&(_, j)| den[j]).collect();
    Ok((dates, n, d))
}

fn unit_mean(values: &mut [f64]) {
    let m = values.iter().sum::<f64>() / values.len() as f64;
    for v in values.iter_mut() {
        *v /= m;
    }
}

/// Seeded uniform permutation (Fisher–Yates).
pub fn shuffled(values: &[f64], seed: u64) -> Vec<f64> {
    let mut out = values.to_vec();
    out.shuffle(&mut seeded_rng(seed));
    out
}

/// Builds the ratio series for `mode` on the dates common to its numerator
/// and denominator. With `scale`, the series is divided by its mean.
pub fn build_ratio_series(inputs: RatioInputs<'_>, mode: RatioMode, scale: bool, seed: u64) -> Result<RatioSeries> {
    let iv = inputs.implied;
    let (dates, num, den) = match mode {
        RatioMode::Predicted => pair_up(&inputs.next_rv.dates, &inputs.next_rv.rv2, iv.dates(), iv.values())?,
        RatioMode::Preceding => pair_up(&inputs.prev_rv.dates, &inputs.prev_rv.rv2, iv.dates(), iv.values())?,
        RatioMode::AdjacentRv => pair_up(
            &inputs.next_rv.dates,
            &inputs.next_rv.rv2,
            &inputs.prev_rv.dates,
            &inputs.prev_rv.rv2,
        )?,
        RatioMode::RandomPairing => {
            let (dates, num, den) =
                pair_up(&inputs.prev_rv.dates, &inputs.prev_rv.rv2, iv.dates(), iv.values())?;
            (dates, shuffled(&num, seed), den)
        }
    };
    ratio_from_parts(dates, &num, &den, mode, scale)
}

pub(crate) fn ratio_from_parts(
    dates: Vec<NaiveDate>,
    num: &[f64],
    den: &[f64],
    mode: RatioMode,
    scale: bool,
) -> Result<RatioSeries> {
    let mut values = Vec::with_capacity(num.len());
    for ((d, a), b) in dates.iter().zip(num).zip(den) {
        let r = a / b;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::DataQuality(format!(
                "ratio {a} / {b} on {d} is not strictly positive; zero-variance window"
            )));
        }
        values.push(r);
    }
    if scale {
        unit_mean(&mut values);
    }
    Ok(RatioSeries {
        dates,
        values,
        mode,
        scaled_to_unit_mean: scale,
    })
}

/// Pointwise reciprocal; unit-mean scaling is re-applied when the input
/// carried it.
pub fn invert_series(r: &RatioSeries) -> RatioSeries {
    let mut values: Vec<f64> = r.values.iter().map(|v| 1.0 / v).collect();
    if r.scaled_to_unit_mean {
        unit_mean(&mut values);
    }
    RatioSeries {
        dates: r.dates.clone(),
        values,
        mode: r.mode,
        scaled_to_unit_mean: r.scaled_to_unit_mean,
    }
}
