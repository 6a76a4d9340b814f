//! Distribution fitting for realized-to-implied variance ratios.
//!
//! The pipeline: daily closes and volatility-index levels ([`ingest`]) are
//! turned into realized and implied variance series and aligned ratio series
//! ([`volatility`]); each series is fitted by seven candidate families
//! ([`distributions`], [`fitting`]) and the fits are ranked by their
//! Kolmogorov–Smirnov distance ([`gof`]). [`report`] packages the results as
//! tables, histograms and fitted-density curves.

// NaN-rejecting `!(x > 0.0)` guards are intentional; coefficients keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod distributions;
pub mod error;
pub mod fitting;
pub mod gof;
pub mod ingest;
pub mod optimize;
pub mod report;
pub mod special;
pub mod volatility;

pub use distributions::{
    BetaPrime, Continuous, Distribution, Family, Gamma, InverseGamma, InverseGaussian, LogNormal, Normal, Weibull,
};
pub use error::{Error, Result};
pub use fitting::{bp_moment_init, fit_all, fit_mle, fit_mle_seeded, neg_loglik, FitConfig, FitResult};
pub use gof::{ks_one_sample, ks_two_sample, pearson, KsStat};
pub use ingest::{Manifest, VolIndex};
pub use report::{FitOptions, ReportBundle};
pub use volatility::{RatioMode, Rescale, VolConfig, WindowStep};

pub use chrono::NaiveDate;
