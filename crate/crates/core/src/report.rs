//! Report assembly and rendering.
//!
//! A fit report holds the seven-family table for a ratio series and for its
//! reciprocal, a density histogram of one side and the fitted densities on a
//! grid over the histogram's range. Correlation and two-sample KS matrices
//! share the [`Matrix`] type. Every renderer is deterministic: the same
//! inputs and seed give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use chrono::NaiveDate;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::distributions::{Continuous, Distribution, Family};
use crate::error::{domain, Error, Result};
use crate::fitting::{fit_all, FitConfig, FitResult};
use crate::gof::{ks_two_sample, pearson};
use crate::ingest::{write_sample_csv, MarketData, VolIndex};
use crate::volatility::{
    build_ratio_series, implied_variance, invert_series, ratio_from_parts, realized_variance_series, shuffled,
    RatioInputs, RatioMode, RatioSeries, RvSeries, VolConfig, Window,
};

pub const MAX_BINS: usize = 200;
pub const CURVE_POINTS: usize = 401;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// `bins + 1` increasing edges.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    /// `count / (n * width)` per bin.
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// `Σ density * width`; one up to rounding.
    pub fn integral(&self) -> f64 {
        self.densities
            .iter()
            .zip(self.edges.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum()
    }
}

/// Linear-interpolation quantile of sorted data.
fn sorted_quantile(sorted: &[f64], prob: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * prob;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Freedman–Diaconis bin count, `ceil(range / (2 IQR n^{-1/3}))`, capped at
/// [`MAX_BINS`]. Falls back to Sturges when the IQR vanishes.
pub fn freedman_diaconis_bins(sorted: &[f64]) -> usize {
    let n = sorted.len();
    let range = sorted[n - 1] - sorted[0];
    if n < 2 || !(range > 0.0) {
        return 1;
    }
    let iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    let bins = if iqr > 0.0 {
        let width = 2.0 * iqr / (n as f64).cbrt();
        (range / width).ceil()
    } else {
        (n as f64).log2().ceil() + 1.0
    };
    (bins as usize).clamp(1, MAX_BINS)
}

/// Equal-width density histogram over `[min, max]`.
pub fn histogram(data: &[f64]) -> Result<Histogram> {
    if data.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(domain("histogram data must be finite"));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let bins = freedman_diaconis_bins(&sorted);
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
    edges.push(hi);
    let mut counts = vec![0usize; bins];
    for &x in data {
        let i = (((x - lo) / width).floor() as usize).min(bins - 1);
        counts[i] += 1;
    }
    let n = data.len() as f64;
    let densities = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, e)| c as f64 / (n * (e[1] - e[0])))
        .collect();
    Ok(Histogram {
        edges,
        counts,
        densities,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub family: Family,
    pub x: Vec<f64>,
    pub pdf: Vec<f64>,
}

/// Evenly spaced grid over `[lo, hi]` with `points` nodes.
pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

pub fn fitted_curves(dists: &[Distribution], x: &[f64]) -> Vec<Curve> {
    dists
        .iter()
        .map(|d| Curve {
            family: d.family(),
            x: x.to_vec(),
            pdf: x.iter().map(|&v| d.pdf(v)).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub family: Family,
    pub label: &'static str,
    pub param_names: &'static [&'static str],
    /// Report order (Weibull as scale, shape); empty when the fit failed.
    pub params: Vec<f64>,
    pub ks: Option<f64>,
    pub loglik: Option<f64>,
    pub converged: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub distribution: Option<Distribution>,
}

impl TableRow {
    fn from_fit(family: Family, fit: &Result<FitResult>) -> Self {
        match fit {
            Ok(f) => TableRow {
                family,
                label: family.label(),
                param_names: family.display_param_names(),
                params: f.distribution.display_params(),
                ks: Some(f.ks),
                loglik: Some(f.loglik),
                converged: f.converged,
                error: None,
                distribution: Some(f.distribution),
            },
            Err(e) => TableRow {
                family,
                label: family.label(),
                param_names: family.display_param_names(),
                params: Vec::new(),
                ks: None,
                loglik: None,
                converged: false,
                error: Some(e.to_string()),
                distribution: None,
            },
        }
    }

    pub fn formatted_params(&self) -> String {
        match &self.distribution {
            Some(d) => d.to_string(),
            None => format!("{}(-)", self.family.symbol()),
        }
    }
}

/// One row per family in [`Family::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitTable {
    pub series: String,
    pub n: usize,
    pub rows: Vec<TableRow>,
}

impl FitTable {
    /// `fits` must be in [`Family::ALL`] order, as returned by [`fit_all`].
    pub fn new(series: impl Into<String>, n: usize, fits: &[Result<FitResult>]) -> Self {
        assert_eq!(fits.len(), Family::ALL.len(), "one fit per family");
        let rows = Family::ALL
            .iter()
            .zip(fits)
            .map(|(&fam, fit)| TableRow::from_fit(fam, fit))
            .collect();
        FitTable {
            series: series.into(),
            n,
            rows,
        }
    }

    pub fn row(&self, family: Family) -> &TableRow {
        self.rows
            .iter()
            .find(|r| r.family == family)
            .expect("every family has a row")
    }

    /// Successful fits by increasing KS distance; ties keep table order.
    pub fn ranking(&self) -> Vec<Family> {
        let mut ok: Vec<&TableRow> = self.rows.iter().filter(|r| r.ks.is_some()).collect();
        ok.sort_by(|a, b| a.ks.unwrap().total_cmp(&b.ks.unwrap()));
        ok.into_iter().map(|r| r.family).collect()
    }

    pub fn best(&self) -> Option<Family> {
        self.ranking().first().copied()
    }

    fn distributions(&self) -> Vec<Distribution> {
        self.rows.iter().filter_map(|r| r.distribution).collect()
    }

    pub fn render(&self, out: &mut String) {
        let best = self.best();
        let _ = writeln!(out, "[{}]  n = {}", self.series, self.n);
        let _ = writeln!(out, "{:<10} {:<40} {:>8} {:>16}", "family", "parameters", "KS", "loglik");
        for r in &self.rows {
            let ks = r.ks.map_or("-".to_string(), |v| format!("{v:.4}"));
            let ll = r.loglik.map_or("-".to_string(), |v| format!("{v:.4}"));
            let mut flags = String::new();
            if Some(r.family) == best {
                flags.push_str("  *");
            }
            if r.ks.is_some() && !r.converged {
                flags.push_str("  (not converged)");
            }
            if let Some(e) = &r.error {
                let _ = write!(flags, "  error: {e}");
            }
            let _ = writeln!(
                out,
                "{:<10} {:<40} {:>8} {:>16}{flags}",
                r.label,
                r.formatted_params(),
                ks,
                ll
            );
        }
        if let Some(b) = best {
            let _ = writeln!(out, "best by KS: {}", b.label());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    /// `manifest` or `sample`.
    pub source: String,
    pub index: Option<VolIndex>,
    pub mode: RatioMode,
    pub scaled_to_unit_mean: bool,
    /// Whether the histogram and curves describe the reciprocal series.
    pub inverted: bool,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
    pub n: usize,
    pub seed: u64,
    pub fit_config: FitConfig,
    pub vol_config: Option<VolConfig>,
    pub config_hash: String,
}

/// Hex SHA-256 of the JSON encoding of `value`.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("config serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportBundle {
    pub metadata: Metadata,
    pub direct: FitTable,
    pub inverse: FitTable,
    pub histogram: Histogram,
    pub fitted_curves: Vec<Curve>,
    #[serde(skip)]
    pub series: RatioSeries,
    #[serde(skip)]
    pub inverse_series: RatioSeries,
}

impl ReportBundle {
    pub fn render_text(&self) -> String {
        let m = &self.metadata;
        let mut out = String::new();
        let _ = write!(out, "mode: {}", mode_name(m.mode));
        if let Some(ix) = m.index {
            let _ = write!(out, "   index: {}", ix.label());
        }
        let _ = write!(out, "   n: {}   seed: {}", m.n, m.seed);
        if let (Some(a), Some(b)) = (m.from, m.to) {
            let _ = write!(out, "   dates: {a} .. {b}");
        }
        let _ = writeln!(out, "   unit-mean scaling: {}", if m.scaled_to_unit_mean { "on" } else { "off" });
        let _ = writeln!(out, "config: {}\n", m.config_hash);
        self.direct.render(&mut out);
        out.push('\n');
        self.inverse.render(&mut out);
        out
    }
}

pub fn mode_name(mode: RatioMode) -> &'static str {
    match mode {
        RatioMode::Predicted => "predicted",
        RatioMode::Preceding => "preceding",
        RatioMode::AdjacentRv => "adjacent",
        RatioMode::RandomPairing => "random",
    }
}

/// `(direct, inverse)` column labels of a ratio series.
pub fn series_labels(mode: RatioMode, index: Option<VolIndex>) -> (String, String) {
    let iv = format!("{}2", index.map_or("IV", VolIndex::label));
    let (num, den) = match mode {
        RatioMode::Predicted => ("nRV2".to_string(), iv),
        RatioMode::Preceding => ("RV2".to_string(), iv),
        RatioMode::AdjacentRv => ("nRV2".to_string(), "RV2".to_string()),
        RatioMode::RandomPairing => ("rRV2".to_string(), iv),
    };
    (format!("{num}/{den}"), format!("{den}/{num}"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub mode: RatioMode,
    /// `None` uses the mode's default.
    pub scale: Option<bool>,
    pub invert: bool,
    pub seed: u64,
    pub fit: FitConfig,
    pub vol: VolConfig,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            mode: RatioMode::Predicted,
            scale: None,
            invert: false,
            seed: 0,
            fit: FitConfig::default(),
            vol: VolConfig::default(),
        }
    }
}

impl FitOptions {
    pub fn scale(&self) -> bool {
        self.scale.unwrap_or_else(|| self.mode.default_scaling())
    }
}

struct RvPair {
    prev: RvSeries,
    next: RvSeries,
}

fn rv_pair(market: &MarketData, vol: &VolConfig) -> Result<RvPair> {
    Ok(RvPair {
        prev: realized_variance_series(&market.prices, Window::Previous, vol)?,
        next: realized_variance_series(&market.prices, Window::Next, vol)?,
    })
}

/// Full fit pipeline on market data: ratio series, its reciprocal, seven
/// fits for each, histogram and curves.
pub fn fit_market(market: &MarketData, opts: &FitOptions) -> Result<ReportBundle> {
    let rv = rv_pair(market, &opts.vol)?;
    let iv = implied_variance(&market.levels);
    let inputs = RatioInputs {
        next_rv: &rv.next,
        prev_rv: &rv.prev,
        implied: &iv,
    };
    let series = build_ratio_series(inputs, opts.mode, opts.scale(), opts.seed)?;
    let labels = series_labels(opts.mode, Some(market.index));
    let meta = Metadata {
        command: "fit".into(),
        source: "manifest".into(),
        index: Some(market.index),
        mode: opts.mode,
        scaled_to_unit_mean: series.scaled_to_unit_mean,
        inverted: opts.invert,
        from: series.dates.first().copied(),
        to: series.dates.last().copied(),
        n: series.values.len(),
        seed: opts.seed,
        fit_config: opts.fit,
        vol_config: Some(opts.vol),
        config_hash: String::new(),
    };
    fit_series(series, labels, meta, opts)
}

/// Fit pipeline on an undated sample taken as the ratio series itself.
pub fn fit_sample(values: &[f64], opts: &FitOptions) -> Result<ReportBundle> {
    let ones = vec![1.0; values.len()];
    let dates = vec![NaiveDate::default(); values.len()];
    let series = ratio_from_parts(dates, values, &ones, opts.mode, opts.scale())?;
    let meta = Metadata {
        command: "fit".into(),
        source: "sample".into(),
        index: None,
        mode: opts.mode,
        scaled_to_unit_mean: series.scaled_to_unit_mean,
        inverted: opts.invert,
        from: None,
        to: None,
        n: values.len(),
        seed: opts.seed,
        fit_config: opts.fit,
        vol_config: None,
        config_hash: String::new(),
    };
    fit_series(series, ("sample".into(), "1/sample".into()), meta, opts)
}

fn fit_series(
    series: RatioSeries,
    labels: (String, String),
    mut meta: Metadata,
    opts: &FitOptions,
) -> Result<ReportBundle> {
    let inverse_series = invert_series(&series);
    let direct_fits = fit_all(&series.values, &opts.fit, None);

    // Start the reciprocal-side beta prime fit from the transformed direct
    // optimum; the reciprocal series is rescaled by 1 / mean(1 / x).
    let bp_seed = match direct_fits.last() {
        Some(Ok(f)) => {
            let c = inverse_series.values[0] * series.values[0];
            f.distribution
                .reciprocal()
                .and_then(|d| d.scaled(c).ok())
                .and_then(|d| match d {
                    Distribution::BetaPrime(bp) => Some(bp),
                    _ => None,
                })
        }
        _ => None,
    };
    let inverse_fits = fit_all(&inverse_series.values, &opts.fit, bp_seed);

    let direct = FitTable::new(labels.0, series.values.len(), &direct_fits);
    let inverse = FitTable::new(labels.1, inverse_series.values.len(), &inverse_fits);
    let (shown_values, shown_table) = if opts.invert {
        (&inverse_series.values, &inverse)
    } else {
        (&series.values, &direct)
    };
    let histogram = histogram(shown_values)?;
    let x = grid(histogram.edges[0], *histogram.edges.last().unwrap(), CURVE_POINTS);
    let fitted_curves = fitted_curves(&shown_table.distributions(), &x);

    meta.config_hash = config_hash(&meta);
    Ok(ReportBundle {
        metadata: meta,
        direct,
        inverse,
        histogram,
        fitted_curves,
        series,
        inverse_series,
    })
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

/// Writes `table.json`, `table.txt`, `hist.csv`, `curves.csv` and
/// `series.csv` into `dir` (created if missing).
pub fn write_fit_report(bundle: &ReportBundle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut json = serde_json::to_string_pretty(bundle)?;
    json.push('\n');
    write_file(dir, "table.json", json.as_bytes())?;
    write_file(dir, "table.txt", bundle.render_text().as_bytes())?;

    let mut hist = String::from("left,right,count,density\n");
    let h = &bundle.histogram;
    for (i, d) in h.densities.iter().enumerate() {
        let _ = writeln!(hist, "{},{},{},{d}", h.edges[i], h.edges[i + 1], h.counts[i]);
    }
    write_file(dir, "hist.csv", hist.as_bytes())?;

    let mut curves = String::from("family,x,pdf\n");
    for c in &bundle.fitted_curves {
        for (x, p) in c.x.iter().zip(&c.pdf) {
            let _ = writeln!(curves, "{},{x},{p}", c.family.label());
        }
    }
    write_file(dir, "curves.csv", curves.as_bytes())?;

    let mut series = String::from("date,value,inverse\n");
    let dated = bundle.metadata.from.is_some();
    for ((d, v), w) in bundle
        .series
        .dates
        .iter()
        .zip(&bundle.series.values)
        .zip(&bundle.inverse_series.values)
    {
        if dated {
            let _ = writeln!(series, "{d},{v},{w}");
        } else {
            let _ = writeln!(series, ",{v},{w}");
        }
    }
    write_file(dir, "series.csv", series.as_bytes())?;
    Ok(())
}

/// Square labelled matrix; `None` marks an absent cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl Matrix {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i][j]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("series");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.values) {
            out.push_str(l);
            for v in row {
                match v {
                    Some(v) => {
                        let _ = write!(out, ",{v}");
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self, decimals: usize) -> String {
        let w = self.labels.iter().map(String::len).max().unwrap_or(0).max(decimals + 3) + 2;
        let mut out = format!("{:<w$}", "");
        for l in &self.labels {
            let _ = write!(out, "{l:>w$}");
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.values) {
            let _ = write!(out, "{l:<w$}");
            for v in row {
                let cell = v.map_or("-".to_string(), |v| format!("{v:.decimals$}"));
                let _ = write!(out, "{cell:>w$}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixReport {
    pub command: String,
    pub index: VolIndex,
    pub from: NaiveDate,
    pub to: NaiveDate,
    pub seed: u64,
    pub vol_config: VolConfig,
    pub sizes: Vec<usize>,
    pub matrix: Matrix,
}

/// Writes `<stem>.csv`, `<stem>.txt` and `<stem>.json` into `dir`.
pub fn write_matrix_report(report: &MatrixReport, dir: &Path, stem: &str, decimals: usize) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_file(dir, &format!("{stem}.csv"), report.matrix.to_csv().as_bytes())?;
    let mut txt = format!(
        "{} {}   dates: {} .. {}   seed: {}\n\n",
        report.command,
        report.index.label(),
        report.from,
        report.to,
        report.seed
    );
    txt.push_str(&report.matrix.to_text(decimals));
    write_file(dir, &format!("{stem}.txt"), txt.as_bytes())?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    write_file(dir, &format!("{stem}.json"), json.as_bytes())?;
    Ok(())
}

/// Pearson matrix over previous-window RV², next-window RV², implied
/// variance and a seeded shuffle of previous-window RV², on the dates where
/// all three underlying series exist.
pub fn pcc_matrix(market: &MarketData, vol: &VolConfig, seed: u64) -> Result<MatrixReport> {
    let rv = rv_pair(market, vol)?;
    let iv = implied_variance(&market.levels);
    let (mut dates, mut prev, mut next, mut ivv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, d) in rv.prev.dates.iter().enumerate() {
        let (Ok(j), Ok(k)) = (rv.next.dates.binary_search(d), iv.dates().binary_search(d)) else {
            continue;
        };
        dates.push(*d);
        prev.push(rv.prev.rv2[i]);
        next.push(rv.next.rv2[j]);
        ivv.push(iv.values()[k]);
    }
    if dates.len() < 3 {
        return Err(Error::InsufficientWindow(format!(
            "only {} dates carry both windows and an index level",
            dates.len()
        )));
    }
    let random = shuffled(&prev, seed);
    let cols = [&prev, &next, &ivv, &random];
    let ix = market.index.label();
    let labels = vec!["RV2".to_string(), "nRV2".to_string(), format!("{ix}2"), "rRV2".to_string()];
    let mut values = vec![vec![None; 4]; 4];
    for i in 0..4 {
        values[i][i] = Some(1.0);
        for j in i + 1..4 {
            let r = pearson(cols[i], cols[j])?;
            values[i][j] = Some(r);
            values[j][i] = Some(r);
        }
    }
    Ok(MatrixReport {
        command: "corr".into(),
        index: market.index,
        from: dates[0],
        to: *dates.last().unwrap(),
        seed,
        vol_config: *vol,
        sizes: vec![dates.len(); 4],
        matrix: Matrix { labels, values },
    })
}

/// Cells of the two-sample KS matrix left empty, as `(row, column)` with
/// `row < column`; the mirrored cells are empty too.
pub const KS_ABSENT: [(usize, usize); 3] = [(0, 5), (1, 2), (2, 5)];

/// The six ratio series of the two-sample KS matrix, in order:
/// `RV2/IV2`, `nRV2/IV2`, `RV2/nRV2`, `rRV2/rIV2`, `rRV2/rRV2`, `nRV2/RV2`.
///
/// The two random baselines use the seeds `seed` and `seed + 1`. `scale`
/// overrides each series' default unit-mean scaling.
pub fn ks_matrix_series(
    market: &MarketData,
    vol: &VolConfig,
    seed: u64,
    scale: Option<bool>,
) -> Result<Vec<(String, RatioSeries)>> {
    let rv = rv_pair(market, vol)?;
    let iv = implied_variance(&market.levels);
    let inputs = RatioInputs {
        next_rv: &rv.next,
        prev_rv: &rv.prev,
        implied: &iv,
    };
    let sc = |m: RatioMode| scale.unwrap_or_else(|| m.default_scaling());
    let ix = market.index.label();
    let preceding = build_ratio_series(inputs, RatioMode::Preceding, sc(RatioMode::Preceding), seed)?;
    let predicted = build_ratio_series(inputs, RatioMode::Predicted, sc(RatioMode::Predicted), seed)?;
    let adjacent = build_ratio_series(inputs, RatioMode::AdjacentRv, sc(RatioMode::AdjacentRv), seed)?;
    let random = build_ratio_series(inputs, RatioMode::RandomPairing, sc(RatioMode::RandomPairing), seed)?;
    let random_rv = ratio_from_parts(
        rv.prev.dates.clone(),
        &shuffled(&rv.prev.rv2, seed.wrapping_add(1)),
        &rv.prev.rv2,
        RatioMode::RandomPairing,
        sc(RatioMode::AdjacentRv),
    )?;
    Ok(vec![
        (format!("RV2/{ix}2"), preceding),
        (format!("nRV2/{ix}2"), predicted),
        ("RV2/nRV2".into(), invert_series(&adjacent)),
        (format!("rRV2/r{ix}2"), random),
        ("rRV2/rRV2".into(), random_rv),
        ("nRV2/RV2".into(), adjacent),
    ])
}

pub fn ks_matrix(market: &MarketData, vol: &VolConfig, seed: u64, scale: Option<bool>) -> Result<MatrixReport> {
    let series = ks_matrix_series(market, vol, seed, scale)?;
    let k = series.len();
    let absent = |i: usize, j: usize| KS_ABSENT.contains(&(i.min(j), i.max(j)));
    let mut values = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            if absent(i, j) {
                continue;
            }
            let d = ks_two_sample(&series[i].1.values, &series[j].1.values)?.d;
            values[i][j] = Some(d);
            values[j][i] = Some(d);
        }
    }
    let first = series.iter().filter_map(|s| s.1.dates.first()).min().copied().unwrap();
    let last = series.iter().filter_map(|s| s.1.dates.last()).max().copied().unwrap();
    Ok(MatrixReport {
        command: "ksmatrix".into(),
        index: market.index,
        from: first,
        to: last,
        seed,
        vol_config: *vol,
        sizes: series.iter().map(|s| s.1.values.len()).collect(),
        matrix: Matrix {
            labels: series.into_iter().map(|s| s.0).collect(),
            values,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub param_names: &'static [&'static str],
    /// Storage order, as accepted by [`Distribution::from_params`].
    pub params: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    pub mean: Option<f64>,
}

/// Seeded sample of `n` draws from `dist`.
pub fn synthetic_sample(dist: &Distribution, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    Ok(dist.sample(n, seed))
}

/// Writes `sample.csv` and `generator.json` into `dir`.
pub fn write_synthetic(dist: &Distribution, n: usize, seed: u64, dir: &Path) -> Result<Vec<f64>> {
    let sample = synthetic_sample(dist, n, seed)?;
    fs::create_dir_all(dir)?;
    let mut f = std::io::BufWriter::new(fs::File::create(dir.join("sample.csv"))?);
    write_sample_csv(&sample, &mut f)?;
    f.flush()?;
    let generator = GeneratorSpec {
        family: dist.family(),
        param_names: dist.family().param_names(),
        params: dist.params(),
        n,
        seed,
        mean: dist.mean(),
    };
    let mut json = serde_json::to_string_pretty(&generator)?;
    json.push('\n');
    write_file(dir, "generator.json", json.as_bytes())?;
    Ok(sample)
}
