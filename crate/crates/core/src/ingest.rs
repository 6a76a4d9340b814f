//! Daily CSV ingestion, calendar alignment and the run manifest.
//!
//! CSV schema: a header row, an ISO `YYYY-MM-DD` date column (named `date`,
//! otherwise the first column) and a decimal value column picked by name.
//! Placeholder cells (empty, `.`, `NA`, `NaN`, `null`) drop their row.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::volatility::DailySeries;

/// First trading date of the default study window.
pub const DEFAULT_FROM: (i32, u32, u32) = (1990, 1, 2);
/// Last trading date of the default study window.
pub const DEFAULT_TO: (i32, u32, u32) = (2016, 12, 30);

#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub series: DailySeries,
    /// Rows skipped for a placeholder value.
    pub placeholders: usize,
    /// Later rows repeating an earlier date (the first occurrence is kept).
    pub duplicates: usize,
}

fn is_placeholder(cell: &str) -> bool {
    matches!(
        cell.trim().to_ascii_lowercase().as_str(),
        "" | "." | "na" | "n/a" | "nan" | "null" | "#n/a"
    )
}

pub fn parse_date(s: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(s.trim(), "%Y-%m-%d").ok()
}

/// Loads `column` of a daily CSV file as a sorted, de-duplicated series.
pub fn load_price_csv(path: impl AsRef<Path>, column: &str) -> Result<Loaded> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let parse_err = |line: u64, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let headers = rdr.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let date_col = find("date").unwrap_or(0);
    let value_col = find(column).ok_or_else(|| {
        parse_err(
            1,
            format!(
                "no column named {column:?} (have: {})",
                headers.iter().collect::<Vec<_>>().join(", ")
            ),
        )
    })?;

    let mut rows: Vec<(NaiveDate, f64)> = Vec::new();
    let mut placeholders = 0;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let date_cell = record.get(date_col).unwrap_or("");
        if date_cell.is_empty() && record.iter().all(str::is_empty) {
            continue;
        }
        let date = parse_date(date_cell).ok_or_else(|| parse_err(line, format!("bad date {date_cell:?}")))?;
        let cell = record.get(value_col).unwrap_or("");
        if is_placeholder(cell) {
            placeholders += 1;
            continue;
        }
        let value: f64 = cell
            .parse()
            .map_err(|_| parse_err(line, format!("bad number {cell:?}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(parse_err(line, format!("value must be positive, got {value}")));
        }
        rows.push((date, value));
    }
    if placeholders > 0 {
        log::warn!("{}: dropped {placeholders} placeholder rows", path.display());
    }

    // Stable sort keeps the first occurrence of a repeated date in front.
    rows.sort_by_key(|r| r.0);
    let before = rows.len();
    rows.dedup_by_key(|r| r.0);
    let duplicates = before - rows.len();
    if duplicates > 0 {
        log::warn!("{}: dropped {duplicates} duplicate dates", path.display());
    }
    if rows.is_empty() {
        return Err(Error::EmptySeries {
            path: path.to_path_buf(),
        });
    }
    let (dates, values) = rows.into_iter().unzip();
    Ok(Loaded {
        series: DailySeries::new(dates, values)?,
        placeholders,
        duplicates,
    })
}

/// Writes the canonical `date,<column>` form read back by [`load_price_csv`].
pub fn write_series_csv(series: &DailySeries, column: &str, mut out: impl Write) -> Result<()> {
    writeln!(out, "date,{column}")?;
    for (d, v) in series.dates().iter().zip(series.values()) {
        writeln!(out, "{},{v}", d.format("%Y-%m-%d"))?;
    }
    Ok(())
}

/// Loads an undated sample: the `value` column (otherwise the first column)
/// of a CSV file with a header. Placeholder cells are skipped.
pub fn load_sample_csv(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let col = rdr
        .headers()?
        .iter()
        .position(|h| h.eq_ignore_ascii_case("value"))
        .unwrap_or(0);
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let cell = record.get(col).unwrap_or("");
        if is_placeholder(cell) {
            continue;
        }
        let v: f64 = cell.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line: record.position().map_or(0, |p| p.line()),
            msg: format!("bad number {cell:?}"),
        })?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::EmptySeries {
            path: path.to_path_buf(),
        });
    }
    Ok(out)
}

/// Writes `value` lines readable by [`load_sample_csv`]; values round-trip exactly.
pub fn write_sample_csv(values: &[f64], mut out: impl Write) -> Result<()> {
    writeln!(out, "value")?;
    for v in values {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AlignReport {
    pub dropped_a: usize,
    pub dropped_b: usize,
}

/// Restricts both series to their common dates.
pub fn align(a: &DailySeries, b: &DailySeries) -> Result<(DailySeries, DailySeries, AlignReport)> {
    let common: Vec<NaiveDate> = a
        .dates()
        .iter()
        .filter(|d| b.dates().binary_search(d).is_ok())
        .copied()
        .collect();
    if common.is_empty() {
        return Err(Error::Alignment("series have no dates in common".into()));
    }
    let a2 = a.restricted_to(&common);
    let b2 = b.restricted_to(&common);
    let report = AlignReport {
        dropped_a: a.len() - common.len(),
        dropped_b: b.len() - common.len(),
    };
    if report.dropped_a + report.dropped_b > 0 {
        log::info!(
            "calendar alignment dropped {} + {} dates",
            report.dropped_a,
            report.dropped_b
        );
    }
    Ok((a2, b2, report))
}

/// Which volatility index a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VolIndex {
    Vix,
    Vxo,
}

impl VolIndex {
    pub fn label(self) -> &'static str {
        match self {
            VolIndex::Vix => "VIX",
            VolIndex::Vxo => "VXO",
        }
    }
}

/// `key=value` run manifest naming the input files and the date range.
///
/// ```text
/// # paths are relative to the manifest
/// spx = spx.csv
/// vix = vix.csv
/// vxo = vxo.csv
/// from = 1990-01-02
/// to = 2016-12-30
/// ```
///
/// Optional `spx_column`, `vix_column`, `vxo_column` pick the value column
/// (default `close`).
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub spx: PathBuf,
    pub spx_column: String,
    pub indices: BTreeMap<VolIndexKey, (PathBuf, String)>,
    pub from: NaiveDate,
    pub to: NaiveDate,
}

/// Ordered key for [`Manifest::indices`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VolIndexKey {
    Vix,
    Vxo,
}

impl From<VolIndex> for VolIndexKey {
    fn from(v: VolIndex) -> Self {
        match v {
            VolIndex::Vix => VolIndexKey::Vix,
            VolIndex::Vxo => VolIndexKey::Vxo,
        }
    }
}

impl From<VolIndexKey> for VolIndex {
    fn from(v: VolIndexKey) -> Self {
        match v {
            VolIndexKey::Vix => VolIndex::Vix,
            VolIndexKey::Vxo => VolIndex::Vxo,
        }
    }
}

impl Manifest {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Manifest> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Manifest(format!("line {}: expected key=value", i + 1)))?;
            let key = k.trim().to_ascii_lowercase();
            const KNOWN: [&str; 8] = ["spx", "vix", "vxo", "spx_column", "vix_column", "vxo_column", "from", "to"];
            if !KNOWN.contains(&key.as_str()) {
                return Err(Error::Manifest(format!("line {}: unknown key {key:?}", i + 1)));
            }
            kv.insert(key, v.trim().to_string());
        }
        let path = |v: &String| {
            let p = PathBuf::from(v);
            if p.is_absolute() {
                p
            } else {
                base_dir.join(p)
            }
        };
        let column = |key: &str| kv.get(key).cloned().unwrap_or_else(|| "close".to_string());
        let date = |key: &str, default: (i32, u32, u32)| -> Result<NaiveDate> {
            match kv.get(key) {
                Some(s) => parse_date(s).ok_or_else(|| Error::Manifest(format!("{key}: bad date {s:?}"))),
                None => Ok(NaiveDate::from_ymd_opt(default.0, default.1, default.2).expect("valid default date")),
            }
        };
        let spx = kv
            .get("spx")
            .map(path)
            .ok_or_else(|| Error::Manifest("missing required key `spx`".into()))?;
        let mut indices = BTreeMap::new();
        if let Some(p) = kv.get("vix") {
            indices.insert(VolIndexKey::Vix, (path(p), column("vix_column")));
        }
        if let Some(p) = kv.get("vxo") {
            indices.insert(VolIndexKey::Vxo, (path(p), column("vxo_column")));
        }
        if indices.is_empty() {
            return Err(Error::Manifest("need at least one of `vix`, `vxo`".into()));
        }
        let from = date("from", DEFAULT_FROM)?;
        let to = date("to", DEFAULT_TO)?;
        if from > to {
            return Err(Error::Manifest(format!("from {from} is after to {to}")));
        }
        Ok(Manifest {
            spx,
            spx_column: column("spx_column"),
            indices,
            from,
            to,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Manifest> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Manifest::parse(&text, base)
    }

    pub fn available_indices(&self) -> Vec<VolIndex> {
        self.indices.keys().map(|&k| k.into()).collect()
    }
}

/// Underlying closes and one volatility index on a shared calendar inside
/// the manifest's date range.
#[derive(Debug, Clone)]
pub struct MarketData {
    pub index: VolIndex,
    pub prices: DailySeries,
    pub levels: DailySeries,
    pub align: AlignReport,
}

pub fn load_market(manifest: &Manifest, index: VolIndex, from: Option<NaiveDate>, to: Option<NaiveDate>) -> Result<MarketData> {
    let (idx_path, idx_col) = manifest
        .indices
        .get(&index.into())
        .ok_or_else(|| Error::Manifest(format!("manifest has no `{}` entry", index.label().to_lowercase())))?;
    let from = from.unwrap_or(manifest.from);
    let to = to.unwrap_or(manifest.to);
    let spx = load_price_csv(&manifest.spx, &manifest.spx_column)?.series.between(from, to);
    let levels = load_price_csv(idx_path, idx_col)?.series.between(from, to);
    let (prices, levels, align) = align(&spx, &levels)?;
    Ok(MarketData {
        index,
        prices,
        levels,
        align,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn d(s: &str) -> NaiveDate {
        parse_date(s).unwrap()
    }

    #[test]
    fn two_rows() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "date,close\n2000-01-03,100\n2000-01-04,101.5\n");
        let l = load_price_csv(&p, "close").unwrap();
        assert_eq!(l.series.values(), &[100.0, 101.5]);
        assert_eq!(l.placeholders, 0);
    }

    #[test]
    fn unsorted_input_is_sorted_and_deduplicated() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "a.csv",
            "Date,Close\n2000-01-05,3\n2000-01-03,1\n2000-01-04,2\n2000-01-03,9\n",
        );
        let l = load_price_csv(&p, "close").unwrap();
        assert_eq!(l.series.dates(), &[d("2000-01-03"), d("2000-01-04"), d("2000-01-05")]);
        assert_eq!(l.series.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(l.duplicates, 1);
    }

    #[test]
    fn fred_placeholders_are_dropped_and_counted() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "vix.csv",
            "DATE,VIXCLS\n2000-01-03,24.21\n2000-01-04,.\n2000-01-05,NA\n2000-01-06,22.5\n2000-01-07,\n",
        );
        let l = load_price_csv(&p, "VIXCLS").unwrap();
        assert_eq!(l.series.len(), 2);
        assert_eq!(l.placeholders, 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "date,close\n2000-01-03,1\n2000-01-04,abc\n");
        match load_price_csv(&p, "close").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e}"),
        }
        let p = write(dir.path(), "b.csv", "date,close\n03/01/2000,1\n");
        assert!(matches!(load_price_csv(&p, "close"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_price_csv(&p, "open"), Err(Error::Parse { line: 1, .. })));
        let p = write(dir.path(), "c.csv", "date,close\n2000-01-03,.\n");
        assert!(matches!(load_price_csv(&p, "close"), Err(Error::EmptySeries { .. })));
    }

    #[test]
    fn sample_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let values = [0.1, 1.0 / 3.0, 2.5e-7, 123456.789];
        let p = dir.path().join("s.csv");
        write_sample_csv(&values, fs::File::create(&p).unwrap()).unwrap();
        assert_eq!(load_sample_csv(&p).unwrap(), values);
    }

    #[test]
    fn align_drops_unmatched_dates() {
        let a = DailySeries::new(vec![d("2000-01-03"), d("2000-01-04"), d("2000-01-05")], vec![1.0, 2.0, 3.0]).unwrap();
        let b = DailySeries::new(vec![d("2000-01-03"), d("2000-01-05")], vec![10.0, 30.0]).unwrap();
        let (a2, b2, rep) = align(&a, &b).unwrap();
        assert_eq!(a2.dates(), b2.dates());
        assert_eq!(a2.values(), &[1.0, 3.0]);
        assert_eq!(rep, AlignReport { dropped_a: 1, dropped_b: 0 });
        let (a3, _, rep) = align(&a, &a).unwrap();
        assert_eq!(a3, a);
        assert_eq!(rep, AlignReport::default());
        let c = DailySeries::new(vec![d("1999-01-01")], vec![1.0]).unwrap();
        assert!(matches!(align(&a, &c), Err(Error::Alignment(_))));
    }

    #[test]
    fn manifest_parsing() {
        let base = Path::new("/data");
        let m = Manifest::parse("# comment\nspx = spx.csv\nvix=/abs/vix.csv\nvix_column = VIXCLS\n", base).unwrap();
        assert_eq!(m.spx, PathBuf::from("/data/spx.csv"));
        assert_eq!(m.indices[&VolIndexKey::Vix], (PathBuf::from("/abs/vix.csv"), "VIXCLS".to_string()));
        assert_eq!(m.from, d("1990-01-02"));
        assert_eq!(m.to, d("2016-12-30"));
        assert_eq!(m.available_indices(), vec![VolIndex::Vix]);

        assert!(matches!(Manifest::parse("", base), Err(Error::Manifest(_))));
        assert!(Manifest::parse("spx=a.csv\n", base).is_err());
        assert!(Manifest::parse("spx=a.csv\nvix=b.csv\ncolour=red\n", base).is_err());
        assert!(Manifest::parse("spx=a.csv\nvix=b.csv\nfrom=2001-01-01\nto=2000-01-01\n", base).is_err());
        assert!(Manifest::parse("spx a.csv\n", base).is_err());
    }
}
