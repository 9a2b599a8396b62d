//! CSV ingestion with schema validation and date alignment.
//!
//! Four file schemas are understood, all UTF-8 with a mandatory header row,
//! decimal points and no thousands separators:
//!
//! * `CurveDaily`: `date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token`
//! * `UniswapEvents`: `timestamp_unix,amount0_in,amount1_in,amount0_out,amount1_out,active_liquidity,pool_price`
//! * `StakingRates`: `date,annualized_rate`
//! * `RewardSeries`: `date,reward_per_lp_token`

use std::fmt;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use crate::error::BacktestError;

/// One daily snapshot of a Curve pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSnapshot {
    pub date: NaiveDate,
    pub reserve_0: f64,
    pub reserve_1: f64,
    pub lp_token_supply: f64,
    /// LST price in underlying units at the snapshot.
    pub lst_price: f64,
    /// Daily protocol-token reward value per LP token, in underlying units.
    pub crv_reward_per_lp_token: f64,
}

/// One swap against a concentrated-liquidity pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapEvent {
    pub timestamp: i64,
    pub amount0_in: f64,
    pub amount1_in: f64,
    pub amount0_out: f64,
    pub amount1_out: f64,
    /// In-range liquidity at the moment of the swap.
    pub active_liquidity: f64,
    pub pool_price: f64,
}

impl SwapEvent {
    pub fn date(&self) -> NaiveDate {
        chrono::DateTime::from_timestamp(self.timestamp, 0)
            .expect("validated timestamp")
            .date_naive()
    }
}

/// One day of the reference staking-rate series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StakingRate {
    pub date: NaiveDate,
    /// Annualized fraction (0.04 means 4% per year).
    pub annualized_rate: f64,
}

/// One day of an external reward series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardPoint {
    pub date: NaiveDate,
    pub reward_per_lp_token: f64,
}

/// Supported input schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemaKind {
    CurveDaily,
    UniswapEvents,
    StakingRates,
    RewardSeries,
}

impl SchemaKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemaKind::CurveDaily => "curve-daily",
            SchemaKind::UniswapEvents => "uniswap-events",
            SchemaKind::StakingRates => "staking-rates",
            SchemaKind::RewardSeries => "reward-series",
        }
    }

    fn headers(&self) -> &'static [&'static str] {
        match self {
            SchemaKind::CurveDaily => &[
                "date",
                "reserve_0",
                "reserve_1",
                "lp_token_supply",
                "lst_price",
                "crv_reward_per_lp_token",
            ],
            SchemaKind::UniswapEvents => &[
                "timestamp_unix",
                "amount0_in",
                "amount1_in",
                "amount0_out",
                "amount1_out",
                "active_liquidity",
                "pool_price",
            ],
            SchemaKind::StakingRates => &["date", "annualized_rate"],
            SchemaKind::RewardSeries => &["date", "reward_per_lp_token"],
        }
    }
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Row counts and date coverage of one ingested file.
#[derive(Debug, Clone)]
pub struct FileReport {
    pub path: PathBuf,
    pub schema: SchemaKind,
    pub rows: usize,
    pub first: Option<NaiveDate>,
    pub last: Option<NaiveDate>,
}

impl fmt::Display for FileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} rows ({})",
            self.path.display(),
            self.rows,
            self.schema
        )?;
        if let (Some(a), Some(b)) = (self.first, self.last) {
            write!(f, " covering {a}..{b}")?;
        }
        Ok(())
    }
}

/// Validated, date-aligned input set for a backtest.
#[derive(Debug, Clone, Default)]
pub struct BacktestBundle {
    pub curve_daily: Option<Vec<CurveSnapshot>>,
    pub events: Option<Vec<SwapEvent>>,
    pub staking_rates: Option<Vec<StakingRate>>,
    pub rewards: Option<Vec<RewardPoint>>,
    pub reports: Vec<FileReport>,
    pub warnings: Vec<String>,
}

/// Ingestion options.
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Reject out-of-order rows instead of sorting them with a warning.
    pub strict: bool,
}

struct RowCursor<'a> {
    file: String,
    headers: &'a [&'a str],
    line: u64,
}

impl<'a> RowCursor<'a> {
    fn field(&self, record: &csv::StringRecord, idx: usize) -> Result<String, BacktestError> {
        record
            .get(idx)
            .map(|s| s.trim().to_string())
            .ok_or_else(|| BacktestError::Schema {
                file: self.file.clone(),
                line: self.line,
                column: self.headers[idx].to_string(),
                message: "missing field".to_string(),
            })
    }

    fn date(&self, record: &csv::StringRecord, idx: usize) -> Result<NaiveDate, BacktestError> {
        let raw = self.field(record, idx)?;
        NaiveDate::parse_from_str(&raw, "%Y-%m-%d").map_err(|e| BacktestError::Schema {
            file: self.file.clone(),
            line: self.line,
            column: self.headers[idx].to_string(),
            message: format!("invalid ISO-8601 date '{raw}': {e}"),
        })
    }

    fn number(&self, record: &csv::StringRecord, idx: usize) -> Result<f64, BacktestError> {
        let raw = self.field(record, idx)?;
        let value: f64 = raw.parse().map_err(|e| BacktestError::Schema {
            file: self.file.clone(),
            line: self.line,
            column: self.headers[idx].to_string(),
            message: format!("invalid number '{raw}': {e}"),
        })?;
        if !value.is_finite() {
            return Err(BacktestError::Schema {
                file: self.file.clone(),
                line: self.line,
                column: self.headers[idx].to_string(),
                message: format!("non-finite number '{raw}'"),
            });
        }
        Ok(value)
    }

    fn nonnegative(&self, record: &csv::StringRecord, idx: usize) -> Result<f64, BacktestError> {
        let value = self.number(record, idx)?;
        if value < 0.0 {
            return Err(BacktestError::Schema {
                file: self.file.clone(),
                line: self.line,
                column: self.headers[idx].to_string(),
                message: format!("must be non-negative, got {value}"),
            });
        }
        Ok(value)
    }

    fn positive(&self, record: &csv::StringRecord, idx: usize) -> Result<f64, BacktestError> {
        let value = self.number(record, idx)?;
        if value <= 0.0 {
            return Err(BacktestError::Schema {
                file: self.file.clone(),
                line: self.line,
                column: self.headers[idx].to_string(),
                message: format!("must be positive, got {value}"),
            });
        }
        Ok(value)
    }

    fn integer(&self, record: &csv::StringRecord, idx: usize) -> Result<i64, BacktestError> {
        let raw = self.field(record, idx)?;
        raw.parse().map_err(|e| BacktestError::Schema {
            file: self.file.clone(),
            line: self.line,
            column: self.headers[idx].to_string(),
            message: format!("invalid integer '{raw}': {e}"),
        })
    }
}

fn read_records(
    path: &Path,
    schema: SchemaKind,
) -> Result<Vec<(u64, csv::StringRecord)>, BacktestError> {
    let file_name = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => BacktestError::Io {
                file: file_name.clone(),
                source: std::io::Error::other(e.to_string()),
            },
            _ => BacktestError::Schema {
                file: file_name.clone(),
                line: 0,
                column: "-".to_string(),
                message: e.to_string(),
            },
        })?;

    let headers = reader
        .headers()
        .map_err(|e| BacktestError::Schema {
            file: file_name.clone(),
            line: 1,
            column: "-".to_string(),
            message: format!("cannot read header row: {e}"),
        })?
        .clone();
    let expected = schema.headers();
    let actual: Vec<&str> = headers.iter().collect();
    if actual != expected {
        return Err(BacktestError::Schema {
            file: file_name.clone(),
            line: 1,
            column: "-".to_string(),
            message: format!(
                "header mismatch: expected '{}', got '{}'",
                expected.join(","),
                actual.join(",")
            ),
        });
    }

    let mut records = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line())
                .unwrap_or(0);
            BacktestError::Schema {
                file: file_name.clone(),
                line,
                column: "-".to_string(),
                message: e.to_string(),
            }
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != expected.len() {
            return Err(BacktestError::Schema {
                file: file_name.clone(),
                line,
                column: "-".to_string(),
                message: format!("expected {} fields, got {}", expected.len(), record.len()),
            });
        }
        records.push((line, record));
    }
    if records.is_empty() {
        return Err(BacktestError::Schema {
            file: file_name,
            line: 1,
            column: "-".to_string(),
            message: "no data rows".to_string(),
        });
    }
    Ok(records)
}

/// Sort rows by key; error in strict mode, warn otherwise. Duplicate keys
/// are always schema errors.
fn ensure_sorted<T, K: Ord + fmt::Display + Copy>(
    rows: &mut [T],
    key: impl Fn(&T) -> K,
    file: &str,
    options: IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<(), BacktestError> {
    let sorted = rows.windows(2).all(|w| key(&w[0]) <= key(&w[1]));
    if !sorted {
        if options.strict {
            return Err(BacktestError::Unsorted {
                file: file.to_string(),
            });
        }
        warnings.push(format!("{file}: rows out of order, sorted by date"));
        rows.sort_by_key(|r| key(r));
    }
    if let Some(w) = rows.windows(2).find(|w| key(&w[0]) == key(&w[1])) {
        return Err(BacktestError::Schema {
            file: file.to_string(),
            line: 0,
            column: "date".to_string(),
            message: format!("duplicate entry for {}", key(&w[0])),
        });
    }
    Ok(())
}

fn parse_curve_daily(
    path: &Path,
    options: IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<Vec<CurveSnapshot>, BacktestError> {
    let file = path.display().to_string();
    let schema = SchemaKind::CurveDaily;
    let mut rows = Vec::new();
    for (line, record) in read_records(path, schema)? {
        let cursor = RowCursor {
            file: file.clone(),
            headers: schema.headers(),
            line,
        };
        rows.push(CurveSnapshot {
            date: cursor.date(&record, 0)?,
            reserve_0: cursor.positive(&record, 1)?,
            reserve_1: cursor.positive(&record, 2)?,
            lp_token_supply: cursor.positive(&record, 3)?,
            lst_price: cursor.positive(&record, 4)?,
            crv_reward_per_lp_token: cursor.nonnegative(&record, 5)?,
        });
    }
    ensure_sorted(&mut rows, |r| r.date, &file, options, warnings)?;
    let missing = missing_days(rows.iter().map(|r| r.date));
    if !missing.is_empty() {
        return Err(BacktestError::MissingDays { file, missing });
    }
    Ok(rows)
}

fn parse_events(
    path: &Path,
    options: IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<Vec<SwapEvent>, BacktestError> {
    let file = path.display().to_string();
    let schema = SchemaKind::UniswapEvents;
    let mut rows = Vec::new();
    for (line, record) in read_records(path, schema)? {
        let cursor = RowCursor {
            file: file.clone(),
            headers: schema.headers(),
            line,
        };
        let timestamp = cursor.integer(&record, 0)?;
        if chrono::DateTime::from_timestamp(timestamp, 0).is_none() {
            return Err(BacktestError::Schema {
                file: file.clone(),
                line,
                column: "timestamp_unix".to_string(),
                message: format!("timestamp {timestamp} out of range"),
            });
        }
        rows.push(SwapEvent {
            timestamp,
            amount0_in: cursor.nonnegative(&record, 1)?,
            amount1_in: cursor.nonnegative(&record, 2)?,
            amount0_out: cursor.nonnegative(&record, 3)?,
            amount1_out: cursor.nonnegative(&record, 4)?,
            active_liquidity: cursor.nonnegative(&record, 5)?,
            pool_price: cursor.positive(&record, 6)?,
        });
    }
    let sorted = rows.windows(2).all(|w| w[0].timestamp <= w[1].timestamp);
    if !sorted {
        if options.strict {
            return Err(BacktestError::Unsorted { file });
        }
        warnings.push(format!("{file}: events out of order, sorted by timestamp"));
        rows.sort_by_key(|r| r.timestamp);
    }
    Ok(rows)
}

fn parse_staking_rates(
    path: &Path,
    options: IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<Vec<StakingRate>, BacktestError> {
    let file = path.display().to_string();
    let schema = SchemaKind::StakingRates;
    let mut rows = Vec::new();
    for (line, record) in read_records(path, schema)? {
        let cursor = RowCursor {
            file: file.clone(),
            headers: schema.headers(),
            line,
        };
        rows.push(StakingRate {
            date: cursor.date(&record, 0)?,
            annualized_rate: cursor.number(&record, 1)?,
        });
    }
    ensure_sorted(&mut rows, |r| r.date, &file, options, warnings)?;
    Ok(rows)
}

fn parse_rewards(
    path: &Path,
    options: IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<Vec<RewardPoint>, BacktestError> {
    let file = path.display().to_string();
    let schema = SchemaKind::RewardSeries;
    let mut rows = Vec::new();
    for (line, record) in read_records(path, schema)? {
        let cursor = RowCursor {
            file: file.clone(),
            headers: schema.headers(),
            line,
        };
        rows.push(RewardPoint {
            date: cursor.date(&record, 0)?,
            reward_per_lp_token: cursor.nonnegative(&record, 1)?,
        });
    }
    ensure_sorted(&mut rows, |r| r.date, &file, options, warnings)?;
    Ok(rows)
}

fn missing_days(dates: impl IntoIterator<Item = NaiveDate>) -> Vec<NaiveDate> {
    let dates: Vec<NaiveDate> = dates.into_iter().collect();
    let mut missing = Vec::new();
    for w in dates.windows(2) {
        let mut day = w[0] + chrono::Days::new(1);
        while day < w[1] {
            missing.push(day);
            day = day + chrono::Days::new(1);
        }
    }
    missing
}

/// Parse and validate a set of input files into a date-aligned bundle.
///
/// Every staking-rate gap, date hole or schema violation is an error; if a
/// reward series is supplied, its values override the `CurveDaily` reward
/// column on matching dates.
pub fn ingest(
    inputs: &[(PathBuf, SchemaKind)],
    options: IngestOptions,
) -> Result<BacktestBundle, BacktestError> {
    let mut bundle = BacktestBundle::default();
    for (path, schema) in inputs {
        let mut warnings = Vec::new();
        let (rows, first, last) = match schema {
            SchemaKind::CurveDaily => {
                let rows = parse_curve_daily(path, options, &mut warnings)?;
                let span = (rows.first().map(|r| r.date), rows.last().map(|r| r.date));
                let n = rows.len();
                bundle.curve_daily = Some(rows);
                (n, span.0, span.1)
            }
            SchemaKind::UniswapEvents => {
                let rows = parse_events(path, options, &mut warnings)?;
                let span = (
                    rows.first().map(|r| r.date()),
                    rows.last().map(|r| r.date()),
                );
                let n = rows.len();
                bundle.events = Some(rows);
                (n, span.0, span.1)
            }
            SchemaKind::StakingRates => {
                let rows = parse_staking_rates(path, options, &mut warnings)?;
                let span = (rows.first().map(|r| r.date), rows.last().map(|r| r.date));
                let n = rows.len();
                bundle.staking_rates = Some(rows);
                (n, span.0, span.1)
            }
            SchemaKind::RewardSeries => {
                let rows = parse_rewards(path, options, &mut warnings)?;
                let span = (rows.first().map(|r| r.date), rows.last().map(|r| r.date));
                let n = rows.len();
                bundle.rewards = Some(rows);
                (n, span.0, span.1)
            }
        };
        bundle.reports.push(FileReport {
            path: path.clone(),
            schema: *schema,
            rows,
            first,
            last,
        });
        bundle.warnings.extend(warnings);
    }

    // Overlay external rewards onto the Curve snapshots.
    if let (Some(snapshots), Some(rewards)) = (&mut bundle.curve_daily, &bundle.rewards) {
        let mut unmatched = Vec::new();
        for reward in rewards {
            match snapshots.binary_search_by_key(&reward.date, |s| s.date) {
                Ok(i) => snapshots[i].crv_reward_per_lp_token = reward.reward_per_lp_token,
                Err(_) => unmatched.push(reward.date),
            }
        }
        if !unmatched.is_empty() {
            if options.strict {
                return Err(BacktestError::Misaligned(format!(
                    "reward series covers {} day(s) without snapshots, first {}",
                    unmatched.len(),
                    unmatched[0]
                )));
            }
            bundle.warnings.push(format!(
                "reward series: {} day(s) without matching snapshots ignored",
                unmatched.len()
            ));
        }
    }

    // Staking rates must cover every day the snapshots need.
    if let (Some(snapshots), Some(rates)) = (&bundle.curve_daily, &bundle.staking_rates) {
        let missing: Vec<NaiveDate> = snapshots
            .iter()
            .skip(1)
            .map(|s| s.date)
            .filter(|d| rates.binary_search_by_key(d, |r| r.date).is_err())
            .collect();
        if !missing.is_empty() {
            return Err(BacktestError::Misaligned(format!(
                "staking rates missing for {} snapshot day(s): first {}, last {}",
                missing.len(),
                missing[0],
                missing[missing.len() - 1]
            )));
        }
    }

    Ok(bundle)
}

/// Look up the rate for a date in a sorted series.
pub(crate) fn rate_on(rates: &[StakingRate], date: NaiveDate) -> Option<f64> {
    rates
        .binary_search_by_key(&date, |r| r.date)
        .ok()
        .map(|i| rates[i].annualized_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn parses_a_minimal_curve_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            &dir,
            "curve.csv",
            "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n\
             2023-01-01,100.0,100.0,200.0,1.0,0.0\n\
             2023-01-02,100.0,100.0,200.0,1.0,0.0\n",
        );
        let bundle = ingest(
            &[(path, SchemaKind::CurveDaily)],
            IngestOptions::default(),
        )
        .unwrap();
        let rows = bundle.curve_daily.unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(bundle.reports[0].rows, 2);
    }

    #[test]
    fn empty_file_is_a_schema_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            &dir,
            "curve.csv",
            "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n",
        );
        let err = ingest(
            &[(path, SchemaKind::CurveDaily)],
            IngestOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, BacktestError::Schema { .. }), "{err}");
    }

    #[test]
    fn header_mismatch_is_a_schema_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(&dir, "rates.csv", "day,rate\n2023-01-01,0.04\n");
        let err = ingest(
            &[(path, SchemaKind::StakingRates)],
            IngestOptions::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("header mismatch"), "{err}");
    }

    #[test]
    fn bad_number_names_file_line_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            &dir,
            "rates.csv",
            "date,annualized_rate\n2023-01-01,0.04\n2023-01-02,oops\n",
        );
        let err = ingest(
            &[(path.clone(), SchemaKind::StakingRates)],
            IngestOptions::default(),
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rates.csv"), "{msg}");
        assert!(msg.contains(":3:"), "{msg}");
        assert!(msg.contains("annualized_rate"), "{msg}");
    }

    #[test]
    fn date_gaps_are_listed() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            &dir,
            "curve.csv",
            "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n\
             2023-01-01,100.0,100.0,200.0,1.0,0.0\n\
             2023-01-04,100.0,100.0,200.0,1.0,0.0\n",
        );
        let err = ingest(
            &[(path, SchemaKind::CurveDaily)],
            IngestOptions::default(),
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2023-01-02"), "{msg}");
        assert!(msg.contains("2023-01-03"), "{msg}");
    }

    #[test]
    fn unsorted_rows_sort_with_warning_or_error_in_strict_mode() {
        let dir = tempfile::tempdir().unwrap();
        let contents = "date,annualized_rate\n2023-01-02,0.04\n2023-01-01,0.03\n";
        let path = write_file(&dir, "rates.csv", contents);

        let bundle = ingest(
            &[(path.clone(), SchemaKind::StakingRates)],
            IngestOptions { strict: false },
        )
        .unwrap();
        assert_eq!(bundle.warnings.len(), 1);
        let rates = bundle.staking_rates.unwrap();
        assert!(rates[0].date < rates[1].date);

        let err = ingest(
            &[(path, SchemaKind::StakingRates)],
            IngestOptions { strict: true },
        )
        .unwrap_err();
        assert!(matches!(err, BacktestError::Unsorted { .. }));
    }

    #[test]
    fn rate_coverage_is_checked_against_snapshots() {
        let dir = tempfile::tempdir().unwrap();
        let curve = write_file(
            &dir,
            "curve.csv",
            "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n\
             2023-01-01,100.0,100.0,200.0,1.0,0.0\n\
             2023-01-02,100.0,100.0,200.0,1.0,0.0\n\
             2023-01-03,100.0,100.0,200.0,1.0,0.0\n",
        );
        let rates = write_file(
            &dir,
            "rates.csv",
            "date,annualized_rate\n2023-01-02,0.04\n",
        );
        let err = ingest(
            &[
                (curve, SchemaKind::CurveDaily),
                (rates, SchemaKind::StakingRates),
            ],
            IngestOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, BacktestError::Misaligned(_)), "{err}");
    }

    #[test]
    fn reward_series_overrides_the_snapshot_column() {
        let dir = tempfile::tempdir().unwrap();
        let curve = write_file(
            &dir,
            "curve.csv",
            "date,reserve_0,reserve_1,lp_token_supply,lst_price,crv_reward_per_lp_token\n\
             2023-01-01,100.0,100.0,200.0,1.0,0.0\n\
             2023-01-02,100.0,100.0,200.0,1.0,0.0\n",
        );
        let rewards = write_file(
            &dir,
            "rewards.csv",
            "date,reward_per_lp_token\n2023-01-02,0.5\n",
        );
        let bundle = ingest(
            &[
                (curve, SchemaKind::CurveDaily),
                (rewards, SchemaKind::RewardSeries),
            ],
            IngestOptions::default(),
        )
        .unwrap();
        let rows = bundle.curve_daily.unwrap();
        assert_eq!(rows[0].crv_reward_per_lp_token, 0.0);
        assert_eq!(rows[1].crv_reward_per_lp_token, 0.5);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let err = ingest(
            &[(PathBuf::from("/nonexistent/x.csv"), SchemaKind::CurveDaily)],
            IngestOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, BacktestError::Io { .. }), "{err}");
    }
}
