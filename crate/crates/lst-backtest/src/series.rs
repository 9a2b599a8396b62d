//! Wealth series and moving-average classification.

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::BacktestError;

/// Daily values of the benchmark portfolios, all normalized to an initial
/// capital of one underlying unit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WealthSeries {
    pub dates: Vec<NaiveDate>,
    /// Liquidity position (including trading fees where the data carries
    /// them).
    pub lp: Vec<f64>,
    /// The LP series plus cumulative protocol token rewards.
    pub lp_plus_rewards: Vec<f64>,
    /// Holding the entry composition.
    pub hold: Vec<f64>,
    /// Fully staked in the LST.
    pub lst: Vec<f64>,
    /// Compounding the reference staking rate, independent of pool data.
    pub staker: Vec<f64>,
}

impl WealthSeries {
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub(crate) fn validate(&self) -> Result<(), BacktestError> {
        let n = self.dates.len();
        for (name, v) in [
            ("lp", &self.lp),
            ("lp_plus_rewards", &self.lp_plus_rewards),
            ("hold", &self.hold),
            ("lst", &self.lst),
            ("staker", &self.staker),
        ] {
            if v.len() != n {
                return Err(BacktestError::Domain(format!(
                    "series '{name}' has {} values for {n} dates",
                    v.len()
                )));
            }
            if n > 0 && v[0] != 1.0 {
                return Err(BacktestError::Domain(format!(
                    "series '{name}' must start at 1, got {}",
                    v[0]
                )));
            }
        }
        Ok(())
    }
}

/// Classification label for one day.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    /// LP kept up with both holding and staking over the window.
    Green,
    /// LP kept up with holding but not with staking.
    Yellow,
    /// LP fell behind holding.
    Red,
}

impl Label {
    pub fn name(&self) -> &'static str {
        match self {
            Label::Green => "green",
            Label::Yellow => "yellow",
            Label::Red => "red",
        }
    }
}

/// Per-day labels produced by [`moving_average_classification`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaClassification {
    pub window: usize,
    /// First labelled day is the first with a full trailing window.
    pub dates: Vec<NaiveDate>,
    pub labels: Vec<Label>,
}

/// Options for the classifier.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyConfig {
    /// Return differences with magnitude at or below this count as ties, and
    /// ties count as "no loss". Covers the second-order drift a divergence-
    /// free benchmark accrues against a fee-less pool.
    pub tie_tolerance: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            tie_tolerance: 1e-4,
        }
    }
}

/// Label each day by comparing the LP return over the trailing window with
/// the HOLD and LST returns over the same window.
///
/// Windowed returns are wealth ratios between the window endpoints. A day is
/// green when the LP return is at least both benchmark returns, yellow when
/// it is at least the HOLD return only, red otherwise; differences within
/// `tie_tolerance` count as equal.
pub fn moving_average_classification(
    series: &WealthSeries,
    window: usize,
    config: ClassifyConfig,
) -> Result<MaClassification, BacktestError> {
    if window != 7 && window != 30 {
        return Err(BacktestError::Domain(format!(
            "window must be 7 or 30 days, got {window}"
        )));
    }
    series.validate()?;
    if series.len() <= window {
        return Err(BacktestError::Domain(format!(
            "series of length {} is too short for a {window}-day window",
            series.len()
        )));
    }
    let n = series.len();
    let mut dates = Vec::with_capacity(n - window);
    let mut labels = Vec::with_capacity(n - window);
    for i in window..n {
        let ret_lp = series.lp[i] / series.lp[i - window];
        let ret_hold = series.hold[i] / series.hold[i - window];
        let ret_lst = series.lst[i] / series.lst[i - window];
        let beats_hold = ret_lp - ret_hold >= -config.tie_tolerance;
        let beats_lst = ret_lp - ret_lst >= -config.tie_tolerance;
        let label = if beats_hold && beats_lst {
            Label::Green
        } else if beats_hold {
            Label::Yellow
        } else {
            Label::Red
        };
        dates.push(series.dates[i]);
        labels.push(label);
    }
    Ok(MaClassification {
        window,
        dates,
        labels,
    })
}
