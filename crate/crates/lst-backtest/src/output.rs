//! Deterministic CSV and JSON rendering of wealth series and
//! classifications.
//!
//! Every float is printed with 17 significant digits in scientific
//! notation, which round-trips `f64` exactly and keeps output files byte
//! stable across runs and platforms.

use std::io::{self, Write};

use serde_json::json;

use crate::series::{MaClassification, WealthSeries};

/// Round-trip-safe decimal rendering (17 significant digits).
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with one leading `#` comment line carrying the resolved config.
pub fn wealth_to_csv(series: &WealthSeries, config_line: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {config_line}\n"));
    out.push_str("date,lp,lp_plus_rewards,hold,lst,staker\n");
    for i in 0..series.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            series.dates[i],
            format_number(series.lp[i]),
            format_number(series.lp_plus_rewards[i]),
            format_number(series.hold[i]),
            format_number(series.lst[i]),
            format_number(series.staker[i]),
        ));
    }
    out
}

pub fn classification_to_csv(classification: &MaClassification, config_line: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {config_line}\n"));
    out.push_str("date,label\n");
    for i in 0..classification.dates.len() {
        out.push_str(&format!(
            "{},{}\n",
            classification.dates[i],
            classification.labels[i].name()
        ));
    }
    out
}

pub fn wealth_to_json(series: &WealthSeries, config_line: &str) -> String {
    let value = json!({
        "config": config_line,
        "dates": series.dates.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "lp": series.lp,
        "lp_plus_rewards": series.lp_plus_rewards,
        "hold": series.hold,
        "lst": series.lst,
        "staker": series.staker,
    });
    to_json_string(&value)
}

pub fn classification_to_json(classification: &MaClassification, config_line: &str) -> String {
    let value = json!({
        "config": config_line,
        "window": classification.window,
        "dates": classification.dates.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "labels": classification.labels.iter().map(|l| l.name()).collect::<Vec<_>>(),
    });
    to_json_string(&value)
}

/// Serialize JSON with the 17-digit float convention.
pub fn to_json_string(value: &serde_json::Value) -> String {
    let mut buf = Vec::new();
    let mut serializer =
        serde_json::Serializer::with_formatter(&mut buf, SciNotationFormatter::default());
    serde::Serialize::serialize(value, &mut serializer).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Pretty formatter that renders every `f64` via [`format_number`].
#[derive(Default)]
pub struct SciNotationFormatter {
    indent_level: usize,
}

impl serde_json::ser::Formatter for SciNotationFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_number(value).as_bytes())
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent_level += 1;
        writer.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent_level -= 1;
        writer.write_all(b"]")
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent_level += 1;
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent_level -= 1;
        writer.write_all(b"}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Label;
    use chrono::NaiveDate;

    fn sample_series() -> WealthSeries {
        let d0 = NaiveDate::from_ymd_opt(2023, 1, 1).unwrap();
        WealthSeries {
            dates: vec![d0, d0 + chrono::Days::new(1)],
            lp: vec![1.0, 1.0001],
            lp_plus_rewards: vec![1.0, 1.0002],
            hold: vec![1.0, 1.00005],
            lst: vec![1.0, 1.0003],
            staker: vec![1.0, 1.0001],
        }
    }

    #[test]
    fn numbers_round_trip_through_the_17_digit_format() {
        for &x in &[1.0, 1.0408107741923882, 2.0204026800535116e-2, 1e-300] {
            let printed = format_number(x);
            let parsed: f64 = printed.parse().unwrap();
            assert_eq!(parsed, x, "{printed}");
        }
    }

    #[test]
    fn csv_has_config_comment_and_header() {
        let csv = wealth_to_csv(&sample_series(), "backtest --kind curve");
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "# backtest --kind curve");
        assert_eq!(lines.next().unwrap(), "date,lp,lp_plus_rewards,hold,lst,staker");
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn json_floats_use_the_same_convention() {
        let json = wealth_to_json(&sample_series(), "cfg");
        assert!(json.contains("1.0000000000000000e0"));
        assert!(json.contains("\"config\":\"cfg\""));
    }

    #[test]
    fn classification_renders_labels() {
        let c = MaClassification {
            window: 7,
            dates: vec![NaiveDate::from_ymd_opt(2023, 1, 8).unwrap()],
            labels: vec![Label::Yellow],
        };
        let csv = classification_to_csv(&c, "cfg");
        assert!(csv.contains("2023-01-08,yellow"));
        let json = classification_to_json(&c, "cfg");
        assert!(json.contains("\"yellow\""));
    }
}
