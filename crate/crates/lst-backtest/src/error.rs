use chrono::NaiveDate;
use thiserror::Error;

/// Errors from ingestion and replay.
#[derive(Debug, Error)]
pub enum BacktestError {
    #[error("{file}:{line}: column '{column}': {message}")]
    Schema {
        file: String,
        line: u64,
        column: String,
        message: String,
    },

    #[error("{file}: missing {} day(s): {}", missing.len(), format_days(missing))]
    MissingDays {
        file: String,
        missing: Vec<NaiveDate>,
    },

    #[error("{file}: rows out of order (strict mode)")]
    Unsorted { file: String },

    #[error("date misalignment: {0}")]
    Misaligned(String),

    #[error("{0}")]
    Domain(String),

    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Amm(#[from] lst_amm::AmmError),
}

fn format_days(days: &[NaiveDate]) -> String {
    let shown: Vec<String> = days.iter().take(10).map(|d| d.to_string()).collect();
    if days.len() > 10 {
        format!("{}, ... ({} more)", shown.join(", "), days.len() - 10)
    } else {
        shown.join(", ")
    }
}
