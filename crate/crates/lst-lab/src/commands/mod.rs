pub mod backtest;
pub mod mc_verify;
pub mod required_returns;
pub mod simulate;
pub mod suitability;
pub mod swap_quote;

use std::path::Path;

use anyhow::Context;

/// Write to a file, or to stdout when no path is given.
pub fn emit(output: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .with_context(|| format!("creating {}", parent.display()))?;
                }
            }
            std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// Parse a comma-separated list of floats.
pub fn parse_grid(raw: &str) -> anyhow::Result<Vec<f64>> {
    let values: Result<Vec<f64>, _> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let values = values.with_context(|| format!("invalid numeric list '{raw}'"))?;
    if values.is_empty() {
        anyhow::bail!("empty numeric list");
    }
    Ok(values)
}
