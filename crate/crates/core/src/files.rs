//! JSON and CSV file helpers used by the interchange formats.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_csv<T: Serialize>(path: impl AsRef<Path>, header: &[&str], rows: &[T]) -> Result<()> {
    fs::write(path, csv_string(header, rows)?)?;
    Ok(())
}

/// CSV text with an explicit header line, so empty tables still carry one.
pub fn csv_string<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let io = |e: csv::Error| crate::error::Error::Io(e.to_string());
    writer.write_record(header).map_err(io)?;
    for row in rows {
        writer.serialize(row).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| crate::error::Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
