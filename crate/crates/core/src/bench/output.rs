use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

use super::stats::median;
use super::BenchRecord;

/// Writes records as CSV with a header; empty cells for missing values.
pub fn write_records_csv(path: &Path, records: &[BenchRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// One JSON object per line.
pub fn write_records_jsonl(path: &Path, records: &[BenchRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotPoint {
    pub x: f64,
    pub series: String,
    pub y: f64,
}

fn numeric_field(value: &serde_json::Value, key: &str) -> Result<Option<f64>> {
    match value.get(key) {
        None => Err(Error::param("plot", format!("unknown column `{key}`"))),
        Some(serde_json::Value::Null) => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| Error::param("plot", format!("column `{key}` is not numeric"))),
    }
}

/// Long-format plot table: the median of column `y` over seeds for each
/// (algorithm, `x`) pair. Rows lacking either value are skipped.
pub fn plot_rows(records: &[BenchRecord], x: &str, y: &str) -> Result<Vec<PlotPoint>> {
    let mut groups: BTreeMap<(String, u64), Vec<f64>> = BTreeMap::new();
    for r in records {
        let value = serde_json::to_value(r)?;
        let (Some(xv), Some(yv)) = (numeric_field(&value, x)?, numeric_field(&value, y)?) else {
            continue;
        };
        groups.entry((r.algorithm.clone(), xv.to_bits())).or_default().push(yv);
    }
    let mut rows: Vec<PlotPoint> = groups
        .into_iter()
        .filter_map(|((series, xb), ys)| {
            median(&ys).map(|y| PlotPoint {
                x: f64::from_bits(xb),
                series,
                y,
            })
        })
        .collect();
    rows.sort_by(|a, b| a.series.cmp(&b.series).then(a.x.total_cmp(&b.x)));
    Ok(rows)
}

pub fn write_plot_csv(path: &Path, rows: &[PlotPoint]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for r in rows {
        writer.serialize(r)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}
