use std::collections::HashMap;
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labels::ClusterLabels;

use super::LabeledDataset;

/// Column holding ground-truth class names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelColumn {
    Name(String),
    Index(usize),
}

impl std::str::FromStr for LabelColumn {
    type Err = std::convert::Infallible;

    /// Integers select by position, anything else by header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.to_string()),
        })
    }
}

/// Reads a comma-separated file. Every column except the label column must be numeric.
pub fn load_csv(path: impl AsRef<Path>, has_header: bool, label_column: Option<&LabelColumn>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(std::io::BufReader::new(file));

    let label_idx = match label_column {
        None => None,
        Some(LabelColumn::Index(i)) => Some(*i),
        Some(LabelColumn::Name(name)) => {
            if !has_header {
                return Err(Error::parse(path, format!("label column `{name}` given by name but the file has no header")));
            }
            let headers = reader.headers()?;
            Some(
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::parse(path, format!("no column named `{name}`")))?,
            )
        }
    };

    let mut coords = Vec::new();
    let mut classes: HashMap<String, i64> = HashMap::new();
    let mut truth = Vec::new();
    let mut width: Option<usize> = None;
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(row + 1, |p| p.line() as usize);
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(Error::parse(
                    path,
                    format!("line {line}: {} fields, expected {w}", record.len()),
                ));
            }
            _ => {}
        }
        if let Some(l) = label_idx {
            if l >= record.len() {
                return Err(Error::parse(path, format!("label column {l} out of range ({} columns)", record.len())));
            }
        }
        for (col, cell) in record.iter().enumerate() {
            if Some(col) == label_idx {
                let next = classes.len() as i64;
                truth.push(*classes.entry(cell.to_string()).or_insert(next));
                continue;
            }
            let value: f64 = cell
                .parse()
                .map_err(|_| Error::parse(path, format!("line {line}, column {}: `{cell}` is not a number", col + 1)))?;
            coords.push(value);
        }
    }
    let width = width.ok_or_else(|| Error::parse(path, "no data rows"))?;
    let dim = width - usize::from(label_idx.is_some());
    if dim == 0 {
        return Err(Error::parse(path, "no feature columns"));
    }
    let data = Dataset::from_flat(coords, dim).map_err(|e| Error::parse(path, e.to_string()))?;
    let truth = label_idx.map(|_| ClusterLabels::new(truth)).transpose()?;
    Ok(LabeledDataset { data, truth })
}

/// Writes coordinates with 17 significant digits (exact round trip) and,
/// when present, the ground truth as a trailing `label` column.
pub fn write_csv(path: impl AsRef<Path>, dataset: &LabeledDataset, header: bool) -> Result<()> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::parse(path, e.to_string()))?;
    let dim = dataset.data.dim();
    if header {
        let mut names: Vec<String> = (0..dim).map(|d| format!("x{d}")).collect();
        if dataset.truth.is_some() {
            names.push("label".to_string());
        }
        writer.write_record(&names)?;
    }
    for (i, point) in dataset.data.points().enumerate() {
        let mut row: Vec<String> = point.iter().map(|x| format!("{x:.16e}")).collect();
        if let Some(truth) = &dataset.truth {
            row.push(truth.get(i).to_string());
        }
        writer.write_record(&row)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use proptest::prelude::*;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), text).unwrap();
        f
    }

    #[test]
    fn plain_numeric_rows() {
        let f = write("1,2\n3,4\n5,6\n");
        let d = load_csv(f.path(), false, None).unwrap();
        assert_eq!(d.data.len(), 3);
        assert_eq!(d.data.dim(), 2);
        assert!(d.truth.is_none());
    }

    #[test]
    fn label_column_by_name_and_index() {
        let f = write("a,class,b\n1,x,2\n3,x,4\n5,y,6\n");
        let d = load_csv(f.path(), true, Some(&LabelColumn::Name("class".into()))).unwrap();
        assert_eq!(d.truth.unwrap().as_slice(), &[0, 0, 1]);
        assert_eq!(d.data.point(2), &[5.0, 6.0]);
        let d = load_csv(f.path(), true, Some(&LabelColumn::Index(1))).unwrap();
        assert_eq!(d.truth.unwrap().as_slice(), &[0, 0, 1]);
        assert!(load_csv(f.path(), true, Some(&LabelColumn::Name("nope".into()))).is_err());
    }

    #[test]
    fn errors_name_the_cell() {
        let f = write("1,2\n3,oops\n");
        let err = load_csv(f.path(), false, None).unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("column 2"), "{err}");
        let f = write("1,2\n3\n");
        let err = load_csv(f.path(), false, None).unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("expected 2"), "{err}");
        assert!(load_csv("/nonexistent/file.csv", false, None).is_err());
    }

    #[test]
    fn parses_label_column_spec() {
        assert_eq!("3".parse::<LabelColumn>().unwrap(), LabelColumn::Index(3));
        assert_eq!("class".parse::<LabelColumn>().unwrap(), LabelColumn::Name("class".into()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn write_then_read_is_identity(seed in 0u64..10_000, n in 1usize..30, dim in 1usize..5, labelled in any::<bool>()) {
            let mut rng = SeededRng::new(seed);
            let coords: Vec<f64> = (0..n * dim)
                .map(|_| (rng.next_f64() - 0.5) * 10f64.powi(rng.below(20) as i32 - 10))
                .collect();
            let data = Dataset::from_flat(coords, dim).unwrap();
            let truth = labelled.then(|| ClusterLabels::new((0..n as i64).map(|i| i % 3).collect()).unwrap());
            let original = LabeledDataset { data, truth };
            let f = tempfile::NamedTempFile::new().unwrap();
            write_csv(f.path(), &original, true).unwrap();
            let label = labelled.then(|| LabelColumn::Name("label".into()));
            let back = load_csv(f.path(), true, label.as_ref()).unwrap();
            prop_assert_eq!(back.data.as_flat(), original.data.as_flat());
            if let (Some(a), Some(b)) = (&back.truth, &original.truth) {
                prop_assert!(a.partitions_equal(b).unwrap());
            }
        }
    }
}
