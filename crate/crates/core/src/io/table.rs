//! CSV and JSON emission of sweep tables.

use thiserror::Error;

use crate::sweep::SweepTable;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("row {row}: {reason}")]
    BadValue { row: usize, reason: String },
}

/// Seventeen significant digits: enough for an exact `f64` round trip.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header row, then one line per table row, `\n` terminated.
pub fn write_csv(table: &SweepTable) -> Result<String, TableError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Column names and numeric rows from CSV text produced by [`write_csv`].
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), TableError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>().map_err(|_| TableError::BadValue {
                    row: i + 1,
                    reason: format!("not a number: {s:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((columns, rows))
}

/// The table with its metadata as one JSON document.
pub fn write_json(table: &SweepTable) -> Result<String, TableError> {
    let mut s = serde_json::to_string_pretty(table)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(rows: Vec<Vec<f64>>) -> SweepTable {
        SweepTable::new(&["x", "y"], rows)
    }

    #[test]
    fn header_only() {
        assert_eq!(write_csv(&table(vec![])).unwrap(), "x,y\n");
    }

    #[test]
    fn layout() {
        let s = write_csv(&table(vec![vec![1.0, -0.5]])).unwrap();
        assert_eq!(s, "x,y\n1.0000000000000000e0,-5.0000000000000000e-1\n");
    }

    #[test]
    fn json_envelope() {
        let s = write_json(&table(vec![vec![1.0, 2.0]])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["columns"][1], "y");
        assert_eq!(v["rows"][0][1], 2.0);
        assert!(v["metadata"]["version"].is_string());
    }

    #[test]
    fn rejects_text() {
        assert!(read_csv("x\nfoo\n").is_err());
    }

    proptest! {
        #[test]
        fn exact_round_trip(rows in prop::collection::vec(prop::array::uniform2(any::<f64>().prop_filter("finite", |x| x.is_finite())), 0..30)) {
            let t = table(rows.iter().map(|r| r.to_vec()).collect());
            let (cols, back) = read_csv(&write_csv(&t).unwrap()).unwrap();
            prop_assert_eq!(cols, t.columns.clone());
            prop_assert_eq!(back, t.rows);
        }
    }
}
