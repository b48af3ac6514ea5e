//! CSV encoding and decoding of run files.

use std::path::{Path, PathBuf};

use crate::{Error, Result};

pub const PARETO_FRONT: &str = "pareto_front.csv";
pub const PARETO_SET: &str = "pareto_set.csv";
pub const BEST_CONTROLS: &str = "best_controls.csv";
pub const TRAJECTORY: &str = "trajectory.csv";
pub const HISTORY: &str = "history.csv";
pub const SUMMARY: &str = "summary.json";

/// 17 significant digits: enough to round-trip every `f64` exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A header plus rows of already formatted cells.
pub(crate) fn encode_csv(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner()
        .map_err(|e| Error::Report(format!("csv buffer: {}", e.error())))
}

/// Numeric table read back from one of the run files.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => {
            Error::Report(format!("missing or unreadable file {}", path.display()))
        }
        _ => Error::Csv(e),
    })?;
    let header = reader.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| {
                    Error::Report(format!("{}: non-numeric cell `{cell}`", path.display()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// Writes every file or none: anything written before a failure is removed again,
/// along with the directory if this call created it.
pub(crate) fn write_all(dir: &Path, files: &[(&str, Vec<u8>)]) -> Result<Vec<PathBuf>> {
    let created_dir = !dir.exists();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for (name, bytes) in files {
        let path = dir.join(name);
        if let Err(e) = std::fs::write(&path, bytes) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            if created_dir {
                let _ = std::fs::remove_dir(dir);
            }
            return Err(Error::io(path, e));
        }
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for x in [
            0.1,
            -1.0 / 3.0,
            1e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            0.0,
        ] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let header = vec!["a".to_string(), "b".to_string()];
        let rows = vec![vec![fmt_f64(1.5), fmt_f64(-2.0)]];
        let bytes = encode_csv(&header, &rows).unwrap();
        write_all(dir.path(), &[("t.csv", bytes)]).unwrap();
        let t = read_table(&dir.path().join("t.csv")).unwrap();
        assert_eq!(t.header, header);
        assert_eq!(t.rows, vec![vec![1.5, -2.0]]);
        assert_eq!(t.column("b"), Some(vec![-2.0]));
        assert!(matches!(
            read_table(&dir.path().join("nope.csv")),
            Err(Error::Report(_))
        ));
    }

    #[test]
    fn failed_write_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run");
        // A file name containing a directory that doesn't exist fails mid-way.
        let files = [
            ("ok.csv", b"x".to_vec()),
            ("missing/bad.csv", b"y".to_vec()),
        ];
        assert!(write_all(&out, &files).is_err());
        assert!(!out.exists());
    }
}
