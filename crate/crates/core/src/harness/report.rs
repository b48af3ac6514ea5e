//! Side-by-side table of a finished run against published reference values.

use std::fmt;
use std::path::{Path, PathBuf};

use super::config::ProblemName;
use super::output::{read_table, PARETO_FRONT, SUMMARY};
use super::run::RunSummary;
use crate::{Error, Result};

/// Published best-compromise values for one problem and objective count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValues {
    pub fidelity: f64,
    pub energy: f64,
    pub smoothness: Option<f64>,
}

/// Reference values for quantum problems. Physical constants behind them are not fully
/// known, so they are shown for orientation only and never used as pass/fail targets.
pub fn reference_values(problem: ProblemName, objectives: usize) -> Option<ReferenceValues> {
    let r = |fidelity, energy, smoothness| ReferenceValues {
        fidelity,
        energy,
        smoothness,
    };
    match (problem, objectives) {
        (ProblemName::Q1, 2) => Some(r(9.99977e-1, 2.98414e0, None)),
        (ProblemName::Q2, 2) => Some(r(9.99902e-1, 5.44407e0, None)),
        (ProblemName::Q3, 2) => Some(r(9.99241e-1, 8.51772e1, None)),
        (ProblemName::Q1, 3) => Some(r(9.99690e-1, 4.14350e0, Some(7.56408e0))),
        (ProblemName::Q2, 3) => Some(r(9.99573e-1, 5.58225e0, Some(1.94418e1))),
        (ProblemName::Q3, 3) => Some(r(9.98809e-1, 5.05166e1, Some(8.87840e1))),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub metric: String,
    pub value: f64,
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub run_dir: PathBuf,
    pub problem: ProblemName,
    pub objectives: usize,
    pub seed: u64,
    pub repository_size: usize,
    pub screened_count: usize,
    pub rows: Vec<ReportRow>,
}

impl RunReport {
    pub fn has_reference(&self) -> bool {
        self.rows.iter().any(|r| r.reference.is_some())
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "run: {}", self.run_dir.display())?;
        writeln!(
            f,
            "problem {} | objectives {} | seed {} | repository {} | passed screening {}",
            self.problem, self.objectives, self.seed, self.repository_size, self.screened_count
        )?;
        if self.has_reference() {
            writeln!(
                f,
                "{:<12} {:>14}   reference (non-binding)",
                "metric", "this run"
            )?;
        } else {
            writeln!(f, "{:<12} {:>14}", "metric", "this run")?;
        }
        for row in &self.rows {
            write!(f, "{:<12} {:>14}", row.metric, sci(row.value))?;
            if self.has_reference() {
                match row.reference {
                    Some(v) => write!(f, "   {}", sci(v))?,
                    None => write!(f, "   -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `9.99977E-01` style: five decimals, signed two-digit exponent.
pub fn sci(x: f64) -> String {
    let s = format!("{x:.5E}");
    match s.split_once('E') {
        Some((mantissa, exp)) => {
            let e: i32 = exp.parse().unwrap_or(0);
            let sign = if e < 0 { '-' } else { '+' };
            format!("{mantissa}E{sign}{:02}", e.abs())
        }
        None => s,
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next()
        .map(|first| first.to_uppercase().chain(c).collect())
        .unwrap_or_default()
}

/// Reads `summary.json` and `pareto_front.csv` from `run_dir`.
pub fn report(run_dir: &Path) -> Result<RunReport> {
    let summary_path = run_dir.join(SUMMARY);
    let text = std::fs::read_to_string(&summary_path).map_err(|_| {
        Error::Report(format!(
            "missing or unreadable file {}",
            summary_path.display()
        ))
    })?;
    let summary: RunSummary = serde_json::from_str(&text)
        .map_err(|e| Error::Report(format!("{}: {e}", summary_path.display())))?;

    let front = read_table(&run_dir.join(PARETO_FRONT))?;
    let best = &summary.best;
    let row = front.rows.get(best.repository_index).ok_or_else(|| {
        Error::Report(format!(
            "selected index {} is outside {PARETO_FRONT} ({} rows)",
            best.repository_index,
            front.rows.len()
        ))
    })?;
    if row[1..=best.objectives.len()] != best.objectives[..] {
        return Err(Error::Report(format!(
            "{SUMMARY} and {PARETO_FRONT} disagree on the selected solution"
        )));
    }

    let problem = summary.config.problem.name();
    let objectives = summary.config.objectives;
    let reference = reference_values(problem, objectives);
    let mut rows = Vec::new();
    if problem.is_quantum() {
        rows.push(ReportRow {
            metric: "Fidelity".into(),
            value: best.fidelity,
            reference: reference.map(|r| r.fidelity),
        });
    }
    for (name, &value) in summary.objective_names.iter().zip(&best.objectives) {
        let reference = reference.and_then(|r| match name.as_str() {
            "energy" => Some(r.energy),
            "smoothness" => r.smoothness,
            _ => None,
        });
        rows.push(ReportRow {
            metric: capitalize(name),
            value,
            reference,
        });
    }
    Ok(RunReport {
        run_dir: run_dir.to_path_buf(),
        problem,
        objectives,
        seed: summary.config.seed,
        repository_size: summary.repository_size,
        screened_count: summary.decision.screened_count,
        rows,
    })
}
