//! Configuration, seeded runs, output files, reporting and benchmark validation.

mod config;
mod output;
mod report;
mod run;
mod validate;

pub use config::{load_config, ConfigFile, Overrides, ProblemName, ProblemSetup, RunConfig};
pub use output::{
    fmt_f64, read_table, Table, BEST_CONTROLS, HISTORY, PARETO_FRONT, PARETO_SET, SUMMARY,
    TRAJECTORY,
};
pub use report::{reference_values, report, sci, ReferenceValues, ReportRow, RunReport};
pub use run::{
    build_problem, execute, output_paths, run, BestSolution, BuiltProblem, RunArtifacts, RunSummary,
};
pub use validate::{fonseca_check, schaffer_check, validate, CheckOutcome};
