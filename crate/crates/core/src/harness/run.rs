//! One seeded run: build the problem, optimize, select, write files.

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ProblemSetup, RunConfig};
use super::output::{
    encode_csv, fmt_f64, write_all, BEST_CONTROLS, HISTORY, PARETO_FRONT, PARETO_SET, SUMMARY,
    TRAJECTORY,
};
use crate::decision::{select_best, DecisionReport};
use crate::objectives::{
    fonseca_problem, operator_norm, schaffer_problem, EvaluationSettings, Fonseca,
    QuantumObjective, Schaffer,
};
use crate::optimizer::{optimize, GenerationStats, Problem, Repository};
use crate::quantum::{
    build_q1_with, build_q2_with, build_q3_with, decode_position, propagate_euler,
    propagate_expm_oracle, ControlProblem,
};
use crate::rng::RngStreams;
use crate::{Error, Result};

/// A problem instance ready for the optimizer.
#[derive(Debug, Clone)]
pub enum BuiltProblem {
    Quantum(Box<QuantumObjective>),
    Schaffer(Schaffer),
    Fonseca(Fonseca),
}

impl BuiltProblem {
    pub fn as_problem(&self) -> &dyn Problem {
        match self {
            BuiltProblem::Quantum(q) => q.as_ref(),
            BuiltProblem::Schaffer(s) => s,
            BuiltProblem::Fonseca(f) => f,
        }
    }

    pub fn objective_names(&self) -> Vec<String> {
        let names: &[&str] = match self {
            BuiltProblem::Quantum(_) => &["deviation", "energy", "smoothness"],
            _ => &["f1", "f2"],
        };
        names[..self.as_problem().num_objectives()]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }
}

pub fn build_problem(config: &RunConfig) -> Result<BuiltProblem> {
    let quantum = |problem: ControlProblem| {
        let settings = EvaluationSettings {
            alpha: config.alpha,
            num_objectives: config.objectives,
            norm: config.operator_norm,
            renormalize: config.renormalize,
        };
        QuantumObjective::new(problem, settings).map(|q| BuiltProblem::Quantum(Box::new(q)))
    };
    match &config.problem {
        ProblemSetup::Q1(p) => quantum(build_q1_with(p)?),
        ProblemSetup::Q2(p) => quantum(build_q2_with(p)?),
        ProblemSetup::Q3(p) => quantum(build_q3_with(p)?),
        ProblemSetup::Schaffer => Ok(BuiltProblem::Schaffer(schaffer_problem())),
        ProblemSetup::Fonseca => Ok(BuiltProblem::Fonseca(fonseca_problem())),
    }
}

/// The TOPSIS-selected repository member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestSolution {
    /// Row of this member in `pareto_front.csv` / `pareto_set.csv`.
    pub repository_index: usize,
    pub objectives: Vec<f64>,
    pub fidelity: f64,
    pub position: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: RunConfig,
    pub objective_names: Vec<String>,
    pub best: BestSolution,
    pub repository_size: usize,
    pub decision: DecisionReport,
    pub history: Vec<GenerationStats>,
    /// The only field that differs between otherwise identical runs.
    pub wall_clock_seconds: f64,
}

/// Everything a run produces, before anything touches the disk.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub summary: RunSummary,
    pub repository: Repository,
    pub files: Vec<(&'static str, Vec<u8>)>,
}

/// Runs the optimizer and the decision step and renders every output file in memory.
pub fn execute(config: &RunConfig) -> Result<RunArtifacts> {
    let start = Instant::now();
    let built = build_problem(config)?;
    let mut streams = RngStreams::from_seed(config.seed);
    let result = optimize(built.as_problem(), &config.optimizer, &mut streams)?;
    let repository = result.repository;
    let (chosen, decision) =
        select_best(&repository, &config.topsis_weights, config.epsilon_fidelity)?;
    let repository_index = repository
        .members()
        .iter()
        .position(|m| m.position == chosen.position)
        .ok_or_else(|| Error::Decision("selected solution is not a repository member".into()))?;

    let names = built.objective_names();
    let mut files = vec![
        (PARETO_FRONT, pareto_front_csv(&repository, &names)?),
        (PARETO_SET, pareto_set_csv(&repository)?),
        (HISTORY, history_csv(&result.history, &names)?),
    ];
    if let BuiltProblem::Quantum(q) = &built {
        files.push((BEST_CONTROLS, best_controls_csv(q, &chosen.position)?));
        files.push((TRAJECTORY, trajectory_csv(q, &chosen.position)?));
    }

    let summary = RunSummary {
        config: config.clone(),
        objective_names: names,
        best: BestSolution {
            repository_index,
            objectives: chosen.objectives,
            fidelity: chosen.fidelity,
            position: chosen.position,
        },
        repository_size: repository.len(),
        decision,
        history: result.history,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    let mut json = serde_json::to_vec_pretty(&summary)?;
    json.push(b'\n');
    files.push((SUMMARY, json));
    Ok(RunArtifacts {
        summary,
        repository,
        files,
    })
}

/// [`execute`] plus writing the files into `config.output_dir`.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let artifacts = execute(config)?;
    write_all(&config.output_dir, &artifacts.files)?;
    Ok(artifacts.summary)
}

/// Paths of the files a run writes.
pub fn output_paths(config: &RunConfig) -> Vec<PathBuf> {
    let mut names = vec![PARETO_FRONT, PARETO_SET, HISTORY];
    if config.problem.name().is_quantum() {
        names.extend([BEST_CONTROLS, TRAJECTORY]);
    }
    names.push(SUMMARY);
    names
        .into_iter()
        .map(|n| config.output_dir.join(n))
        .collect()
}

fn pareto_front_csv(rep: &Repository, names: &[String]) -> Result<Vec<u8>> {
    let mut header = vec!["index".to_string()];
    header.extend(names.iter().cloned());
    header.push("fidelity".into());
    let rows: Vec<Vec<String>> = rep
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut row = vec![i.to_string()];
            row.extend(m.objectives.iter().map(|&v| fmt_f64(v)));
            row.push(fmt_f64(m.fidelity));
            row
        })
        .collect();
    encode_csv(&header, &rows)
}

fn pareto_set_csv(rep: &Repository) -> Result<Vec<u8>> {
    let dim = rep.members().first().map_or(0, |m| m.position.len());
    let mut header = vec!["index".to_string()];
    header.extend((0..dim).map(|j| format!("x{j}")));
    let rows: Vec<Vec<String>> = rep
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut row = vec![i.to_string()];
            row.extend(m.position.iter().map(|&v| fmt_f64(v)));
            row
        })
        .collect();
    encode_csv(&header, &rows)
}

fn history_csv(history: &[GenerationStats], names: &[String]) -> Result<Vec<u8>> {
    let mut header = vec!["generation".to_string(), "repository_size".to_string()];
    header.extend(names.iter().map(|n| format!("min_{n}")));
    header.push("best_fidelity".into());
    let rows: Vec<Vec<String>> = history
        .iter()
        .map(|h| {
            let mut row = vec![h.generation.to_string(), h.repository_size.to_string()];
            row.extend(h.objective_minima.iter().map(|&v| fmt_f64(v)));
            row.push(fmt_f64(h.best_fidelity));
            row
        })
        .collect();
    encode_csv(&header, &rows)
}

/// `t, u_1..u_M, U_1..U_M` with `U_m = |u_m| ‖H_m‖`.
fn best_controls_csv(q: &QuantumObjective, position: &[f64]) -> Result<Vec<u8>> {
    let problem = q.problem();
    let controls = decode_position(position, problem, q.settings().alpha)?;
    let m = problem.num_controls;
    let norms: Vec<f64> = (0..m)
        .map(|i| operator_norm(problem.control_operator(i), q.settings().norm))
        .collect();
    let mut header = vec!["t".to_string()];
    header.extend((1..=m).map(|i| format!("u{i}")));
    header.extend((1..=m).map(|i| format!("U{i}")));
    let rows: Vec<Vec<String>> = controls
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let mut row = vec![fmt_f64(t)];
            row.extend(controls.values.iter().map(|u| fmt_f64(u[k])));
            row.extend(
                controls
                    .values
                    .iter()
                    .zip(&norms)
                    .map(|(u, n)| fmt_f64(u[k].abs() * n)),
            );
            row
        })
        .collect();
    encode_csv(&header, &rows)
}

/// Euler and oracle amplitudes side by side on the fine grid.
fn trajectory_csv(q: &QuantumObjective, position: &[f64]) -> Result<Vec<u8>> {
    let problem = q.problem();
    let controls = decode_position(position, problem, q.settings().alpha)?;
    let euler = propagate_euler(problem, &controls, q.settings().renormalize)?;
    let oracle = propagate_expm_oracle(problem, &controls)?;
    let d = problem.dim;
    let mut header = vec!["t".to_string()];
    for tag in ["euler", "oracle"] {
        for j in 0..d {
            header.push(format!("{tag}_re{j}"));
            header.push(format!("{tag}_im{j}"));
        }
    }
    let rows: Vec<Vec<String>> = (0..euler.times.len())
        .map(|k| {
            let mut row = vec![fmt_f64(euler.times[k])];
            for traj in [&euler, &oracle] {
                for z in traj.states[k].amplitudes().iter() {
                    row.push(fmt_f64(z.re));
                    row.push(fmt_f64(z.im));
                }
            }
            row
        })
        .collect();
    encode_csv(&header, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{load_config, Overrides, ProblemName};
    use crate::optimizer::non_dominated_sort;

    fn config(problem: ProblemName, gens: usize, pop: usize) -> RunConfig {
        let mut c = load_config(
            None,
            &Overrides {
                problem: Some(problem),
                seed: Some(3),
                ..Overrides::default()
            },
        )
        .unwrap();
        c.optimizer.max_generations = gens;
        c.optimizer.population_size = pop;
        c
    }

    #[test]
    fn schaffer_run_files() {
        let a = execute(&config(ProblemName::Schaffer, 20, 30)).unwrap();
        let names: Vec<&str> = a.files.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, vec![PARETO_FRONT, PARETO_SET, HISTORY, SUMMARY]);
        assert_eq!(a.summary.history.len(), 21);
        let best = &a.summary.best;
        assert_eq!(
            a.repository.members()[best.repository_index].objectives,
            best.objectives
        );
    }

    #[test]
    fn zero_generations_keeps_initial_rank_one() {
        let c = config(ProblemName::Q1, 0, 20);
        let a = execute(&c).unwrap();
        // Rebuild the initial population from the same seed.
        let built = build_problem(&c).unwrap();
        let mut streams = RngStreams::from_seed(c.seed);
        let init = crate::optimizer::initialize_population(
            built.as_problem().bounds(),
            20,
            &mut streams.init,
        )
        .unwrap();
        let objs: Vec<Vec<f64>> = init
            .iter()
            .map(|p| built.as_problem().evaluate(&p.position).objectives)
            .collect();
        let ranks = non_dominated_sort(&objs);
        let front: Vec<&Vec<f64>> = init
            .iter()
            .zip(&ranks)
            .filter(|(_, &r)| r == 1)
            .map(|(p, _)| &p.position)
            .collect();
        let got: Vec<&Vec<f64>> = a.repository.members().iter().map(|m| &m.position).collect();
        assert_eq!(got, front);
    }

    #[test]
    fn quantum_run_writes_controls_and_trajectory() {
        let a = execute(&config(ProblemName::Q2, 2, 8)).unwrap();
        let controls = &a.files.iter().find(|(n, _)| *n == BEST_CONTROLS).unwrap().1;
        let text = String::from_utf8(controls.clone()).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("t,u1,u2,u3,u4,u5,U1"));
        assert_eq!(lines.count(), 7 * 30 + 1);
        let traj = &a.files.iter().find(|(n, _)| *n == TRAJECTORY).unwrap().1;
        let header = String::from_utf8(traj.clone()).unwrap();
        assert_eq!(
            header.lines().next().unwrap().split(',').count(),
            1 + 2 * 2 * 4
        );
    }
}
